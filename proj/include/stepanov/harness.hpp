#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "stepanov/grid.hpp"

namespace stepanov::harness {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.3.0";

struct Check {
  std::string name;
  double margin = 0.0;  // >= 0 on success for inequality checks; 0 for exact identities
  bool pass = false;
  json witness;         // null unless the check failed or records an extremal instance
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  json config = json::object();
  std::vector<Check> checks;
  double runtime_ms = 0.0;

  bool pass() const;
  std::size_t failures() const;
  /// Timing lives under "timing" so determinism comparisons can drop it.
  json to_json(bool include_timing = true) const;
};

struct CorpusConfig {
  std::size_t instances = 100;
  std::size_t max_dim = 3;
  std::vector<int> ms = {4, 10, 50};
  long window_lo = -8;
  long window_hi = 8;
};

struct CorpusInstance {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  json description;     // replays the instance through the catalog
  GridFunction u;
};

/// Instance i draws from Rng(Rng::mix(seed, i)), so each instance regenerates
/// on its own from (seed, i).
CorpusInstance corpus_instance(std::uint64_t seed, std::size_t index, const CorpusConfig& config = {});
std::vector<CorpusInstance> generate_corpus(std::uint64_t seed, const CorpusConfig& config = {});

/// Rebuilds the function described by a corpus instance description.
GridFunction replay(const json& description);

/// Largest integral over a measure-delta subset of one window by enumerating
/// every vertex of the feasible polytope: all subsets of whole cells plus at
/// most one fractional cell. Exponential in terms.size(); use m <= 16.
double ui_window_max_bruteforce(std::span<const double> terms, double delta);

VerificationReport suite_bochner_algebra(std::uint64_t seed, const CorpusConfig& config = {});
VerificationReport suite_window_domination(std::uint64_t seed, std::size_t draws = 500);
VerificationReport suite_ui_exactness(std::uint64_t seed, std::size_t instances = 50);
VerificationReport suite_measure_convergence(std::uint64_t seed, std::size_t pairs = 200);
VerificationReport suite_lipschitz_holder(std::uint64_t seed, std::size_t pairs = 50);
VerificationReport suite_exp_oscillation(std::uint64_t seed, std::size_t bound_samples = 10000);
VerificationReport suite_hypothesis_implications(std::uint64_t seed);
VerificationReport suite_certificates(std::uint64_t seed);

/// Suite ids in report order.
std::vector<std::string> suite_ids();

/// Accepts canonical ids and the aliases listed in the README.
VerificationReport run_suite(std::string_view id, std::uint64_t seed);
std::vector<VerificationReport> run_all(std::uint64_t seed);

/// Lipschitz quotient of the exp-oscillation map along its divergent pair
/// family: x_k = s_k e_1, y_k = (s_k + eps_k) e_1 at t0.
struct DivergentPair {
  long k = 0;
  double t0 = 0.0;
  double s = 0.0;
  double eps = 0.0;
  std::vector<double> x;
  std::vector<double> y;
};

DivergentPair exp_oscillation_pair(long k, double a_t0, double t0, std::size_t dim);

}  // namespace stepanov::harness
