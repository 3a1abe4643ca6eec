#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stepanov/grid.hpp"

namespace stepanov {

using Evaluator = std::function<void(double t, std::span<const double> x, std::span<double> out)>;
using ScalarFn = std::function<double(double)>;

/// |f(t, x)| <= a |x|^(p/q) + b(t).
struct GrowthBound {
  double a = 1.0;
  ScalarFn b;
  std::string description;
};

/// |f(t, x1) - f(t, x2)| <= L(t) |x1 - x2| with L in BS^r.
struct LipschitzWeight {
  ScalarFn weight;
  double r = 1.0;
  std::string description;
};

/// Superposition operator u -> f(., u(.)) with declared metadata.
///
/// The evaluator must be safe to call concurrently. Metadata is a declaration:
/// nothing is assumed about it until the matching check has passed.
class NemytskiiMap {
 public:
  NemytskiiMap(std::string name, std::size_t d_in, std::size_t d_out, Evaluator evaluator, double p = 1.0,
               double q = 1.0, NormKind kind = NormKind::L2);

  const std::string& name() const noexcept { return name_; }
  std::size_t d_in() const noexcept { return d_in_; }
  std::size_t d_out() const noexcept { return d_out_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  NormKind norm_kind() const noexcept { return kind_; }

  void evaluate(double t, std::span<const double> x, std::span<double> out) const;
  std::vector<double> operator()(double t, std::span<const double> x) const;

  std::optional<GrowthBound> growth;
  std::optional<LipschitzWeight> lipschitz;
  std::optional<double> period;
  bool autonomous = false;

  NemytskiiMap& with_exponents(double p, double q);

 private:
  std::string name_;
  std::size_t d_in_;
  std::size_t d_out_;
  Evaluator evaluator_;
  double p_;
  double q_;
  NormKind kind_;
};

/// N_f(u)(t) = f(t, u(t)), evaluated at cell left endpoints.
GridFunction apply(const NemytskiiMap& f, const GridFunction& u);

/// Scalar weight sampled on a grid, e.g. a Lipschitz weight L or growth term b.
GridFunction sample_scalar(const ScalarFn& fn, const GridSpec& spec);
/// Piecewise-constant lookup into a scalar GridFunction.
ScalarFn as_scalar_fn(const GridFunction& g);

enum class Hypothesis { H1, H2, H3, H4, H5, Lipschitz, AutonomousGrowth, C2 };

Hypothesis parse_hypothesis(std::string_view text);
const char* to_string(Hypothesis h) noexcept;

struct Witness {
  double t = 0.0;
  std::vector<double> x1;
  std::vector<double> x2;
};

/// Sampling-based evidence for one hypothesis; pass iff max_violation <= tolerance.
struct HypothesisReport {
  Hypothesis id = Hypothesis::H1;
  std::size_t samples = 0;
  double max_violation = -INFINITY;
  double tolerance = 0.0;
  std::optional<Witness> witness;
  bool pass = false;
  std::map<std::string, double> metrics;
  std::string note;
};

struct PointPair {
  double t = 0.0;
  std::vector<double> x1;
  std::vector<double> x2;
};

/// Growth condition on every (t, x) sample. Throws Unconfigured without growth metadata.
HypothesisReport check_H1(const NemytskiiMap& f, const std::vector<double>& sample_t,
                          const std::vector<std::vector<double>>& sample_x, double tolerance = 1e-9);

/// Growth condition restricted to s in [0, T); also reports |b|_{L^q(0,T)}.
HypothesisReport check_H4(const NemytskiiMap& f, double period, const std::vector<double>& sample_t,
                          const std::vector<std::vector<double>>& sample_x, double tolerance = 1e-9);

/// Autonomous growth |f(x)| <= a |x|^(p/q) + b with constant b > 0.
HypothesisReport check_autonomous_growth(const NemytskiiMap& f, const std::vector<std::vector<double>>& sample_x,
                                         double tolerance = 1e-9);

/// |f(t + T, x) - f(t, x)| on every sample.
HypothesisReport check_H5(const NemytskiiMap& f, double period, const std::vector<double>& sample_t,
                          const std::vector<std::vector<double>>& sample_x, double tolerance = 1e-12);

/// Continuity of f(t, .): |f(t, x + h e_i) - f(t, x)| for a small step h.
HypothesisReport check_H2(const NemytskiiMap& f, const std::vector<double>& sample_t,
                          const std::vector<std::vector<double>>& sample_x, double step = 1e-8,
                          double tolerance = 1e-5);

/// Lipschitz quotient minus L(t) on every pair; records the largest quotient.
HypothesisReport check_lipschitz(const NemytskiiMap& f, const ScalarFn& weight, const std::vector<PointPair>& pairs,
                                 double tolerance = 1e-9);

/// Deterministic low-discrepancy sample of the closed ball of radius R.
struct BallSample {
  double radius = 0.0;
  NormKind kind = NormKind::L2;
  std::vector<std::vector<double>> points;
  double covering_radius = 0.0;  // estimated on a denser probe set
};

BallSample sample_ball(std::size_t dim, double radius, std::size_t count, NormKind kind = NormKind::L2);

/// alpha^K_delta(t) = sup{|f(t,x1) - f(t,x2)| : x1, x2 in K, |x1 - x2| <= delta} on a t-grid.
struct ModulusCurve {
  double radius = 0.0;
  std::size_t points = 0;
  double covering_radius = 0.0;
  bool low_confidence = false;
  std::vector<double> deltas;                // ascending
  std::vector<double> sup_alpha;             // sup over t, per delta
  std::vector<std::vector<double>> alpha;    // [delta][cell]
  std::optional<GridSpec> t_grid;

  /// sup_t meas((t, t+1) n N_theta) with N_theta = {t : alpha_delta(t) > theta}.
  double exceptional_excursion(std::size_t delta_index, double theta) const;
};

ModulusCurve modulus_alpha(const NemytskiiMap& f, const BallSample& ball, std::vector<double> deltas,
                           const GridSpec& t_grid);

/// Searches theta so that N_theta = {t : alpha_{delta_max}(t) > theta} has
/// windowed measure below r_budget and sup_{t outside N_theta} alpha_delta
/// falls to vanish_tol at the smallest delta.
HypothesisReport check_H3(const NemytskiiMap& f, const BallSample& ball, double r_budget,
                          const std::vector<double>& thetas, const std::vector<double>& deltas, const GridSpec& t_grid,
                          double vanish_tol = 1e-2);
HypothesisReport check_H3(const ModulusCurve& curve, double r_budget, const std::vector<double>& thetas,
                          double vanish_tol = 1e-2);

/// alpha^K_delta(t) <= a(t) eps(delta); also reports the grid S^1 norm of a.
HypothesisReport check_C2(const NemytskiiMap& f, const BallSample& ball, const ScalarFn& a,
                          const std::function<double(double)>& eps, const std::vector<double>& deltas,
                          const GridSpec& t_grid, double tolerance = 1e-9);

/// Rows of (|u_k - u|_{S^p}, |N_f u_k - N_f u|_{S^q}) for u_k = u + w_k.
struct ProbeTable {
  double p = 1.0;
  double q = 1.0;
  std::vector<double> input;
  std::vector<double> output;
  std::vector<double> envelope;   // max output over rows with input <= this row's input
  double max_ratio = 0.0;
  double final_output = 0.0;      // envelope at the smallest input distance
  bool decreasing = false;        // envelope at smallest input < envelope at largest, or all zero
};

ProbeTable continuity_probe(const NemytskiiMap& f, const GridFunction& u, const std::vector<GridFunction>& perturbations,
                            double p, double q);

}  // namespace stepanov
