#include "stepanov/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numbers>

#include "stepanov/bochner.hpp"
#include "stepanov/catalog.hpp"
#include "stepanov/error.hpp"
#include "stepanov/exact_sum.hpp"
#include "stepanov/integrability.hpp"
#include "stepanov/io.hpp"
#include "stepanov/nemytskii.hpp"
#include "stepanov/parallel.hpp"
#include "stepanov/periodicity.hpp"
#include "stepanov/random.hpp"

namespace stepanov::harness {

namespace {

json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void add(VerificationReport& r, std::string name, double margin, bool pass, json witness = nullptr) {
  r.checks.push_back({std::move(name), margin, pass, std::move(witness)});
}

// Exact identity check: margin is minus the largest absolute difference.
void add_exact(VerificationReport& r, std::string name, std::span<const double> got, std::span<const double> want,
               const json& instance) {
  double worst = got.size() == want.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) worst = std::max(worst, std::fabs(got[i] - want[i]));
  const bool same = got.size() == want.size() && std::equal(got.begin(), got.end(), want.begin());
  add(r, std::move(name), -worst, same, same ? json(nullptr) : instance);
}

std::vector<double> flat(const BochnerSequence& seq) {
  std::vector<double> out;
  for (const auto& s : seq.slices()) out.insert(out.end(), s.values().begin(), s.values().end());
  return out;
}

GridFunction random_function(Rng& rng, const GridSpec& spec, std::size_t dim, NormKind kind, double amplitude) {
  std::vector<std::string> names;
  std::vector<json> params;
  for (std::size_t d = 0; d < dim; ++d) {
    const std::string name = rng.pick(std::vector<std::string>{"sin2pi", "quasi2", "noise", "step", "sawtooth"});
    names.push_back(name);
    params.push_back({{"amplitude", rng.uniform(0.2, amplitude)},
                      {"shift", rng.uniform(0.0, 1.0)},
                      {"seed", rng.integer(0, 1L << 30)}});
  }
  return catalog::sample_components(names, params, spec, kind);
}

NormKind random_kind(Rng& rng) { return rng.pick(std::vector<NormKind>{NormKind::L1, NormKind::L2, NormKind::Linf}); }

}  // namespace

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

json VerificationReport::to_json(bool include_timing) const {
  json list = json::array();
  for (const auto& c : checks) {
    json j = {{"name", c.name}, {"margin", real(c.margin)}, {"pass", c.pass}};
    if (!c.witness.is_null()) j["witness"] = c.witness;
    list.push_back(std::move(j));
  }
  json j = {{"schema_version", io::kSchemaVersion},
            {"suite", suite},
            {"seed", seed},
            {"config", config},
            {"checks", std::move(list)},
            {"pass", pass()},
            {"failures", failures()},
            {"version", kVersion}};
  if (include_timing) j["timing"] = {{"runtime_ms", runtime_ms}};
  return j;
}

CorpusInstance corpus_instance(std::uint64_t seed, std::size_t index, const CorpusConfig& config) {
  const std::uint64_t instance_seed = Rng::mix(seed, index);
  Rng rng(instance_seed);
  const auto dim = static_cast<std::size_t>(rng.integer(1, static_cast<long>(config.max_dim)));
  const int m = rng.pick(config.ms);
  const long len = rng.integer(2, config.window_hi - config.window_lo);
  const long n_lo = rng.integer(config.window_lo, config.window_hi - len);
  const auto kind = random_kind(rng);

  json components = json::array();
  for (std::size_t d = 0; d < dim; ++d) {
    const std::string k = rng.pick(std::vector<std::string>{"periodic", "quasi", "step", "spike", "noise"});
    json params = {{"amplitude", rng.uniform(0.5, 3.0)}};
    std::string name;
    if (k == "periodic") {
      name = "sin2pi";
      params["shift"] = rng.uniform(0.0, 1.0);
    } else if (k == "quasi") {
      name = rng.uniform() < 0.5 ? "quasi2" : "levitan";
      params["shift"] = rng.uniform(0.0, 1.0);
    } else if (k == "step") {
      name = "step";
    } else if (k == "spike") {
      // Spikes straddle an integer, so no single integer window sees all of the mass.
      name = "spike";
      params["center"] = rng.integer(n_lo + 1, n_lo + len - 1);
      params["width"] = rng.pick(std::vector<double>{0.5, 1.0});
      params["height"] = rng.uniform(1.0, 5.0);
    } else {
      name = "noise";
      params["seed"] = rng.integer(0, 1L << 30);
      params["resolution"] = m;
    }
    components.push_back({{"name", name}, {"kind", k}, {"params", params}});
  }
  json description = {{"index", index},        {"seed", instance_seed}, {"m", m},
                      {"n_lo", n_lo},          {"n_hi", n_lo + len},    {"norm_kind", to_string(kind)},
                      {"components", components}};
  return {index, instance_seed, description, replay(description)};
}

std::vector<CorpusInstance> generate_corpus(std::uint64_t seed, const CorpusConfig& config) {
  std::vector<CorpusInstance> out;
  out.reserve(config.instances);
  for (std::size_t i = 0; i < config.instances; ++i) out.push_back(corpus_instance(seed, i, config));
  return out;
}

GridFunction replay(const json& d) {
  GridSpec spec(d.at("m").get<int>(), d.at("n_lo").get<long>(), d.at("n_hi").get<long>());
  std::vector<std::string> names;
  std::vector<json> params;
  for (const auto& c : d.at("components")) {
    names.push_back(c.at("name").get<std::string>());
    params.push_back(c.at("params"));
  }
  return catalog::sample_components(names, params, spec, parse_norm_kind(d.at("norm_kind").get<std::string>()));
}

double ui_window_max_bruteforce(std::span<const double> terms, double delta) {
  const std::size_t m = terms.size();
  if (m > 20) throw Error(ErrorCode::InvalidArgument, "brute-force window too large");
  const double cells = delta * static_cast<double>(m);
  std::size_t whole = static_cast<std::size_t>(std::floor(cells + 1e-9));
  double frac = cells - static_cast<double>(whole);
  if (frac < 1e-9) frac = 0.0;
  whole = std::min(whole, m);

  const std::size_t subsets = std::size_t{1} << m;
  std::vector<double> sums(subsets, 0.0);
  double best = 0.0;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    const std::size_t low = mask & (~mask + 1);
    sums[mask] = sums[mask ^ low] + terms[static_cast<std::size_t>(std::countr_zero(low))];
  }
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    const auto count = static_cast<std::size_t>(std::popcount(mask));
    if (count > whole) continue;
    double value = sums[mask];
    if (count == whole && frac > 0.0) {
      double extra = 0.0;
      for (std::size_t c = 0; c < m; ++c)
        if (!(mask >> c & 1)) extra = std::max(extra, frac * terms[c]);
      value += extra;
    }
    best = std::max(best, value);
  }
  return best / static_cast<double>(m);
}

VerificationReport suite_bochner_algebra(std::uint64_t seed, const CorpusConfig& config) {
  Timer timer;
  VerificationReport r;
  r.suite = "bochner-algebra";
  r.seed = seed;
  r.config = {{"instances", config.instances},
              {"max_dim", config.max_dim},
              {"ms", config.ms},
              {"window", {config.window_lo, config.window_hi}},
              {"exponents", {1, 2, 3}},
              {"tolerance", 0},
              {"sandwich_witness_min_ratio", 1.2}};
  const auto corpus = generate_corpus(seed, config);
  const std::vector<double> exponents = {1.0, 2.0, 3.0};

  struct Slot {
    std::vector<Check> checks;
    double best_ratio = 0.0;
    json best_witness;
  };
  std::vector<Slot> slots(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    const auto& inst = corpus[i];
    VerificationReport local;
    const auto& u = inst.u;
    const std::string tag = "instance " + std::to_string(inst.index);
    const json witness = {{"instance", inst.description}};

    add_exact(local, tag + ": L(B u) = u", left_inverse(bochner(u)).values(), u.values(), witness);
    const auto seq = discrete_bochner(u, 2.0);
    add_exact(local, tag + ": Dinv(D u) = u", discrete_bochner_inverse(seq).values(), u.values(), witness);

    // An arbitrary element of the sequence space and of the function space.
    Rng rng(Rng::mix(inst.seed, 1));
    const auto m = static_cast<std::size_t>(u.spec().m());
    std::vector<LpSlice> slices;
    for (long n = 0; n < u.spec().length(); ++n) {
      std::vector<double> vals(m * u.dim());
      for (double& v : vals) v = rng.uniform(-2.0, 2.0);
      slices.emplace_back(u.spec().m(), u.dim(), std::move(vals), u.norm_kind());
    }
    const BochnerSequence big_u(u.spec().n_lo(), u.spec().n_hi(), 2.0, slices);
    add_exact(local, tag + ": D(Dinv U) = U", flat(discrete_bochner(discrete_bochner_inverse(big_u), 2.0)), flat(big_u),
              witness);

    const auto npts = static_cast<std::size_t>(u.spec().length() - 1) * m + 1;
    std::vector<double> vflat(npts * m * u.dim());
    for (double& v : vflat) v = rng.uniform(-2.0, 2.0);
    const BochnerFunction big_v(u.spec(), u.dim(), u.norm_kind(), std::move(vflat));
    const auto w = big_v - bochner(left_inverse(big_v));
    const auto rest = flat(restriction(w, 2.0));
    add_exact(local, tag + ": restriction(V - B(L V)) = 0", rest, std::vector<double>(rest.size(), 0.0), witness);

    // Periodic collapse: D(J omega) is the constant sequence omega.
    const auto j_omega = periodize(seq.slices().front(), u.spec().n_lo(), u.spec().n_hi());
    std::vector<double> repeated;
    for (long n = 0; n < u.spec().length(); ++n)
      repeated.insert(repeated.end(), seq.slices().front().values().begin(), seq.slices().front().values().end());
    add_exact(local, tag + ": D(J omega) constant", flat(discrete_bochner(j_omega, 2.0)), repeated, witness);

    for (double p : exponents) {
      const auto b = stepanov_norm(u, p);
      const double margin = std::min(b.grid_sup_pow - b.lower_pow, 2.0 * b.lower_pow - b.grid_sup_pow);
      const bool ok = b.sandwich_holds();
      json wit = ok ? json(nullptr) : json{{"instance", inst.description}, {"bracket", io::to_json(b)}};
      add(local, tag + ": sandwich p=" + std::to_string(static_cast<int>(p)), margin, ok, wit);
      if (b.lower > 0.0 && b.grid_sup / b.lower > slots[i].best_ratio) {
        slots[i].best_ratio = b.grid_sup / b.lower;
        slots[i].best_witness = {{"instance", inst.description}, {"p", p}, {"bracket", io::to_json(b)}};
      }
    }
    slots[i].checks = std::move(local.checks);
  }, 4);

  double best_ratio = 0.0;
  json best_witness;
  for (auto& s : slots) {
    for (auto& c : s.checks) r.checks.push_back(std::move(c));
    if (s.best_ratio > best_ratio) {
      best_ratio = s.best_ratio;
      best_witness = s.best_witness;
    }
  }

  // Dedicated spike: unit mass split evenly by an integer, so grid_sup / lower = 2^(1/p).
  const GridSpec spec(10, 0, 4);
  const auto spike = catalog::sample("spike", {{"center", 2}, {"width", 1.0}, {"height", 3.0}}, spec);
  double spike_ratio = 0.0;
  for (double p : exponents) {
    const auto b = stepanov_norm(spike, p);
    spike_ratio = std::max(spike_ratio, b.grid_sup / b.lower);
    add(r, "spike construction: grid_sup/lower <= 2^(1/p) at p=" + std::to_string(static_cast<int>(p)),
        std::pow(2.0, 1.0 / p) * (1 + 1e-12) - b.grid_sup / b.lower, b.sandwich_holds());
  }
  if (spike_ratio > best_ratio) {
    best_ratio = spike_ratio;
    best_witness = {{"instance", "spike center 2 width 1 height 3 on m=10 [0,4)"}};
  }
  add(r, "sandwich witness ratio >= 1.2", best_ratio - 1.2, best_ratio >= 1.2,
      json{{"max_ratio", best_ratio}, {"witness", best_witness}});
  r.runtime_ms = timer.ms();
  return r;
}

VerificationReport suite_window_domination(std::uint64_t seed, std::size_t draws) {
  Timer timer;
  VerificationReport r;
  r.suite = "window-domination";
  r.seed = seed;
  r.config = {{"draws", draws}, {"ms", {4, 10}}, {"window", {-8, 8}}, {"shift_range", {-2, 2}},
              {"exponent_range", {1, 4}}, {"tolerance", 0}};
  Rng rng(Rng::mix(seed, 0x132));

  struct Pair {
    GridFunction w1, w2;
    json description;
  };
  std::vector<Pair> pool;
  for (std::size_t i = 0; i < 16; ++i) {
    const int m = i % 2 ? 10 : 4;
    const GridSpec spec(m, -8, 8);
    const std::size_t dim = static_cast<std::size_t>(rng.integer(1, 3));
    const auto kind = random_kind(rng);
    Rng sub(Rng::mix(seed, 0x1000 + i));
    auto w1 = random_function(sub, spec, dim, kind, 3.0);
    auto w2 = random_function(sub, spec, dim, kind, 3.0);
    pool.push_back({std::move(w1), std::move(w2), {{"pool_index", i}, {"m", m}, {"dim", dim}}});
  }

  std::size_t violations = 0;
  double worst = INFINITY;
  json worst_witness;
  for (std::size_t draw = 0; draw < draws; ++draw) {
    const auto& pair = pool[static_cast<std::size_t>(rng.integer(0, static_cast<long>(pool.size()) - 1))];
    const auto& spec = pair.w1.spec();
    const long m = spec.m();
    const long shift = rng.integer(-2, 2);
    const double p = rng.uniform(1.0, 4.0);
    const long s_cells = rng.integer(-5 * m, 3 * m - 1);     // s in [-5, 3)
    const long tau_cells = rng.integer(-m, m);                // |tau| <= 1
    const long s_floor = s_cells >= 0 ? s_cells / m : -((-s_cells + m - 1) / m);

    // Index of grid point t in cells from n_lo.
    const auto cell = [&](long t_cells) { return static_cast<std::size_t>(t_cells - spec.n_lo() * m); };
    const auto term = [&](long t_cells) {
      const auto c = cell(t_cells);
      return power_term(distance(pair.w1.point(c + static_cast<std::size_t>(shift * m)), pair.w2.point(c),
                                 pair.w1.norm_kind()),
                        p);
    };
    ExactSum lhs, rhs;
    const long start = s_cells + tau_cells;
    for (long i = 0; i < m; ++i) lhs.add(term(start + i));
    for (long i = (s_floor - 1) * m; i < (s_floor + 3) * m; ++i) rhs.add(term(i));
    const double l = lhs.value() / static_cast<double>(m);
    const double rr = rhs.value() / static_cast<double>(m);
    const double margin = rr - l;
    if (margin < worst) {
      worst = margin;
      worst_witness = {{"pair", pair.description}, {"shift", shift}, {"p", p},
                       {"s", static_cast<double>(s_cells) / m}, {"tau", static_cast<double>(tau_cells) / m},
                       {"lhs", l}, {"rhs", rr}};
    }
    if (!(l <= rr)) ++violations;
  }
  add(r, "four-window domination over " + std::to_string(draws) + " draws", worst, violations == 0,
      json{{"tightest", worst_witness}, {"violations", violations}});

  // Equal functions with zero shift give zero on both sides.
  const auto& w = pool.front().w1;
  const auto zero = difference_norm(w, w, 2.0);
  add(r, "w1 = w2, shift 0: both sides vanish", -zero.grid_sup_pow, zero.grid_sup_pow == 0.0);
  r.runtime_ms = timer.ms();
  return r;
}

VerificationReport suite_ui_exactness(std::uint64_t seed, std::size_t instances) {
  Timer timer;
  VerificationReport r;
  r.suite = "ui-exactness";
  r.seed = seed;
  const std::vector<double> deltas = {0.0, 0.1, 0.25, 1.0 / 3.0, 0.5, 0.77, 1.0};
  r.config = {{"instances", instances}, {"m_range", {2, 12}}, {"deltas", deltas}, {"tolerance", 1e-12}};
  for (std::size_t i = 0; i < instances; ++i) {
    Rng rng(Rng::mix(seed, 0x5000 + i));
    const int m = static_cast<int>(rng.integer(2, 12));
    const long len = rng.integer(2, 3);
    const GridSpec spec(m, -1, -1 + len);
    const auto dim = static_cast<std::size_t>(rng.integer(1, 3));
    const auto kind = random_kind(rng);
    const double p = rng.pick(std::vector<double>{1.0, 1.5, 2.0, 3.0});
    const auto u = random_function(rng, spec, dim, kind, 3.0);
    const auto terms = power_terms(u, p);
    const auto greedy = ui_modulus(u, p, deltas);

    double worst = 0.0;
    std::vector<double> brute(deltas.size(), 0.0);
    const auto mm = static_cast<std::size_t>(m);
    for (std::size_t j = 0; j + mm <= terms.size(); ++j) {
      const std::span<const double> window(terms.data() + j, mm);
      for (std::size_t k = 0; k < deltas.size(); ++k) {
        const double b = ui_window_max_bruteforce(window, deltas[k]);
        brute[k] = std::max(brute[k], b);
        worst = std::max(worst, std::fabs(b - ui_window_max(window, deltas[k])));
      }
    }
    for (std::size_t k = 0; k < deltas.size(); ++k) worst = std::max(worst, std::fabs(brute[k] - greedy.modulus[k]));
    const bool ok = worst <= 1e-12;
    add(r, "instance " + std::to_string(i) + " (m=" + std::to_string(m) + "): greedy = enumeration", 1e-12 - worst, ok,
        ok ? json(nullptr) : json{{"u", io::to_json(u)}, {"p", p}, {"greedy", greedy.modulus}, {"enumeration", brute}});
  }
  r.runtime_ms = timer.ms();
  return r;
}

VerificationReport suite_measure_convergence(std::uint64_t seed, std::size_t pairs) {
  Timer timer;
  VerificationReport r;
  r.suite = "measure-convergence";
  r.seed = seed;
  r.config = {{"pairs", pairs}, {"tchebychev_slack", 1e-12}, {"ui_floor", 1.0 - 1e-9}, {"convergence_tol", 0.05},
              {"ui_tol", 0.1}};

  std::size_t violations = 0;
  double worst = INFINITY;
  json worst_witness;
  for (std::size_t i = 0; i < pairs; ++i) {
    Rng rng(Rng::mix(seed, 0x5600 + i));
    const GridSpec spec(static_cast<int>(rng.pick(std::vector<long>{4, 10, 20})), 0, rng.integer(2, 5));
    const auto dim = static_cast<std::size_t>(rng.integer(1, 2));
    const auto kind = random_kind(rng);
    const auto u = random_function(rng, spec, dim, kind, 2.0);
    const auto v = random_function(rng, spec, dim, kind, 2.0);
    const double p = rng.pick(std::vector<double>{1.0, 2.0, 3.0});
    const double eps = rng.uniform(0.05, 2.0);
    const double defect = measure_defect(v, u, eps).value;
    const double bound = difference_norm(v, u, p).grid_sup_pow / std::pow(eps, p);
    const double margin = bound - defect;
    if (margin < worst) {
      worst = margin;
      worst_witness = {{"pair", i}, {"p", p}, {"epsilon", eps}, {"defect", defect}, {"bound", bound}};
    }
    if (defect > bound * (1.0 + 1e-12)) ++violations;
  }
  add(r, "Tchebychev: defect <= eps^-p dist^p on " + std::to_string(pairs) + " pairs", worst, violations == 0,
      json{{"tightest", worst_witness}, {"violations", violations}});

  // Spike family: u_k = k on [n, n + 1/k) for every integer n, against u = 0.
  const GridSpec spec(200, 0, 4);
  const std::vector<long> ks = {1, 2, 4, 5, 10, 20, 40, 50, 100, 200};
  const auto zero = GridFunction::constant(spec, std::vector<double>{0.0}, NormKind::L2);
  std::vector<GridFunction> family;
  for (long k : ks) {
    family.push_back(GridFunction::sample(spec, 1, NormKind::L2, [k](double t, std::span<double> out) {
      const double f = t - std::floor(t);
      out[0] = f * static_cast<double>(k) < 1.0 - 1e-12 ? static_cast<double>(k) : 0.0;
    }));
  }
  double worst_dist = 0.0, worst_modulus = INFINITY;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double dist = difference_norm(family[i], zero, 1.0).grid_sup;
    worst_dist = std::max(worst_dist, std::fabs(dist - 1.0));
    const double defect = measure_defect(family[i], zero, 0.5).value;
    add(r, "spike k=" + std::to_string(ks[i]) + ": defect(0.5) = 1/k", -std::fabs(defect - 1.0 / ks[i]),
        std::fabs(defect - 1.0 / ks[i]) <= 1e-12);
    const double mod = family_ui_modulus(family, 1.0, {1.0 / static_cast<double>(ks[i])}).modulus[0];
    worst_modulus = std::min(worst_modulus, mod);
  }
  add(r, "spike family: S^1 distance identically 1", -worst_dist, worst_dist <= 1e-12);
  add(r, "spike family: M(1/k) >= 1 - 1e-9", worst_modulus - (1.0 - 1e-9), worst_modulus >= 1.0 - 1e-9);
  const auto spikes = convergence_equivalence_check(family, zero, 1.0, {0.5, 0.1}, {0.005, 0.05, 0.25});
  add(r, "spike family: measure convergence without S^1 convergence, UI not certified", 0.0,
      spikes.measure_converges && !spikes.sp_converges && !spikes.ui_certified && spikes.consistent,
      json{{"report", io::to_json(spikes)}});

  // UI family: u_k = u + w / k converges in both senses.
  const GridSpec small(20, 0, 3);
  const auto base = catalog::sample("quasi2", json::object(), small);
  const auto w = catalog::sample("noise", {{"seed", 7}, {"resolution", 20}}, small);
  std::vector<GridFunction> ui_family;
  for (int k : {1, 4, 16, 64, 256}) ui_family.push_back(base + scale(w, 1.0 / k));
  const auto ui = convergence_equivalence_check(ui_family, base, 2.0, {0.5, 0.1, 0.02}, {0.05, 0.1, 0.25});
  add(r, "u + w/k: both convergences, Tchebychev holds", 0.0,
      ui.sp_converges && ui.measure_converges && ui.tchebychev_holds && ui.consistent,
      ui.consistent ? json(nullptr) : json{{"report", io::to_json(ui)}});
  r.runtime_ms = timer.ms();
  return r;
}

VerificationReport suite_lipschitz_holder(std::uint64_t seed, std::size_t pairs) {
  Timer timer;
  VerificationReport r;
  r.suite = "lipschitz-holder-bound";
  r.seed = seed;
  struct Triple {
    double p, q, r;
  };
  const std::vector<Triple> triples = {{2, 1, 2}, {4, 2, 4}, {2, 2, INFINITY}};
  const std::vector<std::pair<std::string, json>> maps = {
      {"identity", json::object()},
      {"constant-linear", {{"matrix", {{1.5, -0.5}, {0.25, 0.75}}}}},
      {"lipschitz-weighted", {{"weight", "abs(sin(t)) + 0.1"}, {"g", "sin"}}}};
  r.config = {{"pairs", pairs}, {"triples", {{2, 1, 2}, {4, 2, 4}, {2, 2, "inf"}}}, {"relative_slack", 1e-9},
              {"grid", {{"m", 10}, {"window", {-4, 4}}}}, {"dim", 2}};
  const GridSpec spec(10, -4, 4);
  for (const auto& [name, params] : maps) {
    const auto f = catalog::map(name, params, 2);
    const auto weight = sample_scalar(f.lipschitz->weight, spec);
    for (const auto& tr : triples) {
      const double l_norm = stepanov_norm(weight, tr.r).grid_sup;
      double worst = INFINITY;
      json witness;
      std::size_t violations = 0;
      for (std::size_t i = 0; i < pairs; ++i) {
        Rng rng(Rng::mix(seed, 0x4400 + i));
        const auto u = random_function(rng, spec, 2, NormKind::L2, 2.0);
        const auto v = random_function(rng, spec, 2, NormKind::L2, 2.0);
        const double lhs = difference_norm(apply(f, u), apply(f, v), tr.q).grid_sup;
        const double bound = l_norm * difference_norm(u, v, tr.p).grid_sup;
        const double margin = bound * (1.0 + 1e-9) - lhs;
        if (margin < worst) {
          worst = margin;
          witness = {{"pair", i}, {"lhs", lhs}, {"bound", bound}, {"L_norm", l_norm}};
        }
        if (margin < 0.0) ++violations;
      }
      const std::string label = std::isinf(tr.r) ? "inf" : std::to_string(static_cast<int>(tr.r));
      add(r,
          name + " (p,q,r)=(" + std::to_string(static_cast<int>(tr.p)) + "," + std::to_string(static_cast<int>(tr.q)) +
              "," + label + ")",
          worst, violations == 0, json{{"tightest", witness}, {"violations", violations}});
    }
  }
  r.runtime_ms = timer.ms();
  return r;
}

DivergentPair exp_oscillation_pair(long k, double a_t0, double t0, std::size_t dim) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  if (a_t0 == 0.0) throw Error(ErrorCode::InvalidArgument, "a(t0) must be nonzero");
  DivergentPair pr;
  pr.k = k;
  pr.t0 = t0;
  pr.eps = std::log1p(1.0 / (2.0 * static_cast<double>(k)));
  pr.s = std::log(static_cast<double>(k) * std::numbers::pi / std::fabs(a_t0));
  pr.x.assign(dim, 0.0);
  pr.y.assign(dim, 0.0);
  pr.x[0] = pr.s;
  pr.y[0] = pr.s + pr.eps;
  return pr;
}

VerificationReport suite_exp_oscillation(std::uint64_t seed, std::size_t bound_samples) {
  Timer timer;
  VerificationReport r;
  r.suite = "exp-oscillation-example";
  r.seed = seed;
  r.config = {{"dim", 2}, {"p", 2}, {"q", 2}, {"quotient_rel_tol", 1e-6}, {"probe_target", 1e-3},
              {"bound_samples", bound_samples}, {"bound_radius", 2.0}, {"h1_tolerance", 1e-9}};

  // (1) growth with a = 1, b = 0.
  const auto f = catalog::map("exp-oscillation", {{"a", "1"}, {"p", 2}}, 2);
  std::vector<double> ts;
  for (int i = -16; i <= 16; ++i) ts.push_back(i * 0.25);
  const auto ball = sample_ball(2, 3.0, 100);
  const auto h1 = check_H1(f, ts, ball.points);
  add(r, "H1 with a=1, b=0, p=q", h1.tolerance - h1.max_violation, h1.pass, h1.pass ? json(nullptr) : io::to_json(h1));

  // (2), (3) Lipschitz quotient along the divergent family at t0 = 0.
  std::vector<double> quotients;
  for (long k = 1; k <= 100; ++k) {
    const auto pr = exp_oscillation_pair(k, 1.0, 0.0, 2);
    quotients.push_back(distance(f(pr.t0, pr.x), f(pr.t0, pr.y), f.norm_kind()) / distance(pr.x, pr.y, f.norm_kind()));
  }
  const double expected = 1.0 + std::log(10.0 * std::numbers::pi) / std::log(1.05);
  const double rel = std::fabs(quotients[9] - expected) / expected;
  add(r, "quotient at k=10 equals 1 + ln(10 pi)/ln(1.05)", 1e-6 - rel, rel <= 1e-6,
      json{{"quotient", quotients[9]}, {"expected", expected}});
  double min_step = INFINITY;
  for (std::size_t i = 1; i < quotients.size(); ++i) min_step = std::min(min_step, quotients[i] - quotients[i - 1]);
  add(r, "quotients strictly increase for k=1..100", min_step, min_step > 0.0,
      json{{"q1", quotients.front()}, {"q100", quotients.back()}});

  // (4) continuity probe along u_k = u + w/k.
  const GridSpec spec(20, 0, 4);
  const auto u = catalog::sample_components({"sin2pi", "quasi2"}, {{{"amplitude", 0.5}}, {{"amplitude", 0.25}}}, spec);
  const auto w = catalog::sample_components({"noise", "noise"}, {{{"seed", seed % 100000}, {"resolution", 20}, {"amplitude", 0.5}},
                                                      {{"seed", seed % 100000 + 1}, {"resolution", 20}, {"amplitude", 0.5}}},
                                 spec);
  std::vector<GridFunction> perturbations;
  for (double k : {1.0, 10.0, 100.0, 1e3, 1e4, 1e5}) perturbations.push_back(scale(w, 1.0 / k));
  const auto probe = continuity_probe(f, u, perturbations, 2.0, 2.0);
  add(r, "probe output S^2 distance falls below 1e-3", 1e-3 - probe.final_output,
      probe.final_output < 1e-3 && probe.decreasing, json{{"probe", io::to_json(probe)}});

  // (5) |f(t1,x) - f(t2,x)| <= R e^R |a(t1) - a(t2)| on the ball of radius R.
  const double radius = 2.0;
  const auto g = catalog::map("exp-oscillation", {{"a", "sin(t)"}, {"p", 2}}, 2);
  Rng rng(Rng::mix(seed, 0x7007));
  double worst = INFINITY;
  json witness;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < bound_samples; ++i) {
    const double t1 = rng.uniform(-8.0, 8.0), t2 = rng.uniform(-8.0, 8.0);
    std::vector<double> x(2);
    do {
      x = {rng.uniform(-radius, radius), rng.uniform(-radius, radius)};
    } while (norm(x, NormKind::L2) > radius);
    const double lhs = distance(g(t1, x), g(t2, x), NormKind::L2);
    const double rhs = radius * std::exp(radius) * std::fabs(std::sin(t1) - std::sin(t2));
    const double margin = rhs * (1.0 + 1e-12) - lhs;
    if (margin < worst) {
      worst = margin;
      witness = {{"t1", t1}, {"t2", t2}, {"x", x}, {"lhs", lhs}, {"rhs", rhs}};
    }
    if (margin < 0.0) ++violations;
  }
  add(r, "K-bound R e^R |a(t1)-a(t2)| on " + std::to_string(bound_samples) + " samples", worst, violations == 0,
      json{{"tightest", witness}, {"violations", violations}});
  r.runtime_ms = timer.ms();
  return r;
}

VerificationReport suite_hypothesis_implications(std::uint64_t seed) {
  Timer timer;
  VerificationReport r;
  r.suite = "hypothesis-implications";
  r.seed = seed;
  r.config = {{"inputs", {"1-periodic (sin2pi, sawtooth)", "quasi-periodic (quasi2, levitan)"}},
              {"perturbation_scales", {1, 4, 16, 64, 256, 1024}},
              {"note", "finitely many periodic probes stand in for all of the periodic subspace"}};

  std::vector<double> ts;
  for (int i = -24; i <= 24; ++i) ts.push_back(i * 0.125);
  const auto ball = sample_ball(2, 3.0, 64);

  const GridSpec spec(20, -2, 2);
  const auto periodic = catalog::sample_components({"sin2pi", "sawtooth"}, {json::object(), json::object()}, spec);
  const auto quasi = catalog::sample_components({"quasi2", "levitan"}, {json::object(), json::object()}, spec);
  const auto w = catalog::sample_components({"noise", "noise"}, {{{"seed", seed % 1000003}, {"resolution", 20}},
                                                      {{"seed", seed % 1000003 + 1}, {"resolution", 20}}},
                                 spec);
  std::vector<GridFunction> perturbations;
  for (int k : {1, 4, 16, 64, 256, 1024}) perturbations.push_back(scale(w, 1.0 / k));

  const auto record_hyp = [&](const std::string& map, const HypothesisReport& h) {
    add(r, map + ": " + to_string(h.id), h.tolerance - h.max_violation, h.pass, h.pass ? json(nullptr) : io::to_json(h));
    return h.pass;
  };

  struct Case {
    std::string name;
    NemytskiiMap f;
    double p, q;
  };
  std::vector<Case> cases = {
      {"identity", catalog::map("identity", json::object(), 2), 2, 2},
      {"periodic-coefficient", catalog::map("periodic-coefficient", {{"T", 1.0}}, 2), 2, 2},
      {"power-growth", catalog::map("power-growth", {{"p", 2}, {"q", 1}}, 2), 2, 1},
  };
  for (auto& c : cases) {
    bool hyps = true;
    hyps &= record_hyp(c.name, check_H2(c.f, ts, ball.points));
    if (c.name == "identity") {
      hyps &= record_hyp(c.name, check_H1(c.f, ts, ball.points));
      hyps &= record_hyp(c.name, check_lipschitz(c.f, c.f.lipschitz->weight,
                                                 {{0.0, {1.0, 0.0}, {0.0, 1.0}}, {1.5, {2.0, -1.0}, {-0.5, 0.25}}}));
    } else if (c.name == "periodic-coefficient") {
      hyps &= record_hyp(c.name, check_H4(c.f, 1.0, ts, ball.points));
      hyps &= record_hyp(c.name, check_H5(c.f, 1.0, ts, ball.points));
    } else {
      hyps &= record_hyp(c.name, check_autonomous_growth(c.f, ball.points));
    }
    for (const auto& [label, input] : {std::pair<std::string, const GridFunction*>{"periodic", &periodic},
                                       std::pair<std::string, const GridFunction*>{"quasi-periodic", &quasi}}) {
      const auto probe = continuity_probe(c.f, *input, perturbations, c.p, c.q);
      const bool consistent = !hyps || probe.decreasing;
      const double top = *std::max_element(probe.envelope.begin(), probe.envelope.end());
      add(r, c.name + " on " + label + " input: hypotheses imply a decreasing probe", top - probe.final_output,
          consistent, consistent ? json(nullptr) : json{{"map", c.name}, {"probe", io::to_json(probe)}});
    }
  }

  // Modulus hypothesis: continuous maps pass, comb-step passes only when its teeth fit the budget.
  const GridSpec t_grid(40, -2, 2);
  const auto line = sample_ball(1, 2.0, 801);
  const std::vector<double> deltas = {0.005, 0.05, 0.2};
  const std::vector<double> thetas = {0.9, 0.5, 0.1, 0.05};
  const auto lw = catalog::map("lipschitz-weighted", json::object(), 1);
  record_hyp("lipschitz-weighted", check_H3(lw, line, 0.5, thetas, deltas, t_grid));
  const auto narrow = catalog::map("comb-step", {{"width", 0.25}}, 1);
  record_hyp("comb-step width 0.25 budget 0.5", check_H3(narrow, line, 0.5, thetas, deltas, t_grid));
  const auto wide = catalog::map("comb-step", {{"width", 0.75}}, 1);
  const auto wide_h3 = check_H3(wide, line, 0.5, thetas, deltas, t_grid);
  add(r, "comb-step width 0.75 budget 0.5: H3 fails", 0.0, !wide_h3.pass);
  const auto wide_h2 = check_H2(wide, {0.0}, {{0.0}}, 1e-8);
  add(r, "comb-step: H2 fails at the jump", 0.0, !wide_h2.pass);
  r.runtime_ms = timer.ms();
  return r;
}

VerificationReport suite_certificates(std::uint64_t seed) {
  Timer timer;
  VerificationReport r;
  r.suite = "certificates";
  r.seed = seed;
  r.config = {{"periodic", {{"function", "sin2pi"}, {"m", 10}, {"window", {-8, 8}}, {"half_width", 8}, {"epsilon", 1e-12}}},
              {"monotonicity", {{"function", "quasi2"}, {"m", 10}, {"window", {-30, 30}}, {"half_width", 50},
                                {"epsilons", {0.05, 0.1, 0.2, 0.4, 0.8}}}},
              {"transfer", {{"v", "quasi2"}, {"u", "sin(v)"}, {"lipschitz", 1}, {"epsilon", 0.4}}}};

  // Integer shifts of sin(2 pi t) are exact periods.
  const auto sine = catalog::sample("sin2pi", json::object(), GridSpec(10, -8, 8));
  const auto cert = ap_scan(sine, 1e-12, ScanMode::BohrSup, 1.0, 8.0);
  bool integers_only = cert.accepted_cells.size() == 17;
  for (long c : cert.accepted_cells) integers_only &= c % 10 == 0;
  add(r, "sin2pi: accepted shifts are exactly the integers in [-8, 8]", 0.0, integers_only,
      integers_only ? json(nullptr) : io::to_json(cert));
  const bool gap_one = cert.max_gap && *cert.max_gap == 1.0;
  add(r, "sin2pi: max_gap = 1", gap_one ? 0.0 : -1.0, gap_one);
  const auto cert_s = ap_scan(sine, 1e-12, ScanMode::StepanovP, 2.0, 8.0);
  add(r, "sin2pi: Stepanov scan agrees", 0.0, cert_s.accepted_cells == cert.accepted_cells);

  // Accepted sets grow with epsilon.
  const auto quasi = catalog::sample("quasi2", json::object(), GridSpec(10, -30, 30));
  for (auto mode : {ScanMode::BohrSup, ScanMode::StepanovP}) {
    const auto curve = ap_defect_curve(quasi, mode, 2.0, 50.0);
    std::vector<long> previous;
    bool monotone = true;
    std::size_t previous_count = 0;
    for (double eps : {0.05, 0.1, 0.2, 0.4, 0.8}) {
      const auto c = certificate_from_curve(curve, eps);
      monotone &= std::includes(c.accepted_cells.begin(), c.accepted_cells.end(), previous.begin(), previous.end());
      previous_count = c.accepted_cells.size();
      previous = c.accepted_cells;
    }
    add(r, std::string("quasi2 ") + to_string(mode) + ": certificates monotone in epsilon", 0.0, monotone,
        json{{"accepted_at_largest_epsilon", previous_count}});
  }

  // Certificate transfer through a Lipschitz composition u = sin(v).
  const GridSpec spec(10, -12, 12);
  const auto v = catalog::sample("quasi2", json::object(), spec);
  const auto f = catalog::map("lipschitz-weighted", {{"weight", "1"}, {"g", "sin"}}, 1);
  const auto u = apply(f, v);
  const double eps = 0.4, lip = 1.0;
  const auto consistency = ap_implies_consistency(u, v, eps, lip, 6.0);
  add(r, "transfer: |u(t1)-u(t2)| <= eps/2 + M |v(t1)-v(t2)|", -consistency.max_violation, consistency.holds,
      consistency.holds ? json(nullptr) : io::to_json(consistency));
  const auto cert_v = ap_scan(v, eps / (2.0 * lip), ScanMode::BohrSup, 1.0, 6.0);
  const auto cert_u = ap_scan(u, eps, ScanMode::BohrSup, 1.0, 6.0);
  const bool contained = std::includes(cert_u.accepted_cells.begin(), cert_u.accepted_cells.end(),
                                       cert_v.accepted_cells.begin(), cert_v.accepted_cells.end());
  add(r, "transfer: shifts accepted for v at eps/(2M) are accepted for u at eps", 0.0, contained && !cert_v.accepted.empty(),
      json{{"accepted_v", cert_v.accepted.size()}, {"accepted_u", cert_u.accepted.size()}});

  // Exact periods also give zero almost-automorphy residuals.
  const auto wide_sine = catalog::sample("sin2pi", json::object(), GridSpec(10, -20, 20));
  const auto aa = aa_check(wide_sine, {1, 2, 3, 4, 5, 6, 7, 8}, {-1.5, -0.3, 0.0, 0.7, 1.2}, 1e-9);
  add(r, "sin2pi: AA residuals along integer shifts", 1e-9 - aa.max_residual(), aa.pass,
      aa.pass ? json(nullptr) : io::to_json(aa));
  r.runtime_ms = timer.ms();
  return r;
}

std::vector<std::string> suite_ids() {
  return {"bochner-algebra",     "window-domination",        "ui-exactness",  "measure-convergence",
          "lipschitz-holder-bound", "exp-oscillation-example", "hypothesis-implications", "certificates"};
}

VerificationReport run_suite(std::string_view id, std::uint64_t seed) {
  if (id == "bochner-algebra" || id == "eq6-sandwich" || id == "sandwich") return suite_bochner_algebra(seed);
  if (id == "window-domination") return suite_window_domination(seed);
  if (id == "ui-exactness") return suite_ui_exactness(seed);
  if (id == "measure-convergence") return suite_measure_convergence(seed);
  if (id == "lipschitz-holder-bound") return suite_lipschitz_holder(seed);
  if (id == "exp-oscillation-example" || id == "section7") return suite_exp_oscillation(seed);
  if (id == "hypothesis-implications") return suite_hypothesis_implications(seed);
  if (id == "certificates") return suite_certificates(seed);
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(id) + "'");
}

std::vector<VerificationReport> run_all(std::uint64_t seed) {
  const auto ids = suite_ids();
  std::vector<VerificationReport> out(ids.size());
  parallel_for(ids.size(), [&](std::size_t i) { out[i] = run_suite(ids[i], seed); }, 1);
  return out;
}

}  // namespace stepanov::harness
