#include "stepanov/nemytskii.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stepanov/error.hpp"

namespace stepanov {

NemytskiiMap::NemytskiiMap(std::string name, std::size_t d_in, std::size_t d_out, Evaluator evaluator, double p,
                           double q, NormKind kind)
    : name_(std::move(name)), d_in_(d_in), d_out_(d_out), evaluator_(std::move(evaluator)), p_(p), q_(q), kind_(kind) {
  if (d_in < 1 || d_out < 1) throw Error(ErrorCode::Shape, "map dimensions must be >= 1");
  check_exponent(p);
  check_exponent(q);
}

NemytskiiMap& NemytskiiMap::with_exponents(double p, double q) {
  check_exponent(p);
  check_exponent(q);
  p_ = p;
  q_ = q;
  return *this;
}

void NemytskiiMap::evaluate(double t, std::span<const double> x, std::span<double> out) const {
  if (x.size() != d_in_)
    throw Error(ErrorCode::Shape, "map '" + name_ + "' expects inputs of dimension " + std::to_string(d_in_));
  evaluator_(t, x, out);
}

std::vector<double> NemytskiiMap::operator()(double t, std::span<const double> x) const {
  std::vector<double> out(d_out_);
  evaluate(t, x, out);
  return out;
}

GridFunction apply(const NemytskiiMap& f, const GridFunction& u) {
  if (u.dim() != f.d_in())
    throw Error(ErrorCode::Shape, "map '" + f.name() + "' expects dimension " + std::to_string(f.d_in()) +
                                      ", function has " + std::to_string(u.dim()));
  const auto& spec = u.spec();
  std::vector<double> values(spec.cells() * f.d_out());
  for (std::size_t i = 0; i < spec.cells(); ++i) {
    const double t = spec.cell_start(i);
    std::span<double> out(values.data() + i * f.d_out(), f.d_out());
    f.evaluate(t, u.point(i), out);
    for (double v : out) {
      if (!std::isfinite(v))
        throw EvaluationError("map '" + f.name() + "' is not finite at t = " + std::to_string(t), t,
                              static_cast<long>(i));
    }
  }
  return GridFunction(spec, f.d_out(), std::move(values), u.norm_kind());
}

GridFunction sample_scalar(const ScalarFn& fn, const GridSpec& spec) {
  return GridFunction::sample(spec, 1, NormKind::L2, [&](double t, std::span<double> out) { out[0] = fn(t); });
}

ScalarFn as_scalar_fn(const GridFunction& g) {
  if (g.dim() != 1) throw Error(ErrorCode::Shape, "scalar weight must have dimension 1");
  return [g](double t) { return g.value_at(t)[0]; };
}

Hypothesis parse_hypothesis(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "h1") return Hypothesis::H1;
  if (s == "h2") return Hypothesis::H2;
  if (s == "h3") return Hypothesis::H3;
  if (s == "h4") return Hypothesis::H4;
  if (s == "h5") return Hypothesis::H5;
  if (s == "lipschitz" || s == "eq49") return Hypothesis::Lipschitz;
  if (s == "autonomous-growth" || s == "eq50") return Hypothesis::AutonomousGrowth;
  if (s == "c2") return Hypothesis::C2;
  throw Error(ErrorCode::InvalidArgument, "unknown hypothesis '" + std::string(text) + "'");
}

const char* to_string(Hypothesis h) noexcept {
  switch (h) {
    case Hypothesis::H1: return "H1";
    case Hypothesis::H2: return "H2";
    case Hypothesis::H3: return "H3";
    case Hypothesis::H4: return "H4";
    case Hypothesis::H5: return "H5";
    case Hypothesis::Lipschitz: return "LIPSCHITZ";
    case Hypothesis::AutonomousGrowth: return "AUTONOMOUS_GROWTH";
    case Hypothesis::C2: return "C2";
  }
  return "?";
}

namespace {

void record(HypothesisReport& r, double violation, double t, std::span<const double> x1,
            std::span<const double> x2 = {}) {
  ++r.samples;
  if (violation > r.max_violation || !r.witness) {
    if (!r.witness || violation > r.max_violation) {
      r.max_violation = violation;
      r.witness = Witness{t, {x1.begin(), x1.end()}, {x2.begin(), x2.end()}};
    }
  }
}

void finish(HypothesisReport& r) { r.pass = r.samples > 0 && r.max_violation <= r.tolerance; }

HypothesisReport growth_check(Hypothesis id, const NemytskiiMap& f, const std::vector<double>& ts,
                              const std::vector<std::vector<double>>& xs, double tolerance) {
  if (!f.growth) throw Error(ErrorCode::Unconfigured, "map '" + f.name() + "' declares no growth bound");
  const auto& g = *f.growth;
  HypothesisReport r;
  r.id = id;
  r.tolerance = tolerance;
  r.metrics["a"] = g.a;
  r.metrics["exponent_p_over_q"] = f.p() / f.q();
  std::vector<double> out(f.d_out());
  for (double t : ts) {
    const double b = g.b ? g.b(t) : 0.0;
    for (const auto& x : xs) {
      f.evaluate(t, x, out);
      const double lhs = norm(out, f.norm_kind());
      const double rhs = g.a * std::pow(norm(x, f.norm_kind()), f.p() / f.q()) + b;
      record(r, lhs - rhs, t, x);
    }
  }
  finish(r);
  return r;
}

}  // namespace

HypothesisReport check_H1(const NemytskiiMap& f, const std::vector<double>& sample_t,
                          const std::vector<std::vector<double>>& sample_x, double tolerance) {
  return growth_check(Hypothesis::H1, f, sample_t, sample_x, tolerance);
}

HypothesisReport check_H4(const NemytskiiMap& f, double period, const std::vector<double>& sample_t,
                          const std::vector<std::vector<double>>& sample_x, double tolerance) {
  if (!(period > 0.0)) throw Error(ErrorCode::InvalidArgument, "period must be > 0");
  std::vector<double> inside;
  for (double t : sample_t)
    if (t >= 0.0 && t < period) inside.push_back(t);
  auto r = growth_check(Hypothesis::H4, f, inside, sample_x, tolerance);
  // |b|_{L^q(0,T)} by a midpoint rule on 4096 cells.
  if (f.growth && f.growth->b) {
    const int cells = 4096;
    double acc = 0.0;
    for (int i = 0; i < cells; ++i) acc += std::pow(std::fabs(f.growth->b((i + 0.5) * period / cells)), f.q());
    r.metrics["b_lq_norm"] = std::pow(acc * period / cells, 1.0 / f.q());
  }
  r.metrics["period"] = period;
  return r;
}

HypothesisReport check_autonomous_growth(const NemytskiiMap& f, const std::vector<std::vector<double>>& sample_x,
                                         double tolerance) {
  auto r = growth_check(Hypothesis::AutonomousGrowth, f, {0.0}, sample_x, tolerance);
  if (f.growth && f.growth->b) {
    const double b = f.growth->b(0.0);
    r.metrics["b"] = b;
    if (!(b > 0.0)) {
      r.pass = false;
      r.note = "constant b must be positive";
    }
  }
  if (!f.autonomous) r.note = "map is not declared autonomous; evaluated at t = 0";
  return r;
}

HypothesisReport check_H5(const NemytskiiMap& f, double period, const std::vector<double>& sample_t,
                          const std::vector<std::vector<double>>& sample_x, double tolerance) {
  if (!(period > 0.0)) throw Error(ErrorCode::InvalidArgument, "period must be > 0");
  HypothesisReport r;
  r.id = Hypothesis::H5;
  r.tolerance = tolerance;
  r.metrics["period"] = period;
  std::vector<double> a(f.d_out()), b(f.d_out());
  for (double t : sample_t) {
    for (const auto& x : sample_x) {
      f.evaluate(t + period, x, a);
      f.evaluate(t, x, b);
      record(r, distance(a, b, f.norm_kind()), t, x);
    }
  }
  finish(r);
  return r;
}

HypothesisReport check_H2(const NemytskiiMap& f, const std::vector<double>& sample_t,
                          const std::vector<std::vector<double>>& sample_x, double step, double tolerance) {
  HypothesisReport r;
  r.id = Hypothesis::H2;
  r.tolerance = tolerance;
  r.metrics["step"] = step;
  std::vector<double> base(f.d_out()), moved(f.d_out());
  for (double t : sample_t) {
    for (const auto& x : sample_x) {
      f.evaluate(t, x, base);
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (double sign : {1.0, -1.0}) {
          auto y = x;
          y[i] += sign * step;
          f.evaluate(t, y, moved);
          record(r, distance(moved, base, f.norm_kind()), t, x, y);
        }
      }
    }
  }
  finish(r);
  return r;
}

HypothesisReport check_lipschitz(const NemytskiiMap& f, const ScalarFn& weight, const std::vector<PointPair>& pairs,
                                 double tolerance) {
  HypothesisReport r;
  r.id = Hypothesis::Lipschitz;
  r.tolerance = tolerance;
  double best_quotient = 0.0;
  std::vector<double> a(f.d_out()), b(f.d_out());
  for (const auto& pair : pairs) {
    const double dx = distance(pair.x1, pair.x2, f.norm_kind());
    if (!(dx > 0.0)) continue;
    f.evaluate(pair.t, pair.x1, a);
    f.evaluate(pair.t, pair.x2, b);
    const double quotient = distance(a, b, f.norm_kind()) / dx;
    best_quotient = std::max(best_quotient, quotient);
    record(r, quotient - weight(pair.t), pair.t, pair.x1, pair.x2);
  }
  r.metrics["max_quotient"] = best_quotient;
  finish(r);
  return r;
}

namespace {

double radical_inverse(std::size_t index, unsigned base) {
  double inv = 1.0 / base, f = inv, result = 0.0;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return result;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Successive Halton points of the cube [-R, R]^d that land in the ball.
class HaltonBall {
 public:
  HaltonBall(std::size_t dim, double radius, NormKind kind) : dim_(dim), radius_(radius), kind_(kind) {
    if (dim > std::size(kPrimes)) throw Error(ErrorCode::InvalidArgument, "ball sampling supports dimension <= 12");
  }
  std::vector<double> next() {
    std::vector<double> x(dim_);
    for (;;) {
      ++index_;
      for (std::size_t d = 0; d < dim_; ++d) x[d] = radius_ * (2.0 * radical_inverse(index_, kPrimes[d]) - 1.0);
      if (norm(x, kind_) <= radius_) return x;
    }
  }

 private:
  std::size_t dim_;
  double radius_;
  NormKind kind_;
  std::size_t index_ = 0;
};

}  // namespace

BallSample sample_ball(std::size_t dim, double radius, std::size_t count, NormKind kind) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "ball radius must be > 0");
  if (count < 2) throw Error(ErrorCode::InvalidArgument, "ball sample needs at least two points");
  BallSample ball;
  ball.radius = radius;
  ball.kind = kind;
  if (dim == 1) {
    for (std::size_t i = 0; i < count; ++i)
      ball.points.push_back({-radius + 2.0 * radius * static_cast<double>(i) / static_cast<double>(count - 1)});
    ball.covering_radius = radius / static_cast<double>(count - 1);
    return ball;
  }
  HaltonBall gen(dim, radius, kind);
  ball.points.push_back(std::vector<double>(dim, 0.0));
  while (ball.points.size() < count) ball.points.push_back(gen.next());
  // Covering radius estimated on 8x as many fresh points of the same sequence.
  double cover = 0.0;
  for (std::size_t k = 0; k < 8 * count; ++k) {
    const auto probe = gen.next();
    double nearest = INFINITY;
    for (const auto& x : ball.points) nearest = std::min(nearest, distance(probe, x, kind));
    cover = std::max(cover, nearest);
  }
  ball.covering_radius = cover;
  return ball;
}

double ModulusCurve::exceptional_excursion(std::size_t delta_index, double theta) const {
  if (!t_grid) return 0.0;
  const auto& row = alpha.at(delta_index);
  const auto m = static_cast<std::size_t>(t_grid->m());
  if (row.size() < m) return 0.0;
  long count = 0, best = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    count += row[i] > theta;
    if (i >= m) count -= row[i - m] > theta;
    if (i + 1 >= m) best = std::max(best, count);
  }
  return static_cast<double>(best) / static_cast<double>(m);
}

ModulusCurve modulus_alpha(const NemytskiiMap& f, const BallSample& ball, std::vector<double> deltas,
                           const GridSpec& t_grid) {
  if (deltas.empty()) throw Error(ErrorCode::InvalidArgument, "modulus needs at least one delta");
  std::sort(deltas.begin(), deltas.end());
  if (!(deltas.front() > 0.0)) throw Error(ErrorCode::InvalidArgument, "deltas must be > 0");
  const auto& pts = ball.points;
  const std::size_t n = pts.size();

  struct Pair {
    double dist;
    std::uint32_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(pts[i], pts[j], f.norm_kind());
      if (d <= deltas.back()) pairs.push_back({d, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.dist < b.dist; });
  // Pairs with index < bound[k] are exactly those within deltas[k].
  std::vector<std::size_t> bound;
  for (double d : deltas)
    bound.push_back(static_cast<std::size_t>(
        std::upper_bound(pairs.begin(), pairs.end(), d, [](double v, const Pair& p) { return v < p.dist; }) -
        pairs.begin()));

  ModulusCurve curve;
  curve.radius = ball.radius;
  curve.points = n;
  curve.covering_radius = ball.covering_radius;
  curve.low_confidence = ball.covering_radius > deltas.front() / 2.0;
  curve.deltas = deltas;
  curve.t_grid = t_grid;
  curve.alpha.assign(deltas.size(), std::vector<double>(t_grid.cells(), 0.0));

  const std::size_t d_out = f.d_out();
  std::vector<double> values(n * d_out);
  for (std::size_t c = 0; c < t_grid.cells(); ++c) {
    const double t = t_grid.cell_start(c);
    for (std::size_t i = 0; i < n; ++i) f.evaluate(t, pts[i], std::span<double>(values.data() + i * d_out, d_out));
    double running = 0.0;
    std::size_t k = 0;
    for (std::size_t idx = 0; idx <= pairs.size(); ++idx) {
      while (k < deltas.size() && bound[k] == idx) curve.alpha[k++][c] = running;
      if (idx == pairs.size() || k == deltas.size()) break;
      const auto& pr = pairs[idx];
      running = std::max(running, distance(std::span<const double>(values.data() + pr.i * d_out, d_out),
                                           std::span<const double>(values.data() + pr.j * d_out, d_out),
                                           f.norm_kind()));
    }
  }
  for (const auto& row : curve.alpha) curve.sup_alpha.push_back(*std::max_element(row.begin(), row.end()));
  return curve;
}

HypothesisReport check_H3(const ModulusCurve& curve, double r_budget, const std::vector<double>& thetas,
                          double vanish_tol) {
  HypothesisReport r;
  r.id = Hypothesis::H3;
  r.tolerance = vanish_tol;
  r.metrics["r_budget"] = r_budget;
  r.metrics["covering_radius"] = curve.covering_radius;
  r.max_violation = INFINITY;
  const std::size_t top = curve.deltas.size() - 1;
  std::vector<double> sorted = thetas;
  std::sort(sorted.begin(), sorted.end());
  for (double theta : sorted) {
    ++r.samples;
    const double excursion = curve.exceptional_excursion(top, theta);
    if (!(excursion < r_budget)) continue;
    // sup of alpha_delta over the complement of N_theta, at the smallest delta.
    double outside = 0.0;
    for (std::size_t c = 0; c < curve.alpha[top].size(); ++c)
      if (!(curve.alpha[top][c] > theta)) outside = std::max(outside, curve.alpha[0][c]);
    if (outside < r.max_violation) {
      r.max_violation = outside;
      r.metrics["theta"] = theta;
      r.metrics["excursion"] = excursion;
      r.metrics["complement_sup_delta_min"] = outside;
      r.metrics["delta_min"] = curve.deltas.front();
    }
    if (outside <= vanish_tol) break;
  }
  if (curve.low_confidence) r.note = "covering radius exceeds half the smallest delta; modulus is a lower estimate";
  finish(r);
  return r;
}

HypothesisReport check_H3(const NemytskiiMap& f, const BallSample& ball, double r_budget,
                          const std::vector<double>& thetas, const std::vector<double>& deltas, const GridSpec& t_grid,
                          double vanish_tol) {
  return check_H3(modulus_alpha(f, ball, deltas, t_grid), r_budget, thetas, vanish_tol);
}

HypothesisReport check_C2(const NemytskiiMap& f, const BallSample& ball, const ScalarFn& a,
                          const std::function<double(double)>& eps, const std::vector<double>& deltas,
                          const GridSpec& t_grid, double tolerance) {
  const auto curve = modulus_alpha(f, ball, deltas, t_grid);
  HypothesisReport r;
  r.id = Hypothesis::C2;
  r.tolerance = tolerance;
  for (std::size_t k = 0; k < curve.deltas.size(); ++k) {
    const double e = eps(curve.deltas[k]);
    for (std::size_t c = 0; c < t_grid.cells(); ++c) {
      const double t = t_grid.cell_start(c);
      const std::vector<double> delta_vec{curve.deltas[k]};
      record(r, curve.alpha[k][c] - a(t) * e, t, delta_vec);
    }
  }
  if (t_grid.length() >= 2) r.metrics["a_s1_norm"] = stepanov_norm(sample_scalar(a, t_grid), 1.0).grid_sup;
  r.metrics["covering_radius"] = curve.covering_radius;
  if (curve.low_confidence) r.note = "covering radius exceeds half the smallest delta";
  finish(r);
  return r;
}

ProbeTable continuity_probe(const NemytskiiMap& f, const GridFunction& u, const std::vector<GridFunction>& perturbations,
                            double p, double q) {
  ProbeTable table;
  table.p = p;
  table.q = q;
  const auto base = apply(f, u);
  for (const auto& w : perturbations) {
    const auto uk = u + w;
    table.input.push_back(stepanov_norm(w, p).grid_sup);
    table.output.push_back(difference_norm(apply(f, uk), base, q).grid_sup);
  }
  const std::size_t n = table.input.size();
  table.envelope.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (table.input[j] <= table.input[i]) table.envelope[i] = std::max(table.envelope[i], table.output[j]);
    if (table.input[i] > 0.0) table.max_ratio = std::max(table.max_ratio, table.output[i] / table.input[i]);
  }
  if (n > 0) {
    const auto lo = std::min_element(table.input.begin(), table.input.end()) - table.input.begin();
    const auto hi = std::max_element(table.input.begin(), table.input.end()) - table.input.begin();
    table.final_output = table.envelope[static_cast<std::size_t>(lo)];
    const double top = table.envelope[static_cast<std::size_t>(hi)];
    table.decreasing = top == 0.0 || table.final_output < top;
  }
  return table;
}

}  // namespace stepanov
