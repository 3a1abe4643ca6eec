#include <cmath>
#include <numbers>

#include "doctest.h"
#include "stepanov/catalog.hpp"
#include "stepanov/error.hpp"
#include "stepanov/harness.hpp"
#include "stepanov/nemytskii.hpp"

using namespace stepanov;

namespace {

std::vector<double> t_samples() {
  std::vector<double> ts;
  for (int i = -16; i <= 16; ++i) ts.push_back(i * 0.25);
  return ts;
}

}  // namespace

TEST_CASE("apply evaluates at left endpoints") {
  const GridSpec spec(4, 0, 2);
  const auto u = catalog::sample("sawtooth", {}, spec);
  const auto f = catalog::map("power-growth", {{"p", 2}, {"q", 1}}, 1);
  const auto v = apply(f, u);
  for (std::size_t i = 0; i < v.cells(); ++i) CHECK(v.point(i)[0] == u.point(i)[0] * std::fabs(u.point(i)[0]));
}

TEST_CASE("ball sample stays inside the ball and includes the origin") {
  for (std::size_t dim : {1u, 2u, 3u}) {
    const auto ball = sample_ball(dim, 2.0, 64);
    CHECK(ball.points.size() == 64);
    if (dim > 1) CHECK(norm(ball.points.front(), NormKind::L2) == 0.0);
    for (const auto& x : ball.points) CHECK(norm(x, NormKind::L2) <= 2.0 + 1e-12);
    CHECK(ball.covering_radius > 0.0);
  }
  // Five points on [-2, 2] are spaced 1 apart.
  CHECK(sample_ball(1, 2.0, 5).covering_radius == doctest::Approx(0.5));
}

TEST_CASE("growth and Lipschitz checks on the identity") {
  const auto f = catalog::map("identity", {}, 2);
  const auto ball = sample_ball(2, 3.0, 64);
  const auto ts = t_samples();
  CHECK(check_H1(f, ts, ball.points).pass);
  CHECK(check_H2(f, ts, ball.points).pass);
  std::vector<PointPair> pairs;
  for (std::size_t i = 1; i < ball.points.size(); ++i) pairs.push_back({0.0, ball.points[i - 1], ball.points[i]});
  const auto lip = check_lipschitz(f, f.lipschitz->weight, pairs);
  CHECK(lip.pass);
  CHECK(lip.metrics.at("max_quotient") == doctest::Approx(1.0));
}

TEST_CASE("growth check detects an understated bound") {
  auto f = catalog::map("identity", {}, 1);
  f.growth->a = 0.5;
  const auto r = check_H1(f, t_samples(), sample_ball(1, 2.0, 9).points);
  CHECK_FALSE(r.pass);
  CHECK(r.max_violation == doctest::Approx(1.0));
  REQUIRE(r.witness.has_value());
  CHECK(std::fabs(r.witness->x1[0]) == doctest::Approx(2.0));
}

TEST_CASE("undeclared metadata is an error") {
  NemytskiiMap f("bare", 1, 1, [](double, std::span<const double> x, std::span<double> out) { out[0] = x[0]; });
  CHECK_THROWS_AS(check_H1(f, {0.0}, {{1.0}}), Error);
}

TEST_CASE("periodic coefficient map satisfies the periodic hypotheses") {
  const auto f = catalog::map("periodic-coefficient", {{"T", 1.0}}, 2);
  const auto ball = sample_ball(2, 2.0, 32);
  const auto ts = t_samples();
  CHECK(check_H4(f, 1.0, ts, ball.points).pass);
  CHECK(check_H5(f, 1.0, ts, ball.points).pass);
  CHECK_FALSE(check_H5(f, 0.5, ts, ball.points).pass);
}

TEST_CASE("autonomous growth needs a positive constant") {
  const auto ball = sample_ball(1, 2.0, 9).points;
  CHECK(check_autonomous_growth(catalog::map("power-growth", {{"p", 2}, {"q", 1}}, 1), ball).pass);
  CHECK_FALSE(check_autonomous_growth(catalog::map("power-growth", {{"p", 2}, {"q", 1}, {"b", 0.0}}, 1), ball).pass);
}

TEST_CASE("discontinuity in x fails continuity") {
  const auto f = catalog::map("comb-step", {{"width", 0.25}}, 1);
  const auto r = check_H2(f, {0.0}, {{0.0}, {0.5}});
  CHECK_FALSE(r.pass);
}

TEST_CASE("modulus of a Lipschitz map is at most L delta") {
  const auto f = catalog::map("constant-linear", {{"matrix", {{2.0, 0.0}, {0.0, 1.0}}}}, 2);
  const auto ball = sample_ball(2, 1.0, 100);
  const std::vector<double> deltas{0.05, 0.2, 0.5};
  const auto c = modulus_alpha(f, ball, deltas, GridSpec(4, 0, 1));
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    CHECK(c.sup_alpha[i] <= 2.0 * deltas[i] + 1e-12);
    if (i > 0) CHECK(c.sup_alpha[i] >= c.sup_alpha[i - 1]);
  }
}

TEST_CASE("H3 separates a narrow comb from a wide one") {
  const auto ball = sample_ball(1, 2.0, 801);
  const GridSpec grid(40, -2, 2);
  const std::vector<double> thetas{0.9, 0.5, 0.1, 0.05};
  const std::vector<double> deltas{0.005, 0.05, 0.2};
  CHECK(check_H3(catalog::map("comb-step", {{"width", 0.25}}, 1), ball, 0.5, thetas, deltas, grid).pass);
  CHECK_FALSE(check_H3(catalog::map("comb-step", {{"width", 0.75}}, 1), ball, 0.5, thetas, deltas, grid).pass);
}

TEST_CASE("exp-oscillation quotient follows the closed form") {
  // At k the pair quotient is 1 + ln(k pi) / ln(1.05).
  const auto f = catalog::map("exp-oscillation", {{"a", "1"}, {"p", 2}}, 1);
  double previous = 0.0;
  for (long k = 1; k <= 100; ++k) {
    const auto pair = harness::exp_oscillation_pair(k, 1.0, 0.0, 1);
    const auto fx = f(pair.t0, pair.x);
    const auto fy = f(pair.t0, pair.y);
    const double q = std::fabs(fx[0] - fy[0]) / std::fabs(pair.x[0] - pair.y[0]);
    if (k == 10) CHECK(q == doctest::Approx(1.0 + std::log(10.0 * std::numbers::pi) / std::log(1.05)).epsilon(1e-6));
    CHECK(q > previous);
    previous = q;
  }
}

TEST_CASE("continuity probe on a Lipschitz map") {
  const GridSpec spec(20, -2, 2);
  const auto u = catalog::sample("sin2pi", {}, spec);
  const auto w = catalog::sample("sawtooth", {}, spec);
  std::vector<GridFunction> family;
  for (double k : {1.0, 10.0, 100.0, 1000.0}) family.push_back(scale(w, 1.0 / k));
  const auto f = catalog::map("identity", {}, 1);
  const auto t = continuity_probe(f, u, family, 2.0, 2.0);
  CHECK(t.decreasing);
  CHECK(t.max_ratio == doctest::Approx(1.0));
  CHECK(t.final_output < 1e-3);
}
