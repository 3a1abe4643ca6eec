#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "stepanov/bochner.hpp"
#include "stepanov/catalog.hpp"
#include "stepanov/harness.hpp"
#include "stepanov/integrability.hpp"
#include "stepanov/random.hpp"

using namespace stepanov;

TEST_CASE("modulus of frac at delta 1/4") {
  // Top quarter of the cells k/m, k = 750..999, integrates to 0.218625 exactly;
  // the continuum value is int_{3/4}^1 s ds = 0.21875.
  const GridSpec spec(1000, -2, 2);
  const auto u = catalog::sample("sawtooth", {}, spec);
  const auto r = ui_modulus(u, 1.0, {0.25});
  CHECK(r.modulus[0] == doctest::Approx(0.218625).epsilon(1e-12));
  CHECK(std::fabs(r.modulus[0] - 0.21875) <= 1e-3);
}

TEST_CASE("greedy window maximum equals subset enumeration") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = static_cast<std::size_t>(rng.integer(1, 12));
    std::vector<double> terms(m);
    for (double& t : terms) t = rng.uniform(0.0, 3.0);
    for (double delta : {0.0, 0.1, 0.25, 1.0 / 3.0, 0.5, 0.77, 1.0}) {
      const double g = ui_window_max(terms, delta);
      const double b = harness::ui_window_max_bruteforce(terms, delta);
      CHECK(std::fabs(g - b) <= 1e-12);
    }
  }
}

TEST_CASE("modulus is monotone in delta and bounded by the norm") {
  const GridSpec spec(16, -4, 4);
  const auto u = catalog::sample("noise", {{"seed", 12}, {"resolution", 16}}, spec);
  const std::vector<double> deltas{0.0, 0.05, 0.1, 0.3, 0.6, 1.0};
  const auto r = ui_modulus(u, 2.0, deltas);
  CHECK(r.modulus[0] == 0.0);
  for (std::size_t i = 1; i < deltas.size(); ++i) CHECK(r.modulus[i] >= r.modulus[i - 1]);
  CHECK(r.modulus.back() == doctest::Approx(std::pow(stepanov_norm(u, 2.0).grid_sup, 2.0)).epsilon(1e-12));
}

TEST_CASE("tightness of frac") {
  // Cells k/m exceed 1/2 strictly for k = m/2 + 1 .. m - 1.
  for (int m : {4, 10, 100}) {
    const GridSpec spec(m, -3, 3);
    const auto u = catalog::sample("sawtooth", {}, spec);
    const auto r = tightness(u, {0.5, 1.0});
    CHECK(r.excursion[0] == doctest::Approx((m / 2.0 - 1.0) / m).epsilon(1e-12));
    CHECK(r.excursion[1] == 0.0);
  }
}

TEST_CASE("measure defect of a spike") {
  const GridSpec spec(100, 0, 4);
  const auto zero = GridFunction::constant(spec, std::vector<double>{0.0}, NormKind::L2);
  for (double k : {1.0, 2.0, 5.0, 10.0}) {
    const auto spike = catalog::sample("spike", {{"center", 2.0}, {"width", 1.0 / k}, {"height", k}}, spec);
    const auto d = measure_defect(spike, zero, 0.5);
    CHECK(d.value == doctest::Approx(1.0 / k).epsilon(1e-12));
    CHECK(stepanov_norm(spike, 1.0).grid_sup == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Tchebychev bound on random pairs") {
  Rng rng(5);
  const GridSpec spec(10, -3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(spec.cells()), b(spec.cells());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = rng.uniform(-1.0, 1.0);
      b[i] = a[i] + rng.uniform(-0.3, 0.3);
    }
    const GridFunction u(spec, 1, a, NormKind::L2), v(spec, 1, b, NormKind::L2);
    for (double p : {1.0, 2.0}) {
      const double eps = rng.uniform(0.05, 0.5);
      const double lhs = measure_defect(u, v, eps).value;
      const double dist = difference_norm(u, v, p).grid_sup;
      CHECK(lhs <= std::pow(dist / eps, p) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("spike family converges in measure but not in norm") {
  const GridSpec spec(200, 0, 4);
  const auto zero = GridFunction::constant(spec, std::vector<double>{0.0}, NormKind::L2);
  std::vector<GridFunction> family;
  for (double k : {1.0, 2.0, 4.0, 5.0, 10.0, 20.0, 40.0, 50.0, 100.0, 200.0})
    family.push_back(catalog::sample("spike", {{"center", 2.0}, {"width", 1.0 / k}, {"height", k}}, spec));
  const auto r = convergence_equivalence_check(family, zero, 1.0, {0.5}, {0.005});
  CHECK(r.measure_converges);
  CHECK_FALSE(r.sp_converges);
  CHECK_FALSE(r.ui_certified);
  CHECK(r.tchebychev_holds);
  CHECK(r.family_modulus.modulus[0] >= 1.0 - 1e-9);
}

TEST_CASE("tightness through Bochner slices equals the direct computation") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = static_cast<int>(rng.integer(1, 16));
    const GridSpec spec(m, -3, 3);
    std::vector<double> values(spec.cells() * 2);
    for (double& v : values) v = rng.uniform(-2.0, 2.0);
    const GridFunction u(spec, 2, values, NormKind::L2);
    const std::vector<double> radii{0.25, 1.0, 2.5};
    const auto direct = tightness(u, radii);
    const auto v = bochner(u);
    for (std::size_t r = 0; r < radii.size(); ++r) {
      long best = 0;
      for (std::size_t j = 0; j < v.size(); ++j) {
        const auto slice = v.slice(j);
        long count = 0;
        for (int c = 0; c < m; ++c) count += norm(slice.point(c), NormKind::L2) > radii[r];
        best = std::max(best, count);
      }
      CHECK(direct.excursion[r] == static_cast<double>(best) / m);
    }
  }
}

TEST_CASE("one tall cell per window has excursion h") {
  const GridSpec spec(8, -2, 2);
  std::vector<double> values(spec.cells(), 0.0);
  for (std::size_t i = 0; i < values.size(); i += 8) values[i] = 5.0;
  const GridFunction u(spec, 1, values, NormKind::L2);
  CHECK(tightness(u, {1.0}).excursion[0] == 0.125);
  CHECK(tightness(u, {5.0}).excursion[0] == 0.0);
}

TEST_CASE("shrinking indicators converge both ways and are uniformly integrable") {
  const GridSpec spec(200, 0, 4);
  const auto zero = GridFunction::constant(spec, std::vector<double>{0.0}, NormKind::L2);
  std::vector<GridFunction> family;
  for (double k : {1.0, 2.0, 5.0, 10.0, 50.0, 100.0})
    family.push_back(catalog::sample("spike", {{"center", 2.0}, {"width", 1.0 / k}}, spec));
  const auto r = convergence_equivalence_check(family, zero, 1.0, {0.5}, {0.005});
  CHECK(r.sp_converges);
  CHECK(r.measure_converges);
  CHECK(r.ui_certified);
  CHECK(r.consistent);
  CHECK(r.distances.back() == doctest::Approx(0.01));
}

TEST_CASE("family modulus of a compact catalog family vanishes with delta") {
  const GridSpec spec(50, -3, 3);
  std::vector<GridFunction> family;
  for (double a : {0.25, 0.5, 1.0}) family.push_back(catalog::sample("quasi2", {{"amplitude", a}}, spec));
  const std::vector<double> deltas{0.02, 0.1, 0.5};
  const auto r = family_ui_modulus(family, 2.0, deltas);
  // |quasi2| <= 2, so any set of measure delta carries at most 4 delta.
  for (std::size_t i = 0; i < deltas.size(); ++i) CHECK(r.modulus[i] <= 4.0 * deltas[i]);
}
