#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "stepanov/catalog.hpp"
#include "stepanov/error.hpp"
#include "stepanov/grid.hpp"
#include "stepanov/random.hpp"

using namespace stepanov;

namespace {

GridFunction random_function(Rng& rng, int m, long lo, long hi, std::size_t dim) {
  GridSpec spec(m, lo, hi);
  std::vector<double> values(spec.cells() * dim);
  for (double& v : values) v = rng.uniform(-2.0, 2.0);
  return GridFunction(spec, dim, std::move(values), NormKind::L2);
}

// Window integral of |u|^p by direct summation over the cells of [t, t+1).
double naive_window_pow(const GridFunction& u, std::size_t start, double p) {
  const auto m = static_cast<std::size_t>(u.spec().m());
  long double s = 0.0L;
  for (std::size_t i = start; i < start + m; ++i) s += std::pow(u.norm_at(i), p);
  return static_cast<double>(s / m);
}

}  // namespace

TEST_CASE("grid arithmetic is exact at integers") {
  GridSpec spec(10, -3, 4);
  CHECK(spec.cells() == 70);
  CHECK(spec.cell_start(0) == -3.0);
  CHECK(spec.cell_start(30) == 0.0);
  CHECK(spec.cell_start(37) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(spec.cell_of(0.7 + 1e-12) == std::optional<std::size_t>(37));
  CHECK_FALSE(spec.cell_of(4.0).has_value());
  CHECK(spec.cells_for(0.3) == 3);
  CHECK_THROWS_AS(spec.cells_for(0.25), Error);
  CHECK_THROWS_AS(GridSpec(0, 0, 1), Error);
}

TEST_CASE("exponent range") {
  CHECK_NOTHROW(check_exponent(1.0));
  CHECK_NOTHROW(check_exponent(INFINITY));
  CHECK_THROWS_AS(check_exponent(0.5), Error);
  CHECK_THROWS_AS(check_exponent(NAN), Error);
}

TEST_CASE("norm of sin(2 pi t) against the closed-form window average") {
  // Equispaced samples of sin^2 over a full period sum to exactly m/2.
  const GridSpec spec(1000, -2, 2);
  const auto u = catalog::sample("sin2pi", {}, spec);
  const auto b = stepanov_norm(u, 2.0);
  CHECK(b.lower == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(b.grid_sup == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  const auto b1 = stepanov_norm(u, 1.0);
  // Midpoint-free left Riemann sum of |sin| converges to 2/pi.
  CHECK(b1.lower == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-5));
  const auto binf = stepanov_norm(u, INFINITY);
  CHECK(binf.lower == 1.0);
}

TEST_CASE("sliding window sums match direct summation") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = static_cast<int>(rng.integer(1, 12));
    const auto u = random_function(rng, m, -3, 3, 2);
    for (double p : {1.0, 2.0, 3.5}) {
      const auto terms = power_terms(u, p);
      const auto w = window_aggregates(terms, static_cast<std::size_t>(m), p);
      REQUIRE(w.size() == u.cells() - m + 1);
      for (std::size_t j = 0; j < w.size(); ++j)
        CHECK(w[j] / m == doctest::Approx(naive_window_pow(u, j, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sandwich lower <= grid_sup <= 2^(1/p) lower") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = static_cast<int>(rng.integer(1, 20));
    const auto u = random_function(rng, m, -4, 4, static_cast<std::size_t>(rng.integer(1, 3)));
    for (double p : {1.0, 2.0, 3.0, double(INFINITY)}) {
      const auto b = stepanov_norm(u, p);
      CHECK(b.sandwich_holds());
      CHECK(b.lower <= b.grid_sup);
      if (std::isfinite(p)) CHECK(b.grid_sup_pow <= 2.0 * b.lower_pow);
    }
  }
}

TEST_CASE("spike straddling an integer exceeds the integer-window supremum") {
  // Height 1 on [-0.5, 0.5): every integer window sees half the mass.
  const GridSpec spec(10, -2, 2);
  const auto u = catalog::sample("spike", {{"center", 0.0}, {"width", 1.0}}, spec);
  const auto b = stepanov_norm(u, 1.0);
  CHECK(b.lower == doctest::Approx(0.5));
  CHECK(b.grid_sup == doctest::Approx(1.0));
  CHECK(b.argmax_t == doctest::Approx(-0.5));
}

TEST_CASE("shift agrees with pointwise lookup") {
  Rng rng(3);
  const auto u = random_function(rng, 4, -3, 3, 1);
  const auto s = shift(u, 1.25);
  for (std::size_t i = 0; i < s.cells(); ++i) {
    const double t = s.spec().cell_start(i);
    CHECK(s.point(i)[0] == u.value_at(t + 1.25)[0]);
  }
  CHECK_THROWS_AS(shift(u, 0.3), Error);
}

TEST_CASE("shape mismatch") {
  Rng rng(5);
  const auto a = random_function(rng, 4, 0, 2, 1);
  const auto b = random_function(rng, 5, 0, 2, 1);
  CHECK_THROWS_AS(a + b, Error);
  CHECK((a - a).values()[0] == 0.0);
  CHECK(scale(a, 2.0).values()[1] == 2.0 * a.values()[1]);
}
