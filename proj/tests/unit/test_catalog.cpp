#include <cmath>
#include <numbers>

#include "doctest.h"
#include "stepanov/catalog.hpp"
#include "stepanov/error.hpp"

using namespace stepanov;

TEST_CASE("quasi2 matches direct evaluation") {
  const auto f = catalog::function("quasi2");
  const double pi = std::numbers::pi;
  for (double t : {-3.1, 0.0, 0.4, 17.25})
    CHECK(f(t) == doctest::Approx(std::sin(2 * pi * t) + std::sin(2 * std::sqrt(2.0) * pi * t)).epsilon(1e-14));
  const GridSpec spec(10, -1, 1);
  const auto u = catalog::sample("quasi2", {{"amplitude", 2.0}, {"shift", 0.5}}, spec);
  for (std::size_t i = 0; i < u.cells(); ++i)
    CHECK(u.point(i)[0] == doctest::Approx(2.0 * f(spec.cell_start(i) + 0.5)).epsilon(1e-14));
}

TEST_CASE("piecewise catalog functions") {
  const auto spike = catalog::function("spike", {{"center", 1.0}, {"width", 0.5}, {"height", 3.0}});
  CHECK(spike(0.75) == 3.0);
  CHECK(spike(1.25) == 0.0);
  CHECK(spike(0.7) == 0.0);
  const auto step = catalog::function("step");
  CHECK(step(0.5) == 1.0);
  CHECK(step(1.5) == -1.0);
  CHECK(step(-0.5) == -1.0);
  const auto saw = catalog::function("sawtooth");
  CHECK(saw(-0.25) == 0.75);
}

TEST_CASE("noise is reproducible and bounded") {
  const auto a = catalog::function("noise", {{"seed", 5}, {"resolution", 4}});
  const auto b = catalog::function("noise", {{"seed", 5}, {"resolution", 4}});
  const auto c = catalog::function("noise", {{"seed", 6}, {"resolution", 4}});
  bool differs = false;
  for (double t = -2; t < 2; t += 0.125) {
    CHECK(a(t) == b(t));
    CHECK(std::fabs(a(t)) <= 1.0);
    differs = differs || a(t) != c(t);
  }
  CHECK(differs);
  CHECK(a(0.0) == a(0.2));
}

TEST_CASE("operator norms") {
  const std::vector<std::vector<double>> a{{3.0, 0.0}, {4.0, 5.0}};
  CHECK(catalog::operator_norm(a, NormKind::L1) == 7.0);
  CHECK(catalog::operator_norm(a, NormKind::Linf) == 9.0);
  // Singular values of [[3,0],[4,5]] are 3 sqrt 5 and sqrt 5.
  CHECK(catalog::operator_norm(a, NormKind::L2) == doctest::Approx(3.0 * std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("every listed entry constructs") {
  for (const auto& name : catalog::function_names()) CHECK_NOTHROW(catalog::function(name));
  for (const auto& name : catalog::map_names()) CHECK_NOTHROW(catalog::map(name, {}, 2));
  CHECK_THROWS_AS(catalog::function("nope"), Error);
  CHECK_THROWS_AS(catalog::map("nope", {}, 1), Error);
  CHECK(catalog::map("section7", {}, 1).name() == catalog::map("exp-oscillation", {}, 1).name());
}
