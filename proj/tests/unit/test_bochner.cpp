#include "doctest.h"
#include "stepanov/bochner.hpp"
#include "stepanov/error.hpp"
#include "stepanov/random.hpp"

using namespace stepanov;

namespace {

GridFunction random_function(Rng& rng, int m, long lo, long hi, std::size_t dim) {
  GridSpec spec(m, lo, hi);
  std::vector<double> values(spec.cells() * dim);
  for (double& v : values) v = rng.uniform(-1.0, 1.0);
  return GridFunction(spec, dim, std::move(values), NormKind::L2);
}

}  // namespace

TEST_CASE("left inverse and discrete transform round trips are bitwise") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = static_cast<int>(rng.pick(std::vector<int>{1, 4, 10, 50}));
    const long lo = rng.integer(-6, 0);
    const long hi = lo + rng.integer(2, 8);
    const auto u = random_function(rng, m, lo, hi, static_cast<std::size_t>(rng.integer(1, 3)));
    CHECK(left_inverse(bochner(u)) == u);
    CHECK(discrete_bochner_inverse(discrete_bochner(u, 2.0)) == u);
    const auto seq = discrete_bochner(u, 1.0);
    CHECK(discrete_bochner(discrete_bochner_inverse(seq), 1.0) == seq);
  }
}

TEST_CASE("restriction kills the complement of the range of B") {
  Rng rng(9);
  const GridSpec spec(4, -2, 3);
  const std::size_t dim = 2;
  const std::size_t points = static_cast<std::size_t>(spec.length() - 1) * spec.m() + 1;
  std::vector<double> flat(points * spec.m() * dim);
  for (double& v : flat) v = rng.uniform(-1.0, 1.0);
  const BochnerFunction v(spec, dim, NormKind::L2, flat);
  const auto residual = v - bochner(left_inverse(v));
  const auto r = restriction(residual, 2.0);
  for (const auto& slice : r.slices())
    for (double x : slice.values()) CHECK(x == 0.0);
}

TEST_CASE("view slices are the source's shifted cells") {
  Rng rng(1);
  const auto u = random_function(rng, 3, 0, 3, 1);
  const auto v = bochner(u);
  CHECK(v.is_view());
  CHECK(v.size() == 7);
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t c = 0; c < 3; ++c) CHECK(v.slice_values(j)[c] == u.point(j + c)[0]);
  const auto mat = v.materialize();
  CHECK_FALSE(mat.is_view());
  CHECK(mat.sup_norm(2.0) == v.sup_norm(2.0));
}

TEST_CASE("periodized slice has a constant discrete transform") {
  const LpSlice omega(4, 1, {0.5, -1.0, 2.0, 0.0}, NormKind::L2);
  const auto u = periodize(omega, -3, 3);
  const auto seq = discrete_bochner(u, 1.0);
  for (const auto& s : seq.slices()) CHECK(s == omega);
  CHECK(seq.sup_norm() == doctest::Approx(lp_norm(omega, 1.0)));
  CHECK(lp_norm(omega, 1.0) == doctest::Approx(0.875));
}

TEST_CASE("transform needs two unit intervals") {
  Rng rng(4);
  CHECK_THROWS_AS(bochner(random_function(rng, 4, 0, 1, 1)), Error);
}
