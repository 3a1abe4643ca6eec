#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "stepanov/catalog.hpp"
#include "stepanov/error.hpp"
#include "stepanov/periodicity.hpp"
#include "stepanov/random.hpp"

using namespace stepanov;

namespace {

// Defect recomputed from value_at over every overlapping t and window start.
double brute_defect(const GridFunction& u, double tau, ScanMode mode, double p) {
  const auto& s = u.spec();
  const double h = s.h();
  const double lo = s.n_lo() + std::max(0.0, -tau);
  const double hi = s.n_hi() - std::max(0.0, tau);
  if (mode == ScanMode::BohrSup) {
    double d = 0.0;
    for (double t = lo; t < hi - h / 2; t += h)
      d = std::max(d, distance(u.value_at(t + tau), u.value_at(t), u.norm_kind()));
    return d;
  }
  double best = 0.0;
  for (double a = lo; a + 1.0 <= hi + h / 2; a += h) {
    double acc = 0.0;
    for (int c = 0; c < s.m(); ++c) {
      const double t = a + c * h;
      acc += std::pow(distance(u.value_at(t + tau), u.value_at(t), u.norm_kind()), p) * h;
    }
    best = std::max(best, acc);
  }
  return std::pow(best, 1.0 / p);
}

}  // namespace

TEST_CASE("defect curve matches a brute-force scan") {
  Rng rng(17);
  const GridSpec spec(4, -3, 3);
  std::vector<double> values(spec.cells() * 2);
  for (double& v : values) v = rng.uniform(-1.0, 1.0);
  const GridFunction u(spec, 2, values, NormKind::L2);
  for (auto mode : {ScanMode::BohrSup, ScanMode::StepanovP}) {
    for (double p : {1.0, 2.0}) {
      const auto curve = ap_defect_curve(u, mode, p, 2.0);
      REQUIRE(curve.defects.size() == 17);
      for (std::size_t i = 0; i < curve.defects.size(); ++i)
        CHECK(curve.defects[i] == doctest::Approx(brute_defect(u, curve.tau(i), mode, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sin(2 pi t) is periodic with inclusion length one") {
  const GridSpec spec(40, -10, 10);
  const auto u = catalog::sample("sin2pi", {}, spec);
  const auto cert = ap_scan(u, 1e-12, ScanMode::BohrSup, 1.0, 5.0);
  std::vector<double> expected;
  for (int k = -5; k <= 5; ++k) expected.push_back(k);
  CHECK(cert.accepted == expected);
  REQUIRE(cert.max_gap.has_value());
  CHECK(*cert.max_gap == 1.0);
}

TEST_CASE("accepted sets grow with epsilon") {
  const GridSpec spec(20, -30, 30);
  const auto u = catalog::sample("quasi2", {}, spec);
  const auto curve = ap_defect_curve(u, ScanMode::BohrSup, 1.0, 20.0);
  std::size_t previous = 0;
  for (double eps : {0.05, 0.1, 0.3, 0.6, 1.0, 2.0}) {
    const auto cert = certificate_from_curve(curve, eps);
    CHECK(cert.accepted.size() >= previous);
    previous = cert.accepted.size();
  }
}

TEST_CASE("a single accepted shift has no gap") {
  const GridSpec spec(8, -4, 4);
  const auto u = catalog::sample("noise", {{"seed", 3}, {"resolution", 8}}, spec);
  const auto cert = ap_scan(u, 1e-9, ScanMode::BohrSup, 1.0, 2.0);
  CHECK(cert.accepted == std::vector<double>{0.0});
  CHECK_FALSE(cert.max_gap.has_value());
}

TEST_CASE("scan width must leave one unit of overlap") {
  const GridSpec spec(4, 0, 3);
  const auto u = catalog::sample("sin2pi", {}, spec);
  CHECK_THROWS_AS(ap_scan(u, 0.1, ScanMode::BohrSup, 1.0, 2.5), Error);
  CHECK_THROWS_AS(ap_scan(u, 0.0, ScanMode::BohrSup, 1.0, 1.0), Error);
}

TEST_CASE("sequence scan on a periodized sequence") {
  const GridSpec spec(5, -6, 6);
  const auto u = catalog::sample("sawtooth", {}, spec);
  const auto seq = discrete_bochner(u, 1.0);
  const auto cert = sequence_ap_scan(seq, 1e-12, 4);
  CHECK(cert.accepted.size() == 9);
  CHECK(cert.max_gap == std::optional<long>(1));
}

TEST_CASE("almost automorphic check on the Levitan function") {
  // Along shifts that bring the phase of cos t + cos(sqrt 2 t) back near its
  // starting value the shifted function should return close to itself.
  const GridSpec spec(20, -400, 400);
  const auto u = catalog::sample("levitan", {}, spec);
  // Phase defect of a shift s for the two frequencies 1 and sqrt 2; keep the
  // grid shifts where both phases return within 0.3 of their start.
  const double two_pi = 2.0 * std::numbers::pi;
  const auto phase = [&](double s) {
    return std::fabs(std::remainder(s, two_pi)) + std::fabs(std::remainder(std::sqrt(2.0) * s, two_pi));
  };
  std::vector<double> shifts;
  for (long c = 20; c <= 20 * 350; ++c) {
    const double s = c / 20.0;
    if (phase(s) < 0.3 && phase(s) <= phase(s - 0.05) && phase(s) <= phase(s + 0.05)) shifts.push_back(s);
  }
  REQUIRE(shifts.size() >= 4);
  const auto report = aa_check(u, shifts, {-1.0, 0.0, 0.5, 2.0}, 0.5);
  CHECK_FALSE(report.partial);
  CHECK(report.max_residual() < 0.5);
  CHECK(report.pass);
}

TEST_CASE("Lipschitz composition transfers almost periods") {
  const GridSpec spec(20, -10, 10);
  const auto v = catalog::sample("quasi2", {}, spec);
  std::vector<double> values(v.cells());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = std::sin(v.point(i)[0]);
  const GridFunction u(spec, 1, values, NormKind::L2);
  const auto r = ap_implies_consistency(u, v, 0.1, 1.0, 2.0);
  CHECK(r.holds);
  const auto cv = ap_scan(v, 0.05, ScanMode::BohrSup, 1.0, 5.0);
  const auto cu = ap_scan(u, 0.1, ScanMode::BohrSup, 1.0, 5.0);
  for (double s : cv.accepted) CHECK(std::find(cu.accepted.begin(), cu.accepted.end(), s) != cu.accepted.end());
}
