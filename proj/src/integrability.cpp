#include "stepanov/integrability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "stepanov/error.hpp"
#include "stepanov/exact_sum.hpp"

namespace stepanov {

namespace {

// Sliding count of flagged cells over unit windows; returns (max count, argmax window).
std::pair<long, std::size_t> max_window_count(const std::vector<char>& flags, std::size_t m) {
  long count = 0;
  for (std::size_t i = 0; i < m; ++i) count += flags[i];
  long best = count;
  std::size_t arg = 0;
  for (std::size_t j = 1; j + m <= flags.size(); ++j) {
    count += flags[j + m - 1] - flags[j - 1];
    if (count > best) {
      best = count;
      arg = j;
    }
  }
  return {best, arg};
}

// Number of whole cells and the fractional remainder in delta * m, snapping
// products within 1e-9 of an integer.
std::pair<std::size_t, double> split_measure(double delta, std::size_t m) {
  const double cells = delta * static_cast<double>(m);
  const double r = std::round(cells);
  if (std::fabs(cells - r) <= 1e-9 * std::max(1.0, cells)) return {static_cast<std::size_t>(r), 0.0};
  const double whole = std::floor(cells);
  return {static_cast<std::size_t>(whole), cells - whole};
}

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in [0, 1]");
}

}  // namespace

TightnessReport tightness(const GridFunction& u, const std::vector<double>& radii) {
  const auto m = static_cast<std::size_t>(u.spec().m());
  TightnessReport report;
  report.radii = radii;
  std::vector<double> norms(u.cells());
  for (std::size_t i = 0; i < norms.size(); ++i) norms[i] = u.norm_at(i);
  for (double r : radii) {
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "tightness radii must be positive");
    std::vector<char> outside(norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) outside[i] = norms[i] > r ? 1 : 0;
    const auto [best, arg] = max_window_count(outside, m);
    report.excursion.push_back(static_cast<double>(best) / static_cast<double>(m));
    report.witness_t.push_back(u.spec().cell_start(arg));
    std::vector<double> per_window;
    for (long n = 0; n < u.spec().length(); ++n) {
      long c = 0;
      for (std::size_t i = 0; i < m; ++i) c += outside[static_cast<std::size_t>(n) * m + i];
      per_window.push_back(static_cast<double>(c) / static_cast<double>(m));
    }
    report.integer_windows.push_back(std::move(per_window));
  }
  return report;
}

double ui_window_max(std::span<const double> terms, double delta) {
  check_delta(delta);
  const std::size_t m = terms.size();
  std::vector<double> sorted(terms.begin(), terms.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const auto [whole, frac] = split_measure(delta, m);
  ExactSum acc;
  for (std::size_t i = 0; i < std::min(whole, m); ++i) acc.add(sorted[i]);
  if (whole < m && frac > 0.0) acc.add(frac * sorted[whole]);
  return acc.value() / static_cast<double>(m);
}

UIModulusReport ui_modulus(const GridFunction& u, double p, const std::vector<double>& deltas) {
  check_exponent(p);
  if (std::isinf(p)) throw Error(ErrorCode::InvalidExponent, "uniform integrability needs a finite exponent");
  for (double d : deltas) check_delta(d);
  const auto m = static_cast<std::size_t>(u.spec().m());
  const auto terms = power_terms(u, p);

  UIModulusReport report;
  report.p = p;
  report.deltas = deltas;
  report.modulus.assign(deltas.size(), 0.0);
  report.witness_t.assign(deltas.size(), u.spec().cell_start(0));

  std::vector<std::pair<std::size_t, double>> splits;
  for (double d : deltas) splits.push_back(split_measure(d, m));

  std::vector<double> sorted(m);
  for (std::size_t j = 0; j + m <= terms.size(); ++j) {
    std::copy_n(terms.begin() + static_cast<long>(j), m, sorted.begin());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      const auto [whole, frac] = splits[k];
      ExactSum acc;
      for (std::size_t i = 0; i < std::min(whole, m); ++i) acc.add(sorted[i]);
      if (whole < m && frac > 0.0) acc.add(frac * sorted[whole]);
      const double value = acc.value() / static_cast<double>(m);
      if (value > report.modulus[k]) {
        report.modulus[k] = value;
        report.witness_t[k] = u.spec().cell_start(j);
      }
    }
  }
  return report;
}

UIModulusReport family_ui_modulus(const std::vector<GridFunction>& family, double p, const std::vector<double>& deltas) {
  if (family.empty()) throw Error(ErrorCode::InvalidArgument, "family must be nonempty");
  UIModulusReport out = ui_modulus(family.front(), p, deltas);
  for (std::size_t f = 1; f < family.size(); ++f) {
    const auto r = ui_modulus(family[f], p, deltas);
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      if (r.modulus[k] > out.modulus[k]) {
        out.modulus[k] = r.modulus[k];
        out.witness_t[k] = r.witness_t[k];
      }
    }
  }
  return out;
}

MeasureDefect measure_defect(const GridFunction& uk, const GridFunction& u, double epsilon) {
  require_same_shape(uk, u);
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be > 0");
  const auto m = static_cast<std::size_t>(u.spec().m());
  std::vector<char> flags(u.cells());
  for (std::size_t i = 0; i < flags.size(); ++i)
    flags[i] = distance(uk.point(i), u.point(i), u.norm_kind()) >= epsilon ? 1 : 0;
  const auto [best, arg] = max_window_count(flags, m);
  return {epsilon, static_cast<double>(best) / static_cast<double>(m), u.spec().cell_start(arg)};
}

ConvergenceReport convergence_equivalence_check(const std::vector<GridFunction>& family, const GridFunction& u,
                                                double p, const std::vector<double>& epsilons,
                                                const std::vector<double>& deltas, ConvergenceOptions options) {
  if (family.empty()) throw Error(ErrorCode::InvalidArgument, "family must be nonempty");
  if (epsilons.empty() || deltas.empty()) throw Error(ErrorCode::InvalidArgument, "epsilon and delta grids must be nonempty");
  ConvergenceReport report;
  report.p = p;
  report.epsilons = epsilons;
  report.deltas = deltas;
  report.options = options;

  for (const auto& uk : family) {
    const auto bracket = difference_norm(uk, u, p);
    report.distances.push_back(bracket.grid_sup);
    std::vector<double> row;
    for (double eps : epsilons) {
      const double value = measure_defect(uk, u, eps).value;
      row.push_back(value);
      // Chebyshev: meas{|u_k - u| >= eps} <= eps^-p int |u_k - u|^p on every window.
      const double bound = bracket.grid_sup_pow / std::pow(eps, p);
      if (value > 0.0) {
        const double ratio = bound > 0.0 ? value / bound : INFINITY;
        report.tchebychev_worst = std::max(report.tchebychev_worst, ratio);
        if (value > bound * (1.0 + 1e-12)) report.tchebychev_holds = false;
      }
    }
    report.defects.push_back(std::move(row));
  }

  report.family_modulus = family_ui_modulus(family, p, deltas);

  report.sp_converges = report.distances.back() <= options.convergence_tol;
  report.measure_converges =
      std::all_of(report.defects.back().begin(), report.defects.back().end(),
                  [&](double d) { return d <= options.convergence_tol; });
  const auto smallest = std::min_element(deltas.begin(), deltas.end()) - deltas.begin();
  report.ui_certified = report.family_modulus.modulus[static_cast<std::size_t>(smallest)] <= options.ui_tol;
  const bool forward_ok = !report.sp_converges || report.measure_converges;
  const bool backward_ok = !(report.ui_certified && report.measure_converges) || report.sp_converges;
  report.consistent = forward_ok && backward_ok && report.tchebychev_holds;
  return report;
}

}  // namespace stepanov
