#include "stepanov/periodicity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stepanov/error.hpp"
#include "stepanov/parallel.hpp"

namespace stepanov {

ScanMode parse_scan_mode(std::string_view text) {
  if (text == "bohr" || text == "bohr-sup" || text == "Bohr-sup") return ScanMode::BohrSup;
  if (text == "stepanov" || text == "stepanov-p" || text == "Stepanov-p") return ScanMode::StepanovP;
  throw Error(ErrorCode::InvalidArgument, "unknown scan mode '" + std::string(text) + "' (expected bohr or stepanov)");
}

const char* to_string(ScanMode mode) noexcept { return mode == ScanMode::BohrSup ? "bohr-sup" : "stepanov-p"; }

namespace {

double root(double integral, double p) {
  if (std::isinf(p) || p == 1.0) return integral;
  if (p == 2.0) return std::sqrt(integral);
  return std::pow(integral, 1.0 / p);
}

double shift_defect(const GridFunction& u, long k, ScanMode mode, double p) {
  const auto n = static_cast<long>(u.cells());
  const long lo = std::max(0L, -k);
  const long hi = std::min(n, n - k);
  const auto kind = u.norm_kind();
  if (mode == ScanMode::BohrSup) {
    double d = 0.0;
    for (long i = lo; i < hi; ++i) d = std::max(d, distance(u.point(i + k), u.point(i), kind));
    return d;
  }
  std::vector<double> terms(static_cast<std::size_t>(hi - lo));
  for (long i = lo; i < hi; ++i) terms[i - lo] = power_term(distance(u.point(i + k), u.point(i), kind), p);
  const auto m = static_cast<std::size_t>(u.spec().m());
  const auto windows = window_aggregates(terms, m, p);
  const double best = *std::max_element(windows.begin(), windows.end());
  return root(std::isinf(p) ? best : best / static_cast<double>(m), p);
}

}  // namespace

DefectCurve ap_defect_curve(const GridFunction& u, ScanMode mode, double p, double half_width) {
  if (mode == ScanMode::StepanovP) check_exponent(p);
  if (!(half_width >= 0.0)) throw Error(ErrorCode::InvalidArgument, "scan half-width must be >= 0");
  const long half = u.spec().cells_for(half_width);
  const auto n = static_cast<long>(u.cells());
  if (n - half < u.spec().m())
    throw Error(ErrorCode::InsufficientWindow,
                "scan half-width leaves less than one unit interval of overlap inside the window");

  DefectCurve curve;
  curve.mode = mode;
  curve.p = p;
  curve.m = u.spec().m();
  curve.half_width_cells = half;
  curve.defects.assign(static_cast<std::size_t>(2 * half + 1), 0.0);
  parallel_for(curve.defects.size(), [&](std::size_t idx) {
    curve.defects[idx] = shift_defect(u, static_cast<long>(idx) - half, mode, p);
  }, 16);
  return curve;
}

APCertificate certificate_from_curve(const DefectCurve& curve, double epsilon, bool keep_curve) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be > 0");
  APCertificate cert;
  cert.epsilon = epsilon;
  cert.mode = curve.mode;
  cert.p = curve.p;
  cert.half_width = static_cast<double>(curve.half_width_cells) / curve.m;
  for (std::size_t i = 0; i < curve.defects.size(); ++i) {
    if (curve.defects[i] <= epsilon) {
      cert.accepted_cells.push_back(static_cast<long>(i) - curve.half_width_cells);
      cert.accepted.push_back(curve.tau(i));
    }
  }
  if (cert.accepted_cells.size() >= 2) {
    long gap = 0;
    for (std::size_t i = 1; i < cert.accepted_cells.size(); ++i)
      gap = std::max(gap, cert.accepted_cells[i] - cert.accepted_cells[i - 1]);
    cert.max_gap = static_cast<double>(gap) / curve.m;
  }
  if (keep_curve) cert.curve = curve;
  return cert;
}

APCertificate ap_scan(const GridFunction& u, double epsilon, ScanMode mode, double p, double half_width,
                      bool keep_curve) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be > 0");
  return certificate_from_curve(ap_defect_curve(u, mode, p, half_width), epsilon, keep_curve);
}

SequenceAPCertificate sequence_ap_scan(const BochnerSequence& seq, double epsilon, long half_width) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be > 0");
  const auto n = static_cast<long>(seq.size());
  if (n < 2) throw Error(ErrorCode::InsufficientWindow, "sequence scan needs at least two indices");
  if (half_width < 0 || half_width > n - 1)
    throw Error(ErrorCode::InsufficientWindow, "scan half-width must lie in [0, " + std::to_string(n - 1) + "]");

  SequenceAPCertificate cert;
  cert.epsilon = epsilon;
  cert.p = seq.p();
  cert.half_width = half_width;
  cert.defects.assign(static_cast<std::size_t>(2 * half_width + 1), 0.0);
  const auto& slices = seq.slices();
  parallel_for(cert.defects.size(), [&](std::size_t idx) {
    const long shift = static_cast<long>(idx) - half_width;
    double d = 0.0;
    for (long i = std::max(0L, -shift); i < std::min(n, n - shift); ++i)
      d = std::max(d, lp_distance(slices[i + shift], slices[i], seq.p()));
    cert.defects[idx] = d;
  }, 4);
  for (std::size_t idx = 0; idx < cert.defects.size(); ++idx)
    if (cert.defects[idx] <= epsilon) cert.accepted.push_back(static_cast<long>(idx) - half_width);
  if (cert.accepted.size() >= 2) {
    long gap = 0;
    for (std::size_t i = 1; i < cert.accepted.size(); ++i) gap = std::max(gap, cert.accepted[i] - cert.accepted[i - 1]);
    cert.max_gap = gap;
  }
  return cert;
}

double AACheckReport::max_residual() const {
  double r = 0.0;
  for (const auto& probe : probes) r = std::max({r, probe.forward_cauchy, probe.forward_to_limit, probe.backward});
  return r;
}

AACheckReport aa_check(const GridFunction& u, const std::vector<double>& shifts, const std::vector<double>& probes,
                       double tolerance) {
  if (shifts.empty()) throw Error(ErrorCode::InvalidArgument, "aa_check needs at least one shift");
  const auto& spec = u.spec();
  const auto n = static_cast<long>(u.cells());
  const auto dim = u.dim();
  const auto kind = u.norm_kind();

  std::vector<long> shift_cells;
  for (double s : shifts) shift_cells.push_back(spec.cells_for(s));

  AACheckReport report;
  report.shifts = shifts;
  report.tolerance = tolerance;
  const std::size_t count = shifts.size();
  report.tail_begin = count - std::max<std::size_t>(1, count / 4);

  const auto in_window = [n](long c) { return c >= 0 && c < n; };
  // Tail average of u(c + t_k); empty when any tail point leaves the window.
  const auto tail_average = [&](long c) -> std::optional<std::vector<double>> {
    std::vector<double> avg(dim, 0.0);
    for (std::size_t k = report.tail_begin; k < count; ++k) {
      const long cell = c + shift_cells[k];
      if (!in_window(cell)) return std::nullopt;
      const auto v = u.point(static_cast<std::size_t>(cell));
      for (std::size_t d = 0; d < dim; ++d) avg[d] += v[d];
    }
    for (double& a : avg) a /= static_cast<double>(count - report.tail_begin);
    return avg;
  };

  for (double t : probes) {
    AAProbe probe;
    probe.t = t;
    const long c = spec.cells_for(t - static_cast<double>(spec.n_lo()));
    if (!in_window(c)) {
      probe.complete = false;
      report.partial = true;
      report.probes.push_back(std::move(probe));
      continue;
    }
    const auto v = tail_average(c);
    if (!v) {
      probe.complete = false;
    } else {
      probe.limit = *v;
      for (std::size_t k = report.tail_begin; k < count; ++k) {
        const auto uk = u.point(static_cast<std::size_t>(c + shift_cells[k]));
        probe.forward_to_limit = std::max(probe.forward_to_limit, distance(uk, probe.limit, kind));
        for (std::size_t k2 = k + 1; k2 < count; ++k2)
          probe.forward_cauchy =
              std::max(probe.forward_cauchy, distance(uk, u.point(static_cast<std::size_t>(c + shift_cells[k2])), kind));
      }
    }
    const auto u_t = u.point(static_cast<std::size_t>(c));
    for (std::size_t k = report.tail_begin; k < count; ++k) {
      const auto back = tail_average(c - shift_cells[k]);
      if (!back) {
        probe.complete = false;
        continue;
      }
      probe.backward = std::max(probe.backward, distance(*back, u_t, kind));
    }
    if (!probe.complete) report.partial = true;
    report.probes.push_back(std::move(probe));
  }
  report.pass = !report.partial && report.max_residual() <= tolerance;
  return report;
}

ConsistencyReport ap_implies_consistency(const GridFunction& u, const GridFunction& v, double epsilon, double lipschitz,
                                         double max_lag) {
  if (!(u.spec() == v.spec())) throw Error(ErrorCode::Shape, "consistency check needs a shared grid");
  if (!(max_lag >= 0.0)) throw Error(ErrorCode::InvalidArgument, "max_lag must be >= 0");
  ConsistencyReport report;
  report.epsilon = epsilon;
  report.lipschitz = lipschitz;
  const auto n = static_cast<long>(u.cells());
  report.max_lag_cells = std::min(u.spec().cells_for(max_lag), n - 1);
  report.max_violation = -epsilon / 2.0;
  for (long lag = 0; lag <= report.max_lag_cells; ++lag) {
    for (long i = 0; i + lag < n; ++i) {
      const double lhs = distance(u.point(i), u.point(i + lag), u.norm_kind());
      const double rhs = epsilon / 2.0 + lipschitz * distance(v.point(i), v.point(i + lag), v.norm_kind());
      ++report.pairs;
      if (lhs - rhs > report.max_violation) {
        report.max_violation = lhs - rhs;
        report.witness_t1 = u.spec().cell_start(i);
        report.witness_t2 = u.spec().cell_start(i + lag);
      }
    }
  }
  report.holds = report.max_violation <= 0.0;
  return report;
}

}  // namespace stepanov
