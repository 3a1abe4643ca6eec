#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stepanov/bochner.hpp"
#include "stepanov/grid.hpp"

namespace stepanov {

enum class ScanMode { BohrSup, StepanovP };

ScanMode parse_scan_mode(std::string_view text);
const char* to_string(ScanMode mode) noexcept;

/// defect(tau) for every grid-aligned tau in [-W, W].
struct DefectCurve {
  ScanMode mode = ScanMode::BohrSup;
  double p = 1.0;
  int m = 1;
  long half_width_cells = 0;        // W * m
  std::vector<double> defects;      // index k + half_width_cells holds defect(k / m)

  double tau(std::size_t index) const noexcept {
    return static_cast<double>(static_cast<long>(index) - half_width_cells) / m;
  }
  double at_cells(long k) const { return defects.at(static_cast<std::size_t>(k + half_width_cells)); }
};

/// Windowed evidence of almost periodicity. Relative density over all of R is
/// not finitely checkable; max_gap is the empirical inclusion length over the
/// scanned range.
struct APCertificate {
  double epsilon = 0.0;
  ScanMode mode = ScanMode::BohrSup;
  double p = 1.0;
  double half_width = 0.0;
  std::vector<double> accepted;       // sorted shifts with defect <= epsilon
  std::vector<long> accepted_cells;   // same shifts in cells
  std::optional<double> max_gap;      // empty when fewer than two shifts were accepted
  std::optional<DefectCurve> curve;
};

/// Computes defect(tau) = sup_t |u(t + tau) - u(t)| (Bohr) or
/// sup_t |u^b(t + tau) - u^b(t)|_{L^p} (Stepanov) over shifts with at least one
/// unit interval of overlap.
DefectCurve ap_defect_curve(const GridFunction& u, ScanMode mode, double p, double half_width);

APCertificate certificate_from_curve(const DefectCurve& curve, double epsilon, bool keep_curve = false);

APCertificate ap_scan(const GridFunction& u, double epsilon, ScanMode mode, double p, double half_width,
                      bool keep_curve = false);

struct SequenceAPCertificate {
  double epsilon = 0.0;
  double p = 1.0;
  long half_width = 0;
  std::vector<long> accepted;
  std::vector<double> defects;  // index k + half_width
  std::optional<long> max_gap;
};

/// Integer shifts P with sup_n |U(n + P) - U(n)|_{L^p} <= epsilon.
SequenceAPCertificate sequence_ap_scan(const BochnerSequence& seq, double epsilon, long half_width);

struct AAProbe {
  double t = 0.0;
  std::vector<double> limit;            // tail average of u(t + t_k)
  double forward_cauchy = 0.0;          // max |u(t + t_k) - u(t + t_k')| over tail pairs
  double forward_to_limit = 0.0;        // max |u(t + t_k) - v(t)| over the tail
  double backward = 0.0;                // max |v(t - t_k) - u(t)| over the tail
  bool complete = true;                 // every required point was in the window
};

struct AACheckReport {
  std::vector<double> shifts;
  std::size_t tail_begin = 0;
  double tolerance = 0.0;
  std::vector<AAProbe> probes;
  bool partial = false;
  bool pass = false;
  double max_residual() const;
};

/// Extracts v(t) as the last-quartile average of u(t + t_k) and reports the
/// forward Cauchy defects and the back-shift defects |v(t - t_k) - u(t)|.
AACheckReport aa_check(const GridFunction& u, const std::vector<double>& shifts, const std::vector<double>& probes,
                       double tolerance);

struct ConsistencyReport {
  double epsilon = 0.0;
  double lipschitz = 0.0;
  long max_lag_cells = 0;
  std::size_t pairs = 0;
  double max_violation = 0.0;  // max of |u(t1)-u(t2)| - eps/2 - M |v(t1)-v(t2)|
  double witness_t1 = 0.0;
  double witness_t2 = 0.0;
  bool holds = false;
};

/// Checks |u(t1) - u(t2)| <= eps/2 + M |v(t1) - v(t2)| over all grid pairs with
/// |t1 - t2| <= max_lag. When it holds, every shift accepted for v (Bohr mode)
/// at eps/(2M) is accepted for u at eps.
ConsistencyReport ap_implies_consistency(const GridFunction& u, const GridFunction& v, double epsilon, double lipschitz,
                                         double max_lag);

}  // namespace stepanov
