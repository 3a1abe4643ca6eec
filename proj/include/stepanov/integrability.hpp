#pragma once

#include <span>
#include <vector>

#include "stepanov/grid.hpp"

namespace stepanov {

/// Stepanov tightness with the compact set taken as the closed ball of radius R:
/// excursion(R) = sup_t meas{s in (t, t+1) : |u(s)| > R}.
struct TightnessReport {
  std::vector<double> radii;
  std::vector<double> excursion;
  std::vector<double> witness_t;                       // window start attaining the sup
  std::vector<std::vector<double>> integer_windows;    // [radius][n - n_lo]
};

TightnessReport tightness(const GridFunction& u, const std::vector<double>& radii);

/// M(delta) = sup_t max_{E in (t,t+1), meas E <= delta} int_E |u|^p.
struct UIModulusReport {
  double p = 1.0;
  std::vector<double> deltas;
  std::vector<double> modulus;
  std::vector<double> witness_t;
};

/// Largest integral of a piecewise-constant integrand over a set of measure
/// delta inside one unit window. terms holds |u|^p on the m equal cells; the
/// optimum takes whole cells in decreasing order and a fraction of the next.
double ui_window_max(std::span<const double> terms, double delta);

UIModulusReport ui_modulus(const GridFunction& u, double p, const std::vector<double>& deltas);

/// Pointwise max of member moduli: the family's p-uniform-integrability modulus.
UIModulusReport family_ui_modulus(const std::vector<GridFunction>& family, double p, const std::vector<double>& deltas);

/// sup_t meas{s in (t, t+1) : |u_k(s) - u(s)| >= epsilon}.
struct MeasureDefect {
  double epsilon = 0.0;
  double value = 0.0;
  double witness_t = 0.0;
};

MeasureDefect measure_defect(const GridFunction& uk, const GridFunction& u, double epsilon);

struct ConvergenceOptions {
  double convergence_tol = 0.05;  // "tends to zero" surrogate: last member at or below this
  double ui_tol = 0.1;            // family modulus at the smallest delta must not exceed this
};

struct ConvergenceReport {
  double p = 1.0;
  std::vector<double> epsilons;
  std::vector<double> deltas;
  std::vector<double> distances;                 // |u_k - u|_{S^p} (grid sup) per member
  std::vector<std::vector<double>> defects;      // [member][epsilon]
  UIModulusReport family_modulus;
  double tchebychev_worst = 0.0;                 // max of defect / (eps^-p dist^p); <= 1 when it holds
  bool tchebychev_holds = true;
  bool sp_converges = false;
  bool measure_converges = false;
  bool ui_certified = false;
  bool consistent = false;
  ConvergenceOptions options;
};

/// Evaluates both sides of the equivalence between Stepanov convergence and
/// windowed convergence in measure for a finite sequence u_k -> u, together
/// with the family's uniform-integrability modulus.
ConvergenceReport convergence_equivalence_check(const std::vector<GridFunction>& family, const GridFunction& u,
                                                double p, const std::vector<double>& epsilons,
                                                const std::vector<double>& deltas, ConvergenceOptions options = {});

}  // namespace stepanov
