#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace stepanov {

/// Norm on R^d used for the values of every function in this library.
enum class NormKind { L1, L2, Linf };

NormKind parse_norm_kind(std::string_view text);
const char* to_string(NormKind kind) noexcept;

double norm(std::span<const double> x, NormKind kind);
double distance(std::span<const double> a, std::span<const double> b, NormKind kind);

/// Throws InvalidExponent unless 1 <= p <= +inf.
void check_exponent(double p);

/// norm^p for finite p; the norm itself for p = +inf.
inline double power_term(double nrm, double p) {
  if (p == 1.0) return nrm;
  if (p == 2.0) return nrm * nrm;
  if (std::isinf(p)) return nrm;
  return std::pow(nrm, p);
}

/// Uniform grid of m cells per unit interval on the integer window [n_lo, n_hi).
///
/// Cell i covers [n_lo + i/m, n_lo + (i+1)/m). Every integer of the window is a
/// cell boundary, so integer and fractional parts of grid points are exact
/// index arithmetic: the start of cell i has integer part n_lo + floor(i/m)
/// and fractional part (i mod m)/m.
class GridSpec {
 public:
  GridSpec(int m, long n_lo, long n_hi);

  int m() const noexcept { return m_; }
  long n_lo() const noexcept { return n_lo_; }
  long n_hi() const noexcept { return n_hi_; }
  long length() const noexcept { return n_hi_ - n_lo_; }
  std::size_t cells() const noexcept { return static_cast<std::size_t>(length()) * static_cast<std::size_t>(m_); }
  double h() const noexcept { return 1.0 / m_; }

  double cell_start(std::size_t i) const noexcept {
    const auto mm = static_cast<std::size_t>(m_);
    return static_cast<double>(n_lo_ + static_cast<long>(i / mm)) + static_cast<double>(i % mm) / m_;
  }

  /// Cell containing t, snapping t to the nearest grid point when it is within
  /// 1e-9 cells of one. Empty when t lies outside [n_lo, n_hi).
  std::optional<std::size_t> cell_of(double t) const;

  /// tau * m as an exact integer; throws Alignment when tau is off-grid.
  long cells_for(double tau) const;

  bool operator==(const GridSpec&) const = default;

 private:
  int m_;
  long n_lo_;
  long n_hi_;
};

/// Element of L^p(0,1; R^d): m piecewise-constant samples on [i/m, (i+1)/m).
class LpSlice {
 public:
  LpSlice(int m, std::size_t dim, std::vector<double> values, NormKind kind);

  int m() const noexcept { return m_; }
  std::size_t dim() const noexcept { return dim_; }
  NormKind norm_kind() const noexcept { return kind_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> point(std::size_t i) const noexcept { return {values_.data() + i * dim_, dim_}; }

  bool operator==(const LpSlice&) const = default;

 private:
  int m_;
  std::size_t dim_;
  std::vector<double> values_;
  NormKind kind_;
};

/// Exact L^p norm of the piecewise-constant slice: (sum_i h * |v_i|^p)^(1/p).
double lp_norm(const LpSlice& slice, double p);
double lp_distance(const LpSlice& a, const LpSlice& b, double p);

/// Piecewise-constant function on a GridSpec with values in R^d.
class GridFunction {
 public:
  GridFunction(GridSpec spec, std::size_t dim, std::vector<double> values, NormKind kind);

  using Sampler = std::function<void(double t, std::span<double> out)>;
  /// Evaluates fn at every cell's left endpoint.
  static GridFunction sample(const GridSpec& spec, std::size_t dim, NormKind kind, const Sampler& fn);
  static GridFunction constant(const GridSpec& spec, std::span<const double> c, NormKind kind);

  const GridSpec& spec() const noexcept { return spec_; }
  std::size_t dim() const noexcept { return dim_; }
  NormKind norm_kind() const noexcept { return kind_; }
  std::size_t cells() const noexcept { return spec_.cells(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> point(std::size_t cell) const noexcept { return {values_.data() + cell * dim_, dim_}; }
  double norm_at(std::size_t cell) const { return norm(point(cell), kind_); }

  /// Value of the representative at t; throws InvalidArgument outside the window.
  std::span<const double> value_at(double t) const;

  bool same_shape(const GridFunction& other) const noexcept {
    return spec_ == other.spec_ && dim_ == other.dim_ && kind_ == other.kind_;
  }
  bool operator==(const GridFunction&) const = default;

 private:
  GridSpec spec_;
  std::size_t dim_;
  std::vector<double> values_;
  NormKind kind_;
};

/// Throws Shape unless a and b share spec, dimension and norm.
void require_same_shape(const GridFunction& a, const GridFunction& b);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction scale(const GridFunction& u, double lambda);

/// Certified Stepanov-norm bounds at grid level.
///
/// lower is the integer-window supremum sup_n |Du(n)|_{L^p}; grid_sup is the
/// maximum over every grid-aligned unit window; upper = 2^(1/p) * lower.
/// The *_pow fields hold the same quantities before the p-th root (window
/// integrals of |u|^p); the sandwich is checked on them, where it is exact.
struct NormBracket {
  double p = 1.0;
  double lower = 0.0;
  double grid_sup = 0.0;
  double upper = 0.0;
  double lower_pow = 0.0;
  double grid_sup_pow = 0.0;
  double argmax_t = 0.0;  // start of a window attaining grid_sup

  bool sandwich_holds() const noexcept;
};

NormBracket stepanov_norm(const GridFunction& u, double p);
NormBracket difference_norm(const GridFunction& u, const GridFunction& v, double p);

/// Per-cell terms |u_i|^p (or |u_i| for p = inf).
std::vector<double> power_terms(const GridFunction& u, double p);

/// Sliding unit-window aggregate over per-cell terms: exact sums for finite p,
/// maxima for p = inf. Entry j covers terms [j, j + m); there are
/// terms.size() - m + 1 entries. Sums are not divided by m.
std::vector<double> window_aggregates(std::span<const double> terms, std::size_t m, double p);

/// t -> u(t + tau) on the largest integer window where it is defined.
GridFunction shift(const GridFunction& u, double tau);
GridFunction shift_cells(const GridFunction& u, long k);

}  // namespace stepanov
