#pragma once

#include <memory>
#include <span>
#include <vector>

#include "stepanov/grid.hpp"

namespace stepanov {

/// Finite window n = n_lo .. n_hi-1 of the discrete Bochner transform
/// Du(n) = u(n + .), an l^inf(Z, L^p(0,1;X)) sequence.
class BochnerSequence {
 public:
  BochnerSequence(long n_lo, long n_hi, double p, std::vector<LpSlice> slices);

  long n_lo() const noexcept { return n_lo_; }
  long n_hi() const noexcept { return n_hi_; }
  double p() const noexcept { return p_; }
  std::size_t size() const noexcept { return slices_.size(); }
  int m() const noexcept { return slices_.front().m(); }
  std::size_t dim() const noexcept { return slices_.front().dim(); }
  NormKind norm_kind() const noexcept { return slices_.front().norm_kind(); }

  const LpSlice& at(long n) const;  // integer index n in [n_lo, n_hi)
  const std::vector<LpSlice>& slices() const noexcept { return slices_; }

  /// sup_n |U(n)|_{L^p} over the window.
  double sup_norm() const;

  bool operator==(const BochnerSequence&) const = default;

 private:
  long n_lo_;
  long n_hi_;
  double p_;
  std::vector<LpSlice> slices_;
};

/// Bochner transform t -> u(t + .) sampled at every grid point of [n_lo, n_hi - 1].
///
/// Built from a GridFunction it is a view: slice j is the contiguous run of
/// cells [j, j + m) of the source, so nothing is copied. Functions that are not
/// in the range of B (differences, arbitrary elements of the target space) use
/// materialized storage with one m-sample slice per grid point.
class BochnerFunction {
 public:
  /// Lazy view onto u.
  explicit BochnerFunction(std::shared_ptr<const GridFunction> source);
  /// Materialized: slices.size() == (length - 1) * m + 1, each of m * dim values.
  BochnerFunction(GridSpec spec, std::size_t dim, NormKind kind, std::vector<double> flat_slices);

  const GridSpec& spec() const noexcept { return spec_; }
  std::size_t dim() const noexcept { return dim_; }
  NormKind norm_kind() const noexcept { return kind_; }
  bool is_view() const noexcept { return source_ != nullptr; }

  /// Number of grid points t_j in [n_lo, n_hi - 1].
  std::size_t size() const noexcept { return static_cast<std::size_t>(spec_.length() - 1) * spec_.m() + 1; }
  double t(std::size_t j) const noexcept { return spec_.cell_start(j); }

  /// Raw m*dim values of the slice at t_j.
  std::span<const double> slice_values(std::size_t j) const noexcept;
  LpSlice slice(std::size_t j) const;

  /// max_j |V(t_j)|_{L^p}.
  double sup_norm(double p) const;

  BochnerFunction materialize() const;

 private:
  GridSpec spec_;
  std::size_t dim_;
  NormKind kind_;
  std::shared_ptr<const GridFunction> source_;
  std::vector<double> data_;
};

BochnerFunction operator-(const BochnerFunction& a, const BochnerFunction& b);
BochnerFunction operator+(const BochnerFunction& a, const BochnerFunction& b);

/// B: u -> u^b. Requires a window of at least two unit intervals.
BochnerFunction bochner(const GridFunction& u);
BochnerFunction bochner(std::shared_ptr<const GridFunction> u);

/// D: u -> (u^b(n))_n; p is carried as metadata for norms and serialization.
BochnerSequence discrete_bochner(const GridFunction& u, double p);

/// D^{-1}: U -> (t -> U([t])({t})).
GridFunction discrete_bochner_inverse(const BochnerSequence& seq);

/// R: V -> (V(n))_n at the integer grid points of V's window.
BochnerSequence restriction(const BochnerFunction& v, double p);

/// L = D^{-1} o R, a left inverse of B.
GridFunction left_inverse(const BochnerFunction& v);

/// J: omega -> (t -> omega({t})) on [n_lo, n_hi).
GridFunction periodize(const LpSlice& omega, long n_lo, long n_hi);

}  // namespace stepanov
