#include "stepanov/bochner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stepanov/error.hpp"

namespace stepanov {

BochnerSequence::BochnerSequence(long n_lo, long n_hi, double p, std::vector<LpSlice> slices)
    : n_lo_(n_lo), n_hi_(n_hi), p_(p), slices_(std::move(slices)) {
  check_exponent(p);
  if (n_hi <= n_lo) throw Error(ErrorCode::InvalidArgument, "sequence window requires n_lo < n_hi");
  if (slices_.size() != static_cast<std::size_t>(n_hi - n_lo))
    throw Error(ErrorCode::Shape, "sequence window holds " + std::to_string(n_hi - n_lo) + " indices but " +
                                      std::to_string(slices_.size()) + " slices were given");
  const auto& first = slices_.front();
  for (const auto& s : slices_) {
    if (s.m() != first.m() || s.dim() != first.dim() || s.norm_kind() != first.norm_kind())
      throw Error(ErrorCode::Shape, "sequence slices differ in m, dim or norm kind");
  }
}

const LpSlice& BochnerSequence::at(long n) const {
  if (n < n_lo_ || n >= n_hi_) throw Error(ErrorCode::InvalidArgument, "index " + std::to_string(n) + " outside sequence");
  return slices_[static_cast<std::size_t>(n - n_lo_)];
}

double BochnerSequence::sup_norm() const {
  double s = 0.0;
  for (const auto& slice : slices_) s = std::max(s, lp_norm(slice, p_));
  return s;
}

BochnerFunction::BochnerFunction(std::shared_ptr<const GridFunction> source)
    : spec_(source->spec()), dim_(source->dim()), kind_(source->norm_kind()), source_(std::move(source)) {
  if (spec_.length() < 2)
    throw Error(ErrorCode::InsufficientWindow, "Bochner transform needs a window of at least two unit intervals");
}

BochnerFunction::BochnerFunction(GridSpec spec, std::size_t dim, NormKind kind, std::vector<double> flat_slices)
    : spec_(spec), dim_(dim), kind_(kind), data_(std::move(flat_slices)) {
  if (spec_.length() < 2)
    throw Error(ErrorCode::InsufficientWindow, "Bochner transform needs a window of at least two unit intervals");
  const std::size_t expected = size() * static_cast<std::size_t>(spec_.m()) * dim_;
  if (data_.size() != expected)
    throw Error(ErrorCode::Shape, "Bochner function holds " + std::to_string(data_.size()) + " values, expected " +
                                      std::to_string(expected));
}

std::span<const double> BochnerFunction::slice_values(std::size_t j) const noexcept {
  const std::size_t width = static_cast<std::size_t>(spec_.m()) * dim_;
  if (source_) return source_->values().subspan(j * dim_, width);
  return {data_.data() + j * width, width};
}

LpSlice BochnerFunction::slice(std::size_t j) const {
  const auto v = slice_values(j);
  return LpSlice(spec_.m(), dim_, std::vector<double>(v.begin(), v.end()), kind_);
}

double BochnerFunction::sup_norm(double p) const {
  double s = 0.0;
  for (std::size_t j = 0; j < size(); ++j) s = std::max(s, lp_norm(slice(j), p));
  return s;
}

BochnerFunction BochnerFunction::materialize() const {
  if (!source_) return *this;
  const std::size_t width = static_cast<std::size_t>(spec_.m()) * dim_;
  std::vector<double> flat;
  flat.reserve(size() * width);
  for (std::size_t j = 0; j < size(); ++j) {
    const auto v = slice_values(j);
    flat.insert(flat.end(), v.begin(), v.end());
  }
  return BochnerFunction(spec_, dim_, kind_, std::move(flat));
}

namespace {

template <class Op>
BochnerFunction combine(const BochnerFunction& a, const BochnerFunction& b, Op op) {
  if (!(a.spec() == b.spec()) || a.dim() != b.dim() || a.norm_kind() != b.norm_kind())
    throw Error(ErrorCode::Shape, "Bochner functions differ in grid, dim or norm kind");
  const std::size_t width = static_cast<std::size_t>(a.spec().m()) * a.dim();
  std::vector<double> flat(a.size() * width);
  for (std::size_t j = 0; j < a.size(); ++j) {
    const auto va = a.slice_values(j);
    const auto vb = b.slice_values(j);
    for (std::size_t i = 0; i < width; ++i) flat[j * width + i] = op(va[i], vb[i]);
  }
  return BochnerFunction(a.spec(), a.dim(), a.norm_kind(), std::move(flat));
}

}  // namespace

BochnerFunction operator-(const BochnerFunction& a, const BochnerFunction& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

BochnerFunction operator+(const BochnerFunction& a, const BochnerFunction& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

BochnerFunction bochner(const GridFunction& u) { return BochnerFunction(std::make_shared<const GridFunction>(u)); }

BochnerFunction bochner(std::shared_ptr<const GridFunction> u) { return BochnerFunction(std::move(u)); }

BochnerSequence discrete_bochner(const GridFunction& u, double p) {
  const auto& s = u.spec();
  const std::size_t width = static_cast<std::size_t>(s.m()) * u.dim();
  std::vector<LpSlice> slices;
  slices.reserve(static_cast<std::size_t>(s.length()));
  for (long k = 0; k < s.length(); ++k) {
    const auto v = u.values().subspan(static_cast<std::size_t>(k) * width, width);
    slices.emplace_back(s.m(), u.dim(), std::vector<double>(v.begin(), v.end()), u.norm_kind());
  }
  return BochnerSequence(s.n_lo(), s.n_hi(), p, std::move(slices));
}

GridFunction discrete_bochner_inverse(const BochnerSequence& seq) {
  // Cell i of the output sits at [t] = n_lo + i / m and {t} = (i mod m) / m, so
  // the value is slice [t] at sample (i mod m): a plain concatenation.
  std::vector<double> values;
  values.reserve(seq.size() * seq.slices().front().values().size());
  for (const auto& slice : seq.slices()) values.insert(values.end(), slice.values().begin(), slice.values().end());
  return GridFunction(GridSpec(seq.m(), seq.n_lo(), seq.n_hi()), seq.dim(), std::move(values), seq.norm_kind());
}

BochnerSequence restriction(const BochnerFunction& v, double p) {
  const auto& s = v.spec();
  // Integer points n_lo .. n_hi - 1 are grid points j = k * m; the last one,
  // n_hi - 1, is the final point of V's t-window.
  std::vector<LpSlice> slices;
  slices.reserve(static_cast<std::size_t>(s.length()));
  for (long k = 0; k < s.length(); ++k) slices.push_back(v.slice(static_cast<std::size_t>(k) * s.m()));
  return BochnerSequence(s.n_lo(), s.n_hi(), p, std::move(slices));
}

GridFunction left_inverse(const BochnerFunction& v) { return discrete_bochner_inverse(restriction(v, 1.0)); }

GridFunction periodize(const LpSlice& omega, long n_lo, long n_hi) {
  GridSpec spec(omega.m(), n_lo, n_hi);
  std::vector<double> values;
  values.reserve(spec.cells() * omega.dim());
  for (long k = n_lo; k < n_hi; ++k) values.insert(values.end(), omega.values().begin(), omega.values().end());
  return GridFunction(spec, omega.dim(), std::move(values), omega.norm_kind());
}

}  // namespace stepanov
