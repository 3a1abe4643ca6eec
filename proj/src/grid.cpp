#include "stepanov/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "stepanov/error.hpp"
#include "stepanov/exact_sum.hpp"

namespace stepanov {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidExponent: return "invalid-exponent";
    case ErrorCode::Shape: return "shape";
    case ErrorCode::InsufficientWindow: return "insufficient-window";
    case ErrorCode::Alignment: return "alignment";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Evaluation: return "evaluation";
    case ErrorCode::Io: return "io";
    case ErrorCode::Unconfigured: return "unconfigured";
  }
  return "unknown";
}

NormKind parse_norm_kind(std::string_view text) {
  if (text == "l1" || text == "L1") return NormKind::L1;
  if (text == "l2" || text == "L2") return NormKind::L2;
  if (text == "linf" || text == "Linf" || text == "LINF") return NormKind::Linf;
  throw Error(ErrorCode::InvalidArgument, "unknown norm kind '" + std::string(text) + "' (expected l1, l2 or linf)");
}

const char* to_string(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::Linf: return "linf";
  }
  return "l2";
}

double norm(std::span<const double> x, NormKind kind) {
  switch (kind) {
    case NormKind::L1: {
      double s = 0.0;
      for (double v : x) s += std::fabs(v);
      return s;
    }
    case NormKind::L2: {
      if (x.size() == 1) return std::fabs(x[0]);
      double s = 0.0;
      for (double v : x) s += v * v;
      return std::sqrt(s);
    }
    case NormKind::Linf: {
      double s = 0.0;
      for (double v : x) s = std::max(s, std::fabs(v));
      return s;
    }
  }
  return 0.0;
}

double distance(std::span<const double> a, std::span<const double> b, NormKind kind) {
  if (a.size() != b.size()) throw Error(ErrorCode::Shape, "distance between vectors of different dimension");
  switch (kind) {
    case NormKind::L1: {
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
      return s;
    }
    case NormKind::L2: {
      if (a.size() == 1) return std::fabs(a[0] - b[0]);
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case NormKind::Linf: {
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::fabs(a[i] - b[i]));
      return s;
    }
  }
  return 0.0;
}

void check_exponent(double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidExponent, "exponent must satisfy p >= 1, got " + std::to_string(p));
}

GridSpec::GridSpec(int m, long n_lo, long n_hi) : m_(m), n_lo_(n_lo), n_hi_(n_hi) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "samples per unit interval must be >= 1");
  if (n_lo >= n_hi) throw Error(ErrorCode::InvalidArgument, "window requires n_lo < n_hi");
}

std::optional<std::size_t> GridSpec::cell_of(double t) const {
  const double r = (t - static_cast<double>(n_lo_)) * m_;
  double k = std::round(r);
  if (std::fabs(r - k) > 1e-9 * std::max(1.0, std::fabs(r))) k = std::floor(r);
  if (k < 0.0 || k >= static_cast<double>(cells())) return std::nullopt;
  return static_cast<std::size_t>(k);
}

long GridSpec::cells_for(double tau) const {
  const double r = tau * m_;
  const double k = std::round(r);
  if (!std::isfinite(r) || std::fabs(r - k) > 1e-9 * std::max(1.0, std::fabs(r)))
    throw Error(ErrorCode::Alignment, "shift " + std::to_string(tau) + " is not a multiple of 1/" + std::to_string(m_));
  return static_cast<long>(k);
}

LpSlice::LpSlice(int m, std::size_t dim, std::vector<double> values, NormKind kind)
    : m_(m), dim_(dim), values_(std::move(values)), kind_(kind) {
  if (m < 1 || dim < 1) throw Error(ErrorCode::Shape, "slice needs m >= 1 and dim >= 1");
  if (values_.size() != static_cast<std::size_t>(m) * dim)
    throw Error(ErrorCode::Shape, "slice holds " + std::to_string(values_.size()) + " values, expected " +
                                      std::to_string(static_cast<std::size_t>(m) * dim));
}

namespace {

double root(double integral, double p) {
  if (std::isinf(p) || p == 1.0) return integral;
  if (p == 2.0) return std::sqrt(integral);
  return std::pow(integral, 1.0 / p);
}

double slice_norm_impl(std::span<const double> a, std::span<const double> b, int m, std::size_t dim, NormKind kind,
                       double p) {
  check_exponent(p);
  const bool diff = !b.empty();
  if (std::isinf(p)) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      const auto pa = a.subspan(i * dim, dim);
      s = std::max(s, diff ? distance(pa, b.subspan(i * dim, dim), kind) : norm(pa, kind));
    }
    return s;
  }
  ExactSum acc;
  for (int i = 0; i < m; ++i) {
    const auto pa = a.subspan(i * dim, dim);
    acc.add(power_term(diff ? distance(pa, b.subspan(i * dim, dim), kind) : norm(pa, kind), p));
  }
  return root(acc.value() / m, p);
}

}  // namespace

double lp_norm(const LpSlice& slice, double p) {
  return slice_norm_impl(slice.values(), {}, slice.m(), slice.dim(), slice.norm_kind(), p);
}

double lp_distance(const LpSlice& a, const LpSlice& b, double p) {
  if (a.m() != b.m() || a.dim() != b.dim() || a.norm_kind() != b.norm_kind())
    throw Error(ErrorCode::Shape, "slices differ in m, dim or norm kind");
  return slice_norm_impl(a.values(), b.values(), a.m(), a.dim(), a.norm_kind(), p);
}

GridFunction::GridFunction(GridSpec spec, std::size_t dim, std::vector<double> values, NormKind kind)
    : spec_(spec), dim_(dim), values_(std::move(values)), kind_(kind) {
  if (dim < 1) throw Error(ErrorCode::Shape, "dimension must be >= 1");
  if (values_.size() != spec_.cells() * dim_)
    throw Error(ErrorCode::Shape, "function holds " + std::to_string(values_.size()) + " values, expected " +
                                      std::to_string(spec_.cells() * dim_));
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw EvaluationError("non-finite value in cell " + std::to_string(i / dim_), spec_.cell_start(i / dim_),
                            static_cast<long>(i / dim_));
  }
}

GridFunction GridFunction::sample(const GridSpec& spec, std::size_t dim, NormKind kind, const Sampler& fn) {
  std::vector<double> values(spec.cells() * dim);
  for (std::size_t i = 0; i < spec.cells(); ++i) fn(spec.cell_start(i), std::span<double>(values.data() + i * dim, dim));
  return GridFunction(spec, dim, std::move(values), kind);
}

GridFunction GridFunction::constant(const GridSpec& spec, std::span<const double> c, NormKind kind) {
  std::vector<double> values;
  values.reserve(spec.cells() * c.size());
  for (std::size_t i = 0; i < spec.cells(); ++i) values.insert(values.end(), c.begin(), c.end());
  return GridFunction(spec, c.size(), std::move(values), kind);
}

std::span<const double> GridFunction::value_at(double t) const {
  const auto cell = spec_.cell_of(t);
  if (!cell) throw Error(ErrorCode::InvalidArgument, "t = " + std::to_string(t) + " outside the function window");
  return point(*cell);
}

void require_same_shape(const GridFunction& a, const GridFunction& b) {
  if (!(a.spec() == b.spec())) throw Error(ErrorCode::Shape, "grid specs differ");
  if (a.dim() != b.dim()) throw Error(ErrorCode::Shape, "dimensions differ");
  if (a.norm_kind() != b.norm_kind()) throw Error(ErrorCode::Shape, "norm kinds differ");
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_shape(a, b);
  std::vector<double> out(a.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.values()[i] + b.values()[i];
  return GridFunction(a.spec(), a.dim(), std::move(out), a.norm_kind());
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_shape(a, b);
  std::vector<double> out(a.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.values()[i] - b.values()[i];
  return GridFunction(a.spec(), a.dim(), std::move(out), a.norm_kind());
}

GridFunction scale(const GridFunction& u, double lambda) {
  std::vector<double> out(u.values().begin(), u.values().end());
  for (double& v : out) v *= lambda;
  return GridFunction(u.spec(), u.dim(), std::move(out), u.norm_kind());
}

bool NormBracket::sandwich_holds() const noexcept {
  if (std::isinf(p)) return lower <= grid_sup && grid_sup <= upper;
  return lower_pow <= grid_sup_pow && grid_sup_pow <= 2.0 * lower_pow;
}

std::vector<double> power_terms(const GridFunction& u, double p) {
  std::vector<double> terms(u.cells());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = power_term(u.norm_at(i), p);
  return terms;
}

std::vector<double> window_aggregates(std::span<const double> terms, std::size_t m, double p) {
  if (terms.size() < m || m == 0) return {};
  const std::size_t count = terms.size() - m + 1;
  std::vector<double> out(count);
  if (std::isinf(p)) {
    std::deque<std::size_t> q;  // indices with decreasing terms
    for (std::size_t i = 0; i < terms.size(); ++i) {
      while (!q.empty() && terms[q.back()] <= terms[i]) q.pop_back();
      q.push_back(i);
      if (q.front() + m <= i) q.pop_front();
      if (i + 1 >= m) out[i + 1 - m] = terms[q.front()];
    }
    return out;
  }
  ExactSum acc;
  for (std::size_t i = 0; i < m; ++i) acc.add(terms[i]);
  out[0] = acc.value();
  for (std::size_t j = 1; j < count; ++j) {
    acc.add(terms[j + m - 1]);
    acc.add(-terms[j - 1]);
    out[j] = acc.value();
  }
  return out;
}

NormBracket stepanov_norm(const GridFunction& u, double p) {
  check_exponent(p);
  if (u.spec().length() < 2)
    throw Error(ErrorCode::InsufficientWindow, "Stepanov norm needs a window of at least two unit intervals");
  const auto m = static_cast<std::size_t>(u.spec().m());
  const auto windows = window_aggregates(power_terms(u, p), m, p);
  const double scale_m = std::isinf(p) ? 1.0 : static_cast<double>(m);

  NormBracket b;
  b.p = p;
  std::size_t best = 0;
  double best_int = 0.0;
  for (std::size_t j = 0; j < windows.size(); ++j) {
    if (windows[j] > windows[best]) best = j;
    if (j % m == 0) best_int = std::max(best_int, windows[j]);
  }
  b.grid_sup_pow = windows[best] / scale_m;
  b.lower_pow = best_int / scale_m;
  b.grid_sup = root(b.grid_sup_pow, p);
  b.lower = root(b.lower_pow, p);
  b.upper = std::isinf(p) ? b.lower : (p == 1.0 ? 2.0 * b.lower : std::pow(2.0, 1.0 / p) * b.lower);
  b.argmax_t = u.spec().cell_start(best);
  return b;
}

NormBracket difference_norm(const GridFunction& u, const GridFunction& v, double p) {
  require_same_shape(u, v);
  return stepanov_norm(u - v, p);
}

GridFunction shift_cells(const GridFunction& u, long k) {
  const auto& s = u.spec();
  const long m = s.m();
  // u(t + k/m) is defined for t in [n_lo - k/m, n_hi - k/m); keep the integer part.
  const auto floor_div = [](long a, long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); };
  const long new_lo = -floor_div(k - s.n_lo() * m, m);       // ceil(n_lo - k/m)
  const long new_hi = floor_div(s.n_hi() * m - k, m);        // floor(n_hi - k/m)
  if (new_hi <= new_lo)
    throw Error(ErrorCode::InsufficientWindow, "shift leaves no full unit interval inside the window");
  GridSpec out_spec(s.m(), new_lo, new_hi);
  const long first = (new_lo - s.n_lo()) * m + k;
  std::vector<double> values(out_spec.cells() * u.dim());
  std::copy_n(u.values().begin() + first * static_cast<long>(u.dim()), values.size(), values.begin());
  return GridFunction(out_spec, u.dim(), std::move(values), u.norm_kind());
}

GridFunction shift(const GridFunction& u, double tau) { return shift_cells(u, u.spec().cells_for(tau)); }

}  // namespace stepanov
