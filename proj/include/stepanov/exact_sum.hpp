#pragma once

#include <cmath>
#include <vector>

namespace stepanov {

/// Exact floating-point accumulator (Shewchuk non-overlapping partials).
///
/// The running state represents the exact real sum of every value added so
/// far, including subtractions, so a sliding window that adds the incoming
/// term and removes the outgoing one never drifts. value() returns the
/// correctly rounded sum, which depends only on the multiset of terms and not
/// on the order they were added in. Two windows holding the same terms in
/// rotated order therefore produce bitwise identical results.
class ExactSum {
 public:
  ExactSum() { partials_.reserve(8); }

  void add(double x) {
    if (!std::isfinite(x)) {
      special_ += x;
      return;
    }
    std::size_t i = 0;
    for (double y : partials_) {
      if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials_[i++] = lo;
      x = hi;
    }
    partials_.resize(i);
    partials_.push_back(x);
  }

  void add(const ExactSum& other) {
    for (double y : other.partials_) add(y);
    special_ += other.special_;
  }

  ExactSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const {
    if (special_ != 0.0 || std::isnan(special_)) return special_;
    std::size_t n = partials_.size();
    if (n == 0) return 0.0;
    double hi = partials_[--n];
    double lo = 0.0;
    while (n > 0) {
      const double x = hi;
      const double y = partials_[--n];
      hi = x + y;
      const double yr = hi - x;
      lo = y - yr;
      if (lo != 0.0) break;
    }
    // Round-half-even correction when the remaining partials push the tail
    // past the halfway point.
    if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
      const double y = lo * 2.0;
      const double x = hi + y;
      const double yr = x - hi;
      if (y == yr) hi = x;
    }
    return hi;
  }

  void clear() {
    partials_.clear();
    special_ = 0.0;
  }

 private:
  std::vector<double> partials_;
  double special_ = 0.0;
};

}  // namespace stepanov
