#pragma once
// Error-free accumulation of doubles (Shewchuk-style nonoverlapping
// expansions).  Wherever a contract says "exactly" -- zero-sum preconditions,
// greedy prefix bounds -- decisions are made on the exact real value of a sum
// of doubles, not on a rounded running total.  An expansion stores that exact
// value as a sum of nonoverlapping components in increasing magnitude; the
// sign of the exact value is the sign of the most significant component.

#include <cmath>
#include <vector>

#include "bng/error.hpp"

namespace bng {

class exact_sum {
 public:
  // Knuth two-sum: s + err == a + b exactly, for all finite a, b.
  static void two_sum(double a, double b, double& s, double& err) {
    s = a + b;
    const double bv = s - a;
    const double av = s - bv;
    err = (a - av) + (b - bv);
  }

  void add(double x) {
    if (!std::isfinite(x)) fail_precondition("exact_sum: non-finite summand");
    double q = x;
    std::size_t out = 0;
    for (double c : comp_) {
      double s, e;
      two_sum(q, c, s, e);
      if (e != 0.0) comp_[out++] = e;
      q = s;
    }
    comp_.resize(out);
    if (q != 0.0) comp_.push_back(q);
  }

  // Sign of the exact accumulated value: -1, 0, or +1.
  int sign() const {
    if (comp_.empty()) return 0;
    const double top = comp_.back();
    return top > 0.0 ? 1 : -1;
  }

  bool is_zero() const { return comp_.empty(); }

  // |sum| <= bound, decided exactly (bound must be a nonnegative double).
  bool abs_leq(double bound) const {
    if (!(bound >= 0.0)) fail_precondition("exact_sum: bound must be nonnegative");
    exact_sum hi = *this;
    hi.add(-bound);
    if (hi.sign() > 0) return false;  // sum > bound
    exact_sum lo = *this;
    lo.add(bound);
    return lo.sign() >= 0;  // sum >= -bound
  }

  // Nearest-double approximation, for reporting only (never used to decide an
  // exact comparison).  Summing components in increasing magnitude keeps the
  // result faithfully rounded for the short expansions that occur here.
  double approx() const {
    double s = 0.0;
    for (double c : comp_) s += c;
    return s;
  }

 private:
  std::vector<double> comp_;
};

}  // namespace bng
