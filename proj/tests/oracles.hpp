#pragma once
// Independent reference implementations used only by the test suite.  These
// follow the defining formulas numerically (grid search, literal rule traces)
// and deliberately share no code with the library's closed forms, so they can
// serve as oracles for it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Definition-level ell: minimize over a grid of rotations alpha the max chord
// |1 - e^{i(theta+alpha)}|.  Works off chord^2 = 2 - 2cos(theta+alpha) with
// the angle-addition identity so the inner loop is multiply-add only.
inline double ell_grid(const std::vector<double>& phases, std::size_t grid_n = 100000) {
  std::vector<double> c(phases.size()), s(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) {
    c[i] = std::cos(phases[i]);
    s[i] = std::sin(phases[i]);
  }
  double best_sq = 4.0;
  for (std::size_t k = 0; k < grid_n; ++k) {
    const double alpha = two_pi * static_cast<double>(k) / static_cast<double>(grid_n);
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    double min_cos = 1.0;
    for (std::size_t i = 0; i < phases.size(); ++i)
      min_cos = std::min(min_cos, c[i] * ca - s[i] * sa);
    best_sq = std::min(best_sq, 2.0 - 2.0 * min_cos);
  }
  return std::sqrt(std::max(0.0, best_sq));
}

// Literal trace of the greedy reordering rule: if the running sum is > 0 take
// the lowest-index unused entry <= 0, otherwise the lowest-index unused entry
// >= 0.  Returns an empty vector if the rule ever stalls.
inline std::vector<std::size_t> greedy_reference(const std::vector<double>& a) {
  std::vector<bool> used(a.size(), false);
  std::vector<std::size_t> order;
  long double run = 0.0L;
  for (std::size_t step = 0; step < a.size(); ++step) {
    const bool want_nonpositive = run > 0.0L;
    std::size_t pick = a.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (used[i]) continue;
      if (want_nonpositive ? (a[i] <= 0.0) : (a[i] >= 0.0)) {
        pick = i;
        break;
      }
    }
    if (pick == a.size()) return {};
    used[pick] = true;
    order.push_back(pick);
    run += a[pick];
  }
  return order;
}

}  // namespace oracle
