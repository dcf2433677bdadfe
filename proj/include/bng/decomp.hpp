#pragma once
// Diagonal decompositions and angle balancing:
//  - product_decomposition: D-1 factors, factor j supported on (j, j+1) with
//    angles (s_j, -s_j), s_j the j-th prefix sum; requires an exactly zero
//    phase sum.
//  - torus_decomposition: D factors, factor 0 constant, factor j carrying the
//    normalized successive difference from position j on.
//  - greedy_order: the inductive reordering whose prefix sums never exceed
//    max|alpha|; exact-arithmetic sign decisions, valid only for exactly
//    zero-sum input.
//  - angle_normalize: rotate so the largest spectral gap is centered at the
//    antipode, snap to the 2^-40 phase grid, correct to an exactly zero sum,
//    and greedy-order; the achieved prefix bound is checked against
//    2*ell(u) + pi/D.  Candidate rotations cover every widest gap and every
//    second-widest gap (ties enumerated by start phase).
//  - split_angles: theta'_n = theta_n/2 + (-1)^n|theta_n| and its complement;
//    recombination is exact in floating point (the big part is rounded once
//    and the small part is a Sterbenz-exact difference).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bng/diagonal.hpp"
#include "bng/error.hpp"
#include "bng/exact_sum.hpp"
#include "bng/length.hpp"
#include "bng/phase.hpp"

namespace bng {

enum class factor_kind { product, torus };

struct factor_sequence {
  factor_kind kind = factor_kind::product;
  std::size_t dim = 0;
  std::vector<diagonal_unitary> factors;  // full-dimension diagonals
};

inline factor_sequence product_decomposition(const diagonal_unitary& u) {
  const std::size_t dim = u.dim();
  if (dim == 0) fail_precondition("product decomposition: empty input");
  exact_sum total;
  for (double x : u.phases) {
    if (!std::isfinite(x)) fail_precondition("product decomposition: non-finite phase");
    total.add(x);
  }
  if (!total.is_zero())
    fail_precondition(
        "product decomposition: phase sum must be exactly zero "
        "(normalize via angle_normalize first); got " +
        std::to_string(total.approx()));
  factor_sequence out;
  out.kind = factor_kind::product;
  out.dim = dim;
  exact_sum prefix;
  for (std::size_t j = 0; j + 1 < dim; ++j) {
    prefix.add(u.phases[j]);
    const double s = prefix.approx();
    diagonal_unitary f;
    f.phases.assign(dim, 0.0);
    f.phases[j] = s;
    f.phases[j + 1] = -s;
    out.factors.push_back(std::move(f));
  }
  return out;
}

inline factor_sequence torus_decomposition(const diagonal_unitary& v) {
  const std::size_t dim = v.dim();
  if (dim == 0) fail_precondition("torus decomposition: empty input");
  for (double x : v.phases)
    if (!std::isfinite(x)) fail_precondition("torus decomposition: non-finite phase");
  factor_sequence out;
  out.kind = factor_kind::torus;
  out.dim = dim;
  out.factors.reserve(dim);
  diagonal_unitary f0;
  f0.phases.assign(dim, normalize_phase(v.phases[0]));
  out.factors.push_back(std::move(f0));
  for (std::size_t j = 1; j < dim; ++j) {
    diagonal_unitary f;
    f.phases.assign(dim, 0.0);
    const double delta = normalize_phase(v.phases[j] - v.phases[j - 1]);
    for (std::size_t p = j; p < dim; ++p) f.phases[p] = delta;
    out.factors.push_back(std::move(f));
  }
  return out;
}

// The 2x2 block carried by a product-decomposition factor: its start position
// and angle.  Returns no value for an identity factor.
struct product_block {
  std::size_t position = 0;
  double angle = 0.0;
};

inline std::optional<product_block> factor_block(const diagonal_unitary& f) {
  std::size_t j = f.dim();
  for (std::size_t p = 0; p < f.dim(); ++p)
    if (f.phases[p] != 0.0) {
      j = p;
      break;
    }
  if (j == f.dim()) return std::nullopt;
  if (j + 1 >= f.dim() || f.phases[j + 1] != -f.phases[j])
    fail_precondition("factor is not a product-decomposition block");
  for (std::size_t p = j + 2; p < f.dim(); ++p)
    if (f.phases[p] != 0.0)
      fail_precondition("factor is not a product-decomposition block");
  return product_block{j, f.phases[j]};
}

// Greedy balancing permutation.  sigma[n] is the source index taken at step n.
inline std::vector<std::size_t> greedy_order(const std::vector<double>& alphas) {
  for (double x : alphas)
    if (!std::isfinite(x)) fail_precondition("greedy_order: non-finite entry");
  exact_sum total;
  for (double x : alphas) total.add(x);
  if (!total.is_zero())
    fail_precondition("greedy_order: entries must sum to exactly zero; got " +
                      std::to_string(total.approx()));
  const std::size_t n = alphas.size();
  std::vector<bool> used(n, false);
  std::vector<std::size_t> sigma;
  sigma.reserve(n);
  exact_sum run;
  for (std::size_t step = 0; step < n; ++step) {
    const bool want_nonpositive = run.sign() > 0;
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      if (want_nonpositive ? (alphas[i] <= 0.0) : (alphas[i] >= 0.0)) {
        pick = i;
        break;
      }
    }
    if (pick == n)
      fail_internal("greedy_order stalled despite an exactly zero total");
    used[pick] = true;
    sigma.push_back(pick);
    run.add(alphas[pick]);
  }
  return sigma;
}

namespace detail {

// Greedy rule on exact integer grid units; returns the order and the largest
// absolute prefix sum reached.
struct unit_greedy_result {
  std::vector<std::size_t> sigma;
  std::int64_t max_abs_prefix = 0;
};

inline unit_greedy_result greedy_order_units(const std::vector<std::int64_t>& a) {
  const std::size_t n = a.size();
  std::vector<bool> used(n, false);
  unit_greedy_result out;
  out.sigma.reserve(n);
  std::int64_t run = 0;
  for (std::size_t step = 0; step < n; ++step) {
    const bool want_nonpositive = run > 0;
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      if (want_nonpositive ? (a[i] <= 0) : (a[i] >= 0)) {
        pick = i;
        break;
      }
    }
    if (pick == n) fail_internal("grid greedy stalled despite a zero total");
    used[pick] = true;
    out.sigma.push_back(pick);
    run += a[pick];
    out.max_abs_prefix = std::max(out.max_abs_prefix, std::abs(run));
  }
  return out;
}

// Snap phases to the 2^-40 grid and correct them to an exactly zero sum:
// subtract the rounded mean (a global scalar), then adjust the residual one
// quantum at a time, taking from the largest entries (or giving to the
// smallest), ties to the lowest index.  Returns grid units.
inline std::vector<std::int64_t> zero_sum_units(const std::vector<double>& phases,
                                                std::int64_t* mean_units_out) {
  const std::size_t n = phases.size();
  std::vector<std::int64_t> units(n);
  std::int64_t sum = 0;
  for (std::size_t p = 0; p < n; ++p) {
    units[p] = grid_units(phases[p]);
    sum += units[p];
  }
  const auto d = static_cast<std::int64_t>(n);
  std::int64_t mean = (sum >= 0) ? (sum + d / 2) / d : -((-sum + d / 2) / d);
  for (auto& x : units) x -= mean;
  std::int64_t residual = sum - mean * d;

  if (residual != 0) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    if (residual > 0) {
      std::stable_sort(idx.begin(), idx.end(),
                       [&units](std::size_t a, std::size_t b) { return units[a] > units[b]; });
      for (std::int64_t k = 0; k < residual; ++k) units[idx[static_cast<std::size_t>(k)]] -= 1;
    } else {
      std::stable_sort(idx.begin(), idx.end(),
                       [&units](std::size_t a, std::size_t b) { return units[a] < units[b]; });
      for (std::int64_t k = 0; k < -residual; ++k) units[idx[static_cast<std::size_t>(k)]] += 1;
    }
  }
  if (mean_units_out) *mean_units_out = mean;
  return units;
}

}  // namespace detail

struct normalization {
  double lambda = 0.0;               // effective rotation applied to every phase
  std::vector<std::size_t> sigma;    // balancing permutation (step n takes source sigma[n])
  std::vector<double> balanced;      // corrected phases in original index order; exact zero sum
  std::vector<double> ordered;       // balanced[sigma[0]], balanced[sigma[1]], ...
  double achieved = 0.0;             // largest |prefix sum| of `ordered`, exact
  double limit = 0.0;                // 2*ell(u) + pi/D
};

inline std::optional<normalization> try_angle_normalize(const diagonal_unitary& u) {
  const std::size_t dim = u.dim();
  if (dim == 0) fail_precondition("angle_normalize: empty input");
  const double len = ell(u);
  if (len == 0.0) fail_precondition("angle_normalize: scalar input");
  const double limit = 2.0 * len + pi / static_cast<double>(dim);

  // Candidate rotations: center each widest gap, then each second-widest gap.
  const gap_analysis gaps = analyze_gaps(u.phases);
  std::vector<double> widths_desc = gaps.widths;
  std::sort(widths_desc.begin(), widths_desc.end(), std::greater<double>());
  widths_desc.erase(std::unique(widths_desc.begin(), widths_desc.end()), widths_desc.end());
  std::vector<double> candidates;
  for (std::size_t rank = 0; rank < widths_desc.size() && rank < 2; ++rank)
    for (std::size_t i = 0; i < gaps.widths.size(); ++i)  // starts ascend with i
      if (gaps.widths[i] == widths_desc[rank])
        candidates.push_back(normalize_phase(pi - (gaps.sorted[i] + gaps.widths[i] / 2.0)));

  for (double lambda_candidate : candidates) {
    std::vector<double> rotated(dim);
    for (std::size_t p = 0; p < dim; ++p)
      rotated[p] = normalize_phase(u.phases[p] + lambda_candidate);
    std::int64_t mean_units = 0;
    const std::vector<std::int64_t> units = detail::zero_sum_units(rotated, &mean_units);
    const detail::unit_greedy_result greedy = detail::greedy_order_units(units);
    const double achieved = static_cast<double>(greedy.max_abs_prefix) * phase_quantum;
    if (!(achieved <= limit)) continue;

    normalization out;
    out.lambda = normalize_phase(lambda_candidate -
                                 static_cast<double>(mean_units) * phase_quantum);
    out.sigma = greedy.sigma;
    out.balanced.resize(dim);
    for (std::size_t p = 0; p < dim; ++p)
      out.balanced[p] = static_cast<double>(units[p]) * phase_quantum;
    out.ordered.resize(dim);
    for (std::size_t n = 0; n < dim; ++n) out.ordered[n] = out.balanced[out.sigma[n]];
    out.achieved = achieved;
    out.limit = limit;
    return out;
  }
  return std::nullopt;
}

inline normalization angle_normalize(const diagonal_unitary& u) {
  std::optional<normalization> result = try_angle_normalize(u);
  if (!result)
    fail_precondition(
        "angle_normalize: infeasible at this truncation (prefix bound 2*ell(u) + pi/D "
        "not met by any gap-centering rotation)");
  return *std::move(result);
}

// theta'_n = theta_n/2 + (-1)^n |theta_n|, theta''_n the complement.  The
// pair recombines to theta_n exactly; each part is at most 1.5|theta_n| and
// alternates sign across the support.
inline std::pair<std::vector<double>, std::vector<double>> split_angles(
    const std::vector<double>& thetas) {
  std::vector<double> first, second;
  first.reserve(thetas.size());
  second.reserve(thetas.size());
  for (std::size_t n = 0; n < thetas.size(); ++n) {
    const double th = thetas[n];
    if (!std::isfinite(th)) fail_precondition("split_angles: non-finite entry");
    if (th == 0.0) {
      first.push_back(0.0);
      second.push_back(0.0);
      continue;
    }
    const double big = 1.5 * th;     // rounded once
    const double small = th - big;   // exact (Sterbenz), so big + small == th
    const bool big_to_first = ((n % 2 == 0) == (th > 0.0));
    first.push_back(big_to_first ? big : small);
    second.push_back(big_to_first ? small : big);
  }
  return {std::move(first), std::move(second)};
}

}  // namespace bng
