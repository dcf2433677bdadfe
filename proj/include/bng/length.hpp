#pragma once
// The projective length function ell and its relatives.  ell of a phase
// multiset is the minimum over unit scalars lambda of the farthest chord from
// 1 to a rotated spectrum point.  The minimum is attained by the rotation that
// centers the complement of the largest circular gap at 1, which gives the
// closed form 2*sin((2*pi - g_max)/4) with g_max the largest gap between
// consecutive sorted phases (wrap included).

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "bng/diagonal.hpp"
#include "bng/error.hpp"
#include "bng/model.hpp"
#include "bng/phase.hpp"

namespace bng {

struct gap_analysis {
  std::vector<double> sorted;  // distinct normalized phases, ascending
  std::vector<double> widths;  // widths[i] = gap from sorted[i] ccw to the next phase
  std::size_t max_index = 0;   // widest gap; ties resolved to the lowest start phase
  double max_width = 0.0;
};

inline gap_analysis analyze_gaps(const std::vector<double>& phases) {
  if (phases.empty()) fail_precondition("ell: empty phase multiset");
  gap_analysis out;
  out.sorted.reserve(phases.size());
  for (double x : phases) out.sorted.push_back(normalize_phase(x));
  std::sort(out.sorted.begin(), out.sorted.end());
  out.sorted.erase(std::unique(out.sorted.begin(), out.sorted.end()), out.sorted.end());
  const std::size_t n = out.sorted.size();
  out.widths.resize(n);
  if (n == 1) {
    out.widths[0] = two_pi;
  } else {
    for (std::size_t i = 0; i + 1 < n; ++i) out.widths[i] = out.sorted[i + 1] - out.sorted[i];
    out.widths[n - 1] = (two_pi - out.sorted[n - 1]) + out.sorted[0];
  }
  out.max_index = 0;
  out.max_width = out.widths[0];
  for (std::size_t i = 1; i < n; ++i)
    if (out.widths[i] > out.max_width) {
      out.max_width = out.widths[i];
      out.max_index = i;
    }
  return out;
}

inline double ell(const std::vector<double>& phases) {
  const gap_analysis g = analyze_gaps(phases);
  return 2.0 * std::sin((two_pi - g.max_width) / 4.0);
}

inline double ell(const diagonal_unitary& u) { return ell(u.phases); }

inline double ell_ess(const clustered_model& model) {
  model.validate();
  return ell(model.clusters);
}

// The rotation attaining ell: maps the midpoint of the largest gap to the
// antipode, so the occupied arc is centered at 1.
inline double ell_opt_rotation(const std::vector<double>& phases) {
  const gap_analysis g = analyze_gaps(phases);
  const double gap_mid = g.sorted[g.max_index] + g.widths[g.max_index] / 2.0;
  return normalize_phase(pi - gap_mid);
}

// sqrt(sum of squared chords), optionally capped at 1.
inline double hs_dist_uncapped(const diagonal_unitary& u, const diagonal_unitary& v) {
  if (u.dim() != v.dim()) fail_precondition("hs_dist: dimension mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < u.dim(); ++j) {
    const double c = chord(u.phases[j], v.phases[j]);
    s += c * c;
  }
  return std::sqrt(s);
}

inline double hs_dist(const diagonal_unitary& u, const diagonal_unitary& v) {
  return std::min(1.0, hs_dist_uncapped(u, v));
}

// Indices (i, j), i < j, maximizing chord(phases[i], phases[j]); ties resolved
// to the lexicographically lowest pair.
inline std::pair<std::size_t, std::size_t> max_chord_pair(const std::vector<double>& phases) {
  if (phases.size() < 2) fail_precondition("max_chord_pair: need at least two phases");
  std::pair<std::size_t, std::size_t> best{0, 1};
  double best_chord = -1.0;
  for (std::size_t i = 0; i + 1 < phases.size(); ++i)
    for (std::size_t j = i + 1; j < phases.size(); ++j) {
      const double c = chord(phases[i], phases[j]);
      if (c > best_chord) {
        best_chord = c;
        best = {i, j};
      }
    }
  return best;
}

}  // namespace bng
