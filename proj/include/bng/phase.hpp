#pragma once
// Phase arithmetic on the unit circle.
//
// A phase is a real in (-pi, pi]; the antipode of 1 is canonically +pi, never
// -pi.  Distances between spectrum points are always measured by the chord
//
//     chord(a, b) = |e^{ia} - e^{ib}| = 2|sin((a - b)/2)|,
//
// which is the metric every bound in this library is stated in.

#include <cmath>
#include <cstdint>
#include <string>

#include "bng/error.hpp"

namespace bng {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Snap grid for pipeline phases.  Grid values are integer multiples of 2^-40,
// so sums of up to ~2000 of them are exactly representable doubles: zero-sum
// preconditions and prefix-sum bounds become exact double arithmetic instead
// of wishful thinking.  One quantum (~9.1e-13) sits three orders of magnitude
// below the tightest tolerance used anywhere (1e-8 decomposition residual is
// the closest consumer; verification runs at 1e-6).
inline constexpr double phase_quantum = 0x1p-40;

inline double normalize_phase(double x) {
  if (!std::isfinite(x)) fail_precondition("phase must be finite, got " + std::to_string(x));
  double r = std::remainder(x, two_pi);  // lands in [-pi, pi]
  if (r <= -pi) r = pi;                  // canonical antipode representative
  return r;
}

// Chord between two circle points given by phases (any reals).
inline double chord(double a, double b) { return 2.0 * std::abs(std::sin(0.5 * (a - b))); }

// Chord subtended by a phase difference.
inline double chord_of_delta(double delta) { return 2.0 * std::abs(std::sin(0.5 * delta)); }

// Shortest angular distance between two phases, in [0, pi].
inline double circular_distance(double a, double b) {
  return std::abs(normalize_phase(a - b));
}

// Nearest grid multiple of phase_quantum.  Exact: scaling by a power of two
// is error-free, and |x|*2^40 stays far below 2^53 for every phase-sized x.
inline double snap_phase(double x) {
  return std::nearbyint(x / phase_quantum) * phase_quantum;
}

// Integer grid coordinate of a grid value (exact for snapped inputs).
inline std::int64_t grid_units(double snapped) {
  return static_cast<std::int64_t>(std::llround(snapped / phase_quantum));
}

}  // namespace bng
