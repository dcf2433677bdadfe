#pragma once
// Diagonal unitaries are stored as their eigenphase lists in model order; the
// dense form is materialized on demand.  Phases need not be normalized on
// input, but to_matrix() and comparisons operate on the principal values.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "bng/error.hpp"
#include "bng/matrix.hpp"
#include "bng/phase.hpp"

namespace bng {

struct diagonal_unitary {
  std::vector<double> phases;  // entry n is e^{i phases[n]}

  diagonal_unitary() = default;
  explicit diagonal_unitary(std::vector<double> p) : phases(std::move(p)) {
    for (double x : phases)
      if (!std::isfinite(x)) fail_precondition("diagonal_unitary: non-finite phase");
  }

  std::size_t dim() const { return phases.size(); }

  diagonal_unitary normalized() const {
    diagonal_unitary out;
    out.phases.reserve(phases.size());
    for (double x : phases) out.phases.push_back(normalize_phase(x));
    return out;
  }

  diagonal_unitary inverse() const {
    diagonal_unitary out;
    out.phases.reserve(phases.size());
    for (double x : phases) out.phases.push_back(-x);
    return out;
  }

  cmatrix to_matrix() const {
    cmatrix m(phases.size());
    for (std::size_t n = 0; n < phases.size(); ++n)
      m.at(n, n) = std::polar(1.0, phases[n]);
    return m;
  }
};

}  // namespace bng
