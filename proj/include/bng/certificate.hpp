#pragma once
// Certificates witness membership of a target in (v^G u v^-G)^k: an ordered
// list of signed conjugators over a diagonal base.  verify() is the ground
// truth for every membership claim: it recomputes each factor, checks the
// conjugators are unitary and the factor spectra match the base's, multiplies
// everything out, and compares against the target projectively.  It never
// consults generator internals.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bng/diagonal.hpp"
#include "bng/eig.hpp"
#include "bng/error.hpp"
#include "bng/length.hpp"
#include "bng/matrix.hpp"
#include "bng/model.hpp"

namespace bng {

inline constexpr double verification_tol = 1e-6;

struct signed_factor {
  int sign = 1;  // +1 conjugates the base, -1 its inverse
  cmatrix conjugator;
};

struct certificate {
  std::string mode = "matrix";  // "matrix" | "calkin"
  diagonal_unitary base;        // canonical materialized base element
  diagonal_unitary target;
  std::vector<signed_factor> factors;
  std::size_t claimed_bound = 0;
  // meta
  std::size_t m = 0;
  std::string pipeline = "balanced";
  // calkin mode carries the models; the diagonal forms above are their
  // canonical materializations at meta dimension `dim`.
  std::optional<clustered_model> base_model;
  std::optional<clustered_model> target_model;
};

struct report {
  bool pass = false;
  double product_residual = 0.0;
  std::size_t worst_factor_index = 0;
  double worst_factor_residual = 0.0;
  bool count_ok = true;
};

namespace detail {

// min over cyclic offsets of the max pointwise distance between two
// arg-sorted eigenvalue lists (the offset absorbs the branch cut).
inline double spectrum_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(a[(i + k) % n] - b[i]));
    best = std::min(best, worst);
  }
  return best;
}

// Distance from a (possibly non-unitary) matrix product to the target modulo
// unit scalars: rotate the eigenvalues of product * target* optimally toward 1
// and take the farthest point.  Coincides with proj_dist for unitary input and
// grows with any radial escape from the circle.
inline double projective_residual(const cmatrix& product, const cmatrix& target) {
  const std::vector<cplx> vals = eigenvalues_by_arg(product.mul(target.adjoint()));
  std::vector<double> args(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) args[i] = normalize_phase(std::arg(vals[i]));
  const double lambda = ell_opt_rotation(args);
  const cplx rot = std::polar(1.0, lambda);
  double worst = 0.0;
  for (const cplx& v : vals) worst = std::max(worst, std::abs(v * rot - cplx(1.0, 0.0)));
  return worst;
}

}  // namespace detail

inline report verify(const certificate& cert, double tol = verification_tol) {
  report r;
  r.count_ok = cert.factors.size() <= cert.claimed_bound;
  const std::size_t dim = cert.base.dim();

  const cmatrix base_plus = cert.base.to_matrix();
  const cmatrix base_minus = cert.base.inverse().to_matrix();
  std::vector<cplx> spec_plus(dim), spec_minus(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    spec_plus[i] = base_plus.at(i, i);
    spec_minus[i] = base_minus.at(i, i);
  }
  auto by_arg = [](std::vector<cplx> v) {
    std::sort(v.begin(), v.end(),
              [](const cplx& a, const cplx& b) { return std::arg(a) < std::arg(b); });
    return v;
  };
  spec_plus = by_arg(spec_plus);
  spec_minus = by_arg(spec_minus);

  cmatrix product = cmatrix::identity(dim);
  bool dims_ok = true;
  r.worst_factor_index = 0;
  r.worst_factor_residual = 0.0;
  for (std::size_t i = 0; i < cert.factors.size(); ++i) {
    const signed_factor& f = cert.factors[i];
    if (f.conjugator.dim() != dim || (f.sign != 1 && f.sign != -1)) {
      r.worst_factor_index = i;
      r.worst_factor_residual = std::numeric_limits<double>::infinity();
      dims_ok = false;
      break;
    }
    const cmatrix recomputed =
        f.conjugator.mul(f.sign > 0 ? base_plus : base_minus).mul(f.conjugator.adjoint());
    const double defect = f.conjugator.unitarity_defect();
    const double spec = detail::spectrum_distance(eigenvalues_by_arg(recomputed),
                                                  f.sign > 0 ? spec_plus : spec_minus);
    const double residual = std::max(defect, spec);
    if (residual > r.worst_factor_residual) {
      r.worst_factor_residual = residual;
      r.worst_factor_index = i;
    }
    product = product.mul(recomputed);
  }

  if (!dims_ok || cert.target.dim() != dim) {
    r.product_residual = std::numeric_limits<double>::infinity();
    r.pass = false;
    return r;
  }
  r.product_residual = detail::projective_residual(product, cert.target.to_matrix());
  r.pass = r.count_ok && r.worst_factor_residual <= tol && r.product_residual <= tol;
  return r;
}

}  // namespace bng
