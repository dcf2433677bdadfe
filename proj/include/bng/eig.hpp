#pragma once
// Eigen-backed spectral routines: eigenphases, canonical eigendecomposition of
// unitary matrices, and the projective distance.  The contract is only the
// residual bound; internally we use the complex Schur form (diagonal for a
// normal matrix up to roundoff) and sort phases ascending with columns
// permuted to match, so results are canonical and reproducible.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include "bng/diagonal.hpp"
#include "bng/error.hpp"
#include "bng/length.hpp"
#include "bng/matrix.hpp"
#include "bng/phase.hpp"

namespace bng {

inline Eigen::MatrixXcd to_eigen(const cmatrix& m) {
  Eigen::MatrixXcd out(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m.at(i, j);
  return out;
}

inline cmatrix from_eigen(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) fail_internal("from_eigen: non-square matrix");
  cmatrix out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return out;
}

// Eigenvalues of an arbitrary square matrix, sorted ascending by argument.
// Used by the verifier, which must handle non-unitary (tampered) inputs.
inline std::vector<cplx> eigenvalues_by_arg(const cmatrix& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) fail_internal("eigenvalue solver did not converge");
  std::vector<cplx> vals(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) vals[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  std::sort(vals.begin(), vals.end(),
            [](const cplx& a, const cplx& b) { return std::arg(a) < std::arg(b); });
  return vals;
}

// Eigenphases of a unitary matrix, sorted ascending in (-pi, pi].
inline std::vector<double> eigenphases(const cmatrix& u, double tol = unitarity_tol) {
  require_unitary(u, tol, "eigenphases");
  const std::vector<cplx> vals = eigenvalues_by_arg(u);
  std::vector<double> phases(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) phases[i] = normalize_phase(std::arg(vals[i]));
  std::sort(phases.begin(), phases.end());
  return phases;
}

struct eigensystem {
  cmatrix g;                // unitary eigenbasis
  diagonal_unitary phases;  // ascending
};

// u = g * diag(e^{i phases}) * g* with residual <= 1e-8.  Exactly diagonal
// inputs are handled directly so the returned basis is the sorting
// permutation.
inline eigensystem diagonalize(const cmatrix& u, double tol = unitarity_tol) {
  require_unitary(u, tol, "diagonalize");
  const std::size_t dim = u.dim();

  std::vector<double> raw(dim);
  bool exactly_diagonal = true;
  for (std::size_t i = 0; i < dim && exactly_diagonal; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (i != j && u.at(i, j) != cplx(0.0, 0.0)) {
        exactly_diagonal = false;
        break;
      }

  cmatrix basis;
  if (exactly_diagonal) {
    for (std::size_t i = 0; i < dim; ++i) raw[i] = normalize_phase(std::arg(u.at(i, i)));
    basis = cmatrix::identity(dim);
  } else {
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(to_eigen(u));
    if (schur.info() != Eigen::Success) fail_internal("Schur decomposition did not converge");
    for (std::size_t i = 0; i < dim; ++i)
      raw[i] = normalize_phase(std::arg(schur.matrixT()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i))));
    basis = from_eigen(schur.matrixU());
  }

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&raw](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });

  eigensystem out;
  out.g = cmatrix(dim);
  out.phases.phases.resize(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    out.phases.phases[k] = raw[order[k]];
    for (std::size_t r = 0; r < dim; ++r) out.g.at(r, k) = basis.at(r, order[k]);
  }

  const double residual =
      u.frobenius_distance(out.g.mul(out.phases.to_matrix()).mul(out.g.adjoint()));
  if (!(residual <= 1e-8))
    fail_internal("diagonalize: residual " + std::to_string(residual) + " exceeds 1e-8");
  return out;
}

// Projective distance: ell of the eigenphase multiset of u v*; zero exactly
// when u and v agree up to a unit scalar.
inline double proj_dist(const cmatrix& u, const cmatrix& v) {
  if (u.dim() != v.dim()) fail_precondition("proj_dist: dimension mismatch");
  return ell(eigenphases(u.mul(v.adjoint())));
}

}  // namespace bng
