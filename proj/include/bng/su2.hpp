#pragma once
// Constructive SU(2) conjugation chains: realize diag(e^{i phi}, e^{-i phi})
// as a product of exactly m conjugates of v = diag(e^{i theta}, e^{-i theta}).
// The two-factor solver follows the rotation path w(t) = v * g(t) v g(t)* with
// g(t) a real rotation: the eigenphase of w(t) moves continuously from 2|theta|
// at t = 0 to 0 at t = pi/2, so the intermediate value theorem brackets any
// |phi| <= 2|theta|.  Bisection runs on the trace; afterwards one exact 2x2
// eigenvector alignment is absorbed into both conjugators, which keeps them
// conjugates of v.

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bng/error.hpp"
#include "bng/matrix.hpp"
#include "bng/phase.hpp"

namespace bng {

inline cmatrix su2_diag(double theta) {
  cmatrix m(2);
  m.at(0, 0) = std::polar(1.0, theta);
  m.at(1, 1) = std::polar(1.0, -theta);
  return m;
}

// [[0, 1], [-1, 0]]: determinant 1; conjugation by it swaps diagonal entries.
inline cmatrix su2_flip() {
  cmatrix m(2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = -1.0;
  return m;
}

inline cmatrix su2_rotation(double t) {
  cmatrix m(2);
  const double c = std::cos(t), s = std::sin(t);
  m.at(0, 0) = c;
  m.at(0, 1) = -s;
  m.at(1, 0) = s;
  m.at(1, 1) = c;
  return m;
}

// The unique psi in [0, pi] with eigenvalues e^{+-i psi}: arccos(Re(tr)/2).
inline double su2_eigenphase(const cmatrix& g) {
  if (g.dim() != 2) fail_precondition("su2_eigenphase: expected a 2x2 matrix");
  const double half_tr = (g.at(0, 0).real() + g.at(1, 1).real()) / 2.0;
  if (half_tr > 1.0 + 1e-9 || half_tr < -1.0 - 1e-9)
    fail_precondition("su2_eigenphase: trace " + std::to_string(2.0 * half_tr) +
                      " outside [-2, 2]");
  return std::acos(std::min(1.0, std::max(-1.0, half_tr)));
}

namespace detail {

// Unitary q whose first column is the eigenvector of the 2x2 unitary w for the
// eigenvalue of argument psi >= 0; q* w q = diag(e^{i psi}, e^{-i psi}).
inline cmatrix su2_align(const cmatrix& w, double psi) {
  const cplx mu = std::polar(1.0, psi);
  // Two candidate eigenvector formulas from the rows of (w - mu I); pick the
  // better conditioned one.
  const cplx a1 = w.at(0, 1), b1 = mu - w.at(0, 0);
  const cplx a2 = mu - w.at(1, 1), b2 = w.at(1, 0);
  const double n1 = std::abs(a1) * std::abs(a1) + std::abs(b1) * std::abs(b1);
  const double n2 = std::abs(a2) * std::abs(a2) + std::abs(b2) * std::abs(b2);
  cplx a = (n1 >= n2) ? a1 : a2;
  cplx b = (n1 >= n2) ? b1 : b2;
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  if (norm < 1e-8) return cmatrix::identity(2);  // w is (near-)scalar: any basis aligns
  a /= norm;
  b /= norm;
  // Fix the global phase: make the larger component real positive.
  const cplx lead = (std::abs(a) >= std::abs(b)) ? a : b;
  const cplx phase = std::conj(lead) / std::abs(lead);
  a *= phase;
  b *= phase;
  cmatrix q(2);
  q.at(0, 0) = a;
  q.at(1, 0) = b;
  q.at(0, 1) = -std::conj(b);
  q.at(1, 1) = std::conj(a);
  return q;
}

inline cmatrix conjugate(const cmatrix& g, const cmatrix& x) {
  return g.mul(x).mul(g.adjoint());
}

}  // namespace detail

// Conjugators (g1, g2) with g1 v g1* g2 v g2* = diag(e^{i phi}, e^{-i phi}),
// v = diag(e^{i theta}, e^{-i theta}).  Requires |phi| <= 2|theta| (a hair of
// rounding slack is clamped); theta = 0 is accepted only with phi = 0.
inline std::pair<cmatrix, cmatrix> su2_pair_solve(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi))
    fail_precondition("su2_pair_solve: non-finite input");
  const double abs_theta = std::abs(theta);
  if (abs_theta > pi / 2.0 + 1e-12)
    fail_precondition("su2_pair_solve: |theta| = " + std::to_string(abs_theta) +
                      " exceeds pi/2");
  if (theta == 0.0) {
    if (phi != 0.0)
      fail_precondition("su2_pair_solve: theta = 0 cannot reach phi = " + std::to_string(phi));
    return {cmatrix::identity(2), su2_flip()};
  }
  double abs_phi = std::abs(phi);
  if (abs_phi > 2.0 * abs_theta) {
    if (abs_phi <= 2.0 * abs_theta * (1.0 + 1e-12) + 1e-15)
      abs_phi = 2.0 * abs_theta;  // clamp pure rounding overshoot
    else
      fail_precondition("su2_pair_solve: |phi| = " + std::to_string(abs_phi) +
                        " exceeds 2|theta| = " + std::to_string(2.0 * abs_theta));
  }
  if (phi == 0.0) return {cmatrix::identity(2), su2_flip()};

  // Bisection on f(t) = tr(w(t))/2 - cos(phi) = cos(2 theta) cos^2 t + sin^2 t
  // - cos(phi).  f(0) <= 0 <= f(pi/2); the final interval is shrunk to 1e-15
  // so the eigenphase error stays near roundoff (the path has slope <= 2),
  // with a 1e-12 trace residual check afterwards.
  const double cos_2theta = std::cos(2.0 * theta);
  const double cos_phi = std::cos(abs_phi);
  const auto f = [&](double t) {
    const double c = std::cos(t), s = std::sin(t);
    return cos_2theta * c * c + s * s - cos_phi;
  };
  double lo = 0.0, hi = pi / 2.0;
  if (f(lo) >= 0.0) hi = lo;  // phi at the 2|theta| endpoint: t = 0 already solves
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = lo + (hi - lo) / 2.0;
    if (f(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double t = lo + (hi - lo) / 2.0;
  if (std::abs(f(t)) > 1e-12)
    fail_internal("su2_pair_solve: bisection trace residual " + std::to_string(std::abs(f(t))) +
                  " exceeds 1e-12");

  const cmatrix v = su2_diag(theta);
  const cmatrix g = su2_rotation(t);
  const cmatrix w = v.mul(detail::conjugate(g, v));
  const double psi = su2_eigenphase(w);
  cmatrix q = detail::su2_align(w, psi);
  cmatrix g1 = q.adjoint();
  cmatrix g2 = q.adjoint().mul(g);
  if (phi < 0.0) {  // swap the eigenvalue order by conjugating everything by flip
    const cmatrix flip = su2_flip();
    g1 = flip.mul(g1);
    g2 = flip.mul(g2);
  }
  const cmatrix product = detail::conjugate(g1, v).mul(detail::conjugate(g2, v));
  const double residual = product.frobenius_distance(su2_diag(phi));
  if (!(residual <= 1e-8))
    fail_internal("su2_pair_solve: reconstruction residual " + std::to_string(residual) +
                  " exceeds 1e-8");
  return {g1, g2};
}

struct conjugate_chain {
  double base_angle = 0.0;
  std::vector<cmatrix> conjugators;
};

// Exactly m conjugates of diag(e^{i theta}, e^{-i theta}) multiplying to
// diag(e^{i phi}, e^{-i phi}), built from m/2 pair-solves on the equal split
// phi_k = phi / (m/2).
inline conjugate_chain su2_chain(double theta, double phi, std::size_t m) {
  if (m == 0 || m % 2 != 0) fail_precondition("su2_chain: m must be even and positive");
  if (theta == 0.0 || std::abs(theta) > pi / 2.0 + 1e-12)
    fail_precondition("su2_chain: need 0 < |theta| <= pi/2");
  const double budget = static_cast<double>(m) * std::abs(theta);
  double target = phi;
  if (std::abs(phi) > budget) {
    if (std::abs(phi) <= budget * (1.0 + 1e-12) + 1e-15)
      target = (phi > 0.0 ? budget : -budget);
    else
      fail_precondition("su2_chain: |phi| = " + std::to_string(std::abs(phi)) +
                        " exceeds m|theta| = " + std::to_string(budget));
  }
  conjugate_chain chain;
  chain.base_angle = theta;
  const std::size_t pairs = m / 2;
  double phi_pair = target / static_cast<double>(pairs);
  if (std::abs(phi_pair) > 2.0 * std::abs(theta)) phi_pair = (phi_pair > 0.0 ? 2.0 : -2.0) * std::abs(theta);
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto [g1, g2] = su2_pair_solve(theta, phi_pair);
    chain.conjugators.push_back(g1);
    chain.conjugators.push_back(g2);
  }

  const cmatrix v = su2_diag(theta);
  cmatrix product = cmatrix::identity(2);
  for (const cmatrix& g : chain.conjugators) product = product.mul(detail::conjugate(g, v));
  const double residual = product.frobenius_distance(su2_diag(target));
  if (!(residual <= 1e-8))
    fail_internal("su2_chain: reconstruction residual " + std::to_string(residual) +
                  " exceeds 1e-8");
  return chain;
}

// Identity outside the 2x2 block at rows/columns (j, j+1).
inline cmatrix embed_block(const cmatrix& g, std::size_t j, std::size_t dim) {
  if (g.dim() != 2) fail_precondition("embed_block: block must be 2x2");
  if (j + 1 >= dim) fail_precondition("embed_block: position " + std::to_string(j) +
                                      " out of range for dimension " + std::to_string(dim));
  cmatrix out = cmatrix::identity(dim);
  out.at(j, j) = g.at(0, 0);
  out.at(j, j + 1) = g.at(0, 1);
  out.at(j + 1, j) = g.at(1, 0);
  out.at(j + 1, j + 1) = g.at(1, 1);
  return out;
}

}  // namespace bng
