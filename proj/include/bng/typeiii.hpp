#pragma once
// Finite-dimensional commutator constructions:
//  - commutator_witness: for a non-scalar finite-spectrum unitary whose two
//    maximal-chord eigenspaces both split (multiplicity >= 2), a permutation v
//    in the eigenbasis 3-cycling half-eigenspaces so that
//    ell(u) <= 4 * ell([u, v]).
//  - doubled_commutator: the exact 4-factor certificate realizing
//    [v0, w0] (+) [v0, w0]^-1 from signed conjugates of v0 (+) v0.
//  - ng_bound_typeiii: the 2048/ell formula.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bng/certificate.hpp"
#include "bng/certify.hpp"
#include "bng/eig.hpp"
#include "bng/error.hpp"
#include "bng/length.hpp"
#include "bng/matrix.hpp"
#include "bng/model.hpp"
#include "bng/phase.hpp"

namespace bng {

// A unitary given by its eigenphase multiplicities, optionally conjugated into
// a non-canonical eigenbasis.  Eigenspace e occupies the contiguous positions
// [sum of earlier multiplicities, +multiplicity) in the diagonal.
struct finite_spectrum_unitary {
  std::vector<std::pair<double, std::size_t>> eigenphases;  // (phase, multiplicity >= 1)
  std::optional<cmatrix> basis;                             // empty = canonical basis

  std::size_t dim() const {
    std::size_t d = 0;
    for (const auto& [phase, mult] : eigenphases) {
      (void)phase;
      d += mult;
    }
    return d;
  }

  void validate() const {
    if (eigenphases.empty())
      fail_precondition("finite-spectrum unitary: at least one eigenphase required");
    for (const auto& [phase, mult] : eigenphases) {
      if (!std::isfinite(phase))
        fail_precondition("finite-spectrum unitary: non-finite eigenphase");
      if (mult == 0)
        fail_precondition("finite-spectrum unitary: zero multiplicity");
    }
    if (basis) {
      if (basis->dim() != dim())
        fail_precondition("finite-spectrum unitary: basis dimension " +
                          std::to_string(basis->dim()) + " != spectral dimension " +
                          std::to_string(dim()));
      require_unitary(*basis, unitarity_tol, "finite-spectrum unitary basis");
    }
  }

  std::vector<double> expanded_phases() const {
    std::vector<double> out;
    out.reserve(dim());
    for (const auto& [phase, mult] : eigenphases)
      for (std::size_t r = 0; r < mult; ++r) out.push_back(phase);
    return out;
  }

  cmatrix to_matrix() const {
    diagonal_unitary d;
    d.phases = expanded_phases();
    const cmatrix dm = d.to_matrix();
    if (!basis) return dm;
    return basis->mul(dm).mul(basis->adjoint());
  }
};

struct witness_result {
  cmatrix v;           // the witness conjugator (permutation in the eigenbasis)
  double ratio = 0.0;  // ell(u) / ell([u, v]), guaranteed <= 4
};

inline witness_result commutator_witness(const finite_spectrum_unitary& u) {
  u.validate();
  const std::size_t dim = u.dim();
  const std::vector<double> phases = u.expanded_phases();
  const double len_u = ell(phases);
  if (len_u == 0.0)
    fail_precondition("commutator_witness: central element (scalar spectrum); "
                      "the inequality is trivial and no witness is produced");

  // The two eigenspaces at maximal chord, ties to the lowest index pair.
  std::size_t i0 = 0, i1 = 0;
  double best = -1.0;
  for (std::size_t i = 0; i + 1 < u.eigenphases.size(); ++i)
    for (std::size_t j = i + 1; j < u.eigenphases.size(); ++j) {
      const double c = chord(u.eigenphases[i].first, u.eigenphases[j].first);
      if (c > best) {
        best = c;
        i0 = i;
        i1 = j;
      }
    }
  const std::size_t m0 = u.eigenphases[i0].second;
  const std::size_t m1 = u.eigenphases[i1].second;
  if (m0 < 2 || m1 < 2)
    fail_precondition("commutator_witness: the maximal-chord eigenspaces (indices " +
                      std::to_string(i0) + ", " + std::to_string(i1) +
                      ") must both have multiplicity >= 2; got " + std::to_string(m0) +
                      " and " + std::to_string(m1));
  const std::size_t t = std::min(m0 / 2, m1 / 2);

  std::vector<std::size_t> start(u.eigenphases.size(), 0);
  for (std::size_t e = 1; e < u.eigenphases.size(); ++e)
    start[e] = start[e - 1] + u.eigenphases[e - 1].second;

  // 3-cycle the half-eigenspaces: A_s -> A'_s -> B_s -> A_s, everything else
  // fixed.  A and A' are the first two halves of eigenspace i0, B the first
  // half of eigenspace i1.
  std::vector<std::size_t> dst(dim);
  for (std::size_t p = 0; p < dim; ++p) dst[p] = p;
  for (std::size_t s = 0; s < t; ++s) {
    const std::size_t a = start[i0] + s;
    const std::size_t a2 = start[i0] + t + s;
    const std::size_t b = start[i1] + s;
    dst[a] = a2;
    dst[a2] = b;
    dst[b] = a;
  }
  const cmatrix w = cmatrix::permutation(dst);
  const cmatrix v = u.basis ? u.basis->mul(w).mul(u.basis->adjoint()) : w;

  const cmatrix um = u.to_matrix();
  const cmatrix comm = um.mul(v).mul(um.adjoint()).mul(v.adjoint());
  const double len_comm = ell(eigenphases(comm));
  if (!(len_comm > 0.0))
    fail_internal("commutator_witness: commutator came out scalar");
  const double ratio = len_u / len_comm;
  if (!(ratio <= 4.0 + 1e-9))
    fail_internal("commutator_witness: ratio " + std::to_string(ratio) + " exceeds 4");
  return {v, ratio};
}

struct doubled_result {
  cmatrix doubled;  // [v0, w0] (+) [v0, w0]^-1
  certificate cert;
};

// The 4-factor membership certificate for [v0,w0] (+) [v0,w0]^-1 over the base
// v0 (+) v0: with s the half-swap,
//   (v0+v0) * (w0+1)(v0+v0)^-1(w0+1)*            = [v0,w0] (+) 1
//   s(w0+1)(v0+v0)(w0+1)*s* * s(v0+v0)^-1 s*     = 1 (+) [v0,w0]^-1.
// Base and target are diagonalized so the certificate's base/target are
// diagonal; the eigenbases fold into the conjugators.
inline doubled_result doubled_commutator(const cmatrix& v0, const cmatrix& w0) {
  const std::size_t n = v0.dim();
  if (n == 0) fail_precondition("doubled_commutator: empty input");
  if (w0.dim() != n)
    fail_precondition("doubled_commutator: dimension mismatch: " + std::to_string(n) +
                      " vs " + std::to_string(w0.dim()));
  require_unitary(v0, unitarity_tol, "doubled_commutator v0");
  require_unitary(w0, unitarity_tol, "doubled_commutator w0");
  const std::size_t dim = 2 * n;

  const cmatrix comm = v0.mul(w0).mul(v0.adjoint()).mul(w0.adjoint());
  const cmatrix doubled = comm.direct_sum(comm.adjoint());
  const cmatrix base = v0.direct_sum(v0);

  const cmatrix eye = cmatrix::identity(n);
  std::vector<std::size_t> swap_dst(dim);
  for (std::size_t p = 0; p < dim; ++p) swap_dst[p] = (p + n) % dim;
  const cmatrix s = cmatrix::permutation(swap_dst);
  const cmatrix w0_ext = w0.direct_sum(eye);

  const eigensystem base_sys = diagonalize(base);
  const eigensystem target_sys = diagonalize(doubled);
  const cmatrix fold_base = base_sys.g;              // base = g_B diag g_B*
  const cmatrix unfold_target = target_sys.g.adjoint();

  certificate cert;
  cert.mode = "matrix";
  cert.base = base_sys.phases;
  cert.target = target_sys.phases;
  cert.claimed_bound = 4;
  cert.m = 1;
  cert.pipeline = "doubled";
  const cmatrix hs[4] = {cmatrix::identity(dim), w0_ext, s.mul(w0_ext), s};
  const int signs[4] = {+1, -1, +1, -1};
  for (int i = 0; i < 4; ++i)
    cert.factors.push_back({signs[i], unfold_target.mul(hs[i]).mul(fold_base)});

  const report r = verify(cert, 1e-8);
  if (!r.pass)
    fail_internal("doubled_commutator: certificate failed verification (product residual " +
                  std::to_string(r.product_residual) + ")");
  return {doubled, std::move(cert)};
}

inline std::size_t ng_bound_typeiii(const finite_spectrum_unitary& u) {
  u.validate();
  const double len = ell(u.expanded_phases());
  if (len <= 0.0)
    fail_precondition("ng_bound_typeiii: length is zero (projectively trivial element)");
  return static_cast<std::size_t>(std::ceil(2048.0 / len));
}

inline std::size_t ng_bound_typeiii(const clustered_model& v) {
  return ng_bound(v, bound_mode::typeiii);
}

}  // namespace bng
