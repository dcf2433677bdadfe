#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include <bng/certificate.hpp>
#include <bng/eig.hpp>
#include <bng/error.hpp>
#include <bng/length.hpp>
#include <bng/matrix.hpp>
#include <bng/su2.hpp>
#include <bng/typeiii.hpp>

using namespace bng;

namespace {

cmatrix random_unitary(std::mt19937_64& gen, std::size_t n) {
  // Unitarize a random matrix by Gram-Schmidt via repeated projection.
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  cmatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = cplx(d(gen), d(gen));
  // Gram-Schmidt columns.
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      cplx dot(0.0, 0.0);
      for (std::size_t r = 0; r < n; ++r) dot += std::conj(a.at(r, prev)) * a.at(r, c);
      for (std::size_t r = 0; r < n; ++r) a.at(r, c) -= dot * a.at(r, prev);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(a.at(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) a.at(r, c) /= norm;
  }
  return a;
}

}  // namespace

TEST_CASE("commutator witness: the antipodal worked example, exactly") {
  finite_spectrum_unitary u;
  u.eigenphases = {{0.0, 2}, {pi, 2}};
  const witness_result w = commutator_witness(u);
  // The witness is the documented 3-cycle permutation.
  CHECK(w.v == cmatrix::permutation({1, 2, 0, 3}));
  // In exact arithmetic: u = diag(1,1,-1,-1), [u,v] = diag(-1,1,-1,1).
  cmatrix ue(4), expected(4);
  ue.at(0, 0) = 1.0;
  ue.at(1, 1) = 1.0;
  ue.at(2, 2) = -1.0;
  ue.at(3, 3) = -1.0;
  expected.at(0, 0) = -1.0;
  expected.at(1, 1) = 1.0;
  expected.at(2, 2) = -1.0;
  expected.at(3, 3) = 1.0;
  const cmatrix comm = ue.mul(w.v).mul(ue.adjoint()).mul(w.v.adjoint());
  CHECK(comm == expected);
  CHECK(w.ratio == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("commutator witness: quarter-turn example hits the listed spectrum") {
  finite_spectrum_unitary u;
  u.eigenphases = {{0.0, 2}, {pi / 2.0, 2}};
  const witness_result w = commutator_witness(u);
  const cmatrix um = u.to_matrix();
  const cmatrix comm = um.mul(w.v).mul(um.adjoint()).mul(w.v.adjoint());
  // Position-order commutator spectrum: (-pi/2, 0, pi/2, 0).
  CHECK(std::abs(comm.at(0, 0) - std::polar(1.0, -pi / 2.0)) < 1e-14);
  CHECK(std::abs(comm.at(1, 1) - cplx(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(comm.at(2, 2) - std::polar(1.0, pi / 2.0)) < 1e-14);
  CHECK(std::abs(comm.at(3, 3) - cplx(1.0, 0.0)) < 1e-14);
  CHECK(ell(u.expanded_phases()) <= 4.0 * ell(eigenphases(comm)) + 1e-9);
}

TEST_CASE("commutator witness respects the stated preconditions") {
  finite_spectrum_unitary central;
  central.eigenphases = {{0.7, 4}};
  CHECK_THROWS_AS(commutator_witness(central), error);
  try {
    commutator_witness(central);
  } catch (const error& e) {
    CHECK(e.code() == errc::precondition);
    CHECK(std::string(e.what()).find("central") != std::string::npos);
  }
  // Multiplicity 1 on an extreme eigenspace.
  finite_spectrum_unitary thin;
  thin.eigenphases = {{0.0, 1}, {pi, 2}};
  CHECK_THROWS_AS(commutator_witness(thin), error);
}

TEST_CASE("commutator witness transports through a basis change") {
  std::mt19937_64 gen(31);
  finite_spectrum_unitary u;
  u.eigenphases = {{0.2, 2}, {-1.4, 3}, {2.5, 2}};
  u.basis = random_unitary(gen, u.dim());
  const witness_result w = commutator_witness(u);
  CHECK(w.v.unitarity_defect() < 1e-10);
  const cmatrix um = u.to_matrix();
  const cmatrix comm = um.mul(w.v).mul(um.adjoint()).mul(w.v.adjoint());
  const double lu = ell(u.expanded_phases());
  const double lc = ell(eigenphases(comm));
  CHECK(lu <= 4.0 * lc + 1e-9);
  CHECK(w.ratio == Catch::Approx(lu / lc).margin(1e-9));
}

TEST_CASE("doubled commutator: four factors, verified") {
  std::mt19937_64 gen(32);
  const cmatrix v0 = random_unitary(gen, 3);
  const cmatrix w0 = random_unitary(gen, 3);
  const doubled_result res = doubled_commutator(v0, w0);
  REQUIRE(res.cert.factors.size() == 4);
  CHECK(res.cert.claimed_bound == 4);
  CHECK(res.cert.pipeline == "doubled");
  CHECK(res.doubled.dim() == 6);
  const report rep = verify(res.cert, 1e-8);
  CHECK(rep.pass);
  // The doubled element truly is [v0,w0] (+) [v0,w0]^{-1}.
  const cmatrix comm = v0.mul(w0).mul(v0.adjoint()).mul(w0.adjoint());
  CHECK(res.doubled.frobenius_distance(comm.direct_sum(comm.adjoint())) < 1e-12);
}

TEST_CASE("doubled commutator collapse and flip examples") {
  // Commuting pair: the commutator collapses to the identity.
  diagonal_unitary dv{{0.3, -1.2}};
  diagonal_unitary dw{{0.8, 0.1}};
  const doubled_result collapsed = doubled_commutator(dv.to_matrix(), dw.to_matrix());
  CHECK(collapsed.cert.factors.size() == 4);
  CHECK(collapsed.doubled.frobenius_distance(cmatrix::identity(4)) < 1e-12);
  CHECK(verify(collapsed.cert, 1e-8).pass);

  // v0 = diag(i, -i), w0 = flip: the commutator is -I, doubled to -I4.
  cmatrix v0(2);
  v0.at(0, 0) = cplx(0.0, 1.0);
  v0.at(1, 1) = cplx(0.0, -1.0);
  const doubled_result res = doubled_commutator(v0, su2_flip());
  CHECK(res.cert.factors.size() == 4);
  cmatrix minus_i4(4);
  for (std::size_t i = 0; i < 4; ++i) minus_i4.at(i, i) = -1.0;
  CHECK(res.doubled.frobenius_distance(minus_i4) < 1e-12);
  CHECK(verify(res.cert, 1e-8).pass);
}

TEST_CASE("doubled commutator rejects mismatched or non-unitary input") {
  std::mt19937_64 gen(33);
  const cmatrix a = random_unitary(gen, 2);
  const cmatrix b = random_unitary(gen, 3);
  CHECK_THROWS_AS(doubled_commutator(a, b), error);
  cmatrix skew(2);
  skew.at(0, 0) = 2.0;  // not unitary
  skew.at(1, 1) = 1.0;
  CHECK_THROWS_AS(doubled_commutator(skew, a), error);
}

TEST_CASE("type iii bound from a finite spectrum") {
  finite_spectrum_unitary u;
  u.eigenphases = {{0.0, 1}, {pi, 1}};
  CHECK(ng_bound_typeiii(u) == 1449);  // ceil(2048/sqrt2)
  finite_spectrum_unitary scalar;
  scalar.eigenphases = {{0.7, 3}};
  CHECK_THROWS_AS(ng_bound_typeiii(scalar), error);
  CHECK(ng_bound_typeiii(clustered_model{{0.0, pi}, {}}) == 1449);
}
