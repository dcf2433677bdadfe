#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <vector>

#include <bng/certificate.hpp>
#include <bng/certify.hpp>
#include <bng/decomp.hpp>
#include <bng/diagonal.hpp>
#include <bng/error.hpp>
#include <bng/length.hpp>
#include <bng/model.hpp>

using namespace bng;

namespace {

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("arrange_gap_blocks places qualifying pairs at the plan starts") {
  const clustered_model v{{pi / 2.0, -pi / 2.0}, {}};
  const auto [arranged, plan] = arrange_gap_blocks(v, 1.9, 2, 8);
  REQUIRE(arranged.dim() == 8);
  REQUIRE(plan.starts.size() == 2);
  REQUIRE(plan.gap_pairs.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& [a, b] = plan.gap_pairs[k];
    CHECK(chord(a, b) >= 1.9);
    CHECK(arranged.phases[plan.starts[k]] == a);
    CHECK(arranged.phases[plan.starts[k] + 1] == b);
  }
  // The host permutation really conjugates the canonical diagonal into the
  // arranged one.
  const cmatrix lhs = plan.host_perm.mul(plan.canonical.to_matrix()).mul(plan.host_perm.adjoint());
  CHECK(lhs.frobenius_distance(arranged.to_matrix()) < 1e-14);
  // Same multiset either way.
  CHECK(plan.canonical.phases == materialize(v, 4).phases);
}

TEST_CASE("arrange_gap_blocks failure modes name the obstacle") {
  const clustered_model v{{0.8, -0.8}, {}};
  // Required gap beyond the widest chord.
  CHECK_THROWS_AS(arrange_gap_blocks(v, 3.0, 1, 8), error);
  CHECK(message_of([&] { arrange_gap_blocks(v, 3.0, 1, 8); }).find("infeasible") !=
        std::string::npos);
  // Dimension not matching the model layout.
  CHECK_THROWS_AS(arrange_gap_blocks(v, 0.5, 1, 7), error);
  CHECK(message_of([&] { arrange_gap_blocks(v, 0.5, 1, 7); }).find("admissible") !=
        std::string::npos);
  // Not enough room for the requested number of blocks: the message proposes
  // a workable dimension.
  CHECK_THROWS_AS(arrange_gap_blocks(v, 0.5, 5, 8), error);
  CHECK(message_of([&] { arrange_gap_blocks(v, 0.5, 5, 8); }).find("dimension") !=
        std::string::npos);
}

TEST_CASE("infsim_generate emits exactly 4m factors and verifies") {
  const clustered_model v{{pi / 2.0, -pi / 2.0}, {}};
  for (std::size_t m : {2, 4}) {
    const auto [arranged, plan] = arrange_gap_blocks(v, 1.9, 1, 8);
    factor_sequence fs{factor_kind::product, 8, {}};
    diagonal_unitary f;
    f.phases.assign(8, 0.0);
    f.phases[0] = 1.3;
    f.phases[1] = -1.3;
    fs.factors.push_back(f);
    const certificate cert = infsim_generate(fs, arranged, plan, m);
    CHECK(cert.factors.size() == 4 * m);
    CHECK(cert.claimed_bound == 4 * m);
    CHECK(cert.base.phases == plan.canonical.phases);
    const report rep = verify(cert, 1e-6);
    CHECK(rep.pass);
    CHECK(rep.product_residual <= 1e-6);
  }
}

TEST_CASE("infsim_generate rejects oversized angles and odd m") {
  const clustered_model v{{pi / 2.0, -pi / 2.0}, {}};
  const auto [arranged, plan] = arrange_gap_blocks(v, 1.9, 1, 8);
  factor_sequence fs{factor_kind::product, 8, {}};
  diagonal_unitary f;
  f.phases.assign(8, 0.0);
  f.phases[0] = 4.3;  // exceeds m * chord = 2 * 2
  f.phases[1] = -4.3;
  fs.factors.push_back(f);
  CHECK_THROWS_AS(infsim_generate(fs, arranged, plan, 2), error);
  CHECK_THROWS_AS(infsim_generate(fs, arranged, plan, 3), error);
}

TEST_CASE("infsim_generate insists on separated supports") {
  const clustered_model v{{pi / 2.0, -pi / 2.0}, {}};
  const auto [arranged, plan] = arrange_gap_blocks(v, 1.9, 2, 8);
  factor_sequence fs{factor_kind::product, 8, {}};
  for (std::size_t start : {std::size_t{0}, std::size_t{1}}) {  // overlapping blocks
    diagonal_unitary f;
    f.phases.assign(8, 0.0);
    f.phases[start] = 0.4;
    f.phases[start + 1] = -0.4;
    fs.factors.push_back(f);
  }
  CHECK_THROWS_AS(infsim_generate(fs, arranged, plan, 2), error);
}

TEST_CASE("certify_diag shortcut, scalar, and gate behavior") {
  const clustered_model v{{0.9, -0.9}, {}};
  // Target projectively equal to the canonical base: single identity factor.
  const diagonal_unitary same = materialize(v, 2);
  const certificate c1 = certify_diag(same, v, 1);
  CHECK(c1.factors.size() == 1);
  CHECK(verify(c1).pass);
  // Scalar target: the empty product does it.
  diagonal_unitary scalar{{0.3, 0.3, 0.3, 0.3}};
  const certificate c2 = certify_diag(scalar, v, 1);
  CHECK(c2.factors.empty());
  CHECK(verify(c2).pass);
  // Gate: ell(u) must not exceed m * ell_ess(v).
  diagonal_unitary wide{{0.0, pi, 0.0, pi}};
  CHECK_THROWS_AS(certify_diag(wide, clustered_model{{0.0, 0.2}, {}}, 1), error);
  // Dimension incompatible with the model.
  diagonal_unitary odd{{0.1, -0.1, 0.1, -0.1, 0.0}};
  CHECK_THROWS_AS(certify_diag(odd, v, 1), error);
  CHECK_THROWS_AS(certify_diag(same, v, 0), error);
}

TEST_CASE("certify_diag balanced pipeline stays within 32m") {
  const clustered_model v{{0.9, -0.9}, {}};
  diagonal_unitary u;
  for (int rep = 0; rep < 4; ++rep)
    for (double x : {0.45, -0.2, -0.25}) u.phases.push_back(x);
  const certificate cert = certify_diag(u, v, 2);
  CHECK(cert.pipeline == "balanced");
  CHECK(cert.m == 2);
  CHECK(cert.claimed_bound == 64);
  CHECK(cert.factors.size() <= 64);
  CHECK(cert.mode == "matrix");
  const report rep = verify(cert, 1e-6);
  CHECK(rep.pass);
  // Converse bound at the produced factor count.
  CHECK(ell(cert.target) <=
        static_cast<double>(cert.factors.size()) * ell(cert.base) + 1e-6);
}

TEST_CASE("certify_diag falls back to the split pipeline on one-sided spectra") {
  const clustered_model v{{pi / 2.0, -pi / 2.0}, {}};
  diagonal_unitary u;
  u.phases.assign(36, 1.55);
  u.phases[35] = -1.55;
  const certificate cert = certify_diag(u, v, 2);
  CHECK(cert.pipeline == "split");
  CHECK(cert.claimed_bound == 256);
  // Both halves contribute two parity parts of 4 * (8m) factors each.
  CHECK(cert.factors.size() == 256);
  const report rep = verify(cert, 1e-6);
  CHECK(rep.pass);
  CHECK(ell(cert.target) <=
        static_cast<double>(cert.factors.size()) * ell(cert.base) + 1e-6);
}

TEST_CASE("certify_calkin reproduces the antipodal-vs-tight example") {
  const clustered_model u{{0.0, pi}, {}};
  const clustered_model v{{0.0, 0.2}, {}};
  const certificate cert = certify_calkin(u, v);
  CHECK(cert.mode == "calkin");
  CHECK(cert.m == 15);  // smallest m with sqrt(2) <= m * 2sin(0.05)
  CHECK(cert.claimed_bound == 480);
  CHECK(cert.base.dim() == 64);
  // The +-pi/2 rotation leaves every second prefix at zero, so only one
  // parity part materializes: 4 * (4 * 15) conjugates.
  CHECK(cert.factors.size() == 240);
  REQUIRE(cert.base_model.has_value());
  REQUIRE(cert.target_model.has_value());
  CHECK(cert.base_model->clusters == v.clusters);
  CHECK(cert.target_model->clusters == u.clusters);
  CHECK(verify(cert).pass);
}

TEST_CASE("certify_calkin preconditions") {
  const clustered_model u{{0.0, pi}, {}};
  const clustered_model v{{0.0, 0.2}, {}};
  CHECK_THROWS_AS(certify_calkin(u, v, 1), error);  // truncation too small
  CHECK_THROWS_AS(certify_calkin(u, clustered_model{{0.3}, {}}), error);  // scalar base
  CHECK_THROWS_AS(certify_calkin(clustered_model{{0.0, pi}, {{1.0, 1}}}, v), error);
  // Scalar target against a scalar base is fine: m = 1, empty certificate.
  const certificate c = certify_calkin(clustered_model{{0.3}, {}}, clustered_model{{0.5}, {}});
  CHECK(c.m == 1);
  CHECK(verify(c).pass);
}

TEST_CASE("certificates are byte-deterministic") {
  const clustered_model v{{0.9, -0.9}, {}};
  diagonal_unitary u;
  for (int rep = 0; rep < 4; ++rep)
    for (double x : {0.45, -0.2, -0.25}) u.phases.push_back(x);
  const certificate a = certify_diag(u, v, 2);
  const certificate b = certify_diag(u, v, 2);
  REQUIRE(a.factors.size() == b.factors.size());
  CHECK(a.base.phases == b.base.phases);
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    CHECK(a.factors[i].sign == b.factors[i].sign);
    CHECK(a.factors[i].conjugator == b.factors[i].conjugator);  // bitwise
  }
}

TEST_CASE("ng_bound fixed points and preconditions") {
  CHECK(ng_bound_from_length(2.0, bound_mode::calkin) == 32);
  CHECK(ng_bound_from_length(1.0, bound_mode::calkin) == 64);
  CHECK(ng_bound_from_length(2.0, bound_mode::typeiii) == 1024);
  CHECK(ng_bound_from_length(0.5, bound_mode::typeiii) == 4096);
  CHECK_THROWS_AS(ng_bound_from_length(0.0, bound_mode::calkin), error);

  const clustered_model antipodal{{0.0, pi}, {}};
  CHECK(ng_bound(antipodal, bound_mode::calkin) == 46);    // ceil(64/sqrt2)
  CHECK(ng_bound(antipodal, bound_mode::typeiii) == 1449);  // ceil(2048/sqrt2)
  CHECK_THROWS_AS(ng_bound(clustered_model{{0.3}, {}}, bound_mode::calkin), error);
  // typeiii mode folds exceptional phases into the spectrum.
  const clustered_model with_exc{{0.3}, {{0.3 + pi, 1}}};
  CHECK(ng_bound(with_exc, bound_mode::typeiii) == 1449);
  CHECK_THROWS_AS(ng_bound(with_exc, bound_mode::calkin), error);  // ell_ess = 0
}
