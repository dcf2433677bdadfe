#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <bng/error.hpp>
#include <bng/matrix.hpp>
#include <bng/su2.hpp>

using namespace bng;

namespace {

cmatrix pair_product(const std::pair<cmatrix, cmatrix>& hs, double theta) {
  const cmatrix v = su2_diag(theta);
  const cmatrix a = hs.first.mul(v).mul(hs.first.adjoint());
  const cmatrix b = hs.second.mul(v).mul(hs.second.adjoint());
  return a.mul(b);
}

}  // namespace

TEST_CASE("su2 primitives") {
  const cmatrix d = su2_diag(0.7);
  CHECK(std::abs(d.at(0, 0) - std::polar(1.0, 0.7)) < 1e-15);
  CHECK(std::abs(d.at(1, 1) - std::polar(1.0, -0.7)) < 1e-15);
  CHECK(su2_eigenphase(d) == Catch::Approx(0.7).margin(1e-12));
  CHECK(su2_eigenphase(su2_diag(-0.7)) == Catch::Approx(0.7).margin(1e-12));
  CHECK(su2_flip().unitarity_defect() < 1e-15);
  CHECK(su2_rotation(0.3).unitarity_defect() < 1e-15);
}

TEST_CASE("su2_pair_solve hits the target rotation") {
  for (auto [theta, phi] : {std::pair{0.3, 0.5}, {0.3, -0.5}, {1.2, 2.3}, {-0.9, 1.0},
                            {pi / 2.0, pi - 1e-6}, {0.4, 0.0}, {0.25, 0.5}}) {
    const auto hs = pair_product(su2_pair_solve(theta, phi), theta);
    CHECK(hs.frobenius_distance(su2_diag(phi)) < 1e-8);
  }
}

TEST_CASE("su2_pair_solve edge cases") {
  // phi = 0: conjugator pair cancels the rotation outright.
  const auto id_pair = su2_pair_solve(0.4, 0.0);
  CHECK(pair_product(id_pair, 0.4).frobenius_distance(cmatrix::identity(2)) < 1e-12);
  // theta = 0 can only reach phi = 0.
  CHECK_NOTHROW(su2_pair_solve(0.0, 0.0));
  CHECK_THROWS_AS(su2_pair_solve(0.0, 0.3), error);
  // Out of reach: |phi| > 2|theta|.
  CHECK_THROWS_AS(su2_pair_solve(0.3, 0.7), error);
}

TEST_CASE("su2_chain produces exactly m verified factors") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> td(-pi / 2.0, pi / 2.0);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  for (std::size_t m : {2, 4, 6, 10}) {
    for (int run = 0; run < 10; ++run) {
      double theta = td(gen);
      if (std::abs(theta) < 1e-3) theta = 0.5;
      const double phi = ud(gen) * static_cast<double>(m) * std::abs(theta);
      const conjugate_chain chain = su2_chain(theta, phi, m);
      REQUIRE(chain.conjugators.size() == m);
      CHECK(chain.base_angle == theta);
      cmatrix prod = cmatrix::identity(2);
      const cmatrix v = su2_diag(theta);
      for (const cmatrix& g : chain.conjugators) {
        CHECK(g.unitarity_defect() < 1e-10);
        const cmatrix w = g.mul(v).mul(g.adjoint());
        CHECK(su2_eigenphase(w) == Catch::Approx(std::abs(theta)).margin(1e-8));
        prod = prod.mul(w);
      }
      CHECK(prod.frobenius_distance(su2_diag(phi)) < 1e-8);
    }
  }
}

TEST_CASE("su2_chain rejects infeasible requests") {
  CHECK_THROWS_AS(su2_chain(0.3, 0.5, 3), error);    // odd m
  CHECK_THROWS_AS(su2_chain(0.3, 0.5, 0), error);    // empty chain
  CHECK_THROWS_AS(su2_chain(0.3, 1.3, 4), error);    // |phi| > m|theta|
  CHECK_THROWS_AS(su2_chain(0.0, 0.5, 4), error);    // no rotation to work with
  CHECK_THROWS_AS(su2_chain(2.0, 0.5, 4), error);    // |theta| > pi/2
  // Budget boundary is inclusive.
  CHECK_NOTHROW(su2_chain(0.3, 4.0 * 0.3, 4));
}

TEST_CASE("embed_block plants a 2x2 block on the diagonal") {
  const cmatrix g = su2_rotation(0.8);
  const cmatrix e = embed_block(g, 2, 5);
  REQUIRE(e.dim() == 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      if (i >= 2 && i <= 3 && j >= 2 && j <= 3)
        CHECK(e.at(i, j) == g.at(i - 2, j - 2));
      else
        CHECK(e.at(i, j) == (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0)));
    }
  CHECK_THROWS_AS(embed_block(g, 4, 5), error);  // block would overhang
}
