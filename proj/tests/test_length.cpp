#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include <bng/diagonal.hpp>
#include <bng/error.hpp>
#include <bng/length.hpp>
#include <bng/model.hpp>

#include "oracles.hpp"

using namespace bng;

TEST_CASE("ell closed form on landmark spectra") {
  CHECK(ell(std::vector<double>{0.0}) == 0.0);  // scalar: exactly zero
  CHECK(ell(std::vector<double>{0.7}) == 0.0);  // any scalar
  CHECK(ell(std::vector<double>{0.0, pi}) == Catch::Approx(std::sqrt(2.0)).margin(1e-15));
  CHECK(ell(std::vector<double>{pi / 2.0, -pi / 2.0}) ==
        Catch::Approx(std::sqrt(2.0)).margin(1e-15));
  // Exact arithmetic: the gap complement of {0, pi/2} is pi/2, so the closed
  // form evaluates sin at exactly pi/8.
  CHECK(ell(std::vector<double>{0.0, pi / 2.0}) == 2.0 * std::sin(pi / 8.0));
  CHECK(ell(std::vector<double>{0.0, 2.0 * pi / 3.0, -2.0 * pi / 3.0}) ==
        Catch::Approx(std::sqrt(3.0)).margin(1e-15));
  // Two-point spectrum at 2pi/3: the value sits just below 1, which matters
  // for anyone ceiling-dividing by it.
  const double l = ell(std::vector<double>{0.0, 2.0 * pi / 3.0});
  CHECK(l < 1.0);
  CHECK(l == Catch::Approx(1.0).margin(1e-15));
  // Multiplicity does not matter.
  CHECK(ell(std::vector<double>{0.0, 0.0, pi, pi, pi}) ==
        ell(std::vector<double>{0.0, pi}));
  CHECK_THROWS_AS(ell(std::vector<double>{}), error);
}

TEST_CASE("ell agrees with the brute-force rotation grid") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(-pi, pi);
  for (int run = 0; run < 10; ++run) {
    std::vector<double> phases(2 + static_cast<std::size_t>(gen() % 20));
    for (double& x : phases) x = dist(gen);
    CHECK(std::abs(ell(phases) - oracle::ell_grid(phases)) < 1e-4);
  }
}

TEST_CASE("ell_opt_rotation centers the occupied arc") {
  // {0, pi}: both gaps have width pi; the tie resolves to the gap starting at
  // 0, whose midpoint pi/2 is sent to the antipode by lambda = pi/2.
  CHECK(ell_opt_rotation({0.0, pi}) == Catch::Approx(pi / 2.0));
  // Rotating by the reported lambda must achieve the closed-form value.
  for (std::vector<double> phases :
       {std::vector<double>{0.3, 1.1, -2.0}, std::vector<double>{2.9, -2.9, 0.1, 0.4}}) {
    const double lambda = ell_opt_rotation(phases);
    double worst = 0.0;
    for (double p : phases) worst = std::max(worst, chord(p + lambda, 0.0));
    CHECK(worst == Catch::Approx(ell(phases)).margin(1e-12));
  }
}

TEST_CASE("ell_ess sees only the clusters") {
  clustered_model m{{0.0, pi}, {{2.0, 3}}};
  CHECK(ell_ess(m) == ell(std::vector<double>{0.0, pi}));
  clustered_model bad{{}, {{2.0, 3}}};
  CHECK_THROWS_AS(ell_ess(bad), error);
}

TEST_CASE("hs distance caps at 1") {
  diagonal_unitary u{{0.0, 0.0}};
  diagonal_unitary v{{pi, pi}};
  CHECK(hs_dist_uncapped(u, v) == Catch::Approx(2.0 * std::sqrt(2.0)));
  CHECK(hs_dist(u, v) == 1.0);
  diagonal_unitary w{{1e-8, 0.0}};
  CHECK(hs_dist(u, w) == Catch::Approx(1e-8).margin(1e-12));
  diagonal_unitary odd{{0.0}};
  CHECK_THROWS_AS(hs_dist(u, odd), error);
}

TEST_CASE("max_chord_pair breaks ties toward the lowest indices") {
  CHECK(max_chord_pair({0.0, pi, 0.0, pi}) == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(max_chord_pair({0.0, 0.1, -3.0}) == std::pair<std::size_t, std::size_t>{1, 2});
  CHECK_THROWS_AS(max_chord_pair({0.0}), error);
}

TEST_CASE("materialize interleaves clusters round-robin, then exceptional phases") {
  clustered_model m{{0.5, -0.5}, {{2.0, 2}}};
  const diagonal_unitary u = materialize(m, 3);
  REQUIRE(u.dim() == 8);
  CHECK(u.phases == std::vector<double>{0.5, -0.5, 0.5, -0.5, 0.5, -0.5, 2.0, 2.0});
  CHECK_THROWS_AS(materialize(m, 0), error);
  clustered_model dup{{0.5, 0.5}, {}};
  CHECK_THROWS_AS(materialize(dup, 2), error);
}
