#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include <bng/error.hpp>
#include <bng/exact_sum.hpp>
#include <bng/phase.hpp>

using namespace bng;

TEST_CASE("normalize_phase lands in (-pi, pi] with +pi canonical") {
  CHECK(normalize_phase(0.0) == 0.0);
  CHECK(normalize_phase(pi) == pi);
  CHECK(normalize_phase(-pi) == pi);  // antipode is always +pi
  CHECK(normalize_phase(3.0 * pi) == Catch::Approx(pi));
  CHECK(normalize_phase(two_pi) == 0.0);
  CHECK(normalize_phase(pi / 3.0 + two_pi) == Catch::Approx(pi / 3.0).margin(1e-15));
  CHECK(normalize_phase(-0.25) == -0.25);
  CHECK_THROWS_AS(normalize_phase(std::numeric_limits<double>::infinity()), error);
  CHECK_THROWS_AS(normalize_phase(std::nan("")), error);
}

TEST_CASE("chord values") {
  CHECK(chord(0.0, 0.0) == 0.0);
  CHECK(chord(0.0, pi) == Catch::Approx(2.0));
  CHECK(chord(0.0, pi / 2.0) == Catch::Approx(std::sqrt(2.0)));
  CHECK(chord(1.0, -1.0) == Catch::Approx(2.0 * std::sin(1.0)));
  CHECK(chord(0.3, 0.3 + two_pi) == Catch::Approx(0.0).margin(1e-15));
  CHECK(chord_of_delta(pi) == Catch::Approx(2.0));
}

TEST_CASE("circular_distance is the shortest arc") {
  CHECK(circular_distance(0.1, -0.1) == Catch::Approx(0.2));
  CHECK(circular_distance(pi - 0.1, -pi + 0.1) == Catch::Approx(0.2).margin(1e-15));
  CHECK(circular_distance(0.0, pi) == Catch::Approx(pi));
}

TEST_CASE("snap/grid round trip is exact on the grid") {
  const double q = phase_quantum;
  for (std::int64_t k : {std::int64_t{0}, std::int64_t{1}, std::int64_t{-7},
                         std::int64_t{123456789}, -(std::int64_t{1} << 41)}) {
    const double x = static_cast<double>(k) * q;
    CHECK(snap_phase(x) == x);
    CHECK(grid_units(x) == k);
  }
  // Values off the grid move by at most half a quantum.
  const double y = 0.1234567;
  CHECK(std::abs(snap_phase(y) - y) <= q / 2.0);
}

TEST_CASE("exact_sum recognizes exact cancellation") {
  exact_sum s;
  s.add(0.1);
  s.add(0.2);
  s.add(-0.2);
  s.add(-0.1);
  CHECK(s.is_zero());

  exact_sum t;
  t.add(0.1);
  t.add(0.2);
  t.add(-0.3);  // 0.1 + 0.2 != 0.3 in binary
  CHECK_FALSE(t.is_zero());
  CHECK(t.abs_leq(1e-16));
}
