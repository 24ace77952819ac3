#include <doctest.h>

#include <cmath>

#include "seqsmooth/bandwidth.hpp"
#include "seqsmooth/rng.hpp"

using namespace seqsmooth;

TEST_CASE("bandwidth_at point values") {
  const BandwidthSchedule s(0.4, 0.2);
  CHECK(s.at(1) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(s.at(32) == doctest::Approx(0.2).epsilon(1e-14)); // 32^(1/5) = 2
  const BandwidthSchedule unit(1.0, 0.7);
  CHECK(unit.at(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(s.at(0), std::invalid_argument);
  CHECK_THROWS_AS(s.at(-3), std::invalid_argument);
}

TEST_CASE("schedule validity") {
  CHECK(BandwidthSchedule(1.0, 0.2).valid());
  CHECK_FALSE(BandwidthSchedule(1.0, 1.5).valid());
  CHECK_FALSE(BandwidthSchedule(-1.0, 0.2).valid());
  CHECK_FALSE(BandwidthSchedule(1.0, 0.0).valid()); // constant schedule
}

TEST_CASE("derived exponents") {
  CHECK(BandwidthSchedule::for_smoothness(0.4, 2).exponent ==
        doctest::Approx(0.2).epsilon(1e-15));
  CHECK(BandwidthSchedule::for_degree(0.4, 1).exponent ==
        doctest::Approx(0.2).epsilon(1e-15));
  CHECK(BandwidthSchedule::for_degree(1.0, 2).exponent ==
        doctest::Approx(1.0 / 7.0).epsilon(1e-15));
  CHECK_THROWS_AS(BandwidthSchedule::for_smoothness(1.0, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(BandwidthSchedule::for_degree(1.0, -1),
                  std::invalid_argument);
}

TEST_CASE("monotone nonincreasing over random valid schedules") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const BandwidthSchedule s(0.01 + 2.0 * rng.uniform01(),
                              0.01 + 0.98 * rng.uniform01());
    double prev = s.at(1);
    for (long t = 2; t <= 2000; t += 37) {
      const double h = s.at(t);
      CHECK(h <= prev);
      prev = h;
    }
  }
}

TEST_CASE("power identity h^(2d+1) * t = c^(2d+1)") {
  for (int d : {1, 2, 3}) {
    const double c = 0.7;
    const auto s = BandwidthSchedule::for_smoothness(c, d);
    const double expected = std::pow(c, 2.0 * d + 1.0);
    for (long t : {1L, 5L, 32L, 977L, 100000L}) {
      const double lhs = std::pow(s.at(t), 2.0 * d + 1.0) * t;
      CHECK(std::fabs(lhs - expected) / expected < 1e-12);
    }
  }
}

TEST_CASE("variance sum condition decays for k in (0,1)") {
  // (1/n^2) sum_t 1/h_t must tend to zero; spot-check it decreases
  // through n = 1e6 for a few exponents.
  for (const double k : {0.1, 0.2, 0.5, 0.9}) {
    const BandwidthSchedule s(0.4, k);
    double partial = 0.0;
    long t = 1;
    double prev = -1.0;
    for (const long n : {1000L, 10000L, 100000L, 1000000L}) {
      for (; t <= n; ++t) partial += 1.0 / s.at(t);
      const double value = partial / (static_cast<double>(n) * n);
      if (prev >= 0.0) CHECK(value < prev);
      prev = value;
    }
  }
}
