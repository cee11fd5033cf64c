#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qaoa/interpolation.hpp"
#include "qaoa/rng.hpp"

using namespace qaoa;

TEST_SUITE("interpolation") {

TEST_CASE("constant input stays constant for both kinds") {
  const std::vector<double> threes{1.0, 1.0, 1.0};
  for (std::size_t n : {2, 5, 9})
    CHECK(interpolate(threes, n, InterpKind::Linear) ==
          std::vector<double>(n, 1.0));
  const std::vector<double> fours{2.5, 2.5, 2.5, 2.5};
  for (std::size_t n : {2, 5, 9})
    CHECK(interpolate(fours, n, InterpKind::Cubic) ==
          std::vector<double>(n, 2.5));
}

TEST_CASE("linear examples") {
  CHECK(interpolate(std::vector<double>{0.0, 1.0}, 5, InterpKind::Linear) ==
        std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto mid =
      interpolate(std::vector<double>{0.2, 0.4}, 3, InterpKind::Linear);
  CHECK(mid[0] == 0.2);
  CHECK(mid[1] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(mid[2] == 0.4);
}

TEST_CASE("cubic through quadratic samples reproduces the quadratic") {
  // f(t) = t^2 sampled at {0, 1/3, 2/3, 1}; the 4-point not-a-knot spline is
  // the unique interpolating cubic, i.e. the quadratic itself.
  const std::vector<double> samples{0.0, 1.0 / 9.0, 4.0 / 9.0, 1.0};
  const auto out = interpolate(samples, 5, InterpKind::Cubic);
  const std::vector<double> expected{0.0, 1.0 / 16.0, 1.0 / 4.0, 9.0 / 16.0,
                                     1.0};
  REQUIRE(out.size() == 5);
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(std::abs(out[i] - expected[i]) <= 1e-12);
}

TEST_CASE("cubic reproduces cubics exactly at any knot count") {
  auto f = [](double t) { return ((2.0 * t - 1.5) * t + 0.25) * t - 0.75; };
  for (std::size_t m : {4, 5, 8}) {
    std::vector<double> samples(m);
    for (std::size_t i = 0; i < m; ++i)
      samples[i] = f(static_cast<double>(i) / static_cast<double>(m - 1));
    const std::size_t n = m + 3;
    const auto out = interpolate(samples, n, InterpKind::Cubic);
    for (std::size_t j = 0; j < n; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(n - 1);
      CHECK(std::abs(out[j] - f(t)) <= 1e-12);
    }
  }
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(interpolate(std::vector<double>{1.0}, 3, InterpKind::Linear),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      interpolate(std::vector<double>{1.0, 2.0}, 1, InterpKind::Linear),
      std::invalid_argument);
  CHECK_THROWS_AS(
      interpolate(std::vector<double>{1.0, 2.0, 3.0}, 5, InterpKind::Cubic),
      std::invalid_argument);
}

TEST_CASE("endpoint and constant preservation over random vectors") {
  SplitMix64 rng(2025);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + rng.next_below(9);       // 2..10
    const std::size_t n = 2 + rng.next_below(12);      // 2..13
    std::vector<double> v(m);
    for (auto& x : v) x = 4.0 * rng.next_unit() - 2.0;
    const InterpKind kind =
        (m >= 4 && (trial % 2)) ? InterpKind::Cubic : InterpKind::Linear;
    const auto out = interpolate(v, n, kind);
    REQUIRE(out.size() == n);
    CHECK(out.front() == v.front());
    CHECK(out.back() == v.back());

    const std::vector<double> c(m, v[0]);
    CHECK(interpolate(c, n, kind) == std::vector<double>(n, v[0]));
  }
}

}  // TEST_SUITE
