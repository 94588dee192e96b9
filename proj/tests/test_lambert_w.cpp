#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cavscat/lambert_w.hpp"
#include "oracles.hpp"

using cavscat::lambert_w;
using Catch::Approx;

TEST_CASE("lambert w trivial points") {
  CHECK(lambert_w(0, 0.0) == 0.0);
  CHECK(lambert_w(0, -std::exp(-1.0)) == Approx(-1.0).margin(1e-7));
  CHECK(lambert_w(-1, -std::exp(-1.0)) == Approx(-1.0).margin(1e-7));
}

TEST_CASE("lambert w against the Newton oracle") {
  CHECK(lambert_w(0, -0.1) == Approx(-0.11183255915896297).epsilon(1e-13));
  CHECK(lambert_w(-1, -0.1) == Approx(-3.5771520639572971).epsilon(1e-13));
  for (double x : {-0.35, -0.2, -0.05, 0.5, 2.0, 100.0, 1e6}) {
    CHECK(lambert_w(0, x) == Approx(oracle::lambert_w(0, x)).epsilon(1e-12).margin(1e-14));
  }
  for (double x : {-0.36, -0.25, -0.1, -0.01, -1e-4}) {
    CHECK(lambert_w(-1, x) == Approx(oracle::lambert_w(-1, x)).epsilon(1e-12));
  }
}

TEST_CASE("lambert w round trip over log-spaced samples") {
  for (int i = 0; i <= 40; ++i) {
    // branch 0, positive side: x from 1e-8 to 1e8
    const double xp = std::pow(10.0, -8.0 + 16.0 * i / 40.0);
    const double w = lambert_w(0, xp);
    CHECK(std::abs(w * std::exp(w) - xp) <= 1e-13 * std::max(1.0, xp));
    // branch 0 and -1, negative side: x from -1/e toward 0
    const double xn = -std::exp(-1.0) * std::pow(10.0, -6.0 * i / 40.0);
    for (int br : {0, -1}) {
      const double wn = lambert_w(br, xn);
      CHECK(std::abs(wn * std::exp(wn) - xn) <= 1e-13);
    }
  }
}

TEST_CASE("lambert w domain errors") {
  CHECK_THROWS_AS(lambert_w(0, -0.4), std::domain_error);
  CHECK_THROWS_AS(lambert_w(-1, 0.1), std::domain_error);
  CHECK_THROWS_AS(lambert_w(1, 0.1), std::domain_error);
}
