#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cavscat/model.hpp"

using namespace cavscat;
using Catch::Approx;

TEST_CASE("kappa_n scale") {
  CHECK(kappa_n_scale(0) == 1.0);
  CHECK(kappa_n_scale(3) == Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(kappa_n_scale(15) == Approx(2.0).epsilon(1e-15));
}

TEST_CASE("critical radius") {
  CHECK(critical_radius(1, 1.0) == Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK(critical_radius(0, 0.3) == 0.0);
  CHECK(critical_radius(0, 123.0) == 0.0);
  // hot-regime landmark: m = 200 at k/kappa_n = 10 turns at ~20 mode units
  CHECK(critical_radius(200, 10.0) == Approx(20.0).margin(0.01));

  // monotone in m, decreasing in k
  double prev = 0.0;
  for (int m = 1; m <= 30; ++m) {
    const double r = critical_radius(m, 2.0);
    CHECK(r > prev);
    prev = r;
  }
  CHECK(critical_radius(5, 1.0) > critical_radius(5, 2.0));
}

TEST_CASE("partial wave cutoff") {
  CHECK(m_cutoff(0.0) == 0.5);
  CHECK(m_cutoff(100.0) == Approx(100.0012499921876).epsilon(1e-14));
  CHECK(m_cutoff(1000.0) == Approx(1000.0).epsilon(1e-6));
}

TEST_CASE("effective potential") {
  ScatterConfig cfg;
  cfg.mode.shape = ModeShape::constant;
  cfg.mode.size = 2.0;
  for (double r : {0.2, 0.9, 1.7}) {
    CHECK(effective_potential(0, r, cfg) ==
          Approx(-1.0 - 0.25 / (r * r)).epsilon(1e-14));
  }
  CHECK(std::abs(effective_potential(4, 5e4, cfg)) < 1e-8);
}

TEST_CASE("attractive channel well exists at the quasibound parameters") {
  ScatterConfig cfg;
  cfg.mode.shape = ModeShape::constant;
  cfg.mode.size = 11.5287;
  cfg.k_over_kappa_n = 0.1;
  const double R = cfg.scaled_size();
  // the deepest point of V_3 sits at the outer edge of the square well,
  // below both the mid-well value and the barrier just outside
  double best_r = 0.0, best_v = 1e300;
  const int N = 4000;
  for (int i = 1; i < N; ++i) {
    const double r = R * i / N;
    const double v = effective_potential(3, r, cfg);
    if (v < best_v) {
      best_v = v;
      best_r = r;
    }
  }
  CHECK(best_r > 0.9 * R);
  CHECK(best_v < 0.0);
  CHECK(best_v < effective_potential(3, best_r * 0.5, cfg));
  CHECK(best_v < effective_potential(3, R * 1.001, cfg));
  CHECK(best_v < effective_potential(3, R * 1.5, cfg));
}

TEST_CASE("dimensionless groups determine everything") {
  // same (k/kappa_n, kappa R, n) must give identical internal scales
  ScatterConfig a, b;
  a.mode.size = 4.0;
  a.k_over_kappa_n = 0.7;
  b = a;
  CHECK(a.scaled_size() == b.scaled_size());
  a.n = 3;
  CHECK(a.scaled_size() == Approx(4.0 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("config validation") {
  ScatterConfig cfg;
  cfg.k_over_kappa_n = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.k_over_kappa_n = 1.0;
  cfg.n = -2;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("gaussian cutoff radius tracks the tail tolerance") {
  ScatterConfig cfg;
  cfg.mode.shape = ModeShape::gaussian;
  cfg.mode.size = 2.0;
  const double rc = cfg.cutoff_radius();
  CHECK(cfg.mode.value(rc, cfg.scaled_size()) == Approx(cfg.tol.series_tail).epsilon(1e-10));
}
