#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "cavscat/scattering.hpp"

using namespace cavscat;
using Catch::Approx;

namespace {

ScatterConfig make_cfg(double ratio, double size, ModeShape shape = ModeShape::constant) {
  ScatterConfig cfg;
  cfg.mode.shape = shape;
  cfg.mode.size = size;
  cfg.k_over_kappa_n = ratio;
  return cfg;
}

}  // namespace

TEST_CASE("zero mode gives an all-zero table") {
  const auto t = build_table(make_cfg(1.0, 0.0));
  for (const auto& e : t.rows) {
    CHECK(e.B_a == cplx(0.0, 0.0));
    CHECK(e.B_b == cplx(0.0, 0.0));
  }
  const auto s = totals(t);
  CHECK(s.lambda_a_total == 0.0);
  CHECK(s.lambda_b_total == 0.0);
}

TEST_CASE("parallelogram identity and unit bound") {
  for (double ratio : {0.1, 1.0, 10.0}) {
    for (double size : {0.7, 2.35741, 5.1, 20.0}) {
      const auto t = build_table(make_cfg(ratio, size));
      for (const auto& e : t.rows) {
        const double lhs = std::norm(e.B_a) + std::norm(e.B_b);
        const double rhs = 0.5 * (std::norm(e.B_plus) + std::norm(e.B_minus));
        CHECK(std::abs(lhs - rhs) <= 1e-12);
        CHECK(4.0 * std::norm(e.B_b) <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("trigonometric forms of the exit coefficients") {
  const auto t = build_table(make_cfg(0.3, 4.2));
  for (const auto& e : t.rows) {
    const double d = e.delta_plus - e.delta_minus;
    const double bb = 0.25 * std::sin(d) * std::sin(d);
    CHECK(std::norm(e.B_b) == Approx(bb).margin(1e-12));
    const double ba =
        0.25 * (std::sin(e.delta_plus) * std::sin(e.delta_plus) +
                std::sin(e.delta_minus) * std::sin(e.delta_minus) +
                2.0 * std::sin(e.delta_plus) * std::sin(e.delta_minus) * std::cos(d));
    CHECK(std::norm(e.B_a) == Approx(ba).margin(1e-12));
  }
}

TEST_CASE("channel sum identity") {
  for (double ratio : {0.1, 2.0, 10.0}) {
    for (double size : {0.72890, 3.79243, 11.0}) {
      const auto s = totals(build_table(make_cfg(ratio, size)));
      const double lhs = s.lambda_a_total + s.lambda_b_total;
      const double rhs = 0.5 * (s.lambda_plus_total + s.lambda_minus_total);
      CHECK(lhs == Approx(rhs).epsilon(1e-10));
      CHECK(s.lambda_a_total >= 0.0);
      CHECK(s.lambda_b_total >= 0.0);
    }
  }
}

TEST_CASE("amplitude symmetry and single-term pattern") {
  const auto t = build_table(make_cfg(0.1, 3.79243));
  for (double th : {0.3, 1.1, 2.7}) {
    const cplx fp = amplitude(t, ExitChannel::b_n1, th);
    const cplx fm = amplitude(t, ExitChannel::b_n1, -th);
    CHECK(std::abs(fp - fm) <= 1e-12 * (std::abs(fp) + 1e-15));
  }

  // a table with only one nonzero B_b produces a cos^2(m theta) pattern
  PartialWaveTable single;
  single.cfg = make_cfg(1.0, 1.0);
  single.rows.resize(4);
  single.rows[2].B_b = cplx(0.0, 0.37);
  const double f0 = std::norm(amplitude(single, ExitChannel::b_n1, 0.0));
  for (double th : {0.2, 0.9, 1.9}) {
    const double want = f0 * std::pow(std::cos(2.0 * th), 2.0);
    CHECK(std::norm(amplitude(single, ExitChannel::b_n1, th)) ==
          Approx(want).margin(1e-12));
  }
}

TEST_CASE("quadrature over theta reproduces the totals") {
  for (double ratio : {0.1, 10.0}) {
    for (double size : {2.35741, 20.0}) {
      auto cfg = make_cfg(ratio, size);
      cfg.theta_points = 2048;
      const auto t = build_table(cfg);
      const auto d = differential(t);
      const auto s = totals(t);
      const double dtheta = 2.0 * M_PI / cfg.theta_points;
      double qa = 0.0, qb = 0.0;
      for (size_t i = 0; i < d.thetas.size(); ++i) {
        qa += d.lambda_a[i] * dtheta;
        qb += d.lambda_b[i] * dtheta;
      }
      CHECK(qa == Approx(s.lambda_a_total).epsilon(1e-6));
      CHECK(qb == Approx(s.lambda_b_total).epsilon(1e-6));
    }
  }
}

TEST_CASE("m=1 dominates at its resonance") {
  const auto t = build_table(make_cfg(0.1, 2.35741));
  const double b1 = std::norm(t.rows[1].B_b);
  for (int m = 0; m <= t.m_max(); ++m) {
    if (m == 1) continue;
    CHECK(std::norm(t.rows[static_cast<size_t>(m)].B_b) < b1);
  }
}

TEST_CASE("automatic truncation leaves no significant tail") {
  auto cfg = make_cfg(10.0, 20.0);
  const auto t = build_table(cfg);
  // recompute with a much larger fixed m_max and compare totals
  auto big = cfg;
  big.m_max = t.m_max() + 60;
  const auto s1 = totals(t);
  const auto s2 = totals(build_table(big));
  CHECK(std::abs(s1.lambda_b_total - s2.lambda_b_total) < cfg.tol.series_tail * 10.0);
  CHECK(std::abs(s1.lambda_a_total - s2.lambda_a_total) < cfg.tol.series_tail * 10.0);
}

TEST_CASE("hot regime total matches the closed form loosely") {
  const auto s = totals(build_table(make_cfg(10.0, 100.0)));
  CHECK(s.lambda_b_total == Approx(0.36881913538483071).margin(0.02));
}

TEST_CASE("even theta grid closed at pi") {
  const auto th = theta_grid(8);
  CHECK(th.back() == Approx(M_PI).epsilon(1e-15));
  CHECK(th.front() > -M_PI);
}
