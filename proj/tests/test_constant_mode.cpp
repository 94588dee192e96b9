#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "cavscat/constant_mode.hpp"

using namespace cavscat;
using Catch::Approx;

namespace {

ScatterConfig make_cfg(double ratio, double size, int n = 0) {
  ScatterConfig cfg;
  cfg.mode.shape = ModeShape::constant;
  cfg.mode.size = size;
  cfg.k_over_kappa_n = ratio;
  cfg.n = n;
  return cfg;
}

}  // namespace

TEST_CASE("free space scatters nothing") {
  const auto cfg = make_cfg(1.0, 0.0);
  for (int m : {0, 1, 5}) {
    for (auto ch : {ChannelSign::plus, ChannelSign::minus}) {
      CHECK(matching_coefficients(m, ch, cfg).B == cplx(0.0, 0.0));
      CHECK(phase_shift(m, ch, cfg) == 0.0);
    }
  }
}

TEST_CASE("unitarity across the full grid") {
  double worst = 0.0;
  for (double ratio : {0.05, 0.1, 1.0, 10.0}) {
    for (double size : {0.1, 0.9, 3.7, 12.0, 55.0, 120.0}) {
      const auto cfg = make_cfg(ratio, size);
      for (int m = 0; m <= 50; ++m) {
        for (auto ch : {ChannelSign::plus, ChannelSign::minus}) {
          const cplx B = matching_coefficients(m, ch, cfg).B;
          const cplx im = std::pow(cplx(0.0, 1.0), -m);
          worst = std::max(worst, std::abs(std::abs(1.0 + 2.0 * im * B) - 1.0));
        }
      }
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("phase shift reconstructs the matching coefficient") {
  double worst = 0.0;
  for (double ratio : {0.1, 1.0, 10.0}) {
    for (double size : {0.4, 2.35741, 7.0, 30.0}) {
      const auto cfg = make_cfg(ratio, size);
      for (int m = 0; m <= 25; ++m) {
        for (auto ch : {ChannelSign::plus, ChannelSign::minus}) {
          const cplx B = matching_coefficients(m, ch, cfg).B;
          const cplx Br = coefficient_from_phase(m, phase_shift(m, ch, cfg));
          worst = std::max(worst, std::abs(B - Br));
        }
      }
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("interior/exterior continuity at R") {
  // A J(k_in r) must equal i^m J + B H1 in value and slope at r = R
  for (double ratio : {0.1, 3.0}) {
    for (int m : {0, 2, 6}) {
      const auto cfg = make_cfg(ratio, 2.5);
      const double R = cfg.scaled_size();
      const double k = cfg.k();
      const auto w = channel_wavenumbers(cfg);
      const auto mc = matching_coefficients(m, ChannelSign::minus, cfg);
      const cplx im = std::pow(cplx(0.0, 1.0), m);
      const cplx ext = im * bessel_j(m, k * R) +
                       mc.B * cplx(bessel_j(m, k * R), bessel_y(m, k * R));
      const cplx extp = k * (im * bessel_jp(m, k * R) +
                             mc.B * cplx(bessel_jp(m, k * R), bessel_yp(m, k * R)));
      const cplx inn = mc.A * bessel_j(m, w.k_minus * R);
      const cplx innp = mc.A * w.k_minus * bessel_jp(m, w.k_minus * R);
      CHECK(std::abs(ext - inn) <= 1e-10 * (std::abs(ext) + 1e-12));
      CHECK(std::abs(extp - innp) <= 1e-9 * (std::abs(extp) + 1e-12));
    }
  }
}

TEST_CASE("m=0 coefficient peaks at the first cold resonance") {
  // |B_b|^2 should be locally maximal near kappa R = 0.72890
  const auto bb0 = [](double size) {
    const auto cfg = make_cfg(0.1, size);
    const cplx Bp = matching_coefficients(0, ChannelSign::plus, cfg).B;
    const cplx Bm = matching_coefficients(0, ChannelSign::minus, cfg).B;
    return std::norm(0.5 * (Bp - Bm));
  };
  const double at = bb0(0.72890);
  CHECK(at > bb0(0.45));
  CHECK(at > bb0(1.1));
}

TEST_CASE("hot regime tracks the Rabi formulas") {
  double worst = 0.0;
  for (double size : {50.0, 70.0, 90.0, 110.0}) {
    const auto cfg = make_cfg(10.0, size);
    for (int m = 0; m <= 20; ++m) {
      const cplx Bp = matching_coefficients(m, ChannelSign::plus, cfg).B;
      const cplx Bm = matching_coefficients(m, ChannelSign::minus, cfg).B;
      const double bb = 4.0 * std::norm(0.5 * (Bp - Bm));
      const double ba = 4.0 * std::norm(0.5 * (Bp + Bm));
      const double arg = cfg.scaled_size() / cfg.k_over_kappa_n;
      const double sb = std::sin(arg);
      const double sa = std::sin(0.5 * arg);
      worst = std::max(worst, std::abs(bb - sb * sb));
      worst = std::max(worst, std::abs(ba - 4.0 * sa * sa * sa * sa));
    }
  }
  CHECK(worst <= 0.05);
}

TEST_CASE("centrifugal suppression in the classically forbidden region") {
  // m = 200, ratio 10: barrier extends to ~20 mode units
  const double rm = critical_radius(200, 10.0);
  // 0.1 sits deep enough below the turning point that Y_200 overflows
  for (double size : {0.1, 2.0, 8.0, 0.8 * rm - 0.5}) {
    const auto cfg = make_cfg(10.0, size);
    for (auto ch : {ChannelSign::plus, ChannelSign::minus}) {
      const cplx B = matching_coefficients(200, ch, cfg).B;
      CHECK(std::norm(B) <= 1e-4);
    }
  }
}

TEST_CASE("attractive channel pulls the s-wave phase forward") {
  const auto cfg = make_cfg(1.5, 0.3);
  CHECK(phase_shift(0, ChannelSign::minus, cfg) > 0.0);
  CHECK(phase_shift(0, ChannelSign::plus, cfg) < 0.0);
}

TEST_CASE("evanescent threshold is continuous") {
  // crossing k = kappa_n must not jump: compare ratios just below/above 1
  for (int m : {0, 1, 4}) {
    const double below = phase_shift(m, ChannelSign::plus, make_cfg(1.0 - 1e-7, 3.0));
    const double above = phase_shift(m, ChannelSign::plus, make_cfg(1.0 + 1e-7, 3.0));
    CHECK(below == Approx(above).margin(1e-4));
  }
}

TEST_CASE("batch evaluation equals the scalar path") {
  for (double ratio : {0.1, 2.0, 10.0}) {
    const auto cfg = make_cfg(ratio, 6.0);
    for (auto ch : {ChannelSign::plus, ChannelSign::minus}) {
      std::vector<double> d;
      std::vector<cplx> B;
      channel_batch(ch, cfg, 40, d, B);
      for (int m = 0; m <= 40; ++m) {
        CHECK(d[static_cast<size_t>(m)] ==
              Approx(phase_shift(m, ch, cfg)).margin(1e-10));
        CHECK(std::abs(B[static_cast<size_t>(m)] -
                       matching_coefficients(m, ch, cfg).B) <= 1e-10);
      }
    }
  }
}
