#ifndef CAVSCAT_CONSTANT_MODE_HPP
#define CAVSCAT_CONSTANT_MODE_HPP

// Closed-form matching for the transverse constant mode. The interior
// solution is J_m(k_in r) (or I_m for the evanescent repulsive channel);
// outside, i^m J_m(kr) + B_m H1_m(kr). Matching value and slope at r = R
// gives, with (P, Q) the interior value and radial derivative at R,
//
//   W1 = Q J_m(kR) - k J'_m(kR) P
//   W2 = k Y'_m(kR) P - Q Y_m(kR)
//   B_m = i^m W1 / (-W1 + i W2),   tan(delta) = -W1/W2,
//
// which keeps |1 + 2 i^{-m} B_m| = 1 identically.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "bessel.hpp"
#include "model.hpp"

namespace cavscat {

struct ChannelWavenumbers {
  double k = 0.0;        // exterior
  double k_plus = 0.0;   // |k^2 - 1|^{1/2} (kappa_n = 1 units)
  double k_minus = 0.0;  // (k^2 + 1)^{1/2}
  bool evanescent = false;
};

inline ChannelWavenumbers channel_wavenumbers(const ScatterConfig& cfg) {
  ChannelWavenumbers w;
  w.k = cfg.k();
  w.k_minus = std::sqrt(w.k * w.k + 1.0);
  w.k_plus = std::sqrt(std::abs(w.k * w.k - 1.0));
  w.evanescent = w.k < 1.0;
  return w;
}

namespace detail {

// interior value/derivative pair at r = R, arbitrary overall scale
struct InteriorPair {
  double P;
  double Q;
};

inline InteriorPair interior_pair(int m, ChannelSign ch, const ScatterConfig& cfg) {
  const auto w = channel_wavenumbers(cfg);
  const double R = cfg.scaled_size();
  if (ch == ChannelSign::minus) {
    const double z = w.k_minus * R;
    return {bessel_j(m, z), w.k_minus * bessel_jp(m, z)};
  }
  const double kp = w.k_plus;
  if (kp * R < 1e-4) {
    // near the channel threshold the interior is r^m up to a small
    // curvature correction; log-derivative series avoids 0/0
    const double corr = kp * kp * R / (2.0 * (m + 1.0));
    return {1.0, m / R + (w.evanescent ? corr : -corr)};
  }
  if (w.evanescent) {
    // I_m grows exponentially; only the log-derivative is needed
    return {1.0, kp * bessel_i_log_deriv(m, kp * R)};
  }
  const double z = kp * R;
  return {bessel_j(m, z), kp * bessel_jp(m, z)};
}

// returns false when Y_m(kR) overflows, i.e. the wave is centrifugally
// suppressed far below the turning point and scatters nothing
inline bool matching_wronskians(int m, ChannelSign ch, const ScatterConfig& cfg,
                                double& W1, double& W2) {
  const auto p = interior_pair(m, ch, cfg);
  const double k = cfg.k();
  const double kR = k * cfg.scaled_size();
  double Ym, Yp;
  try {
    Ym = bessel_y(m, kR);
    Yp = bessel_yp(m, kR);
  } catch (const std::overflow_error&) {
    W1 = 0.0;
    W2 = 1.0;
    return false;
  }
  W1 = p.Q * bessel_j(m, kR) - k * bessel_jp(m, kR) * p.P;
  W2 = k * Yp * p.P - p.Q * Ym;
  return true;
}

inline cplx ipow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace detail

inline double phase_shift(int m, ChannelSign ch, const ScatterConfig& cfg) {
  if (cfg.mode.shape != ModeShape::constant)
    throw std::invalid_argument("phase_shift: constant mode only");
  if (cfg.scaled_size() == 0.0) return 0.0;
  double W1, W2;
  if (!detail::matching_wronskians(m, ch, cfg, W1, W2)) return 0.0;
  double d = std::atan2(-W1, W2);
  if (d > 0.5 * M_PI) d -= M_PI;
  if (d <= -0.5 * M_PI) d += M_PI;
  return d;
}

struct MatchedCoefficients {
  cplx A;
  cplx B;
};

inline MatchedCoefficients matching_coefficients(int m, ChannelSign ch,
                                                 const ScatterConfig& cfg) {
  if (cfg.mode.shape != ModeShape::constant)
    throw std::invalid_argument("matching_coefficients: constant mode only");
  const cplx im = detail::ipow(m);
  if (cfg.scaled_size() == 0.0) return {im, 0.0};
  double W1, W2;
  if (!detail::matching_wronskians(m, ch, cfg, W1, W2)) return {0.0, 0.0};
  const double denom_mag = std::hypot(W1, W2);
  if (denom_mag == 0.0 || !std::isfinite(denom_mag))
    throw std::runtime_error("matching_coefficients: degenerate matching system");
  const cplx B = im * (W1 / cplx(-W1, W2));
  const auto p = detail::interior_pair(m, ch, cfg);
  const double kR = cfg.k() * cfg.scaled_size();
  const cplx H1(bessel_j(m, kR), bessel_y(m, kR));
  const cplx A = (im * bessel_j(m, kR) + B * H1) / p.P;
  return {A, B};
}

// B reconstructed from a phase shift: B = (i^m/2)(e^{2i delta} - 1)
inline cplx coefficient_from_phase(int m, double delta) {
  return detail::ipow(m) * 0.5 * (std::exp(cplx(0.0, 2.0 * delta)) - 1.0);
}

// Batched evaluation for all orders 0..m_top of one channel. Exterior
// J/Y and the minus-channel interior J come from single recurrence
// sweeps, which matters for hot-regime scans where m_top ~ kR is large.
inline void channel_batch(ChannelSign ch, const ScatterConfig& cfg, int m_top,
                          std::vector<double>& delta, std::vector<cplx>& B) {
  delta.assign(static_cast<size_t>(m_top) + 1, 0.0);
  B.assign(static_cast<size_t>(m_top) + 1, cplx(0.0, 0.0));
  const double s = cfg.scaled_size();
  if (s == 0.0) return;
  const double k = cfg.k();
  const double kR = k * s;
  const auto w = channel_wavenumbers(cfg);

  const int top = m_top + 1;  // one extra order for derivatives
  std::vector<double> Jk, Yk, Jin;
  bessel_j_array(kR, top, Jk);
  bessel_y_array(kR, top, Yk);
  const double k_in = (ch == ChannelSign::minus) ? w.k_minus : w.k_plus;
  const bool j_interior =
      ch == ChannelSign::minus || (!w.evanescent && w.k_plus * s >= 1e-4);
  if (j_interior) bessel_j_array(k_in * s, top, Jin);

  for (int m = 0; m <= m_top; ++m) {
    double P, Q;
    if (j_interior) {
      const double z = k_in * s;
      P = Jin[static_cast<size_t>(m)];
      const double Jp = (m == 0) ? -Jin[1] : Jin[static_cast<size_t>(m) - 1] - (m / z) * P;
      Q = k_in * Jp;
    } else {
      const auto p = detail::interior_pair(m, ch, cfg);
      P = p.P;
      Q = p.Q;
    }
    const double Jm = Jk[static_cast<size_t>(m)];
    const double Ym = Yk[static_cast<size_t>(m)];
    const double Jp = (m == 0) ? -Jk[1] : Jk[static_cast<size_t>(m) - 1] - (m / kR) * Jm;
    const double Yp = (m == 0) ? -Yk[1] : Yk[static_cast<size_t>(m) - 1] - (m / kR) * Ym;
    const double W1 = Q * Jm - k * Jp * P;
    const double W2 = k * Yp * P - Q * Ym;
    if (W1 == 0.0 && W2 == 0.0) continue;  // both underflowed: no scattering
    if (!std::isfinite(W1) || !std::isfinite(W2)) continue;  // Y overflow: suppressed
    double d = std::atan2(-W1, W2);
    if (d > 0.5 * M_PI) d -= M_PI;
    if (d <= -0.5 * M_PI) d += M_PI;
    delta[static_cast<size_t>(m)] = d;
    B[static_cast<size_t>(m)] = detail::ipow(m) * (W1 / cplx(-W1, W2));
  }
}

}  // namespace cavscat

#endif
