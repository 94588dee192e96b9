#ifndef CAVSCAT_ASYMPTOTICS_HPP
#define CAVSCAT_ASYMPTOTICS_HPP

// Closed-form approximations: Rabi-type hot-regime formulas, the
// stationary-phase differential/total lengths, the classical Rabi
// average, the cold-regime analytic resonance profiles, and the eikonal
// impact-parameter integrals evaluated by direct quadrature.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "bessel.hpp"
#include "lambert_w.hpp"
#include "model.hpp"
#include "quadrature.hpp"

namespace cavscat {

struct HotRegimeParams {
  double ratio;       // k/kappa_n
  double kappa_n_R;   // kappa_n * R (or kappa_n * sigma for gaussian)
};

inline double rabi_b(const HotRegimeParams& p) {
  const double s = std::sin(p.kappa_n_R / p.ratio);
  return s * s;
}

inline double rabi_a(const HotRegimeParams& p) {
  const double s = std::sin(p.kappa_n_R / (2.0 * p.ratio));
  return 4.0 * s * s * s * s;
}

inline double hot_differential_b(double theta, const HotRegimeParams& p) {
  const double r2 = p.ratio * p.ratio;
  const double t = r2 * r2 * theta * theta + 1.0;
  const double arg = 2.0 * p.kappa_n_R * std::sqrt(t) / p.ratio;
  return 0.25 * r2 * (1.0 - std::sin(arg)) / (t * std::sqrt(t));
}

struct HotTotals {
  double lambda_b;
  double lambda_a;
};

inline HotTotals hot_totals(const HotRegimeParams& p) {
  const double x = p.kappa_n_R / p.ratio;
  const double j1x = bessel_j(0, x);
  const double j2x = bessel_j(0, 2.0 * x);
  return {0.5 * (1.0 - 0.5 * M_PI * j2x),
          0.5 * (3.0 - 2.0 * M_PI * j1x + 0.5 * M_PI * j2x)};
}

inline double classical_average_rabi(const HotRegimeParams& p) {
  return 0.5 * (1.0 - bessel_j(0, 2.0 * p.kappa_n_R / p.ratio));
}

enum class Parity { even, odd };

// approximate 4|B_b|^2 resonance profile, valid deep in the cold regime
inline double cold_resonance_profile(Parity parity, const HotRegimeParams& p) {
  const double X = p.kappa_n_R * std::sqrt(1.0 + p.ratio * p.ratio);
  const double inv_fin = 1.0 / (p.ratio * p.ratio);
  if (parity == Parity::even) {
    const double s = std::sin(X - 0.25 * M_PI);
    return (1.0 - std::cos(2.0 * X)) / (1.0 + inv_fin * s * s);
  }
  const double c = std::cos(X - 0.25 * M_PI);
  return (1.0 + std::cos(2.0 * X)) / (1.0 + inv_fin * c * c);
}

inline double critical_angle(const HotRegimeParams& p) {
  return std::sqrt(0.5 * M_PI / std::exp(1.0)) / (p.ratio * p.ratio);
}

// Eikonal amplitude by direct quadrature over the impact parameter.
// The accumulated phase is 2*phi(b) with delta^{+-} = -/+ phi(b);
// exit b integrates sin(2 phi), exit a integrates cos(2 phi) - 1.
inline cplx eikonal_amplitude(const ModeFunction& mode, ExitChannel exit,
                              double theta, const HotRegimeParams& p,
                              double tail = 1e-12) {
  const double k = p.ratio;  // kappa_n = 1 units
  const double s = p.kappa_n_R;
  if (s == 0.0) return 0.0;
  const bool constant = mode.shape == ModeShape::constant;
  const double b_max = constant ? s : s * std::sqrt(-2.0 * std::log(tail));

  const auto two_phi = [&](double b) {
    if (constant) {
      const double d2 = s * s - b * b;
      return d2 > 0.0 ? std::sqrt(d2) / k : 0.0;
    }
    return (s / k) * std::sqrt(0.5 * M_PI) * std::exp(-0.5 * b * b / (s * s));
  };

  const auto integrand = [&](double b) {
    const double osc = std::cos(k * b * theta);
    return (exit == ExitChannel::b_n1) ? osc * std::sin(two_phi(b))
                                       : osc * (std::cos(two_phi(b)) - 1.0);
  };

  // seed panels no wider than a quarter period of cos(k b theta)
  int panels = static_cast<int>(std::ceil(2.0 * b_max * k * std::abs(theta) / M_PI));
  panels = std::max(8, std::min(panels, 100000));
  const auto q = integrate(integrand, 0.0, b_max, 1e-8, panels);
  if (!q.converged)
    throw ConvergenceError("eikonal_amplitude: quadrature did not converge");

  const cplx pref = std::sqrt(2.0 * k / M_PI) *
                    std::exp(cplx(0.0, -0.25 * M_PI));
  if (exit == ExitChannel::b_n1) return cplx(0.0, -1.0) * pref * q.value;
  return pref * q.value;
}

// dimensionless differential length from the eikonal amplitude
inline double eikonal_differential(const ModeFunction& mode, ExitChannel exit,
                                   double theta, const HotRegimeParams& p) {
  const cplx f = eikonal_amplitude(mode, exit, theta, p);
  return std::norm(f) / (2.0 * p.kappa_n_R);
}

}  // namespace cavscat

#endif
