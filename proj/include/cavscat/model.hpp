#ifndef CAVSCAT_MODEL_HPP
#define CAVSCAT_MODEL_HPP

// Dimensionless model definition. Everything internal works in units
// where kappa_n = 1: the exterior wavenumber is then the velocity ratio
// k/kappa_n, and the mode size in these units is size*(n+1)^{1/4}.

#include <cmath>
#include <stdexcept>
#include <string>

namespace cavscat {

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ChannelSign { plus, minus };
enum class ExitChannel { a_n, b_n1 };
enum class ModeShape { constant, gaussian };

struct ModeFunction {
  ModeShape shape = ModeShape::constant;
  double size = 1.0;  // kappa*R for constant, kappa*sigma for gaussian

  double value(double r, double scaled_size) const {
    if (shape == ModeShape::constant) return r <= scaled_size ? 1.0 : 0.0;
    const double x = r / scaled_size;
    return std::exp(-0.5 * x * x);
  }
};

struct Tolerances {
  double series_tail = 1e-12;
  double ode_step = 1.0;  // multiplier on the default Numerov step
  double root_tol = 1e-10;
};

struct ScatterConfig {
  ModeFunction mode;
  int n = 0;                     // photon number
  double k_over_kappa_n = 1.0;   // velocity ratio
  int m_max = -1;                // -1 = automatic truncation
  int theta_points = 2048;
  Tolerances tol;

  void validate() const {
    if (mode.size < 0.0) throw std::invalid_argument("mode size must be >= 0");
    if (n < 0) throw std::invalid_argument("photon number must be >= 0");
    if (k_over_kappa_n <= 0.0) throw std::invalid_argument("k/kappa_n must be > 0");
    if (theta_points < 4) throw std::invalid_argument("theta_points must be >= 4");
    if (tol.series_tail <= 0.0 || tol.ode_step <= 0.0 || tol.root_tol <= 0.0)
      throw std::invalid_argument("tolerances must be > 0");
  }

  // (n+1)^{1/4} = kappa_n/kappa
  double kappa_n_over_kappa() const { return std::pow(n + 1.0, 0.25); }

  // mode size in units of 1/kappa_n (kappa_n*R or kappa_n*sigma)
  double scaled_size() const { return mode.size * kappa_n_over_kappa(); }

  // exterior wavenumber in units of kappa_n
  double k() const { return k_over_kappa_n; }

  // radius beyond which the gaussian mode is numerically negligible
  double cutoff_radius() const {
    const double s = scaled_size();
    if (mode.shape == ModeShape::constant) return s;
    return s * std::sqrt(-2.0 * std::log(tol.series_tail));
  }
};

inline double kappa_n_scale(int n) {
  if (n < 0) throw std::invalid_argument("photon number must be >= 0");
  return std::pow(n + 1.0, 0.25);
}

// classical turning radius of the centrifugal barrier; 0 for the s-wave
inline double critical_radius(int m, double k) {
  if (k <= 0.0) throw std::invalid_argument("critical_radius: k must be > 0");
  if (m == 0) return 0.0;
  return std::sqrt(m * m - 0.25) / k;
}

inline double m_cutoff(double kR) {
  if (kR < 0.0) throw std::invalid_argument("m_cutoff: kR must be >= 0");
  return std::sqrt(kR * kR + 0.25);
}

// attractive-channel effective potential, kappa_n = 1 units
inline double effective_potential(int m, double r, const ModeFunction& mode,
                                  double scaled_size) {
  if (r <= 0.0) throw std::invalid_argument("effective_potential: r must be > 0");
  return -mode.value(r, scaled_size) + (m * m - 0.25) / (r * r);
}

inline double effective_potential(int m, double r, const ScatterConfig& cfg) {
  return effective_potential(m, r, cfg.mode, cfg.scaled_size());
}

// first guess for the truncation order before tail-driven extension
inline int m_max_seed(const ScatterConfig& cfg) {
  if (cfg.m_max >= 0) return cfg.m_max;
  const double kR = cfg.k() * cfg.cutoff_radius();
  return static_cast<int>(std::ceil(m_cutoff(kR))) + 8;
}

}  // namespace cavscat

#endif
