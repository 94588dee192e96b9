#ifndef CAVSCAT_BESSEL_HPP
#define CAVSCAT_BESSEL_HPP

// Cylindrical Bessel functions of integer order for real and complex
// arguments, with derivatives via the standard downward recurrence.
//
// Real arguments are delegated to Boost.Math. Complex arguments use
// Miller's backward recurrence for J_m and Taylor continuation of the
// cylinder ODE off the real axis for Y_m (valid for Re(z) > 0, which is
// all the resonance search ever needs). H1 = J + iY throughout.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

namespace cavscat {

using cplx = std::complex<double>;

enum class BesselKind { J, Y, H1, I };

inline double bessel_j(int m, double x) { return boost::math::cyl_bessel_j(m, x); }
inline double bessel_i(int m, double x) { return boost::math::cyl_bessel_i(m, x); }

inline double bessel_y(int m, double x) {
  if (x == 0.0)
    throw std::domain_error("bessel_y: argument must be nonzero");
  return boost::math::cyl_neumann(m, x);
}

// C'_m = C_{m-1} - (m/z) C_m; for m = 0, J0' = -J1 and Y0' = -Y1.
inline double bessel_jp(int m, double x) {
  if (m == 0) return -bessel_j(1, x);
  return bessel_j(m - 1, x) - (m / x) * bessel_j(m, x);
}

inline double bessel_yp(int m, double x) {
  if (m == 0) return -bessel_y(1, x);
  return bessel_y(m - 1, x) - (m / x) * bessel_y(m, x);
}

inline double bessel_ip(int m, double x) {
  if (m == 0) return bessel_i(1, x);
  return bessel_i(m - 1, x) - (m / x) * bessel_i(m, x);
}

// J_m(z) for m = 0..m_max by Miller's backward recurrence, normalized
// with J_0 + 2 sum_k J_{2k} = 1 (valid for complex z as well).
inline std::vector<cplx> bessel_j_array(cplx z, int m_max) {
  std::vector<cplx> out(static_cast<size_t>(m_max) + 1);
  if (std::abs(z) == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const int base = std::max(m_max, static_cast<int>(std::ceil(std::abs(z))));
  const int start = base + 18 + static_cast<int>(2.0 * std::sqrt(static_cast<double>(base) + 1.0));
  cplx fp = 0.0;              // f_{k+1}
  cplx fc = 1e-280;           // f_k
  cplx sum = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k <= m_max) out[static_cast<size_t>(k)] = fc;
    if (k % 2 == 0) sum += (k == 0) ? fc : 2.0 * fc;
    if (k > 0) {
      cplx fm = (2.0 * k / z) * fc - fp;
      fp = fc;
      fc = fm;
      double mag = std::abs(fc);
      if (mag > 1e250) {
        const double inv = 1.0 / mag;
        fc *= inv;
        fp *= inv;
        sum *= inv;
        for (auto& v : out) v *= inv;
      }
    }
  }
  for (auto& v : out) v /= sum;
  return out;
}

inline void bessel_j_array(double x, int m_max, std::vector<double>& out) {
  auto c = bessel_j_array(cplx(x, 0.0), m_max);
  out.resize(c.size());
  for (size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
}

// Forward recurrence is the stable direction for Y.
inline void bessel_y_array(double x, int m_max, std::vector<double>& out) {
  out.resize(static_cast<size_t>(m_max) + 1);
  out[0] = bessel_y(0, x);
  if (m_max == 0) return;
  out[1] = bessel_y(1, x);
  for (int m = 1; m < m_max; ++m)
    out[static_cast<size_t>(m) + 1] = (2.0 * m / x) * out[static_cast<size_t>(m)] - out[static_cast<size_t>(m) - 1];
}

namespace detail {

// One Taylor step for a cylinder function of order 0: w'' = -(1/t) w' - w.
// Derivatives follow from Leibniz on p(t) = 1/t (q = 1 is constant).
inline void cylinder0_taylor_step(cplx a, cplx h, cplx& w, cplx& wp) {
  constexpr int N = 30;
  cplx d[N + 2];
  d[0] = w;
  d[1] = wp;
  // p^{(j)}(a) = (-1)^j j! / a^{j+1}
  cplx pj[N];
  pj[0] = 1.0 / a;
  for (int j = 1; j < N; ++j) pj[j] = pj[j - 1] * (-static_cast<double>(j) / a);
  for (int n = 0; n <= N - 1; ++n) {
    cplx acc = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= n; ++j) {
      acc += binom * pj[j] * d[n + 1 - j];
      binom *= static_cast<double>(n - j) / static_cast<double>(j + 1);
    }
    d[n + 2] = -acc - d[n];
  }
  cplx sw = 0.0, swp = 0.0, hp = 1.0;
  double fact = 1.0;
  for (int j = 0; j <= N; ++j) {
    sw += d[j] * hp / fact;
    if (j < N) swp += d[j + 1] * hp / fact;
    hp *= h;
    fact *= static_cast<double>(j + 1);
  }
  w = sw;
  wp = swp;
}

inline void bessel_y01_complex(cplx z, cplx& y0, cplx& y1) {
  const double x0 = z.real();
  if (x0 <= 0.0)
    throw std::domain_error("bessel Y/H1: complex argument requires Re(z) > 0");
  cplx w = bessel_y(0, x0);
  cplx wp = -bessel_y(1, x0);
  cplx a(x0, 0.0);
  while (std::abs(z - a) > 0.0) {
    const cplx rem = z - a;
    const double hmax = std::min(0.5, std::abs(a) / 4.0);
    const cplx h = (std::abs(rem) <= hmax) ? rem : rem * (hmax / std::abs(rem));
    cylinder0_taylor_step(a, h, w, wp);
    a += h;
  }
  y0 = w;
  y1 = -wp;
}

}  // namespace detail

inline std::vector<cplx> bessel_y_array(cplx z, int m_max) {
  std::vector<cplx> out(static_cast<size_t>(m_max) + 1);
  cplx y0, y1;
  if (z.imag() == 0.0) {
    y0 = bessel_y(0, z.real());
    y1 = (m_max > 0) ? cplx(bessel_y(1, z.real())) : cplx(0.0);
  } else {
    detail::bessel_y01_complex(z, y0, y1);
  }
  out[0] = y0;
  if (m_max == 0) return out;
  out[1] = y1;
  for (int m = 1; m < m_max; ++m)
    out[static_cast<size_t>(m) + 1] = (2.0 * m / z) * out[static_cast<size_t>(m)] - out[static_cast<size_t>(m) - 1];
  return out;
}

inline cplx bessel(BesselKind kind, int m, cplx z) {
  if (m < 0) throw std::domain_error("bessel: order must be nonnegative");
  if (z.imag() == 0.0) {
    const double x = z.real();
    switch (kind) {
      case BesselKind::J: return bessel_j(m, x);
      case BesselKind::Y: return bessel_y(m, x);
      case BesselKind::I: return bessel_i(m, x);
      case BesselKind::H1: return {bessel_j(m, x), bessel_y(m, x)};
    }
  }
  switch (kind) {
    case BesselKind::J:
      return bessel_j_array(z, m)[static_cast<size_t>(m)];
    case BesselKind::Y:
      return bessel_y_array(z, m)[static_cast<size_t>(m)];
    case BesselKind::H1: {
      const cplx j = bessel_j_array(z, m)[static_cast<size_t>(m)];
      const cplx y = bessel_y_array(z, m)[static_cast<size_t>(m)];
      return j + cplx(0.0, 1.0) * y;
    }
    case BesselKind::I:
      throw std::domain_error("bessel: I is supported for real arguments only");
  }
  throw std::logic_error("bessel: unreachable");
}

inline cplx bessel_deriv(BesselKind kind, int m, cplx z) {
  if (m == 0) {
    switch (kind) {
      case BesselKind::J: return -bessel(BesselKind::J, 1, z);
      case BesselKind::Y: return -bessel(BesselKind::Y, 1, z);
      case BesselKind::H1: return -bessel(BesselKind::H1, 1, z);
      case BesselKind::I: return bessel(BesselKind::I, 1, z);
    }
  }
  return bessel(kind, m - 1, z) - (static_cast<double>(m) / z) * bessel(kind, m, z);
}

// I'_m(x) / I_m(x), stable at any x via the backward ratio recurrence
// (I never overflows here because only the ratio is formed).
inline double bessel_i_log_deriv(int m, double x) {
  if (x <= 0.0) throw std::domain_error("bessel_i_log_deriv: requires x > 0");
  const int start = m + 20 + static_cast<int>(std::ceil(std::abs(x))) +
                    static_cast<int>(2.0 * std::sqrt(static_cast<double>(m) + x + 1.0));
  // v_j = I_{j+1}/I_j from 1/v_{j-1} = v_j + 2j/x
  double v = 0.0;
  for (int j = start; j > m; --j) v = 1.0 / (v + 2.0 * j / x);
  // I'_m/I_m = v_m + m/x  (since I'_m = I_{m+1} + (m/x) I_m)
  return v + m / x;
}

}  // namespace cavscat

#endif
