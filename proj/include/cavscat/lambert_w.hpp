#ifndef CAVSCAT_LAMBERT_W_HPP
#define CAVSCAT_LAMBERT_W_HPP

// Lambert W on the two real branches, via Halley iteration from
// branch-aware seeds (series near the branch point -1/e, log-based
// asymptotics elsewhere).

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cavscat {

namespace detail {

inline double lambert_halley(double w, double x) {
  for (int it = 0; it < 60; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double dw = f / denom;
    w -= dw;
    if (std::abs(dw) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

}  // namespace detail

inline double lambert_w(int branch, double x) {
  constexpr double inv_e = 0.36787944117144233;
  if (branch != 0 && branch != -1)
    throw std::domain_error("lambert_w: branch must be 0 or -1");
  if (x < -inv_e) {
    // tolerate roundoff that lands a hair below the branch point
    if (x > -inv_e * (1.0 + 1e-12)) return -1.0;
    throw std::domain_error("lambert_w: argument below -1/e");
  }
  if (branch == -1 && x >= 0.0)
    throw std::domain_error("lambert_w: branch -1 requires x < 0");

  if (x == 0.0) return 0.0;

  const double q = 1.0 + x / inv_e;  // distance from the branch point, scaled
  if (q <= 0.0) return -1.0;

  double w;
  if (q < 1e-3) {
    // series about the branch point, p = ±sqrt(2(1 + ex))
    const double p = (branch == 0 ? 1.0 : -1.0) * std::sqrt(2.0 * q);
    w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
  } else if (branch == 0) {
    if (x < 1.0) {
      w = x * (1.0 - x + 1.5 * x * x) / (1.0 + 0.5 * x);  // crude rational seed
      if (w <= -1.0) w = -0.5;
    } else {
      const double l1 = std::log(x), l2 = std::log(std::log(x) + 1e-300);
      w = (x < 3.0) ? std::log(x / std::log(1.0 + x)) : l1 - l2 + l2 / l1;
    }
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
    if (w > -1.0) w = -1.5;
  }
  return detail::lambert_halley(w, x);
}

}  // namespace cavscat

#endif
