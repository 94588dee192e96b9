#ifndef CAVSCAT_NUMEROV_HPP
#define CAVSCAT_NUMEROV_HPP

// Fixed-step Numerov integration of u'' + Q(r) u = 0 with
// Q(r) = k^2 -/+ v(r) - (m^2 - 1/4)/r^2 (upper sign: repulsive channel).
//
// The centrifugal term is singular at the origin, so integration starts
// at a small on-grid radius with the regular power series
// u = r^{m+1/2} sum_j c_j r^{2j}, c_j built from the even Taylor
// coefficients of k^2 -/+ v. For the constant mode the potential jump at
// r = R is crossed with a one-sided derivative plus a Taylor restart of
// the exterior (free) equation, which preserves fourth-order accuracy.
// The phase shift comes from a two-point match against sqrt(r) J_m(kr)
// and sqrt(r) Y_m(kr) beyond the potential support.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bessel.hpp"
#include "model.hpp"

namespace cavscat {

struct RadialSolution {
  double r0 = 0.0;  // radius of the first stored sample
  double h = 0.0;
  std::vector<double> u;
  int m = 0;
  ChannelSign channel = ChannelSign::minus;
  double delta = 0.0;

  double r_at(size_t i) const { return r0 + static_cast<double>(i) * h; }

  int count_nodes(double r_limit) const {
    int nodes = 0;
    for (size_t i = 1; i < u.size() && r_at(i) <= r_limit; ++i)
      if (u[i - 1] != 0.0 && std::signbit(u[i]) != std::signbit(u[i - 1]) && u[i] != 0.0)
        ++nodes;
    return nodes;
  }

  // trapezoidal integral of u^2 over [r0, r_limit]
  double weight(double r_limit) const {
    double acc = 0.0;
    for (size_t i = 1; i < u.size() && r_at(i) <= r_limit; ++i)
      acc += 0.5 * h * (u[i] * u[i] + u[i - 1] * u[i - 1]);
    return acc;
  }
};

struct RadialOptions {
  double match_radius = -1.0;  // gaussian only: end of the potential grid
  double start_scale = 1.0;    // shrinks the series start radius (regularity tests)
  double r_max = -1.0;         // extend the stored exterior tail to at least this r
};

namespace detail {

inline double series_f(const std::vector<double>& g, double nu, double r) {
  std::vector<double> c{1.0};
  const double r2 = r * r;
  double sum = 1.0, rp = 1.0;
  for (int j = 1; j < 60; ++j) {
    double acc = 0.0;
    for (size_t l = 0; l < g.size() && static_cast<int>(l) < j; ++l)
      acc += g[l] * c[static_cast<size_t>(j - 1) - l];
    c.push_back(-acc / (2.0 * j * (2.0 * nu + 2.0 * j - 1.0)));
    rp *= r2;
    const double term = c.back() * rp;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace detail

inline RadialSolution solve_radial(int m, ChannelSign ch, const ScatterConfig& cfg,
                                   const RadialOptions& opt = {}) {
  cfg.validate();
  const double k = cfg.k();
  const double s = cfg.scaled_size();
  const double sgn = (ch == ChannelSign::plus) ? 1.0 : -1.0;
  const bool constant = cfg.mode.shape == ModeShape::constant;

  RadialSolution sol;
  sol.m = m;
  sol.channel = ch;
  if (s == 0.0) {
    sol.delta = 0.0;
    return sol;
  }

  // end of the gridded potential region
  double r_pot = constant ? s : (opt.match_radius > 0.0 ? opt.match_radius : cfg.cutoff_radius());

  double h = cfg.tol.ode_step * std::min({1.0 / (60.0 * k), 1.0 / 60.0, s / 300.0});
  int64_t N = static_cast<int64_t>(std::ceil(r_pot / h));
  if (N < 20) N = 20;
  if (N > 40'000'000) throw ConvergenceError("solve_radial: step budget exceeded");
  h = r_pot / static_cast<double>(N);

  // even Taylor coefficients of k^2 - sgn*v about r = 0
  std::vector<double> g{k * k - sgn};
  if (!constant) {
    const double a = -0.5 / (s * s);
    double coef = 1.0;
    for (int l = 1; l <= 25; ++l) {
      coef *= a / l;
      g.push_back(-sgn * coef);
    }
  }

  const double nu = m + 0.5;
  const auto Q = [&](double r) {
    return k * k - sgn * cfg.mode.value(r, s) - (m * m - 0.25) / (r * r);
  };

  double r_start = std::min(0.3 / std::max(1.0, std::sqrt(std::abs(g[0]))), r_pot / 4.0);
  r_start *= opt.start_scale;
  int64_t i0 = static_cast<int64_t>(std::floor(r_start / h));
  if (i0 < 1) i0 = 1;
  if (i0 > N - 10) i0 = N - 10;

  const double r1 = static_cast<double>(i0) * h;
  const double r2 = static_cast<double>(i0 + 1) * h;
  double u_prev = detail::series_f(g, nu, r1);
  double u_cur = std::pow(r2 / r1, nu) * detail::series_f(g, nu, r2);

  sol.r0 = r1;
  sol.h = h;
  sol.u.reserve(static_cast<size_t>(N - i0) + 64);
  sol.u.push_back(u_prev);
  sol.u.push_back(u_cur);

  const auto rescale = [&](double& a, double& b) {
    const double mag = std::abs(b);
    if (mag > 1e200) {
      const double inv = 1.0 / mag;
      a *= inv;
      b *= inv;
      for (auto& v : sol.u) v *= inv;
    }
  };

  const double h2 = h * h;
  for (int64_t i = i0 + 1; i < N; ++i) {
    const double q0 = Q(static_cast<double>(i - 1) * h);
    const double q1 = Q(static_cast<double>(i) * h);
    const double q2 = Q(static_cast<double>(i + 1) * h);
    const double un = (2.0 * u_cur * (1.0 - 5.0 * h2 * q1 / 12.0) -
                       u_prev * (1.0 + h2 * q0 / 12.0)) /
                      (1.0 + h2 * q2 / 12.0);
    u_prev = u_cur;
    u_cur = un;
    sol.u.push_back(un);
    rescale(u_prev, u_cur);
  }

  // cross into the exterior region
  const auto Qout = [&](double r) {
    return constant ? (k * k - (m * m - 0.25) / (r * r)) : Q(r);
  };

  double u_b, u_a;  // last two samples heading outward
  if (constant) {
    // one-sided derivative at R from the interior side, then a quintic
    // Taylor restart of u'' = W u with W = (m^2-1/4)/r^2 - k^2
    const size_t L = sol.u.size();
    if (L < 5) throw std::runtime_error("solve_radial: grid too short");
    const double uR = sol.u[L - 1];
    const double up = (25.0 * sol.u[L - 1] - 48.0 * sol.u[L - 2] + 36.0 * sol.u[L - 3] -
                       16.0 * sol.u[L - 4] + 3.0 * sol.u[L - 5]) /
                      (12.0 * h);
    const double cf = m * m - 0.25;
    const double R = r_pot;
    const double W = cf / (R * R) - k * k;
    const double W1 = -2.0 * cf / (R * R * R);
    const double W2 = 6.0 * cf / (R * R * R * R);
    const double W3 = -24.0 * cf / (R * R * R * R * R);
    double d[6];
    d[0] = uR;
    d[1] = up;
    d[2] = W * uR;
    d[3] = W1 * d[0] + W * d[1];
    d[4] = W2 * d[0] + 2.0 * W1 * d[1] + W * d[2];
    d[5] = W3 * d[0] + 3.0 * W2 * d[1] + 3.0 * W1 * d[2] + W * d[3];
    double fact = 1.0, hp = 1.0, u1 = 0.0;
    for (int j = 0; j < 6; ++j) {
      u1 += d[j] * hp / fact;
      hp *= h;
      fact *= (j + 1.0);
    }
    u_b = uR;
    u_a = u1;
    sol.u.push_back(u1);
  } else {
    u_b = u_prev;
    u_a = u_cur;
  }

  const double delta_r = std::max(20.0 * h, 0.5 / k);
  int64_t M = static_cast<int64_t>(std::ceil(delta_r / h));
  int64_t M_store = M;
  if (opt.r_max > r_pot)
    M_store = std::max(M, static_cast<int64_t>(std::ceil((opt.r_max - r_pot) / h)));

  const int64_t j_first = constant ? 2 : 1;  // next exterior index to compute
  double u_match0 = constant ? u_b : 0.0;    // u at r_pot
  if (!constant) u_match0 = sol.u[sol.u.size() - 1];
  double u_matchM = 0.0;
  for (int64_t j = j_first; j <= M_store; ++j) {
    const double q0 = Qout(r_pot + static_cast<double>(j - 2) * h);
    const double q1 = Qout(r_pot + static_cast<double>(j - 1) * h);
    const double q2 = Qout(r_pot + static_cast<double>(j) * h);
    const double un = (2.0 * u_a * (1.0 - 5.0 * h2 * q1 / 12.0) -
                       u_b * (1.0 + h2 * q0 / 12.0)) /
                      (1.0 + h2 * q2 / 12.0);
    u_b = u_a;
    u_a = un;
    sol.u.push_back(un);
    if (j == M) u_matchM = un;
  }
  if (M == 0) u_matchM = u_a;

  const double ra = r_pot;
  const double rb = r_pot + static_cast<double>(M) * h;
  const double a11 = std::sqrt(ra) * bessel_j(m, k * ra);
  const double a12 = std::sqrt(ra) * bessel_y(m, k * ra);
  const double a21 = std::sqrt(rb) * bessel_j(m, k * rb);
  const double a22 = std::sqrt(rb) * bessel_y(m, k * rb);
  const double det = a11 * a22 - a12 * a21;
  if (det == 0.0 || !std::isfinite(det))
    throw std::runtime_error("solve_radial: singular matching system");
  const double alpha = (u_match0 * a22 - u_matchM * a12) / det;
  const double beta = (u_matchM * a11 - u_match0 * a21) / det;

  double d = std::atan2(-beta, alpha);
  if (d > 0.5 * M_PI) d -= M_PI;
  if (d <= -0.5 * M_PI) d += M_PI;
  sol.delta = d;
  return sol;
}

}  // namespace cavscat

#endif
