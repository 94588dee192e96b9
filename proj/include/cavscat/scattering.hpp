#ifndef CAVSCAT_SCATTERING_HPP
#define CAVSCAT_SCATTERING_HPP

// Partial-wave assembly: dressed-channel coefficients B_m^{+-} combine
// into the bare exit channels as B_a = (B+ + B-)/2 (atom still excited)
// and B_b = (B+ - B-)/2 (photon left in the cavity). Amplitudes,
// differential and total scattering lengths follow, all dimensionless
// (divided by twice the mode size).

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "constant_mode.hpp"
#include "model.hpp"
#include "numerov.hpp"

namespace cavscat {

struct PartialWaveEntry {
  cplx B_plus{};
  cplx B_minus{};
  cplx B_a{};
  cplx B_b{};
  double delta_plus = 0.0;
  double delta_minus = 0.0;
};

struct PartialWaveTable {
  ScatterConfig cfg;
  std::vector<PartialWaveEntry> rows;  // index = m
  int m_max() const { return static_cast<int>(rows.size()) - 1; }
};

namespace detail {

inline PartialWaveEntry make_entry(int m, const ScatterConfig& cfg) {
  PartialWaveEntry e;
  if (cfg.mode.shape == ModeShape::constant) {
    e.delta_plus = phase_shift(m, ChannelSign::plus, cfg);
    e.delta_minus = phase_shift(m, ChannelSign::minus, cfg);
    e.B_plus = matching_coefficients(m, ChannelSign::plus, cfg).B;
    e.B_minus = matching_coefficients(m, ChannelSign::minus, cfg).B;
  } else {
    e.delta_plus = solve_radial(m, ChannelSign::plus, cfg).delta;
    e.delta_minus = solve_radial(m, ChannelSign::minus, cfg).delta;
    e.B_plus = coefficient_from_phase(m, e.delta_plus);
    e.B_minus = coefficient_from_phase(m, e.delta_minus);
  }
  e.B_a = 0.5 * (e.B_plus + e.B_minus);
  e.B_b = 0.5 * (e.B_plus - e.B_minus);
  return e;
}

}  // namespace detail

inline PartialWaveTable build_table(const ScatterConfig& cfg) {
  cfg.validate();
  PartialWaveTable t;
  t.cfg = cfg;
  const int seed = m_max_seed(cfg);
  t.rows.reserve(static_cast<size_t>(seed) + 1);
  if (cfg.mode.shape == ModeShape::constant) {
    std::vector<double> dp, dm;
    std::vector<cplx> Bp, Bm;
    channel_batch(ChannelSign::plus, cfg, seed, dp, Bp);
    channel_batch(ChannelSign::minus, cfg, seed, dm, Bm);
    for (int m = 0; m <= seed; ++m) {
      PartialWaveEntry e;
      e.delta_plus = dp[static_cast<size_t>(m)];
      e.delta_minus = dm[static_cast<size_t>(m)];
      e.B_plus = Bp[static_cast<size_t>(m)];
      e.B_minus = Bm[static_cast<size_t>(m)];
      e.B_a = 0.5 * (e.B_plus + e.B_minus);
      e.B_b = 0.5 * (e.B_plus - e.B_minus);
      t.rows.push_back(e);
    }
  } else {
    for (int m = 0; m <= seed; ++m) t.rows.push_back(detail::make_entry(m, cfg));
  }
  if (cfg.m_max < 0 && cfg.scaled_size() > 0.0) {
    // extend until three consecutive orders fall below the tail threshold
    int quiet = 0;
    for (int m = std::max(0, seed - 2); ; ++m) {
      if (m > seed) t.rows.push_back(detail::make_entry(m, cfg));
      const auto& e = t.rows[static_cast<size_t>(m)];
      const double mag = std::max(std::norm(e.B_plus), std::norm(e.B_minus));
      quiet = (mag < cfg.tol.series_tail) ? quiet + 1 : 0;
      if (quiet >= 3) break;
      if (m > seed + 4000)
        throw ConvergenceError("build_table: truncation did not converge");
    }
  }
  return t;
}

inline cplx amplitude(const PartialWaveTable& t, ExitChannel exit, double theta) {
  const double k = t.cfg.k();
  cplx sum = 0.0;
  for (int m = 0; m <= t.m_max(); ++m) {
    const auto& e = t.rows[static_cast<size_t>(m)];
    const cplx B = (exit == ExitChannel::a_n) ? e.B_a : e.B_b;
    const double eps = (m == 0) ? 1.0 : 2.0;
    const cplx phase = std::exp(cplx(0.0, -(m * 0.5 * M_PI + 0.25 * M_PI)));
    sum += eps * std::cos(m * theta) * phase * B;
  }
  return std::sqrt(2.0 / (M_PI * k)) * sum;
}

struct AngularDistribution {
  std::vector<double> thetas;
  std::vector<double> lambda_a;
  std::vector<double> lambda_b;
};

inline std::vector<double> theta_grid(int n_points) {
  std::vector<double> th(static_cast<size_t>(n_points));
  for (int j = 0; j < n_points; ++j)
    th[static_cast<size_t>(j)] = -M_PI + (j + 1) * 2.0 * M_PI / n_points;
  return th;
}

inline AngularDistribution differential(const PartialWaveTable& t,
                                        const std::vector<double>& thetas) {
  AngularDistribution d;
  d.thetas = thetas;
  const double div = 2.0 * t.cfg.scaled_size();
  d.lambda_a.reserve(thetas.size());
  d.lambda_b.reserve(thetas.size());
  for (double th : thetas) {
    d.lambda_a.push_back(div > 0.0 ? std::norm(amplitude(t, ExitChannel::a_n, th)) / div : 0.0);
    d.lambda_b.push_back(div > 0.0 ? std::norm(amplitude(t, ExitChannel::b_n1, th)) / div : 0.0);
  }
  return d;
}

inline AngularDistribution differential(const PartialWaveTable& t) {
  return differential(t, theta_grid(t.cfg.theta_points));
}

struct ScatterSummary {
  double lambda_a_total = 0.0;
  double lambda_b_total = 0.0;
  double lambda_plus_total = 0.0;
  double lambda_minus_total = 0.0;
};

inline ScatterSummary totals(const PartialWaveTable& t) {
  ScatterSummary s;
  const double k = t.cfg.k();
  for (int m = 0; m <= t.m_max(); ++m) {
    const auto& e = t.rows[static_cast<size_t>(m)];
    const double eps = (m == 0) ? 1.0 : 2.0;
    const double sp = std::sin(e.delta_plus), sm = std::sin(e.delta_minus);
    s.lambda_a_total += eps * std::norm(e.B_a);
    s.lambda_b_total += eps * std::norm(e.B_b);
    s.lambda_plus_total += eps * sp * sp;
    s.lambda_minus_total += eps * sm * sm;
  }
  const double div = t.cfg.scaled_size() > 0.0
                         ? (4.0 / k) / (2.0 * t.cfg.scaled_size())
                         : 0.0;
  s.lambda_a_total *= div;
  s.lambda_b_total *= div;
  s.lambda_plus_total *= div;
  s.lambda_minus_total *= div;
  return s;
}

}  // namespace cavscat

#endif
