#ifndef CAVSCAT_RESONANCES_HPP
#define CAVSCAT_RESONANCES_HPP

// Quasibound-state search. An outgoing-wave solution J_m inside /
// H1_m outside exists when the secular determinant
//   k J_m(k-R) H1'_m(kR) - k- J'_m(k-R) H1_m(kR)
// vanishes; its complex zeros x = kappaR0 - i Gamma/2 (at fixed velocity
// ratio) give resonance positions and widths. Zeros are seeded from
// |secular| minima along the real axis, polished by a complex Newton
// iteration, and each accepted root is verified by the argument
// principle on a small rectangle around it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "bessel.hpp"
#include "model.hpp"

namespace cavscat {

enum class ResonanceMethod { complex_root, analytic_profile };

struct ResonanceRecord {
  int m = 0;
  double kappa_R0 = 0.0;
  double gamma = 0.0;
  ResonanceMethod method = ResonanceMethod::complex_root;
  double residual = 0.0;
};

inline cplx secular(int m, cplx x, double ratio, int n) {
  if (x.real() <= 0.0)
    throw std::invalid_argument("secular: Re(kappa R) must be > 0");
  const cplx s = x * kappa_n_scale(n);
  const double km = std::sqrt(1.0 + ratio * ratio);
  const cplx zk = ratio * s;   // kR
  const cplx zm = km * s;      // k- R
  const cplx t1 = ratio * bessel(BesselKind::J, m, zm) * bessel_deriv(BesselKind::H1, m, zk);
  const cplx t2 = km * bessel_deriv(BesselKind::J, m, zm) * bessel(BesselKind::H1, m, zk);
  return t1 - t2;
}

// |secular| scaled by the magnitudes of its two terms, so the residual
// is meaningful across very different kR scales
inline double secular_residual(int m, cplx x, double ratio, int n) {
  const cplx s = x * kappa_n_scale(n);
  const double km = std::sqrt(1.0 + ratio * ratio);
  const cplx zk = ratio * s;
  const cplx zm = km * s;
  const cplx t1 = ratio * bessel(BesselKind::J, m, zm) * bessel_deriv(BesselKind::H1, m, zk);
  const cplx t2 = km * bessel_deriv(BesselKind::J, m, zm) * bessel(BesselKind::H1, m, zk);
  const double scale = std::abs(t1) + std::abs(t2);
  return scale > 0.0 ? std::abs(t1 - t2) / scale : std::abs(t1 - t2);
}

namespace detail {

// winding number of secular around a rectangle (argument principle)
inline int winding_number(int m, double re_lo, double re_hi, double im_lo,
                          double im_hi, double ratio, int n, int pts = 40) {
  std::vector<cplx> path;
  path.reserve(static_cast<size_t>(4 * pts));
  const auto edge = [&](cplx a, cplx b) {
    for (int i = 0; i < pts; ++i)
      path.push_back(a + (b - a) * (static_cast<double>(i) / pts));
  };
  const cplx c1(re_lo, im_lo), c2(re_hi, im_lo), c3(re_hi, im_hi), c4(re_lo, im_hi);
  edge(c1, c2);
  edge(c2, c3);
  edge(c3, c4);
  edge(c4, c1);
  double total = 0.0;
  cplx prev = secular(m, path.front(), ratio, n);
  for (size_t i = 1; i <= path.size(); ++i) {
    const cplx cur = secular(m, path[i % path.size()], ratio, n);
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

inline bool newton_polish(int m, double ratio, int n, double tol, cplx& x) {
  for (int it = 0; it < 80; ++it) {
    if (x.real() <= 1e-6) return false;
    const cplx f = secular(m, x, ratio, n);
    const double step = 1e-7 * std::max(1.0, std::abs(x));
    const cplx fp = (secular(m, x + step, ratio, n) - secular(m, x - step, ratio, n)) /
                    (2.0 * step);
    if (std::abs(fp) == 0.0) return false;
    const cplx dx = f / fp;
    x -= dx;
    if (std::abs(dx) < 1e-13 * std::max(1.0, std::abs(x))) break;
  }
  return std::isfinite(x.real()) && std::isfinite(x.imag()) &&
         secular_residual(m, x, ratio, n) <= tol;
}

}  // namespace detail

inline std::vector<ResonanceRecord> find_resonances(int m, double window_lo,
                                                    double window_hi,
                                                    const ScatterConfig& cfg,
                                                    double gamma_max = 2.0) {
  if (!(window_lo >= 0.0 && window_hi > window_lo && window_hi <= 200.0))
    throw std::invalid_argument("find_resonances: window must lie in (0, 200]");
  const double ratio = cfg.k_over_kappa_n;
  const int n = cfg.n;
  const double tol = cfg.tol.root_tol;
  const double lo = std::max(window_lo, 0.02);

  // seed from local minima of the normalized residual on the real axis
  const double step = std::min(0.01, (window_hi - lo) / 500.0);
  std::vector<double> vals;
  std::vector<double> xs;
  for (double x = lo; x <= window_hi + 0.5 * step; x += step) {
    xs.push_back(x);
    vals.push_back(secular_residual(m, cplx(x, 0.0), ratio, n));
  }
  std::vector<cplx> roots;
  for (size_t i = 1; i + 1 < xs.size(); ++i) {
    if (!(vals[i] < vals[i - 1] && vals[i] <= vals[i + 1])) continue;
    for (double im0 : {-0.01, -0.1, -0.5}) {
      cplx x(xs[i], im0);
      if (!detail::newton_polish(m, ratio, n, tol, x)) continue;
      const double gamma = -2.0 * x.imag();
      if (gamma <= 0.0 || gamma > gamma_max) continue;
      if (x.real() < window_lo || x.real() > window_hi) continue;
      bool dup = false;
      for (const cplx& r : roots)
        if (std::abs(r - x) < std::max(1e-6, tol * 10.0)) dup = true;
      if (dup) break;
      // argument-principle confirmation on a tight box around the root
      const double half = std::max(1e-4, 0.05 * std::abs(x.imag()) + 1e-4);
      if (detail::winding_number(m, x.real() - half, x.real() + half,
                                 x.imag() - half, x.imag() + half, ratio, n) < 1)
        continue;
      roots.push_back(x);
      break;
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const cplx& a, const cplx& b) { return a.real() < b.real(); });

  std::vector<ResonanceRecord> out;
  for (const cplx& r : roots) {
    ResonanceRecord rec;
    rec.m = m;
    rec.kappa_R0 = r.real();
    rec.gamma = -2.0 * r.imag();
    rec.method = ResonanceMethod::complex_root;
    rec.residual = secular_residual(m, r, ratio, n);
    out.push_back(rec);
  }
  return out;
}

// peak positions of the cold-regime analytic profiles: the even profile
// peaks at X = pi/4 + j*pi, the odd one at X = 3*pi/4 + j*pi, with
// X = kappa_n R sqrt(1 + ratio^2)
inline std::vector<ResonanceRecord> analytic_profile_positions(
    int m, double window_lo, double window_hi, const ScatterConfig& cfg) {
  const double ratio = cfg.k_over_kappa_n;
  const double scale = kappa_n_scale(cfg.n);
  const double km = std::sqrt(1.0 + ratio * ratio);
  const double offset = (m % 2 == 0) ? 0.25 * M_PI : 0.75 * M_PI;
  std::vector<ResonanceRecord> out;
  for (int j = 0;; ++j) {
    const double X = offset + j * M_PI;
    const double kappaR = X / (km * scale);
    if (kappaR > window_hi) break;
    if (kappaR < window_lo) continue;
    ResonanceRecord rec;
    rec.m = m;
    rec.kappa_R0 = kappaR;
    rec.gamma = 0.0;
    rec.method = ResonanceMethod::analytic_profile;
    rec.residual = secular_residual(m, cplx(kappaR, 0.0), ratio, cfg.n);
    out.push_back(rec);
  }
  return out;
}

struct PeakLabel {
  double x = 0.0;       // scan abscissa of the local maximum
  double value = 0.0;
  int m = -1;           // -1 = unmatched
  double kappa_R0 = 0.0;
};

inline std::vector<PeakLabel> label_total_length_peaks(
    const std::vector<double>& xs, const std::vector<double>& ys,
    const std::vector<ResonanceRecord>& records) {
  std::vector<PeakLabel> out;
  for (size_t i = 1; i + 1 < xs.size(); ++i) {
    if (!(ys[i] > ys[i - 1] && ys[i] >= ys[i + 1])) continue;
    PeakLabel lab;
    lab.x = xs[i];
    lab.value = ys[i];
    double best = -1.0;
    for (const auto& rec : records) {
      const double d = std::abs(rec.kappa_R0 - xs[i]);
      const double win = rec.method == ResonanceMethod::complex_root
                             ? std::max(rec.gamma, 1e-3)
                             : 0.5;
      if (d <= win && (best < 0.0 || d < best)) {
        best = d;
        lab.m = rec.m;
        lab.kappa_R0 = rec.kappa_R0;
      }
    }
    out.push_back(lab);
  }
  return out;
}

}  // namespace cavscat

#endif
