// Command-line front end: phase-shift tables, parameter scans,
// differential patterns, resonance finding and preset figure datasets,
// all emitted as byte-stable CSV plus a JSON run manifest.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavscat/asymptotics.hpp"
#include "cavscat/csv.hpp"
#include "cavscat/model.hpp"
#include "cavscat/numerov.hpp"
#include "cavscat/parallel.hpp"
#include "cavscat/resonances.hpp"
#include "cavscat/scattering.hpp"

namespace cs = cavscat;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct CommonOpts {
  std::string mode = "constant";
  double k_over_kappa = 1.0;
  int n = 0;
  double size = 1.0;
  std::string m_max = "auto";
  int theta_points = 2048;
  double series_tail = 1e-12;
  double ode_step = 1.0;
  double root_tol = 1e-10;
  std::string out = "out.csv";
  std::string config_path;
  std::string threads = "auto";
};

void apply_config_file(CommonOpts& o, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    const auto pos = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (pos == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, pos));
    const std::string val = trim(line.substr(pos + 1));
    try {
      if (key == "mode") o.mode = val;
      else if (key == "k_over_kappa_n") o.k_over_kappa = std::stod(val);
      else if (key == "n") o.n = std::stoi(val);
      else if (key == "size") o.size = std::stod(val);
      else if (key == "m_max") o.m_max = val;
      else if (key == "theta_points") o.theta_points = std::stoi(val);
      else if (key == "series_tail") o.series_tail = std::stod(val);
      else if (key == "ode_step") o.ode_step = std::stod(val);
      else if (key == "root_tol") o.root_tol = std::stod(val);
      else if (key == "threads") o.threads = val;
      else
        throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": bad value for '" + key + "'");
    }
  }
}

cs::ScatterConfig make_config(const CommonOpts& o) {
  cs::ScatterConfig cfg;
  if (o.mode == "constant") cfg.mode.shape = cs::ModeShape::constant;
  else if (o.mode == "gaussian") cfg.mode.shape = cs::ModeShape::gaussian;
  else throw std::invalid_argument("mode must be 'constant' or 'gaussian'");
  cfg.mode.size = o.size;
  cfg.n = o.n;
  cfg.k_over_kappa_n = o.k_over_kappa;
  if (o.m_max == "auto") cfg.m_max = -1;
  else cfg.m_max = std::stoi(o.m_max);
  cfg.theta_points = o.theta_points;
  cfg.tol.series_tail = o.series_tail;
  cfg.tol.ode_step = o.ode_step;
  cfg.tol.root_tol = o.root_tol;
  cfg.validate();
  return cfg;
}

unsigned thread_count(const CommonOpts& o) {
  if (o.threads == "auto") return cs::resolve_threads(0);
  const int t = std::stoi(o.threads);
  if (t < 1) throw std::invalid_argument("--threads must be >= 1 or 'auto'");
  return static_cast<unsigned>(t);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_json(const CommonOpts& o) {
  return json{{"mode", o.mode},
              {"k_over_kappa_n", o.k_over_kappa},
              {"n", o.n},
              {"size", o.size},
              {"m_max", o.m_max},
              {"theta_points", o.theta_points},
              {"series_tail", o.series_tail},
              {"ode_step", o.ode_step},
              {"root_tol", o.root_tol},
              {"threads", o.threads}};
}

void write_manifest(const std::string& command, const CommonOpts& o,
                    const std::vector<std::string>& outputs) {
  if (outputs.empty()) return;
  const std::filesystem::path first(outputs.front());
  std::filesystem::path mpath = first;
  mpath.replace_extension(".manifest.json");
  json m{{"command", command},
         {"cfg", config_json(o)},
         {"timestamp", utc_timestamp()},
         {"code_version", kVersion},
         {"output_paths", outputs}};
  std::ofstream out(mpath, std::ios::binary);
  if (!out) throw cs::IoError("cannot open manifest: " + mpath.string());
  out << m.dump(2) << '\n';
  if (!out) throw cs::IoError("write failure on manifest");
}

struct Range {
  double start = 0.0, stop = 0.0, step = 0.0;
};

Range parse_range(const std::string& s) {
  Range r;
  char c1, c2;
  std::istringstream is(s);
  if (!(is >> r.start >> c1 >> r.stop >> c2 >> r.step) || c1 != ':' || c2 != ':')
    throw std::invalid_argument("range must be start:stop:step");
  if (!(r.step > 0.0) || !(r.start < r.stop))
    throw std::invalid_argument("range requires step > 0 and start < stop");
  return r;
}

int range_count(const Range& r) {
  return static_cast<int>(std::floor((r.stop - r.start) / r.step + 1e-9)) + 1;
}

// ---- commands -----------------------------------------------------------

void cmd_phase_shifts(const CommonOpts& o) {
  const auto cfg = make_config(o);
  const auto table = cs::build_table(cfg);
  cs::CsvWriter w(o.out, {"m", "delta_plus", "delta_minus", "re_B_a", "im_B_a",
                          "re_B_b", "im_B_b", "abs2_B_a", "abs2_B_b"});
  for (int m = 0; m <= table.m_max(); ++m) {
    const auto& e = table.rows[static_cast<size_t>(m)];
    w.row({std::to_string(m), cs::format_float(e.delta_plus),
           cs::format_float(e.delta_minus), cs::format_float(e.B_a.real()),
           cs::format_float(e.B_a.imag()), cs::format_float(e.B_b.real()),
           cs::format_float(e.B_b.imag()), cs::format_float(std::norm(e.B_a)),
           cs::format_float(std::norm(e.B_b))});
  }
  w.close();
  write_manifest("phase-shifts", o, {o.out});
}

double scan_value(const std::string& quantity, int coeff_m,
                  const cs::ScatterConfig& cfg) {
  if (quantity == "coeff_a" || quantity == "coeff_b") {
    cs::ScatterConfig c = cfg;
    if (c.m_max < 0) c.m_max = coeff_m;  // only one coefficient is needed
    cs::PartialWaveEntry e;
    if (c.mode.shape == cs::ModeShape::constant) {
      e.B_plus = cs::matching_coefficients(coeff_m, cs::ChannelSign::plus, c).B;
      e.B_minus = cs::matching_coefficients(coeff_m, cs::ChannelSign::minus, c).B;
    } else {
      e.B_plus = cs::coefficient_from_phase(
          coeff_m, cs::solve_radial(coeff_m, cs::ChannelSign::plus, c).delta);
      e.B_minus = cs::coefficient_from_phase(
          coeff_m, cs::solve_radial(coeff_m, cs::ChannelSign::minus, c).delta);
    }
    const cs::cplx B = (quantity == "coeff_a") ? 0.5 * (e.B_plus + e.B_minus)
                                               : 0.5 * (e.B_plus - e.B_minus);
    return std::norm(B);
  }
  const auto s = cs::totals(cs::build_table(cfg));
  if (quantity == "total_a") return s.lambda_a_total;
  if (quantity == "total_b") return s.lambda_b_total;
  if (quantity == "total_plus") return s.lambda_plus_total;
  if (quantity == "total_minus") return s.lambda_minus_total;
  throw std::invalid_argument("unknown scan quantity: " + quantity);
}

void cmd_scan(const CommonOpts& o, const std::string& quantity, int coeff_m,
              const std::string& range_str) {
  const auto cfg0 = make_config(o);
  const Range r = parse_range(range_str);
  const int count = range_count(r);
  const unsigned threads = thread_count(o);
  const auto values = cs::parallel_map<double>(
      static_cast<size_t>(count), threads, [&](size_t i) {
        cs::ScatterConfig cfg = cfg0;
        cfg.mode.size = r.start + static_cast<double>(i) * r.step;
        if (cfg.mode.size <= 0.0) return 0.0;
        return scan_value(quantity, coeff_m, cfg);
      });
  cs::CsvWriter w(o.out, {"x", "value"});
  for (int i = 0; i < count; ++i)
    w.row({cs::format_float(r.start + i * r.step),
           cs::format_float(values[static_cast<size_t>(i)])});
  w.close();
  write_manifest("scan", o, {o.out});
}

void cmd_differential(const CommonOpts& o) {
  const auto cfg = make_config(o);
  const auto table = cs::build_table(cfg);
  const auto dist = cs::differential(table);
  cs::CsvWriter w(o.out, {"theta_rad", "lambda_a", "lambda_b"});
  for (size_t i = 0; i < dist.thetas.size(); ++i)
    w.row({cs::format_float(dist.thetas[i]), cs::format_float(dist.lambda_a[i]),
           cs::format_float(dist.lambda_b[i])});
  w.close();
  write_manifest("differential", o, {o.out});
}

const char* method_name(cs::ResonanceMethod m) {
  return m == cs::ResonanceMethod::complex_root ? "complex_root"
                                                : "analytic_profile";
}

void cmd_resonances(const CommonOpts& o, const std::string& m_range,
                    const std::string& window_str) {
  const auto cfg = make_config(o);
  int m_lo = 0, m_hi = 0;
  {
    char c;
    std::istringstream is(m_range);
    if (!(is >> m_lo >> c >> m_hi) || c != ':' || m_lo < 0 || m_hi < m_lo)
      throw std::invalid_argument("m range must be lo:hi with 0 <= lo <= hi");
  }
  double w_lo = 0.0, w_hi = 0.0;
  {
    char c;
    std::istringstream is(window_str);
    if (!(is >> w_lo >> c >> w_hi) || c != ':' || !(w_hi > w_lo))
      throw std::invalid_argument("window must be lo:hi with lo < hi");
  }
  std::vector<cs::ResonanceRecord> records;
  if (w_hi > w_lo) {
    const unsigned threads = thread_count(o);
    auto per_m = cs::parallel_map<std::vector<cs::ResonanceRecord>>(
        static_cast<size_t>(m_hi - m_lo + 1), threads, [&](size_t i) {
          return cs::find_resonances(m_lo + static_cast<int>(i), w_lo, w_hi, cfg);
        });
    for (auto& v : per_m)
      records.insert(records.end(), v.begin(), v.end());
  }
  std::sort(records.begin(), records.end(),
            [](const cs::ResonanceRecord& a, const cs::ResonanceRecord& b) {
              return a.m != b.m ? a.m < b.m : a.kappa_R0 < b.kappa_R0;
            });
  cs::CsvWriter w(o.out, {"m", "kappa_R0", "gamma", "residual", "method"});
  for (const auto& rec : records)
    w.row({std::to_string(rec.m), cs::format_float(rec.kappa_R0),
           cs::format_float(rec.gamma), cs::format_float(rec.residual),
           method_name(rec.method)});
  w.close();
  write_manifest("resonances", o, {o.out});
}

// ---- figure presets -----------------------------------------------------

void figure_coefficient_scan(const CommonOpts& base, double ratio, int m,
                             const Range& r, const std::string& path,
                             std::vector<std::string>& outputs) {
  CommonOpts o = base;
  o.k_over_kappa = ratio;
  const auto cfg0 = make_config(o);
  const int count = range_count(r);
  const unsigned threads = thread_count(o);
  struct Pair {
    double a, b;
  };
  const auto vals = cs::parallel_map<Pair>(
      static_cast<size_t>(count), threads, [&](size_t i) -> Pair {
        cs::ScatterConfig cfg = cfg0;
        cfg.mode.size = r.start + static_cast<double>(i) * r.step;
        if (cfg.mode.size <= 0.0) return {0.0, 0.0};
        const auto Bp = cs::matching_coefficients(m, cs::ChannelSign::plus, cfg).B;
        const auto Bm = cs::matching_coefficients(m, cs::ChannelSign::minus, cfg).B;
        return {std::norm(0.5 * (Bp + Bm)), std::norm(0.5 * (Bp - Bm))};
      });
  cs::CsvWriter w(path, {"kappa_R", "abs2_B_a", "abs2_B_b"});
  for (int i = 0; i < count; ++i)
    w.row({cs::format_float(r.start + i * r.step),
           cs::format_float(vals[static_cast<size_t>(i)].a),
           cs::format_float(vals[static_cast<size_t>(i)].b)});
  w.close();
  outputs.push_back(path);
}

void cmd_figure(const CommonOpts& base, int id, const std::string& outdir) {
  namespace fs = std::filesystem;
  fs::create_directories(outdir);
  const auto path = [&](const std::string& name) {
    return (fs::path(outdir) / name).string();
  };
  std::vector<std::string> outputs;

  switch (id) {
    case 2: {
      // |B_a|^2, |B_b|^2 vs kappa R for m = 0 and m = 200, ratio 10
      const Range r{0.0, 120.0, 0.1};
      figure_coefficient_scan(base, 10.0, 0, r, path("fig2_m0.csv"), outputs);
      figure_coefficient_scan(base, 10.0, 200, r, path("fig2_m200.csv"), outputs);
      break;
    }
    case 3: {
      CommonOpts o = base;
      o.k_over_kappa = 10.0;
      o.size = 100.0;
      const auto cfg = make_config(o);
      const auto table = cs::build_table(cfg);
      const auto dist = cs::differential(table);
      cs::CsvWriter w(path("fig3_exact.csv"), {"theta_rad", "lambda_b"});
      cs::CsvWriter wa(path("fig3_approx.csv"), {"theta_rad", "lambda_b"});
      const cs::HotRegimeParams p{cfg.k_over_kappa_n, cfg.scaled_size()};
      for (size_t i = 0; i < dist.thetas.size(); ++i) {
        w.row({cs::format_float(dist.thetas[i]), cs::format_float(dist.lambda_b[i])});
        wa.row({cs::format_float(dist.thetas[i]),
                cs::format_float(cs::hot_differential_b(dist.thetas[i], p))});
      }
      w.close();
      wa.close();
      outputs = {path("fig3_exact.csv"), path("fig3_approx.csv")};
      break;
    }
    case 4: {
      CommonOpts o = base;
      o.k_over_kappa = 10.0;
      const auto cfg0 = make_config(o);
      const Range r{0.0, 120.0, 0.1};
      const int count = range_count(r);
      struct Pair {
        double a, b;
      };
      const auto vals = cs::parallel_map<Pair>(
          static_cast<size_t>(count), thread_count(o), [&](size_t i) -> Pair {
            cs::ScatterConfig cfg = cfg0;
            cfg.mode.size = r.start + static_cast<double>(i) * r.step;
            if (cfg.mode.size <= 0.0) return {0.0, 0.0};
            const auto s = cs::totals(cs::build_table(cfg));
            return {s.lambda_a_total, s.lambda_b_total};
          });
      cs::CsvWriter w(path("fig4_exact.csv"), {"kappa_R", "lambda_a", "lambda_b"});
      cs::CsvWriter wb(path("fig4_approx_b.csv"), {"kappa_R", "lambda_b"});
      cs::CsvWriter wa(path("fig4_approx_a.csv"), {"kappa_R", "lambda_a"});
      const double scale = cs::kappa_n_scale(o.n);
      for (int i = 0; i < count; ++i) {
        const double x = r.start + i * r.step;
        const cs::HotRegimeParams p{o.k_over_kappa, x * scale};
        const auto h = cs::hot_totals(p);
        w.row({cs::format_float(x), cs::format_float(vals[static_cast<size_t>(i)].a),
               cs::format_float(vals[static_cast<size_t>(i)].b)});
        wb.row({cs::format_float(x), cs::format_float(h.lambda_b)});
        wa.row({cs::format_float(x), cs::format_float(h.lambda_a)});
      }
      w.close();
      wb.close();
      wa.close();
      outputs = {path("fig4_exact.csv"), path("fig4_approx_b.csv"),
                 path("fig4_approx_a.csv")};
      break;
    }
    case 5: {
      CommonOpts o = base;
      o.k_over_kappa = 0.1;
      o.size = 11.5287;
      const auto cfg = make_config(o);
      cs::RadialOptions ro;
      ro.r_max = 3.0 * cfg.scaled_size();
      const auto sol = cs::solve_radial(3, cs::ChannelSign::minus, cfg, ro);
      double umax = 0.0;
      for (double u : sol.u) umax = std::max(umax, std::abs(u));
      cs::CsvWriter w(path("fig5_wavefunction.csv"), {"r", "u"});
      for (size_t i = 0; i < sol.u.size(); i += 4)
        w.row({cs::format_float(sol.r_at(i)), cs::format_float(sol.u[i] / umax)});
      w.close();
      cs::CsvWriter wp(path("fig5_potential.csv"), {"r", "V_eff"});
      const double r_hi = 3.0 * cfg.scaled_size();
      for (int i = 1; i <= 2000; ++i) {
        const double r = r_hi * i / 2000.0;
        wp.row({cs::format_float(r),
                cs::format_float(cs::effective_potential(3, r, cfg))});
      }
      wp.close();
      outputs = {path("fig5_wavefunction.csv"), path("fig5_potential.csv")};
      break;
    }
    case 6: {
      CommonOpts o = base;
      o.k_over_kappa = 0.1;
      const auto cfg0 = make_config(o);
      const Range r{0.0, 15.0, 0.005};
      const int count = range_count(r);
      const auto vals = cs::parallel_map<double>(
          static_cast<size_t>(count), thread_count(o), [&](size_t i) {
            cs::ScatterConfig cfg = cfg0;
            cfg.mode.size = r.start + static_cast<double>(i) * r.step;
            if (cfg.mode.size <= 0.0) return 0.0;
            return cs::totals(cs::build_table(cfg)).lambda_b_total;
          });
      std::vector<double> xs(static_cast<size_t>(count));
      for (int i = 0; i < count; ++i) xs[static_cast<size_t>(i)] = r.start + i * r.step;
      cs::CsvWriter w(path("fig6_scan.csv"), {"kappa_R", "lambda_b"});
      for (int i = 0; i < count; ++i)
        w.row({cs::format_float(xs[static_cast<size_t>(i)]),
               cs::format_float(vals[static_cast<size_t>(i)])});
      w.close();
      outputs.push_back(path("fig6_scan.csv"));

      std::vector<cs::ResonanceRecord> records;
      for (int m = 0; m <= 5; ++m) {
        const auto found = cs::find_resonances(m, 0.0, 15.0, cfg0);
        records.insert(records.end(), found.begin(), found.end());
      }
      cs::CsvWriter wr(path("fig6_resonances.csv"),
                       {"m", "kappa_R0", "gamma", "residual", "method"});
      for (const auto& rec : records)
        wr.row({std::to_string(rec.m), cs::format_float(rec.kappa_R0),
                cs::format_float(rec.gamma), cs::format_float(rec.residual),
                method_name(rec.method)});
      wr.close();
      outputs.push_back(path("fig6_resonances.csv"));

      const auto labels = cs::label_total_length_peaks(xs, vals, records);
      cs::CsvWriter wl(path("fig6_peak_labels.csv"),
                       {"kappa_R", "lambda_b", "m", "kappa_R0"});
      for (const auto& lab : labels)
        wl.row({cs::format_float(lab.x), cs::format_float(lab.value),
                std::to_string(lab.m), cs::format_float(lab.kappa_R0)});
      wl.close();
      outputs.push_back(path("fig6_peak_labels.csv"));

      const double pattern_sizes[4] = {0.72890, 2.35741, 3.79243, 5.09697};
      for (int m = 0; m < 4; ++m) {
        CommonOpts op = o;
        op.size = pattern_sizes[m];
        const auto cfg = make_config(op);
        const auto dist = cs::differential(cs::build_table(cfg));
        const std::string pname =
            path("fig6_pattern_m" + std::to_string(m) + ".csv");
        cs::CsvWriter wp(pname, {"theta_rad", "lambda_b"});
        for (size_t i = 0; i < dist.thetas.size(); ++i)
          wp.row({cs::format_float(dist.thetas[i]),
                  cs::format_float(dist.lambda_b[i])});
        wp.close();
        outputs.push_back(pname);
      }
      break;
    }
    case 7: {
      CommonOpts o = base;
      o.mode = "gaussian";
      o.k_over_kappa = 0.1;
      const auto cfg0 = make_config(o);
      const Range r{0.05, 15.0, 0.05};
      const int count = range_count(r);
      const auto vals = cs::parallel_map<double>(
          static_cast<size_t>(count), thread_count(o), [&](size_t i) {
            cs::ScatterConfig cfg = cfg0;
            cfg.mode.size = r.start + static_cast<double>(i) * r.step;
            return cs::totals(cs::build_table(cfg)).lambda_b_total;
          });
      cs::CsvWriter w(path("fig7_scan.csv"), {"kappa_sigma", "lambda_b"});
      for (int i = 0; i < count; ++i)
        w.row({cs::format_float(r.start + i * r.step),
               cs::format_float(vals[static_cast<size_t>(i)])});
      w.close();
      outputs.push_back(path("fig7_scan.csv"));
      break;
    }
    default:
      throw std::invalid_argument("figure id must be 2..7");
  }
  CommonOpts om = base;
  om.out = outputs.front();
  write_manifest("figure " + std::to_string(id), om, outputs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D atom-cavity scattering engine"};
  app.require_subcommand(1);

  CommonOpts o;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "mode shape: constant|gaussian");
    sub->add_option("--k-over-kappa", o.k_over_kappa, "velocity ratio k/kappa_n");
    sub->add_option("--n", o.n, "photon number");
    sub->add_option("--size", o.size, "kappa R (constant) or kappa sigma (gaussian)");
    sub->add_option("--m-max", o.m_max, "partial-wave truncation, integer or 'auto'");
    sub->add_option("--theta-points", o.theta_points, "angular grid size");
    sub->add_option("--series-tail", o.series_tail, "truncation tail threshold");
    sub->add_option("--ode-step", o.ode_step, "Numerov step multiplier");
    sub->add_option("--root-tol", o.root_tol, "resonance root tolerance");
    sub->add_option("--out", o.out, "output CSV path");
    sub->add_option("--config", o.config_path, "key=value config file");
    sub->add_option("--threads", o.threads, "worker threads, integer or 'auto'");
  };

  auto* sub_ps = app.add_subcommand("phase-shifts", "per-m phase shift table");
  add_common(sub_ps);

  auto* sub_scan = app.add_subcommand("scan", "scan a quantity over the mode size");
  add_common(sub_scan);
  std::string quantity = "total_b", range_str = "0:10:0.01";
  int coeff_m = 0;
  sub_scan->add_option("--quantity", quantity,
                       "total_a|total_b|total_plus|total_minus|coeff_a|coeff_b");
  sub_scan->add_option("--m", coeff_m, "partial-wave index for coeff_* scans");
  sub_scan->add_option("--range", range_str, "start:stop:step over kappa R / kappa sigma");

  auto* sub_diff = app.add_subcommand("differential", "angular distribution");
  add_common(sub_diff);

  auto* sub_res = app.add_subcommand("resonances", "quasibound resonance search");
  add_common(sub_res);
  std::string m_range = "0:3", window = "0:6";
  sub_res->add_option("--m-range", m_range, "lo:hi partial-wave range");
  sub_res->add_option("--window", window, "lo:hi window in kappa R");

  auto* sub_fig = app.add_subcommand("figure", "preset figure datasets");
  add_common(sub_fig);
  int fig_id = 6;
  std::string outdir = "figures";
  sub_fig->add_option("--id", fig_id, "figure id (2..7)");
  sub_fig->add_option("--outdir", outdir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!o.config_path.empty()) {
      // flags win over config-file values: re-parse flags after the file
      CommonOpts from_file;
      apply_config_file(from_file, o.config_path);
      CommonOpts merged = from_file;
      CLI::App* active = app.get_subcommands().front();
      const auto keep = [&](const std::string& flag, auto& dst, auto& src) {
        if (active->count(flag)) dst = src;
      };
      keep("--mode", merged.mode, o.mode);
      keep("--k-over-kappa", merged.k_over_kappa, o.k_over_kappa);
      keep("--n", merged.n, o.n);
      keep("--size", merged.size, o.size);
      keep("--m-max", merged.m_max, o.m_max);
      keep("--theta-points", merged.theta_points, o.theta_points);
      keep("--series-tail", merged.series_tail, o.series_tail);
      keep("--ode-step", merged.ode_step, o.ode_step);
      keep("--root-tol", merged.root_tol, o.root_tol);
      keep("--threads", merged.threads, o.threads);
      merged.out = o.out;
      merged.config_path = o.config_path;
      o = merged;
    }

    if (sub_ps->parsed()) cmd_phase_shifts(o);
    else if (sub_scan->parsed()) cmd_scan(o, quantity, coeff_m, range_str);
    else if (sub_diff->parsed()) cmd_differential(o);
    else if (sub_res->parsed()) cmd_resonances(o, m_range, window);
    else if (sub_fig->parsed()) cmd_figure(o, fig_id, outdir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const cs::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return 3;
  } catch (const cs::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
