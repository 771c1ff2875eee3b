// Copyright 2026 The scq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>

#include "cli.hpp"
#include "commands.hpp"
#include "scq/observables.hpp"
#include "scq/parallel.hpp"

#ifndef SCQ_VERSION
#define SCQ_VERSION "unknown"
#endif

namespace scq::cli {

namespace fs = std::filesystem;

int resolve_threads(const std::optional<int>& flag, int from_config) {
  if (flag) {
    if (*flag < 1) throw ConfigError("--threads: must be >= 1");
    return *flag;
  }
  if (const char* env = std::getenv(kThreadsEnv); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096) {
      throw ConfigError(std::string(kThreadsEnv) + ": expected a positive integer, got '" + env +
                        "'");
    }
    return int(v);
  }
  return from_config;
}

Session::Session(fs::path out, bool plot, bool quiet, int threads)
    : out_(std::move(out)), plot_(plot), quiet_(quiet), threads_(threads),
      start_(std::chrono::steady_clock::now()) {
  fs::create_directories(out_);
}

void Session::write(const std::string& name, const std::string& content) {
  write_atomic(out_ / name, content);
  files_.push_back(out_ / name);
}

void Session::plot(const std::string& name, const PlotSpec& spec) {
  if (plot_) write(name, render_svg(spec));
}

void Session::progress(const std::string& line) {
  if (quiet_) return;
  std::lock_guard lock(mutex_);
  std::cerr << line << '\n';
}

void Session::failure(const std::string& what, const Error& e) {
  std::lock_guard lock(mutex_);
  failures_.push_back(Json{{"point", what}, {"error", e.category()}, {"message", e.what()}});
}

void Session::failure(const std::string& what, const std::exception& e) {
  std::lock_guard lock(mutex_);
  failures_.push_back(Json{{"point", what}, {"error", "runtime-failure"}, {"message", e.what()}});
}

void Session::warn(const std::string& message) {
  {
    std::lock_guard lock(mutex_);
    warnings_.push_back(message);
  }
  progress("warning: " + message);
}

RunOutcome Session::finish(const std::string& command, const Json& config, Json extra) {
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  const bool complete = failures_.empty();
  Json files = Json::array();
  for (const fs::path& f : files_) files.push_back(f.filename().string());
  files.push_back("manifest.json");
  Json m{{"tool", "scq"},
         {"version", SCQ_VERSION},
         {"command", command},
         {"status", complete ? "complete" : "incomplete"},
         {"wall_time_s", wall},
         {"threads", threads_},
         {"plot", plot_},
         {"output", out_.string()},
         {"config", config},
         {"files", files},
         {"warnings", warnings_},
         {"failures", failures_}};
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
  write_atomic(out_ / "manifest.json", m.dump(2) + "\n");
  RunOutcome o;
  o.exit_code = complete ? kExitOk : kExitRuntime;
  o.files = files_;
  o.files.push_back(out_ / "manifest.json");
  o.out_dir = out_;
  return o;
}

namespace {

std::string point_label(const StudyRow& row) {
  std::ostringstream os;
  os << "alpha_sq=" << row.alpha_sq << " r=" << row.r << ' ' << row.knob_name << '='
     << row.knob_value;
  return os.str();
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

}  // namespace

std::vector<StudyRow> run_rate_points(const StudyConfig& cfg, Session& session) {
  const StudyGrid& g = cfg.rates.grid;
  std::vector<StudyRow> rows;
  for (double k : g.knob) {
    for (double r : g.r) {
      for (double a2 : g.alpha_sq) {
        StudyRow row;
        row.alpha_sq = a2;
        row.r = r;
        row.knob_name = knob_name(g.scenario);
        row.knob_value = k;
        rows.push_back(row);
      }
    }
  }
  std::vector<char> ok(rows.size(), 0);
  std::atomic<int> done{0};
  parallel_for(rows.size(), session.threads(), [&](std::size_t i) {
    StudyRow& row = rows[i];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      row.rates = measure_rates(CodeParams::real(row.alpha_sq, row.r),
                                scenario_noise(g.scenario, g.base, row.knob_value), g.run);
      ok[i] = 1;
      for (const RateFit* f : {&row.rates.bit, &row.rates.phase}) {
        if (f->floor_clipped) {
          session.warn(point_label(row) + ": rate below the " + format_number(kRateFloor) +
                       " floor, clipped");
        }
      }
    } catch (const Error& e) {
      session.failure(point_label(row), e);
    } catch (const std::exception& e) {
      session.failure(point_label(row), e);
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    session.progress("[" + std::to_string(++done) + "/" + std::to_string(rows.size()) + "] " +
                     point_label(row) + (ok[i] ? " done (" : " FAILED (") + seconds(dt) + ")");
  });
  std::vector<StudyRow> good;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (ok[i]) good.push_back(rows[i]);
  }
  return good;
}

std::vector<SuppressionRow> suppression_fits(const StudyConfig& cfg,
                                             const std::vector<StudyRow>& rows) {
  std::vector<SuppressionRow> out;
  const StudyGrid& g = cfg.rates.grid;
  if (!g.run.bit_flip) return out;
  for (double k : g.knob) {
    for (double r : g.r) {
      std::vector<RatePoint> pts;
      for (const StudyRow& row : rows) {
        if (row.knob_value == k && row.r == r) {
          pts.push_back({row.alpha_sq, row.rates.bit.rate, row.rates.bit.floor_clipped});
        }
      }
      try {
        SuppressionRow s;
        s.knob_value = k;
        s.r = r;
        s.fit = fit_suppression(pts, cfg.rates.fit_alpha_sq_min, cfg.rates.fit_alpha_sq_max);
        out.push_back(s);
      } catch (const FitError&) {
        // Fewer than two usable points for this (knob, r): nothing to report.
      }
    }
  }
  return out;
}

namespace {

std::string suppression_csv(const std::string& knob, const std::vector<SuppressionRow>& fits) {
  std::ostringstream os;
  os << "kappa_ratio_name,kappa_ratio_value,r,r_db,gamma,gamma_stderr,prefactor,points_used\n";
  for (const SuppressionRow& s : fits) {
    os << knob << ',' << format_number(s.knob_value) << ',' << format_number(s.r) << ','
       << format_number(squeezing_db(s.r)) << ',' << format_number(s.fit.gamma) << ','
       << format_number(s.fit.gamma_stderr) << ',' << format_number(s.fit.prefactor) << ','
       << s.fit.points_used << '\n';
  }
  return os.str();
}

std::string r_label(double r) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "r = %g (%.2f dB)", r, squeezing_db(r));
  return buf;
}

void plot_rates(const StudyConfig& cfg, const std::vector<StudyRow>& rows, Session& session) {
  const StudyGrid& g = cfg.rates.grid;
  const std::string kn = knob_name(g.scenario);
  for (std::size_t ki = 0; ki < g.knob.size(); ++ki) {
    for (int which = 0; which < 2; ++which) {
      if ((which == 0 && !g.run.bit_flip) || (which == 1 && !g.run.phase_flip)) continue;
      PlotSpec spec;
      spec.title = std::string(which == 0 ? "bit-flip" : "phase-flip") + " rate, " + kn + " = " +
                   format_number(g.knob[ki]);
      spec.x_label = "|alpha|^2";
      spec.y_label = which == 0 ? "Gamma_bit / kappa2" : "Gamma_phase / kappa2";
      for (double r : g.r) {
        PlotSeries s;
        s.label = r_label(r);
        for (const StudyRow& row : rows) {
          if (row.knob_value != g.knob[ki] || row.r != r) continue;
          s.x.push_back(row.alpha_sq);
          s.y.push_back(which == 0 ? row.rates.bit.rate : row.rates.phase.rate);
        }
        spec.series.push_back(s);
      }
      session.plot(std::string(which == 0 ? "bit" : "phase") + "_vs_alpha_sq_" +
                       std::to_string(ki) + ".svg",
                   spec);
    }
  }
  if (g.knob.size() < 2 || !g.run.bit_flip) return;
  for (std::size_t ai = 0; ai < g.alpha_sq.size(); ++ai) {
    PlotSpec spec;
    spec.title = "bit-flip rate, |alpha|^2 = " + format_number(g.alpha_sq[ai]);
    spec.x_label = kn;
    spec.y_label = "Gamma_bit / kappa2";
    spec.log_x = true;
    for (double r : g.r) {
      PlotSeries s;
      s.label = r_label(r);
      for (const StudyRow& row : rows) {
        if (row.alpha_sq != g.alpha_sq[ai] || row.r != r) continue;
        s.x.push_back(row.knob_value);
        s.y.push_back(row.rates.bit.rate);
      }
      spec.series.push_back(s);
    }
    session.plot("bit_vs_knob_" + std::to_string(ai) + ".svg", spec);
  }
}

}  // namespace

RatesResult run_rates(const StudyConfig& cfg, Session& session) {
  RatesResult res;
  res.rows = run_rate_points(cfg, session);
  res.fits = suppression_fits(cfg, res.rows);
  session.write("rates.csv", rates_csv(res.rows));
  if (!res.fits.empty()) {
    session.write("suppression.csv", suppression_csv(knob_name(cfg.rates.grid.scenario), res.fits));
  }
  plot_rates(cfg, res.rows, session);
  return res;
}

std::string zgate_csv(const std::vector<ZgateRow>& rows) {
  std::ostringstream os;
  os << "alpha_sq,r,r_db,theta,t_gate,kappa_minus,p_z,p_x,p_z_model,p_z_nonadiabatic,"
        "epsilon_z,cutoff\n";
  for (const ZgateRow& z : rows) {
    os << format_number(z.alpha_sq) << ',' << format_number(z.r) << ','
       << format_number(squeezing_db(z.r)) << ',' << format_number(z.theta) << ','
       << format_number(z.t_gate) << ',' << format_number(z.kappa_minus) << ','
       << format_number(z.result.p_z) << ',' << format_number(z.result.p_x) << ','
       << format_number(z.p_z_model) << ',' << format_number(z.p_z_nonadiabatic) << ','
       << format_number(z.result.epsilon_z) << ',' << z.result.cutoff << '\n';
  }
  return os.str();
}

std::vector<ZgateRow> run_gate_points(const ZgateSection& z, Session& session) {
  std::vector<ZgateRow> rows;
  for (double r : z.r) {
    for (double a2 : z.alpha_sq) {
      const CodeParams code = CodeParams::real(a2, r);
      std::vector<double> ts = z.t_gate;
      if (z.at_t_opt) ts = {t_opt(code, z.kappa_minus, 1.0)};
      for (double t : ts) {
        ZgateRow row;
        row.alpha_sq = a2;
        row.r = r;
        row.theta = z.theta;
        row.t_gate = t;
        row.kappa_minus = z.kappa_minus;
        row.p_z_model = pz_model(code, z.kappa_minus, 1.0, t);
        row.p_z_nonadiabatic = pz_nonadiabatic(code, 1.0, t);
        rows.push_back(row);
      }
    }
  }
  std::vector<char> ok(rows.size(), 0);
  std::atomic<int> done{0};
  parallel_for(rows.size(), session.threads(), [&](std::size_t i) {
    ZgateRow& row = rows[i];
    std::ostringstream label;
    label << "alpha_sq=" << row.alpha_sq << " r=" << row.r << " T=" << row.t_gate;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      row.result = simulate_gate(CodeParams::real(row.alpha_sq, row.r),
                                 NoiseParams::loss(row.kappa_minus), row.theta, row.t_gate,
                                 z.engine, z.cutoff);
      for (const std::string& w : row.result.warnings) session.warn(label.str() + ": " + w);
      ok[i] = 1;
    } catch (const Error& e) {
      session.failure(label.str(), e);
    } catch (const std::exception& e) {
      session.failure(label.str(), e);
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    session.progress("[" + std::to_string(++done) + "/" + std::to_string(rows.size()) + "] " +
                     label.str() + (ok[i] ? " done (" : " FAILED (") + seconds(dt) + ")");
  });
  std::vector<ZgateRow> good;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (ok[i]) good.push_back(rows[i]);
  }
  return good;
}

std::vector<BiasSlope> bias_slopes(const std::vector<ZgateRow>& rows) {
  std::map<double, std::vector<std::pair<double, double>>> by_r;
  for (const ZgateRow& z : rows) {
    if (z.result.p_x > 0.0) by_r[z.r].push_back({z.alpha_sq, std::log(z.result.p_x)});
  }
  std::vector<BiasSlope> out;
  for (const auto& [r, pts] : by_r) {
    if (pts.size() < 2) continue;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = double(pts.size());
    const double den = n * sxx - sx * sx;
    if (den == 0.0) continue;
    BiasSlope b;
    b.r = r;
    b.slope = (n * sxy - sx * sy) / den;
    b.intercept = (sy - b.slope * sx) / n;
    out.push_back(b);
  }
  return out;
}

namespace {

void plot_gates(const ZgateSection& z, const std::vector<ZgateRow>& rows, Session& session,
                const std::string& stem) {
  if (z.at_t_opt) {
    PlotSpec spec;
    spec.title = "bit-flip error of Z(theta) at T_opt";
    spec.x_label = "|alpha|^2";
    spec.y_label = "p_X";
    for (double r : z.r) {
      PlotSeries s;
      s.label = r_label(r);
      for (const ZgateRow& row : rows) {
        if (row.r != r) continue;
        s.x.push_back(row.alpha_sq);
        s.y.push_back(row.result.p_x);
      }
      spec.series.push_back(s);
    }
    session.plot(stem + "_px_vs_alpha_sq.svg", spec);
    return;
  }
  for (std::size_t ai = 0; ai < z.alpha_sq.size(); ++ai) {
    PlotSpec spec;
    spec.title = "phase error of Z(theta), |alpha|^2 = " + format_number(z.alpha_sq[ai]);
    spec.x_label = "T kappa2";
    spec.y_label = "p_Z";
    spec.log_x = true;
    for (double r : z.r) {
      PlotSeries sim;
      PlotSeries model;
      sim.label = r_label(r);
      model.label = "model, r = " + format_number(r);
      model.dashed = true;
      for (const ZgateRow& row : rows) {
        if (row.r != r || row.alpha_sq != z.alpha_sq[ai]) continue;
        sim.x.push_back(row.t_gate);
        sim.y.push_back(row.result.p_z);
        model.x.push_back(row.t_gate);
        model.y.push_back(row.p_z_model);
      }
      spec.series.push_back(sim);
      spec.series.push_back(model);
    }
    session.plot(stem + "_pz_vs_t_" + std::to_string(ai) + ".svg", spec);
  }
}

}  // namespace

std::vector<ZgateRow> run_zgate(const ZgateSection& z, Session& session, const std::string& stem) {
  std::vector<ZgateRow> rows = run_gate_points(z, session);
  session.write(stem + ".csv", zgate_csv(rows));
  if (z.at_t_opt) {
    std::ostringstream os;
    os << "r,r_db,slope,intercept\n";
    for (const BiasSlope& b : bias_slopes(rows)) {
      os << format_number(b.r) << ',' << format_number(squeezing_db(b.r)) << ','
         << format_number(b.slope) << ',' << format_number(b.intercept) << '\n';
    }
    session.write(stem + "_slopes.csv", os.str());
  }
  plot_gates(z, rows, session, stem);
  return rows;
}

DensityMatrix initial_state(FockSpace space, const std::string& label, const CodeParams& code) {
  if (label == "vacuum") return DensityMatrix::pure(Ket::basis(space, 0));
  if (label.rfind("fock:", 0) == 0) {
    const int n = std::stoi(label.substr(5));
    if (n >= space.dim()) {
      throw CutoffError("initial state " + label + " exceeds the cutoff " +
                        std::to_string(space.dim()));
    }
    return DensityMatrix::pure(Ket::basis(space, n));
  }
  if (label.rfind("thermal:", 0) == 0) {
    return DensityMatrix::thermal(space, std::stod(label.substr(8)));
  }
  if (label == "plus") return DensityMatrix::pure(squeezed_cat(space, code, Parity::kEven).ket);
  if (label == "minus") return DensityMatrix::pure(squeezed_cat(space, code, Parity::kOdd).ket);
  const LogicalBasis basis = logical_basis(space, code);
  if (label == "zero") return DensityMatrix::pure(basis.zero);
  if (label == "one") return DensityMatrix::pure(basis.one);
  throw ConfigError("unknown initial state '" + label + "'");
}

std::vector<PrepRow> run_prep(const PrepSection& p, Session& session) {
  const DarkOpParams dark = DarkOpParams::cat(p.alpha_sq, p.ratio, p.r, p.phi);
  const FockSpace space(p.cutoff > 0 ? p.cutoff : prep_cutoff(dark));
  const CodeParams unused;
  std::vector<PrepRow> rows(p.initial.size());
  std::vector<char> ok(rows.size(), 0);
  parallel_for(rows.size(), session.threads(), [&](std::size_t i) {
    rows[i].initial = p.initial[i];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      rows[i].result =
          unconditional_convergence(space, dark, initial_state(space, p.initial[i], unused), p.engine);
      ok[i] = 1;
    } catch (const Error& e) {
      session.failure("initial=" + p.initial[i], e);
    } catch (const std::exception& e) {
      session.failure("initial=" + p.initial[i], e);
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    session.progress("initial=" + p.initial[i] + (ok[i] ? " done (" : " FAILED (") + seconds(dt) +
                     ")");
  });
  std::vector<PrepRow> good;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (ok[i]) good.push_back(std::move(rows[i]));
  }

  std::ostringstream trace;
  std::ostringstream summary;
  trace << "initial,t,fidelity\n";
  summary << "initial,final_fidelity,final_purity,max_trace_drift,cutoff\n";
  PlotSpec spec;
  spec.title = "unconditional preparation";
  spec.x_label = "t kappa";
  spec.y_label = "1 - fidelity";
  for (const PrepRow& row : good) {
    PlotSeries s;
    s.label = row.initial;
    for (std::size_t k = 0; k < row.result->times.size(); ++k) {
      trace << row.initial << ',' << format_number(row.result->times[k]) << ','
            << format_number(row.result->fidelity[k]) << '\n';
      s.x.push_back(row.result->times[k]);
      s.y.push_back(1.0 - row.result->fidelity[k]);
    }
    spec.series.push_back(s);
    summary << row.initial << ',' << format_number(row.result->final_fidelity) << ','
            << format_number(row.result->final_purity) << ','
            << format_number(row.result->max_trace_drift) << ',' << space.dim() << '\n';
  }
  session.write("prep.csv", trace.str());
  session.write("prep_summary.csv", summary.str());
  session.plot("prep_infidelity.svg", spec);
  return good;
}

namespace {

constexpr double kTwoPi = 6.283185307179586;

const char* mode_name(CircuitMode m) {
  switch (m) {
    case CircuitMode::kStorage:
      return "storage";
    case CircuitMode::kCoupler:
      return "coupler";
    case CircuitMode::kWaste:
      return "waste";
  }
  return "?";
}

}  // namespace

CircuitResult run_circuit(const CircuitSection& c, Session& session) {
  CircuitResult res;
  res.plan = pump_plan(c.params, c.code);
  res.drive = effective_waste_drive(c.params, res.plan);
  for (const std::string& w : res.plan.warnings) session.warn(w);

  std::ostringstream plan;
  plan << "quantity,value,unit\n";
  auto row = [&](const char* name, double v, const char* unit) {
    plan << name << ',' << format_number(v) << ',' << unit << '\n';
  };
  const PumpPlan& p = res.plan;
  row("omega_1", p.omega_1 / kTwoPi, "MHz");
  row("omega_2", p.omega_2 / kTwoPi, "MHz");
  row("omega_3", p.omega_3 / kTwoPi, "MHz");
  row("eps_1", p.eps_1, "1");
  row("eps_2", p.eps_2, "1");
  row("eps_3", p.eps_3, "1");
  row("kappa2_eff", p.kappa2_eff / kTwoPi, "MHz");
  row("omega_eff_re", p.omega_eff.real() / kTwoPi, "MHz");
  row("omega_eff_im", p.omega_eff.imag() / kTwoPi, "MHz");
  row("validity_ratio", p.validity_ratio, "1");
  row("waste_drive_re", res.drive.total.real() / kTwoPi, "MHz");
  row("waste_drive_im", res.drive.total.imag() / kTwoPi, "MHz");
  row("waste_drive_waste_term_abs", std::abs(res.drive.waste_term) / kTwoPi, "MHz");
  row("waste_drive_dropped_storage", res.drive.dropped_storage / kTwoPi, "MHz");
  row("waste_drive_dropped_coupler", res.drive.dropped_coupler / kTwoPi, "MHz");
  row("charge_drive_re", res.drive.charge_drive.real() / kTwoPi, "MHz");
  row("charge_drive_im", res.drive.charge_drive.imag() / kTwoPi, "MHz");
  session.write("circuit_plan.csv", plan.str());

  std::ostringstream df;
  df << "pump,omega_k_mhz,eps_k,mode,coefficient_re,coefficient_im,magnitude,resonant\n";
  const double omegas[3] = {p.omega_1, p.omega_2, p.omega_3};
  const double eps[3] = {p.eps_1, p.eps_2, p.eps_3};
  for (int k = 0; k < 3; ++k) {
    for (const ModeAmplitude& m : displaced_frame_amplitudes(c.params, k + 1, omegas[k], eps[k])) {
      df << k + 1 << ',' << format_number(omegas[k] / kTwoPi) << ',' << format_number(eps[k])
         << ',' << mode_name(m.mode) << ',' << format_number(m.coefficient.real()) << ','
         << format_number(m.coefficient.imag()) << ',' << format_number(m.magnitude) << ','
         << (m.resonant ? "true" : "false") << '\n';
      if (m.resonant) {
        session.warn(std::string("pump ") + std::to_string(k + 1) + " is resonant with the " +
                     mode_name(m.mode) + " mode");
      }
    }
  }
  session.write("displaced_frame.csv", df.str());

  if (c.two_mode) {
    try {
      res.two_mode = two_mode_validation(c.params, c.code, c.two_mode_config);
      std::ostringstream os;
      os << "t_kappa2,t_us,trace_distance\n";
      for (std::size_t i = 0; i < res.two_mode->times.size(); ++i) {
        const double t = res.two_mode->times[i];
        os << format_number(t) << ',' << format_number(t / p.kappa2_eff) << ','
           << format_number(res.two_mode->trace_distance[i]) << '\n';
      }
      session.write("two_mode.csv", os.str());
      PlotSpec spec;
      spec.title = "two-mode vs effective model";
      spec.x_label = "t kappa2";
      spec.y_label = "trace distance";
      spec.series.push_back({"storage reduced state", res.two_mode->times,
                             res.two_mode->trace_distance, false});
      session.plot("two_mode_trace_distance.svg", spec);
      session.progress("two-mode validation: max trace distance " +
                       format_number(res.two_mode->max_trace_distance));
    } catch (const Error& e) {
      session.failure("two_mode", e);
    }
  }

  if (c.skpo) {
    try {
      const FockSpace space(c.skpo_cutoff > 0 ? c.skpo_cutoff
                                              : required_cutoff(c.code.mean_photons()));
      res.skpo = skpo_check(space, c.code, c.skpo_kerr, skpo_drive(c.code, c.skpo_kerr));
      const SkpoReport& s = *res.skpo;
      std::ostringstream os;
      os << "alpha_sq,r,r_db,kerr,energy,residual_plus,residual_minus,gap,pair_splitting,"
            "factored_difference,cutoff\n";
      os << format_number(std::norm(c.code.alpha)) << ',' << format_number(c.code.r) << ','
         << format_number(squeezing_db(c.code.r)) << ',' << format_number(c.skpo_kerr) << ','
         << format_number(s.energy) << ',' << format_number(s.residual_plus) << ','
         << format_number(s.residual_minus) << ',' << format_number(s.gap) << ','
         << format_number(s.pair_splitting) << ',' << format_number(s.factored_difference) << ','
         << space.dim() << '\n';
      session.write("skpo.csv", os.str());
    } catch (const Error& e) {
      session.failure("skpo", e);
    }
  }
  return res;
}

std::vector<std::pair<double, std::map<std::string, double>>> run_custom(const CustomSection& c,
                                                                         Session& session) {
  const FockSpace space(c.cutoff > 0 ? c.cutoff : required_cutoff(c.code.mean_photons()));
  const MasterEquation me = build_master_equation(space, c.code, c.noise);
  std::map<std::string, Operator> obs;
  for (const std::string& name : c.observables) {
    if (name == "parity") {
      obs.emplace(name, parity_jx(space));
    } else if (name == "n") {
      obs.emplace(name, number(space));
    } else if (name == "trace") {
      obs.emplace(name, Operator::identity(space));
    } else if (name == "jz") {
      obs.emplace(name, logical_z(space, c.code));
    } else {
      const Ket k = squeezed_cat(space, c.code,
                                 name == "fidelity_plus" ? Parity::kEven : Parity::kOdd)
                        .ket;
      obs.emplace(name, Operator(space, k.amplitudes() * k.amplitudes().adjoint()));
    }
  }
  const Trajectory traj = evolve(me, initial_state(space, c.initial, c.code), c.engine, obs);
  for (const std::string& w : traj.warnings) session.warn(w);
  std::ostringstream os;
  os << "t";
  for (const std::string& name : c.observables) os << ',' << name;
  os << '\n';
  std::vector<std::pair<double, std::map<std::string, double>>> out;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << format_number(traj.times[i]);
    std::map<std::string, double> values;
    for (const std::string& name : c.observables) {
      const double v = traj.at(name)[i];
      values[name] = v;
      os << ',' << format_number(v);
    }
    os << '\n';
    out.push_back({traj.times[i], values});
  }
  session.write("custom.csv", os.str());
  PlotSpec spec;
  spec.title = "custom run";
  spec.x_label = "t kappa2";
  spec.y_label = "expectation";
  spec.log_y = false;
  for (const std::string& name : c.observables) {
    spec.series.push_back({name, traj.times, traj.at(name), false});
  }
  session.plot("custom.svg", spec);
  return out;
}

namespace {

bool command_accepts(const std::string& command, ScenarioKind s) {
  switch (s) {
    case ScenarioKind::kRatesLoss:
    case ScenarioKind::kRatesDephasing:
    case ScenarioKind::kRatesGain:
    case ScenarioKind::kRatesKerr:
    case ScenarioKind::kCustom:
      return command == "rates";
    case ScenarioKind::kZgate:
      return command == "zgate";
    case ScenarioKind::kPrep:
      return command == "prep";
    case ScenarioKind::kCircuit:
      return command == "circuit";
  }
  return false;
}

}  // namespace

RunOutcome run(const std::string& command, const StudyConfig& config, const RunOptions& options) {
  if (!command_accepts(command, config.scenario)) {
    throw ConfigError(std::string("scenario: '") + scenario_name(config.scenario) +
                      "' does not belong to the '" + command + "' command");
  }
  const int threads = resolve_threads(options.threads, config.threads);
  Session session(options.out.value_or(config.output), options.plot || config.plot, options.quiet,
                  threads);
  try {
    switch (config.scenario) {
      case ScenarioKind::kRatesLoss:
      case ScenarioKind::kRatesDephasing:
      case ScenarioKind::kRatesGain:
      case ScenarioKind::kRatesKerr:
        run_rates(config, session);
        break;
      case ScenarioKind::kZgate:
        run_zgate(config.zgate, session, "zgate");
        break;
      case ScenarioKind::kPrep:
        run_prep(config.prep, session);
        break;
      case ScenarioKind::kCircuit:
        run_circuit(config.circuit, session);
        break;
      case ScenarioKind::kCustom:
        run_custom(config.custom, session);
        break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    session.failure("run", e);
  } catch (const std::exception& e) {
    session.failure("run", e);
  }
  return session.finish(command, config.resolved);
}

}  // namespace scq::cli
