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

#include "scq/rates.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "scq/observables.hpp"
#include "scq/parallel.hpp"

namespace scq {

namespace {

constexpr double kOvershoot = 1e-3;
constexpr int kMaxRefinements = 4;

void require_real(const CodeParams& code, const char* what) {
  code.validate();
  if (code.alpha.imag() != 0.0 || code.phi != 0.0) {
    throw InvalidArgument(std::string(what) + ": requires real alpha and phi = 0");
  }
}

double beta_sq_real(const CodeParams& code) {
  return std::norm(beta(code));
}

struct Window {
  std::size_t first = 0;
  std::size_t end = 0;  // one past the last sample kept
  double v0 = 0.0;
};

Window locate_window(const std::vector<double>& times,
                     const std::vector<double>& values,
                     const RateFitOptions& options) {
  Window w;
  w.first = std::lower_bound(times.begin(), times.end(),
                             options.t_start * (1.0 - 1e-12)) -
            times.begin();
  if (w.first >= times.size()) {
    throw FitError("fit window starts after the last sample");
  }
  w.v0 = values[w.first];
  if (!(w.v0 > 0.0)) {
    throw FitError("non-positive observable at the start of the fit window");
  }
  w.end = w.first;
  while (w.end < times.size() && values[w.end] / w.v0 >= options.min_value) {
    ++w.end;
  }
  return w;
}

}  // namespace

double confinement_time(const CodeParams& code) {
  const double a2 = std::norm(code.alpha);
  if (!(a2 > 0.0)) throw InvalidArgument("confinement_time: alpha must be nonzero");
  return 1.0 / (4.0 * a2);
}

RateFit fit_decay(const std::vector<double>& times,
                  const std::vector<double>& values,
                  const RateFitOptions& options) {
  if (times.size() != values.size()) {
    throw DimensionError("fit_decay: times and values differ in length");
  }
  if (options.min_points < 3) throw InvalidArgument("fit_decay: min_points must be >= 3");
  const Window w = locate_window(times, values, options);

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = w.first; i < w.end; ++i) {
    const double u = values[i] / w.v0;
    if (u > 1.0 + kOvershoot) continue;
    xs.push_back(times[i] - times[w.first]);
    ys.push_back(std::log1p((values[i] - w.v0) / w.v0));
  }
  const int n = int(xs.size());
  if (n < options.min_points) {
    throw FitError("too few valid points for a rate fit (" + std::to_string(n) +
                   " < " + std::to_string(options.min_points) + ")");
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw FitError("degenerate fit window");
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    const double res = ys[i] - (my + slope * (xs[i] - mx));
    ssr += res * res;
  }

  RateFit fit;
  fit.rate = -slope;
  fit.std_error = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
  fit.t_start = times[w.first];
  fit.t_end = times[w.end - 1];
  fit.n_points = n;
  if (!(fit.rate >= options.floor)) {
    fit.rate = options.floor;
    fit.floor_clipped = true;
  }
  return fit;
}

RateFit extract_rate(const Trajectory& traj, const std::string& observable,
                     const RateFitOptions& options) {
  return fit_decay(traj.times, traj.at(observable), options);
}

double phase_flip_matrix_element(const CodeParams& code) {
  require_real(code, "phase_flip_matrix_element");
  const double b2 = beta_sq_real(code);
  const double t = std::tanh(b2);
  const double v = std::cosh(code.r) * t - std::sinh(code.r) / t;
  return b2 * v * v;
}

double phase_flip_matrix_element_exact(const CodeParams& code) {
  require_real(code, "phase_flip_matrix_element_exact");
  const double b2 = beta_sq_real(code);
  const double t = std::tanh(b2);
  const double v = std::cosh(code.r) / std::sqrt(t) - std::sinh(code.r) * std::sqrt(t);
  return b2 * v * v;
}

double gamma_dephasing_model(const CodeParams& code, double kappa_phi) {
  require_real(code, "gamma_dephasing_model");
  const double b2 = beta_sq_real(code);
  const double c = std::cosh(2.0 * code.r);
  return kappa_phi * c * c * b2 / std::sinh(2.0 * b2);
}

double gamma_gain_model(const CodeParams& code, double kappa_plus) {
  require_real(code, "gamma_gain_model");
  const double b2 = beta_sq_real(code);
  const double c = std::cosh(2.0 * code.r);
  return kappa_plus * c * c / std::sinh(2.0 * b2);
}

SuppressionFit fit_suppression(const std::vector<RatePoint>& rates,
                               double alpha_sq_min, double alpha_sq_max) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : rates) {
    if (p.floor_clipped || !(p.rate > 0.0)) continue;
    if (p.alpha_sq < alpha_sq_min || p.alpha_sq > alpha_sq_max) continue;
    pts.emplace_back(p.alpha_sq, std::log(p.rate));
  }
  const int n = int(pts.size());
  if (n < 3) {
    throw FitError("insufficient points for a suppression fit (" +
                   std::to_string(n) + " < 3)");
  }
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw FitError("suppression fit needs distinct alpha^2");
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (const auto& [x, y] : pts) {
    const double res = y - (my + slope * (x - mx));
    ssr += res * res;
  }
  SuppressionFit fit;
  fit.gamma = -slope;
  fit.gamma_stderr = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
  fit.prefactor = std::exp(my - slope * mx);
  fit.alpha_sq_min = alpha_sq_min;
  fit.alpha_sq_max = alpha_sq_max;
  fit.points_used = n;
  return fit;
}

namespace {

// Evolves from `rho0` and fits the decay of `op`, shortening the horizon
// while the observable decays past the window long before the end. With
// `rho_ref` the fitted signal is <op>(rho0) - <op>(rho_ref): both relax to
// the same steady state, so the difference has no constant part.
RateFit run_and_fit(const MasterEquation& me, const DensityMatrix& rho0,
                    const Operator& op, double expected_rate,
                    const RateRunOptions& options, double t_start,
                    const DensityMatrix* rho_ref = nullptr) {
  RateFitOptions fit_options;
  fit_options.t_start = t_start;
  EvolutionConfig cfg = options.engine;
  double horizon = options.max_horizon;
  if (expected_rate > 0.0) {
    horizon = std::min(horizon, t_start + options.target_decay / expected_rate);
  }
  horizon = std::max(horizon, 2.0 * t_start);
  const std::map<std::string, Operator> observables{
      {"o", op}, {"d", lindblad_adjoint(me, op)}};
  for (int attempt = 0;; ++attempt) {
    cfg.t_final = horizon;
    Trajectory traj = evolve(me, rho0, cfg, observables);
    if (rho_ref != nullptr) {
      const Trajectory ref = evolve(me, *rho_ref, cfg, observables);
      for (const char* key : {"o", "d"}) {
        auto& a = traj.observables.at(key);
        const auto& b = ref.at(key);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
      }
    }
    const auto& v = traj.at("o");
    const Window w = locate_window(traj.times, v, fit_options);
    const std::size_t kept = w.end - w.first;
    const std::size_t available = traj.times.size() - w.first;
    const bool done = kept * 4 >= available || attempt == kMaxRefinements;
    // Decay leaves the window early; zoom in on the part that is usable.
    const double t_cross = traj.times[std::min(std::max(w.end, w.first + 1),
                                               traj.times.size() - 1)];
    const double next_horizon = std::max(t_cross, 2.0 * t_start);
    if (!done && next_horizon < cfg.t_final) {
      horizon = next_horizon;
      continue;
    }
    const double total = std::abs(v.back() / w.v0 - 1.0);
    if (total >= options.integrate_below) {
      return fit_decay(traj.times, v, fit_options);
    }
    const auto& dv = traj.at("d");
    std::vector<double> rebuilt = v;
    for (std::size_t i = w.first + 1; i < v.size(); ++i) {
      rebuilt[i] = rebuilt[i - 1] + 0.5 * (dv[i] + dv[i - 1]) *
                                        (traj.times[i] - traj.times[i - 1]);
    }
    return fit_decay(traj.times, rebuilt, fit_options);
  }
}

}  // namespace

int rate_cutoff(const CodeParams& code) {
  const double s = std::sinh(code.r);
  const double c = std::cosh(code.r);
  const double sigma = std::sqrt(std::norm(code.alpha) * std::exp(2.0 * code.r) +
                                 2.0 * s * s * c * c + 1.0);
  const double nbar = code.mean_photons();
  return std::max(required_cutoff(nbar), int(std::ceil(nbar + 8.0 * sigma + 20.0)));
}

PointRates measure_rates(const CodeParams& code, const NoiseParams& noise,
                         const RateRunOptions& options) {
  require_real(code, "measure_rates");
  noise.validate();
  const FockSpace space(options.cutoff > 0 ? options.cutoff
                                           : rate_cutoff(code));
  const MasterEquation me = build_master_equation(space, code, noise);
  const double t_start = options.transient_factor * confinement_time(code);

  PointRates out;
  out.cutoff = space.dim();
  if (options.bit_flip) {
    const LogicalBasis basis = logical_basis(space, code);
    const double expected = gamma_dephasing_model(code, noise.kappa_phi) +
                            gamma_gain_model(code, noise.kappa_plus());
    out.bit = run_and_fit(me, DensityMatrix::pure(basis.zero),
                          logical_z(space, code), expected, options, t_start);
  }
  if (options.phase_flip) {
    const SqueezedCat plus = squeezed_cat(space, code, Parity::kEven);
    const SqueezedCat minus = squeezed_cat(space, code, Parity::kOdd);
    const double expected =
        2.0 * (noise.kappa_minus() + noise.kappa_plus()) * code.mean_photons();
    const DensityMatrix ref = DensityMatrix::pure(minus.ket);
    out.phase = run_and_fit(me, DensityMatrix::pure(plus.ket), parity_jx(space),
                            expected, options, t_start, &ref);
  }
  return out;
}

const char* knob_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::kLoss:
      return "kappa_minus/kappa2";
    case Scenario::kDephasing:
      return "kappa_phi/kappa2";
    case Scenario::kGain:
      return "n_th";
    case Scenario::kKerr:
      return "K/kappa2";
  }
  return "";
}

NoiseParams scenario_noise(Scenario scenario, const NoiseParams& base,
                           double knob) {
  NoiseParams n = base;
  switch (scenario) {
    case Scenario::kLoss:
      n.kappa1 = knob / (1.0 + base.n_th);
      break;
    case Scenario::kDephasing:
      n.kappa_phi = knob;
      break;
    case Scenario::kGain:
      n.n_th = knob;
      break;
    case Scenario::kKerr:
      n.kerr = knob;
      break;
  }
  n.validate();
  return n;
}

void StudyGrid::validate() const {
  if (alpha_sq.empty() || r.empty() || knob.empty()) {
    throw InvalidArgument("study grid: alpha_sq, r and knob lists must be nonempty");
  }
  for (double a : alpha_sq) {
    if (!(a > 0.0)) throw InvalidArgument("study grid: alpha_sq must be > 0");
  }
  for (double x : r) {
    if (!(x >= 0.0)) throw InvalidArgument("study grid: r must be >= 0");
  }
  for (double k : knob) scenario_noise(scenario, base, k);
  if (threads < 1) throw InvalidArgument("study grid: threads must be >= 1");
  run.engine.validate();
}

std::vector<StudyRow> study(const StudyGrid& grid) {
  grid.validate();
  std::vector<StudyRow> rows;
  for (double k : grid.knob) {
    for (double r : grid.r) {
      for (double a2 : grid.alpha_sq) {
        StudyRow row;
        row.alpha_sq = a2;
        row.r = r;
        row.knob_name = knob_name(grid.scenario);
        row.knob_value = k;
        rows.push_back(std::move(row));
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const StudyRow& a, const StudyRow& b) {
    return std::tie(a.knob_value, a.r, a.alpha_sq) <
           std::tie(b.knob_value, b.r, b.alpha_sq);
  });
  parallel_for(rows.size(), grid.threads, [&](std::size_t i) {
    StudyRow& row = rows[i];
    row.rates = measure_rates(CodeParams::real(row.alpha_sq, row.r),
                              scenario_noise(grid.scenario, grid.base, row.knob_value),
                              grid.run);
  });
  return rows;
}

double first_crossing(const std::vector<double>& x,
                      const std::vector<double>& reference,
                      const std::vector<double>& candidate) {
  if (x.size() != reference.size() || x.size() != candidate.size()) {
    throw DimensionError("first_crossing: inputs differ in length");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (candidate[i] <= reference[i]) continue;
    if (i == 0) return x[0];
    // d = ln(candidate / reference) changes sign between i-1 and i.
    const double d0 = std::log(candidate[i - 1] / reference[i - 1]);
    const double d1 = std::log(candidate[i] / reference[i]);
    const double f = d0 / (d0 - d1);
    return std::exp(std::log(x[i - 1]) + f * (std::log(x[i]) - std::log(x[i - 1])));
  }
  return -1.0;
}

}  // namespace scq
