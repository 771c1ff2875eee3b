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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scq/lindblad.hpp"
#include "scq/states.hpp"

namespace scq {

/// Rates below this are indistinguishable from integration noise.
inline constexpr double kRateFloor = 1e-13;

struct RateFit {
  double rate = 0.0;
  double std_error = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  int n_points = 0;
  bool floor_clipped = false;
};

struct RateFitOptions {
  /// Samples before t_start are dropped (confinement transient).
  double t_start = 0.0;
  /// Samples whose normalized value falls below this end the window.
  double min_value = 0.05;
  int min_points = 5;
  double floor = kRateFloor;
};

/// Confinement time 1 / (4 |alpha|^2 kappa2), in units of 1/kappa2.
double confinement_time(const CodeParams& code);

/// Least-squares slope of ln(<O>(t) / <O>(t_start)) over the window. Rates
/// below the floor are reported at the floor with `floor_clipped` set.
RateFit extract_rate(const Trajectory& traj, const std::string& observable,
                     const RateFitOptions& options);

/// Same fit on raw samples.
RateFit fit_decay(const std::vector<double>& times,
                  const std::vector<double>& values,
                  const RateFitOptions& options);

/// beta^2 |cosh(r) tanh(beta^2) - sinh(r) coth(beta^2)|^2, the usual closed
/// form for |<C+|a|C->|^2. It carries tanh and coth where the exact value has
/// their square roots; the two meet for large beta^2. Real alpha only.
double phase_flip_matrix_element(const CodeParams& code);

/// Exact value of the same matrix element,
/// beta^2 (cosh(r) sqrt(coth beta^2) - sinh(r) sqrt(tanh beta^2))^2.
double phase_flip_matrix_element_exact(const CodeParams& code);

/// kappa_phi cosh^2(2r) |beta|^2 / sinh(2 |beta|^2).
double gamma_dephasing_model(const CodeParams& code, double kappa_phi);

/// kappa_plus cosh^2(2r) / sinh(2 |beta|^2).
double gamma_gain_model(const CodeParams& code, double kappa_plus);

struct RatePoint {
  double alpha_sq = 0.0;
  double rate = 0.0;
  bool floor_clipped = false;
};

struct SuppressionFit {
  double gamma = 0.0;
  double gamma_stderr = 0.0;
  double prefactor = 0.0;
  double alpha_sq_min = 2.0;
  double alpha_sq_max = 5.0;
  int points_used = 0;
};

/// Log-linear fit rate = prefactor exp(-gamma alpha^2) over unclipped points
/// with alpha^2 in [alpha_sq_min, alpha_sq_max].
SuppressionFit fit_suppression(const std::vector<RatePoint>& rates,
                               double alpha_sq_min = 2.0,
                               double alpha_sq_max = 5.0);

/// Engine settings for rate runs: automatic method choice and only the
/// parity sector the observable reads.
inline EvolutionConfig rate_engine_defaults() {
  EvolutionConfig c;
  c.sample_count = 101;
  c.method = Integrator::kAuto;
  c.observed_sectors_only = true;
  return c;
}

struct RateRunOptions {
  EvolutionConfig engine = rate_engine_defaults();  // t_final set per run
  /// Upper bound on the simulated horizon, in 1/kappa2.
  double max_horizon = 2000.0;
  /// Horizon aims at exp(-decades) decay of the observable.
  double target_decay = 3.0;
  /// t_start = transient_factor * confinement_time.
  double transient_factor = 10.0;
  bool bit_flip = true;
  bool phase_flip = true;
  /// Fock cutoff; 0 selects rate_cutoff(code).
  int cutoff = 0;
  /// Below this total decay over the window, <O>(t) is rebuilt by
  /// integrating the sampled d<O>/dt = <L^dag(O)> (see measure_rates).
  double integrate_below = 1e-2;
};

/// Cutoff for rate runs. Tiny bit-flip rates are sensitive to the photon
/// number tail, whose width grows with the anti-squeezed quadrature:
/// max(required_cutoff(nbar), nbar + 8 sigma + 20) with
/// sigma^2 = |alpha|^2 e^{2r} + 2 sinh^2 r cosh^2 r + 1.
int rate_cutoff(const CodeParams& code);

struct PointRates {
  RateFit bit;
  RateFit phase;
  int cutoff = 0;
};

/// Simulates one code point: |0> under J_z for the bit-flip rate and the
/// J_x contrast between |C+> and |C-> for the phase-flip rate. Photon loss
/// leaves a small steady-state parity (n_- - n_+)/(n_- + n_+), so <J_x> from
/// |C+> alone levels off and would bias the fit low at small alpha^2. For slow decays the sampled values of
/// <O> carry roundoff of order eps |L| from the high Fock levels, which
/// swamps rates near 1e-12. The Heisenberg derivative <L^dag(O)> does not
/// suffer from this, so <O> is rebuilt from its running integral there.
PointRates measure_rates(const CodeParams& code, const NoiseParams& noise,
                         const RateRunOptions& options = {});

enum class Scenario { kLoss, kDephasing, kGain, kKerr };

/// Name of the swept noise knob, as written to tables.
const char* knob_name(Scenario scenario);

/// Noise of a scenario at one knob value on top of `base`.
NoiseParams scenario_noise(Scenario scenario, const NoiseParams& base,
                           double knob);

struct StudyGrid {
  Scenario scenario = Scenario::kLoss;
  std::vector<double> alpha_sq;
  std::vector<double> r;
  std::vector<double> knob;
  NoiseParams base;
  RateRunOptions run;
  int threads = 1;

  void validate() const;
};

struct StudyRow {
  double alpha_sq = 0.0;
  double r = 0.0;
  std::string knob_name;
  double knob_value = 0.0;
  PointRates rates;
};

/// Runs every grid point on a pool of `grid.threads` workers. Rows are
/// ordered by (knob, r, alpha_sq) regardless of scheduling.
std::vector<StudyRow> study(const StudyGrid& grid);

/// Smallest swept value at which `candidate` first exceeds `reference`,
/// refined by log-log interpolation between neighbouring samples. Returns a
/// negative value when no crossing occurs.
double first_crossing(const std::vector<double>& x,
                      const std::vector<double>& reference,
                      const std::vector<double>& candidate);

}  // namespace scq
