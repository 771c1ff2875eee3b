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
#include <vector>

#include "scq/lindblad.hpp"
#include "scq/states.hpp"

namespace scq {

/// epsilon_Z = theta / (4 Re(alpha) T): the drive amplitude that rotates the
/// code space by theta about Z in time T, independent of r.
double drive_amplitude(double theta, double alpha, double t_gate);

/// Non-adiabatic phase error pi^2 e^{-4r} / (16 |alpha|^4 kappa2 T).
double pz_nonadiabatic(const CodeParams& code, double kappa2, double t_gate);

/// kappa_minus |alpha|^2 T + pz_nonadiabatic.
double pz_model(const CodeParams& code, double kappa_minus, double kappa2,
                double t_gate);

/// pi e^{-2r} / (4 |alpha|^3 sqrt(kappa_minus kappa2)), the minimizer of
/// pz_model in T.
double t_opt(const CodeParams& code, double kappa_minus, double kappa2);

/// Engine settings for gate runs. The drive breaks parity, so the
/// Liouvillian does not split and the explicit integrator is used.
inline EvolutionConfig gate_engine_defaults() {
  EvolutionConfig c;
  c.sample_count = 2;
  c.rel_tol = 1e-10;
  c.abs_tol = 1e-12;
  c.method = Integrator::kDormandPrince;
  return c;
}

struct GateResult {
  double theta = 0.0;
  double t_gate = 0.0;
  double p_z = 0.0;
  double p_x = 0.0;
  double epsilon_z = 0.0;
  /// Bloch components after the gate, starting from |C+>.
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  int cutoff = 0;
  std::vector<std::string> warnings;
};

struct GateSegment {
  double theta = 0.0;
  double t_gate = 0.0;
};

struct BlochXY {
  double sigma_x = 0.0;
  double sigma_y = 0.0;
};

/// Drives |C+> through consecutive constant-amplitude segments and returns
/// the final <sigma_X>, <sigma_Y>.
BlochXY simulate_gate_sequence(const CodeParams& code, const NoiseParams& noise,
                               const std::vector<GateSegment>& segments,
                               const EvolutionConfig& config = gate_engine_defaults(),
                               int cutoff = 0);

/// Z(theta) with H = epsilon_Z (a + a^dag) over the confined dynamics.
/// p_Z = (1 - cos(theta) <sigma_X> - sin(theta) <sigma_Y>) / 2 from |C+>;
/// p_X = (1 - <J_z>(T) / <J_z>(0)) / 2 from |0>.
GateResult simulate_gate(const CodeParams& code, const NoiseParams& noise,
                         double theta, double t_gate,
                         const EvolutionConfig& config = gate_engine_defaults(),
                         int cutoff = 0);

struct BiasRow {
  double alpha_sq = 0.0;
  double r = 0.0;
  double t_gate = 0.0;
  double p_z = 0.0;
  double p_x = 0.0;
  double p_z_model = 0.0;
};

struct BiasSlope {
  double r = 0.0;
  /// d ln p_X / d alpha^2.
  double slope = 0.0;
  double intercept = 0.0;
};

struct BiasScan {
  std::vector<BiasRow> rows;  // ordered by (r, alpha_sq)
  std::vector<BiasSlope> slopes;
};

/// Pi gates at T_opt over the grid, with a log-linear fit of p_X in alpha^2
/// for each r.
BiasScan bias_preservation_scan(const std::vector<double>& alpha_sq,
                                const std::vector<double>& r,
                                double kappa_minus,
                                const EvolutionConfig& config = gate_engine_defaults(),
                                int threads = 1);

}  // namespace scq
