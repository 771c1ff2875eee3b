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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "scq/lindblad.hpp"
#include "scq/states.hpp"

namespace scq {

/// Parameters of the flux-pumped three-wave-mixing coupler. Rates, energies
/// and frequencies share one unit (angular frequency). The coupler mode c
/// only enters through the displaced-frame coefficients.
struct CircuitParams {
  double g3 = 0.0;
  double kappa_w = 0.0;
  double E_J = 0.0;
  double lambda = 0.0;
  double omega_a = 0.0;
  double omega_w = 0.0;
  double omega_c = 0.0;
  double phi_a = 0.0;
  double phi_c = 0.0;
  double phi_w = 0.0;
  double kappa_a = 0.0;
  double kappa_c = 0.0;
  double eta = 0.0;

  void validate() const;
};

struct PumpPlan {
  double omega_1 = 0.0;  // 2 omega_a - omega_w
  double omega_2 = 0.0;  // 2 omega_a + omega_w
  double omega_3 = 0.0;  // omega_w
  double eps_1 = 0.0;    // lambda cosh^2 r
  double eps_2 = 0.0;    // lambda sinh^2 r
  double eps_3 = 0.0;    // lambda sinh 2r
  /// 4 g3^2 / kappa_w
  double kappa2_eff = 0.0;
  /// Waste drive that stabilizes the target code: -g3 beta^2, which is
  /// -g3 alpha^2 e^{2r} for real alpha.
  Complex omega_eff{0.0, 0.0};
  /// 2 |alpha| g3 / kappa_w; adiabatic elimination wants < 1/5.
  double validity_ratio = 0.0;
  std::vector<std::string> warnings;
};

inline constexpr double kValidityLimit = 0.2;

PumpPlan pump_plan(const CircuitParams& cp, const CodeParams& code);

enum class CircuitMode { kStorage, kCoupler, kWaste };

struct ModeAmplitude {
  CircuitMode mode = CircuitMode::kStorage;
  /// -i E_J phi_x eps_k / (i (omega_x - omega_k) + kappa_x / 2)
  Complex coefficient{0.0, 0.0};
  double magnitude = 0.0;
  /// Set when the denominator nearly vanishes; the coefficient is then not
  /// meaningful (infinite when it vanishes exactly).
  bool resonant = false;
};

/// Displaced-frame coefficients of pump k (index 1..3) for the storage,
/// coupler and waste modes. Evaluated as numbers; nothing is simulated.
std::array<ModeAmplitude, 3> displaced_frame_amplitudes(const CircuitParams& cp,
                                                        int pump_index,
                                                        double omega_k,
                                                        double eps_k);

struct WasteDrive {
  /// Full sum over the storage, coupler and waste modes.
  Complex total{0.0, 0.0};
  /// Waste term alone, i E_J eps_3 phi_w^2 / (kappa_w / 2) at omega_3 = omega_w.
  Complex waste_term{0.0, 0.0};
  /// |storage term| and |coupler term|, which the single-term estimate drops.
  double dropped_storage = 0.0;
  double dropped_coupler = 0.0;
  /// Charge-line drive to add so the total equals PumpPlan::omega_eff.
  Complex charge_drive{0.0, 0.0};
};

/// Linear waste drive generated by the third pump tone.
WasteDrive effective_waste_drive(const CircuitParams& cp, const PumpPlan& plan);

struct TwoModeConfig {
  /// Storage cutoff; 0 picks the adequacy rule for the code.
  int storage_cutoff = 0;
  int waste_cutoff = 5;
  /// Abort when the top waste level holds more population than this.
  double waste_top_tol = 1e-6;
  /// Without the waste drive the target is the beta = 0 manifold.
  bool drive = true;
  /// Time in units of 1 / kappa2_eff. Both models relax to the same code
  /// state, so the comparison lives in the transient.
  double t_final = 3.0;
  int sample_count = 61;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;

  void validate() const;
};

struct TwoModeReport {
  std::vector<double> times;
  /// Trace distance between the reduced storage state of the two-mode model
  /// and the effective single-mode state.
  std::vector<double> trace_distance;
  double final_trace_distance = 0.0;
  double max_trace_distance = 0.0;
  double validity_ratio = 0.0;
  double kappa_w_over_g3 = 0.0;
  int storage_cutoff = 0;
  int waste_cutoff = 0;
  double max_waste_top_population = 0.0;
  double final_waste_photons = 0.0;
  std::vector<std::string> warnings;
};

/// Evolves H = g3 (w^dag b^2 + w b^dag^2) + Omega w^dag + Omega^* w with
/// kappa_w D[w] against kappa2_eff D[b^2 - beta^2], both from the storage
/// state `storage0` (vacuum when empty) with the waste mode in vacuum. Time
/// and rates are scaled so that kappa2_eff = 1; only kappa_w / g3 and the code
/// matter. Omega = -g3 beta^2 (or 0 without drive).
TwoModeReport two_mode_validation(const CircuitParams& cp, const CodeParams& code,
                                  const TwoModeConfig& config = {},
                                  const std::optional<Ket>& storage0 = std::nullopt);

/// Partial trace over the second factor of an (n_a * n_b)-dimensional state
/// with index i_a * n_b + i_b.
Matrix trace_out_second(const Matrix& rho, int n_a, int n_b);

/// Two-photon drive that makes the cats of `code` degenerate eigenstates of
/// K b^dag^2 b^2 + eps2 b^dag^2 + eps2^* b^2: eps2 = -K beta^2.
Complex skpo_drive(const CodeParams& code, double kerr);

struct SkpoReport {
  /// ||(H - E)|C+->|| with E = -K |beta|^4.
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  double energy = 0.0;
  /// Max entry difference of the expanded and factored Hamiltonians.
  double factored_difference = 0.0;
  /// Distance from the degenerate pair to the next eigenvalue, from the
  /// unsqueezed KPO (unitarily equivalent to the squeezed one).
  double gap = 0.0;
  /// Splitting of the lowest pair.
  double pair_splitting = 0.0;
};

/// Checks that the squeezed cats are degenerate eigenstates of the squeezed
/// Kerr parametric oscillator. eps2 must equal skpo_drive(code, kerr).
SkpoReport skpo_check(FockSpace space, const CodeParams& code, double kerr,
                      Complex eps2);

}  // namespace scq
