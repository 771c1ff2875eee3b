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

#include <vector>

#include "scq/lindblad.hpp"
#include "scq/states.hpp"

namespace scq {

/// Coefficients of L = (mu0 + mu1 a^dag a) a + nu a^dag and the squeezing
/// xi = r e^{i phi} applied to it.
struct DarkOpParams {
  Complex mu0{1.0, 0.0};
  Complex mu1{0.0, 0.0};
  Complex nu{0.0, 0.0};
  double r = 0.0;
  double phi = 0.0;

  /// Cat-limit parameters with real amplitude: mu0 = 1, mu1 = 1/ratio and
  /// nu = -alpha^2 mu1, so that the dark state approaches |C+_alpha> as
  /// ratio = mu0/mu1 -> 0.
  static DarkOpParams cat(double alpha_sq, double ratio, double r = 0.0,
                          double phi = 0.0);

  void validate() const;
  /// alpha with alpha^2 = -nu/mu1 (principal root). Requires mu1 != 0.
  Complex cat_amplitude() const;
};

/// (mu0 + mu1 a^dag a) a + nu a^dag.
Operator dark_operator(FockSpace space, const DarkOpParams& p);

/// S(xi) L S^dag(xi), conjugated in a padded space and cropped.
Operator conjugated_dark_operator(FockSpace space, const DarkOpParams& p);

/// S(xi) L S^dag(xi) from its normal-ordered expansion (u = e^{i phi},
/// c = cosh r, s = sinh r):
///   [mu0 c + nu u s + 3 mu1 c s^2] a
/// + [mu0 u* s + nu c + mu1 u* s (c^2 + 2 s^2)] a^dag
/// + mu1 c (c^2 + 2 s^2) a^dag a^2 + mu1 u* s (2 c^2 + s^2) a^dag^2 a
/// + mu1 u s c^2 a^3 + mu1 u*^2 c s^2 a^dag^3.
/// Normal-ordered products are exact in the truncated space. The result is
/// compared against conjugated_dark_operator and a mismatch above 1e-9 of
/// its largest entry throws ConsistencyError.
Operator squeezed_dark_operator(FockSpace space, const DarkOpParams& p);

/// Expansion only, without the cross-check.
Operator squeezed_dark_operator_expansion(FockSpace space, const DarkOpParams& p);

/// The state S(xi)|C+_alpha> with alpha = cat_amplitude(): a squeezed cat
/// whose displacement is alpha cosh r - alpha^* e^{-i phi} sinh r.
SqueezedCat prep_target(FockSpace space, const DarkOpParams& p);

/// Adequate Fock cutoff for the squeezed dark state of `p`.
int prep_cutoff(const DarkOpParams& p);

/// Engine settings for unconditional preparation. In the cat limit mu1 is
/// large and the generator norm reaches ~1e9, so a single exponential step
/// moves the trace by ~1e-7 through rounding alone; the drift guard is
/// loosened accordingly and reported quantities are normalized by tr rho.
inline EvolutionConfig prep_engine_defaults() {
  EvolutionConfig c;
  c.t_final = 50.0;
  c.sample_count = 51;
  c.method = Integrator::kAuto;
  c.trace_abort = 1e-4;
  return c;
}

struct PrepResult {
  std::vector<double> times;
  /// <psi|rho|psi> / tr rho against the target.
  std::vector<double> fidelity;
  double final_fidelity = 0.0;
  /// tr rho^2 / (tr rho)^2 at the end.
  double final_purity = 0.0;
  double max_trace_drift = 0.0;
  SqueezedCat target;
};

/// Evolves d rho/dt = D[X] rho (kappa = 1) from `initial` and tracks the
/// fidelity to prep_target.
PrepResult unconditional_convergence(FockSpace space, const DarkOpParams& p,
                                     const DensityMatrix& initial,
                                     const EvolutionConfig& config = prep_engine_defaults());

}  // namespace scq
