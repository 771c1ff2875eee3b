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

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scq/fock.hpp"
#include "scq/states.hpp"

namespace scq {

/// Noise rates in units of kappa2 (kappa2 = 1 sets the time unit).
struct NoiseParams {
  double kappa2 = 1.0;
  double kappa1 = 0.0;
  double n_th = 0.0;
  double kappa_phi = 0.0;
  double kerr = 0.0;

  /// kappa1 (1 + n_th): photon loss.
  double kappa_minus() const { return kappa1 * (1.0 + n_th); }
  /// kappa1 n_th: photon gain.
  double kappa_plus() const { return kappa1 * n_th; }

  /// Pure loss with the given kappa_minus.
  static NoiseParams loss(double kappa_minus) {
    NoiseParams n;
    n.kappa1 = kappa_minus;
    return n;
  }

  void validate() const;
};

struct Dissipator {
  Operator jump;
  double rate = 0.0;
};

/// d rho/dt = -i[H, rho] + sum_k rate_k D[L_k] rho.
struct MasterEquation {
  Operator hamiltonian;
  std::vector<Dissipator> dissipators;

  explicit MasterEquation(Operator h) : hamiltonian(std::move(h)) {}
  FockSpace space() const { return hamiltonian.space(); }
  void add_dissipator(Operator jump, double rate);
  void validate() const;
};

enum class Integrator {
  /// Adaptive Dormand-Prince 5(4) with PI step-size control.
  kDormandPrince,
  /// Exact propagation exp(L dt) between samples on the parity sectors of the
  /// Liouvillian. For stiff long-horizon runs.
  kPropagator,
  /// Propagator when the explicit step estimate is large and the sectors are
  /// small enough to hold densely; Dormand-Prince otherwise.
  kAuto,
};

struct EvolutionConfig {
  double t_final = 1.0;
  int sample_count = 101;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  Integrator method = Integrator::kDormandPrince;
  std::size_t max_steps = 20'000'000;
  /// Propagator only: evolve just the parity sectors the observables read.
  /// The final state then omits the other sectors and invariant checks are
  /// restricted to what was evolved.
  bool observed_sectors_only = false;
  /// Abort when |tr rho - 1| exceeds this.
  double trace_abort = 1e-6;

  void validate() const;
};

struct Trajectory {
  explicit Trajectory(DensityMatrix state) : final_state(std::move(state)) {}

  std::vector<double> times;
  std::map<std::string, std::vector<double>> observables;
  DensityMatrix final_state;
  /// max |tr rho - 1| over accepted steps (NaN when the trace sector was not
  /// evolved).
  double max_trace_drift = 0.0;
  /// Smallest eigenvalue seen at sample points.
  double min_eigenvalue = 0.0;
  std::size_t steps = 0;
  std::size_t rejected_steps = 0;
  bool partial_state = false;
  Integrator method_used = Integrator::kDormandPrince;
  std::vector<std::string> warnings;

  const std::vector<double>& at(const std::string& name) const;
};

using SampleCallback = std::function<void(double, const DensityMatrix&)>;

/// D[A] rho = A rho A^dag - (1/2) A^dag A rho - (1/2) rho A^dag A.
Matrix dissipator_apply(const Operator& a, const DensityMatrix& rho);

/// b^2 - beta^2 with b the squeezed mode operator and beta = beta(params).
Operator confinement_dissipator(FockSpace space, const CodeParams& params);

/// Confinement kappa2 D[b^2 - beta^2] with Kerr K a^dag^2 a^2 and the loss,
/// dephasing and gain dissipators; `extra_hamiltonian` is added to H.
MasterEquation build_master_equation(
    FockSpace space, const CodeParams& code, const NoiseParams& noise,
    const std::optional<Operator>& extra_hamiltonian = std::nullopt);

/// Right-hand side of the master equation applied to rho.
Matrix lindblad_rhs(const MasterEquation& me, const Matrix& rho);

/// Heisenberg-picture generator applied to an observable:
/// i[H, A] + sum_k rate_k (L_k^dag A L_k - (1/2){L_k^dag L_k, A}), so that
/// d<A>/dt = tr(rho L^dag(A)).
Operator lindblad_adjoint(const MasterEquation& me, const Operator& a);

/// Max-norm of the right-hand side; vanishes on steady states.
double steady_state_residual(const MasterEquation& me,
                             const DensityMatrix& rho);

Trajectory evolve(const MasterEquation& me, const DensityMatrix& rho0,
                  const EvolutionConfig& config,
                  const std::map<std::string, Operator>& observables,
                  const SampleCallback& on_sample = {});

/// Dense superoperator restricted to one parity sector, exposed for tests.
struct LiouvillianSector {
  int parity = -1;  // (m + n) mod 2, or -1 for the unsplit space
  std::vector<std::pair<int, int>> elements;
  Matrix generator;
};

/// Splits the Liouvillian into (m + n) parity sectors when every operator has
/// definite parity, otherwise returns a single sector.
std::vector<LiouvillianSector> liouvillian_sectors(const MasterEquation& me);

}  // namespace scq
