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

// Internal helpers shared by the integrators.

#include <vector>

#include <Eigen/SparseCore>

#include "scq/lindblad.hpp"

namespace scq::detail {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

/// Operator factor that multiplies densely or through a compressed copy,
/// whichever is cheaper for its fill.
class Factor {
 public:
  explicit Factor(const Matrix& m);

  /// out = F * x
  void left(const Matrix& x, Matrix& out) const;
  /// out += x * F
  void right_accumulate(const Matrix& x, Matrix& out) const;
  bool sparse() const { return sparse_; }

 private:
  bool sparse_ = false;
  Matrix dense_;
  SparseMatrix compressed_;
};

/// Matrix-free Lindblad right-hand side
///   L rho = -i H_eff rho + i rho H_eff^dag + sum_k J_k rho J_k^dag
/// with H_eff = H - (i/2) sum_k J_k^dag J_k and J_k = sqrt(rate_k) L_k.
class Generator {
 public:
  explicit Generator(const MasterEquation& me);

  /// out = L rho. `rho` must be Hermitian; `work` is scratch.
  void apply(const Matrix& rho, Matrix& out, Matrix& work) const;
  int dim() const { return dim_; }
  /// Gershgorin bound on the spectral radius of the superoperator.
  double spectral_radius_bound() const { return radius_bound_; }

 private:
  Generator(const MasterEquation& me, const Matrix& h_eff);

  int dim_;
  Factor h_eff_;
  std::vector<Factor> jumps_;
  std::vector<Factor> jumps_dag_;
  double radius_bound_ = 0.0;
};

std::vector<double> sample_times(const EvolutionConfig& config);

/// Records observables at sample times and watches positivity.
class Recorder {
 public:
  Recorder(const std::map<std::string, Operator>& observables,
           Trajectory& traj, const SampleCallback& cb, bool check_positivity);

  void sample(double t, const Matrix& rho, FockSpace space);

 private:
  const std::map<std::string, Operator>& observables_;
  Trajectory& traj_;
  const SampleCallback& cb_;
  bool check_positivity_;
  bool warned_ = false;
};

/// Effective non-Hermitian Hamiltonian H - (i/2) sum_k rate_k L_k^dag L_k.
Matrix effective_hamiltonian(const MasterEquation& me);

/// +1 when all nonzero entries connect levels of equal parity, -1 when all
/// connect opposite parity, 0 otherwise.
int operator_parity(const Matrix& m);

}  // namespace scq::detail
