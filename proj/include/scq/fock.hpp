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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "scq/error.hpp"

namespace scq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Truncated single-mode Hilbert space spanned by Fock levels 0..dim-1.
class FockSpace {
 public:
  explicit FockSpace(int dim);

  int dim() const noexcept { return dim_; }
  friend bool operator==(FockSpace a, FockSpace b) noexcept {
    return a.dim_ == b.dim_;
  }

 private:
  int dim_;
};

/// Dense operator on a FockSpace. Immutable value type.
class Operator {
 public:
  Operator(FockSpace space, Matrix entries);

  static Operator zero(FockSpace space);
  static Operator identity(FockSpace space);

  FockSpace space() const noexcept { return space_; }
  int dim() const noexcept { return space_.dim(); }
  const Matrix& matrix() const noexcept { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  Operator dagger() const;
  /// Largest absolute entry.
  double max_abs() const;
  /// Max elementwise deviation from Hermiticity.
  double hermiticity_error() const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex scale);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);
  /// Shift by a multiple of the identity: A - c I.
  Operator shifted(Complex c) const;

 private:
  FockSpace space_;
  Matrix entries_;
};

/// State vector on a FockSpace.
class Ket {
 public:
  Ket(FockSpace space, Vector amplitudes);

  /// Fock state |n>.
  static Ket basis(FockSpace space, int n);

  FockSpace space() const noexcept { return space_; }
  int dim() const noexcept { return space_.dim(); }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](int n) const { return amplitudes_(n); }

  double norm() const { return amplitudes_.norm(); }
  Ket normalized() const;
  /// <this|other>
  Complex inner(const Ket& other) const;

  friend Ket operator*(const Operator& op, const Ket& ket);
  friend Ket operator+(const Ket& a, const Ket& b);
  friend Ket operator-(const Ket& a, const Ket& b);
  friend Ket operator*(Complex s, const Ket& k);

 private:
  FockSpace space_;
  Vector amplitudes_;
};

/// Density matrix on a FockSpace. Construction from raw matrices validates the
/// physical invariants (Hermitian, unit trace, positive semidefinite) to the
/// tolerances the engine promises.
class DensityMatrix {
 public:
  static constexpr double kHermiticityTol = 1e-10;
  static constexpr double kTraceTol = 1e-8;
  static constexpr double kPositivityTol = 1e-8;

  static DensityMatrix pure(const Ket& ket);
  /// Thermal state with mean occupation n_th (truncated and renormalized).
  static DensityMatrix thermal(FockSpace space, double n_th);
  /// Validating constructor.
  static DensityMatrix from_matrix(FockSpace space, Matrix entries);
  /// Non-validating constructor; used by integrators that check invariants
  /// themselves.
  static DensityMatrix unchecked(FockSpace space, Matrix entries);

  FockSpace space() const noexcept { return space_; }
  int dim() const noexcept { return space_.dim(); }
  const Matrix& matrix() const noexcept { return entries_; }

  Complex trace() const { return entries_.trace(); }
  double purity() const;
  double min_eigenvalue() const;
  double hermiticity_error() const;

 private:
  DensityMatrix(FockSpace space, Matrix entries);

  FockSpace space_;
  Matrix entries_;
};

Operator annihilation(FockSpace space);
Operator creation(FockSpace space);
Operator number(FockSpace space);

/// exp(A) by scaling and squaring with a Pade approximant.
Operator matrix_exponential(const Operator& a);
Matrix matrix_exponential(const Matrix& a);

/// D(alpha) = exp(alpha a^dag - alpha^* a).
Operator displacement(FockSpace space, Complex alpha);
/// S(xi) = exp[(xi a^2 - xi^* a^dag^2) / 2] with xi = r e^{i phi}, so that
/// S a S^dag = cosh(r) a + e^{-i phi} sinh(r) a^dag.
Operator squeeze(FockSpace space, double r, double phi = 0.0);
/// b = S(xi) a S^dag(xi) = cosh(r) a + e^{-i phi} sinh(r) a^dag, built directly.
Operator squeezed_mode(FockSpace space, double r, double phi = 0.0);

Complex expectation(const DensityMatrix& rho, const Operator& op);
Complex expectation(const Ket& ket, const Operator& op);
/// |<a|b>|^2
double fidelity(const Ket& a, const Ket& b);
/// <psi|rho|psi>
double fidelity(const DensityMatrix& rho, const Ket& psi);
/// (1/2) || rho - sigma ||_1
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Smallest dimension the cutoff rule accepts for mean photon number n_bar:
/// N >= n_bar + 8 sqrt(n_bar + 1) + 20.
int required_cutoff(double mean_photons);
/// Throws CutoffError when `space` is too small for `mean_photons`.
void require_cutoff(FockSpace space, double mean_photons, const char* what);

void require_same_space(FockSpace a, FockSpace b, const char* what);

}  // namespace scq
