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

#include "scq/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace scq {

FockSpace::FockSpace(int dim) : dim_(dim) {
  if (dim < 2) {
    throw InvalidArgument("FockSpace dimension must be >= 2, got " +
                          std::to_string(dim));
  }
}

void require_same_space(FockSpace a, FockSpace b, const char* what) {
  if (!(a == b)) {
    throw DimensionError(std::string(what) + ": space dimensions differ (" +
                         std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
}

// ---------------------------------------------------------------- Operator --

Operator::Operator(FockSpace space, Matrix entries)
    : space_(space), entries_(std::move(entries)) {
  if (entries_.rows() != space_.dim() || entries_.cols() != space_.dim()) {
    throw DimensionError("operator matrix is " +
                         std::to_string(entries_.rows()) + "x" +
                         std::to_string(entries_.cols()) + " on a space of dim " +
                         std::to_string(space_.dim()));
  }
}

Operator Operator::zero(FockSpace space) {
  return {space, Matrix::Zero(space.dim(), space.dim())};
}

Operator Operator::identity(FockSpace space) {
  return {space, Matrix::Identity(space.dim(), space.dim())};
}

Operator Operator::dagger() const { return {space_, entries_.adjoint()}; }

double Operator::max_abs() const { return entries_.cwiseAbs().maxCoeff(); }

double Operator::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

Operator& Operator::operator+=(const Operator& other) {
  require_same_space(space_, other.space_, "operator +");
  entries_ += other.entries_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_space(space_, other.space_, "operator -");
  entries_ -= other.entries_;
  return *this;
}

Operator& Operator::operator*=(Complex scale) {
  entries_ *= scale;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_space(a.space_, b.space_, "operator *");
  Matrix product(a.dim(), a.dim());
  product.noalias() = a.entries_ * b.entries_;
  return {a.space_, std::move(product)};
}

Operator Operator::shifted(Complex c) const {
  Matrix m = entries_;
  m.diagonal().array() -= c;
  return {space_, std::move(m)};
}

// --------------------------------------------------------------------- Ket --

Ket::Ket(FockSpace space, Vector amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != space_.dim()) {
    throw DimensionError("ket has " + std::to_string(amplitudes_.size()) +
                         " amplitudes on a space of dim " +
                         std::to_string(space_.dim()));
  }
}

Ket Ket::basis(FockSpace space, int n) {
  if (n < 0 || n >= space.dim()) {
    throw InvalidArgument("Fock level " + std::to_string(n) +
                          " outside space of dim " + std::to_string(space.dim()));
  }
  Vector v = Vector::Zero(space.dim());
  v(n) = 1.0;
  return {space, std::move(v)};
}

Ket Ket::normalized() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidArgument("cannot normalize a ket with norm " +
                          std::to_string(n));
  }
  return {space_, amplitudes_ / n};
}

Complex Ket::inner(const Ket& other) const {
  require_same_space(space_, other.space_, "inner product");
  return amplitudes_.dot(other.amplitudes_);
}

Ket operator*(const Operator& op, const Ket& ket) {
  require_same_space(op.space(), ket.space_, "operator * ket");
  return {ket.space_, op.matrix() * ket.amplitudes_};
}

Ket operator+(const Ket& a, const Ket& b) {
  require_same_space(a.space_, b.space_, "ket +");
  return {a.space_, a.amplitudes_ + b.amplitudes_};
}

Ket operator-(const Ket& a, const Ket& b) {
  require_same_space(a.space_, b.space_, "ket -");
  return {a.space_, a.amplitudes_ - b.amplitudes_};
}

Ket operator*(Complex s, const Ket& k) { return {k.space_, s * k.amplitudes_}; }

// ----------------------------------------------------------- DensityMatrix --

DensityMatrix::DensityMatrix(FockSpace space, Matrix entries)
    : space_(space), entries_(std::move(entries)) {
  if (entries_.rows() != space_.dim() || entries_.cols() != space_.dim()) {
    throw DimensionError("density matrix shape does not match its space");
  }
}

DensityMatrix DensityMatrix::pure(const Ket& ket) {
  const Ket k = ket.normalized();
  return {k.space(), k.amplitudes() * k.amplitudes().adjoint()};
}

DensityMatrix DensityMatrix::thermal(FockSpace space, double n_th) {
  if (!(n_th >= 0.0)) throw InvalidArgument("thermal occupation must be >= 0");
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  if (n_th == 0.0) {
    m(0, 0) = 1.0;
    return {space, std::move(m)};
  }
  const double ratio = n_th / (1.0 + n_th);
  double total = 0.0;
  for (int n = 0; n < space.dim(); ++n) {
    const double p = std::pow(ratio, n);
    m(n, n) = p;
    total += p;
  }
  m /= total;
  return {space, std::move(m)};
}

DensityMatrix DensityMatrix::from_matrix(FockSpace space, Matrix entries) {
  DensityMatrix rho(space, std::move(entries));
  const double herm = rho.hermiticity_error();
  if (herm > kHermiticityTol) {
    throw InvalidArgument("density matrix not Hermitian (deviation " +
                          std::to_string(herm) + ")");
  }
  const double tr_err = std::abs(rho.trace() - 1.0);
  if (tr_err > kTraceTol) {
    throw InvalidArgument("density matrix trace deviates from 1 by " +
                          std::to_string(tr_err));
  }
  const double min_ev = rho.min_eigenvalue();
  if (min_ev < -kPositivityTol) {
    throw InvalidArgument("density matrix has eigenvalue " +
                          std::to_string(min_ev));
  }
  return rho;
}

DensityMatrix DensityMatrix::unchecked(FockSpace space, Matrix entries) {
  return {space, std::move(entries)};
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return entries_.squaredNorm();
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix herm = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

// ------------------------------------------------------------ constructors --

Operator annihilation(FockSpace space) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (int n = 1; n < space.dim(); ++n) m(n - 1, n) = std::sqrt(double(n));
  return {space, std::move(m)};
}

Operator creation(FockSpace space) { return annihilation(space).dagger(); }

Operator number(FockSpace space) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (int n = 0; n < space.dim(); ++n) m(n, n) = double(n);
  return {space, std::move(m)};
}

Matrix matrix_exponential(const Matrix& a) {
  if (!a.allFinite()) {
    throw InvalidArgument("matrix_exponential: non-finite input");
  }
  Matrix result = a.exp();
  if (!result.allFinite()) {
    throw InvalidArgument("matrix_exponential: result overflowed");
  }
  return result;
}

Operator matrix_exponential(const Operator& a) {
  return {a.space(), matrix_exponential(a.matrix())};
}

int required_cutoff(double mean_photons) {
  const double n_bar = std::max(0.0, mean_photons);
  return int(std::ceil(n_bar + 8.0 * std::sqrt(n_bar + 1.0) + 20.0));
}

void require_cutoff(FockSpace space, double mean_photons, const char* what) {
  const int needed = required_cutoff(mean_photons);
  if (space.dim() < needed) {
    throw CutoffError(std::string(what) + ": cutoff " +
                      std::to_string(space.dim()) + " too small for mean photon "
                      "number " + std::to_string(mean_photons) + " (need >= " +
                      std::to_string(needed) + ")");
  }
}

Operator displacement(FockSpace space, Complex alpha) {
  require_cutoff(space, std::norm(alpha), "displacement");
  const Operator a = annihilation(space);
  const Operator generator = alpha * a.dagger() - std::conj(alpha) * a;
  return matrix_exponential(generator);
}

Operator squeeze(FockSpace space, double r, double phi) {
  if (!(r >= 0.0)) throw InvalidArgument("squeezing r must be >= 0");
  const double sh = std::sinh(r);
  require_cutoff(space, sh * sh, "squeeze");
  const Operator a = annihilation(space);
  const Operator a2 = a * a;
  const Complex xi = std::polar(r, phi);
  // S a S^dag = cosh(r) a + e^{-i phi} sinh(r) a^dag
  const Operator generator = 0.5 * (xi * a2 - std::conj(xi) * a2.dagger());
  return matrix_exponential(generator);
}

Operator squeezed_mode(FockSpace space, double r, double phi) {
  if (!(r >= 0.0)) throw InvalidArgument("squeezing r must be >= 0");
  const double sh = std::sinh(r);
  require_cutoff(space, sh * sh, "squeezed_mode");
  const Operator a = annihilation(space);
  return std::cosh(r) * a + std::polar(sh, -phi) * a.dagger();
}

Complex expectation(const DensityMatrix& rho, const Operator& op) {
  require_same_space(rho.space(), op.space(), "expectation");
  // tr(A rho) = sum_ij A_ij rho_ji
  return (op.matrix().transpose().cwiseProduct(rho.matrix())).sum();
}

Complex expectation(const Ket& ket, const Operator& op) {
  return ket.inner(op * ket);
}

double fidelity(const Ket& a, const Ket& b) { return std::norm(a.inner(b)); }

double fidelity(const DensityMatrix& rho, const Ket& psi) {
  require_same_space(rho.space(), psi.space(), "fidelity");
  return (psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes())(0, 0)
      .real();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_space(rho.space(), sigma.space(), "trace_distance");
  Matrix diff = rho.matrix() - sigma.matrix();
  diff = 0.5 * (diff + diff.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace scq
