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

#include "scq/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace scq {
namespace {

constexpr double kTailTolerance = 1e-10;

Matrix raw_displacement(int dim, Complex alpha) {
  const Operator a = annihilation(FockSpace(dim));
  return matrix_exponential(
      (alpha * a.dagger() - std::conj(alpha) * a).matrix());
}

Matrix raw_squeeze(int dim, double r, double phi) {
  const Operator a = annihilation(FockSpace(dim));
  const Matrix a2 = (a * a).matrix();
  const Complex xi = std::polar(r, phi);
  return matrix_exponential(0.5 * (xi * a2 - std::conj(xi) * a2.adjoint()));
}

// Restrict a padded vector to the first dim levels; refuse if the discarded
// tail carries weight.
Ket crop(FockSpace space, const Vector& padded, const char* what) {
  const double total = padded.squaredNorm();
  const Vector head = padded.head(space.dim());
  const double tail = total - head.squaredNorm();
  if (tail > kTailTolerance * total) {
    throw CutoffError(std::string(what) + ": population " +
                      std::to_string(tail / total) + " beyond cutoff " +
                      std::to_string(space.dim()));
  }
  return Ket(space, head);
}

Vector vacuum(int dim) {
  Vector v = Vector::Zero(dim);
  v(0) = 1.0;
  return v;
}

}  // namespace

void CodeParams::validate() const {
  if (!(r >= 0.0)) throw InvalidArgument("squeezing r must be >= 0");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
      !std::isfinite(phi)) {
    throw InvalidArgument("code parameters must be finite");
  }
}

double CodeParams::mean_photons() const {
  const double sh = std::sinh(r);
  return std::norm(alpha) + sh * sh;
}

Complex beta(const CodeParams& p) {
  return p.alpha * std::cosh(p.r) +
         std::conj(p.alpha) * std::polar(std::sinh(p.r), -p.phi);
}

double squeezing_db(double r) { return 20.0 * r / std::numbers::ln10; }

int padded_dim(FockSpace space) {
  return space.dim() + std::max(20, space.dim() / 2);
}

Ket squeezed_state(FockSpace space, const CodeParams& params) {
  params.validate();
  require_cutoff(space, params.mean_photons(), "squeezed_state");
  const int m = padded_dim(space);
  const Vector v = raw_displacement(m, params.alpha) *
                   (raw_squeeze(m, params.r, params.phi) * vacuum(m));
  return crop(space, v, "squeezed_state").normalized();
}

Ket two_photon_coherent(FockSpace space, Complex alpha, double r, double phi) {
  const CodeParams equivalent{alpha, r, phi};
  equivalent.validate();
  // S(xi) D(alpha)|0> = D(gamma) S(xi)|0> with |gamma| <= |alpha| e^r.
  const double sh = std::sinh(r);
  require_cutoff(space, std::norm(alpha) * std::exp(2.0 * r) + sh * sh,
                 "two_photon_coherent");
  const int m = padded_dim(space);
  const Vector v = raw_squeeze(m, r, phi) * (raw_displacement(m, alpha) * vacuum(m));
  return crop(space, v, "two_photon_coherent").normalized();
}

double analytic_overlap(const CodeParams& params) {
  return std::exp(-2.0 * std::norm(beta(params)));
}

double analytic_norm_constant(const CodeParams& params, Parity parity) {
  const double s = parity == Parity::kEven ? 1.0 : -1.0;
  return std::sqrt(2.0 * (1.0 + s * analytic_overlap(params)));
}

SqueezedCat squeezed_cat(FockSpace space, const CodeParams& params,
                         Parity parity) {
  params.validate();
  require_cutoff(space, params.mean_photons(), "squeezed_cat");
  const int m = padded_dim(space);
  const Matrix s = raw_squeeze(m, params.r, params.phi);
  const Vector squeezed_vac = s * vacuum(m);

  Vector combined;
  if (parity == Parity::kOdd && std::abs(params.alpha) < 1e-8) {
    // Limit alpha -> 0 of the odd superposition: S(xi)|1>.
    Vector one = Vector::Zero(m);
    one(1) = 1.0;
    combined = s * one;
  } else {
    const Vector plus = raw_displacement(m, params.alpha) * squeezed_vac;
    const Vector minus = raw_displacement(m, -params.alpha) * squeezed_vac;
    combined = parity == Parity::kEven ? Vector(plus + minus)
                                       : Vector(plus - minus);
  }
  const double norm_constant = combined.norm();
  Ket ket = crop(space, combined, "squeezed_cat").normalized();

  // Remove rounding-level components of the wrong parity.
  Vector amps = ket.amplitudes();
  for (int n = parity == Parity::kEven ? 1 : 0; n < space.dim(); n += 2) {
    amps(n) = 0.0;
  }
  return SqueezedCat{params, parity, Ket(space, amps).normalized(),
                     norm_constant};
}

LogicalBasis logical_basis(FockSpace space, const CodeParams& params) {
  const Ket plus = squeezed_cat(space, params, Parity::kEven).ket;
  const Ket minus = squeezed_cat(space, params, Parity::kOdd).ket;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  return {Complex(inv_sqrt2) * (plus + minus),
          Complex(inv_sqrt2) * (plus - minus)};
}

}  // namespace scq
