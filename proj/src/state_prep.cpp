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

#include "scq/state_prep.hpp"

#include <cmath>

namespace scq {

namespace {

constexpr double kMatchTol = 1e-9;

// Mean photon number of the dark state, for the cutoff check.
double dark_mean_photons(const DarkOpParams& p) {
  if (std::abs(p.mu1) > 0.0) return std::abs(p.nu / p.mu1);
  if (std::abs(p.nu) == 0.0) return 0.0;
  const double t = std::abs(p.nu / p.mu0);
  if (!(t < 1.0)) {
    throw InvalidArgument("dark operator with mu1 = 0 needs |nu| < |mu0|");
  }
  const double s = std::sinh(std::atanh(t));
  return s * s;
}

Complex target_displacement(const DarkOpParams& p) {
  const Complex alpha = p.cat_amplitude();
  return alpha * std::cosh(p.r) -
         std::conj(alpha) * std::polar(1.0, -p.phi) * std::sinh(p.r);
}

// Mean photon number of the squeezed dark state.
double squeezed_mean_photons(const DarkOpParams& p) {
  const double s = std::sinh(p.r);
  if (std::abs(p.mu1) > 0.0) return std::norm(target_displacement(p)) + s * s;
  // Squeezed vacuum of some r' further squeezed by r: bounded by r' + r.
  const double t = std::abs(p.nu / p.mu0);
  const double total = std::sinh(std::atanh(t) + p.r);
  return total * total;
}

// Squeezing spreads Fock level n over roughly n e^{2r} levels, so the padded
// space has to grow with r for the cropped block to be exact.
int padding(FockSpace space, double r) {
  const int n = space.dim();
  return n + 40 + int(std::ceil(3.0 * n * std::sinh(2.0 * r)));
}

}  // namespace

DarkOpParams DarkOpParams::cat(double alpha_sq, double ratio, double r, double phi) {
  if (!(alpha_sq > 0.0) || !(ratio > 0.0)) {
    throw InvalidArgument("DarkOpParams::cat: alpha_sq and ratio must be > 0");
  }
  DarkOpParams p;
  p.mu0 = 1.0;
  p.mu1 = 1.0 / ratio;
  p.nu = -alpha_sq * p.mu1;
  p.r = r;
  p.phi = phi;
  return p;
}

void DarkOpParams::validate() const {
  for (const Complex& c : {mu0, mu1, nu}) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidArgument("DarkOpParams: coefficients must be finite");
    }
  }
  if (!(r >= 0.0) || !std::isfinite(phi)) {
    throw InvalidArgument("DarkOpParams: need r >= 0 and finite phi");
  }
}

Complex DarkOpParams::cat_amplitude() const {
  if (std::abs(mu1) == 0.0) {
    throw InvalidArgument("DarkOpParams: cat amplitude needs mu1 != 0");
  }
  return std::sqrt(-nu / mu1);
}

Operator dark_operator(FockSpace space, const DarkOpParams& p) {
  p.validate();
  require_cutoff(space, dark_mean_photons(p), "dark_operator");
  const Operator a = annihilation(space);
  const Operator ad = a.dagger();
  return p.mu0 * a + p.mu1 * (ad * a * a) + p.nu * ad;
}

Operator conjugated_dark_operator(FockSpace space, const DarkOpParams& p) {
  p.validate();
  dark_mean_photons(p);
  require_cutoff(space, squeezed_mean_photons(p), "conjugated_dark_operator");
  const FockSpace big(padding(space, p.r));
  const Operator a = annihilation(big);
  const Operator ad = a.dagger();
  const Matrix l = (p.mu0 * a + p.mu1 * (ad * a * a) + p.nu * ad).matrix();
  if (p.r == 0.0) return Operator(space, l.topLeftCorner(space.dim(), space.dim()));
  const Matrix s = squeeze(big, p.r, p.phi).matrix();
  const Matrix x = s * l * s.adjoint();
  return Operator(space, x.topLeftCorner(space.dim(), space.dim()));
}

Operator squeezed_dark_operator_expansion(FockSpace space, const DarkOpParams& p) {
  p.validate();
  dark_mean_photons(p);
  require_cutoff(space, squeezed_mean_photons(p), "squeezed_dark_operator");
  const double c = std::cosh(p.r);
  const double s = std::sinh(p.r);
  const Complex u = std::polar(1.0, p.phi);
  const Complex ub = std::conj(u);
  const Operator a = annihilation(space);
  const Operator ad = a.dagger();
  const Complex c_a = p.mu0 * c + p.nu * u * s + 3.0 * p.mu1 * c * s * s;
  const Complex c_ad = p.mu0 * ub * s + p.nu * c + p.mu1 * ub * s * (c * c + 2.0 * s * s);
  const Complex c_ada2 = p.mu1 * c * (c * c + 2.0 * s * s);
  const Complex c_ad2a = p.mu1 * ub * s * (2.0 * c * c + s * s);
  const Complex c_a3 = p.mu1 * u * s * c * c;
  const Complex c_ad3 = p.mu1 * ub * ub * c * s * s;
  return c_a * a + c_ad * ad + c_ada2 * (ad * a * a) + c_ad2a * (ad * ad * a) +
         c_a3 * (a * a * a) + c_ad3 * (ad * ad * ad);
}

Operator squeezed_dark_operator(FockSpace space, const DarkOpParams& p) {
  Operator x = squeezed_dark_operator_expansion(space, p);
  const Operator y = conjugated_dark_operator(space, p);
  const double scale = std::max(1.0, x.max_abs());
  const double diff = (x - y).max_abs();
  if (diff > kMatchTol * scale) {
    throw ConsistencyError("squeezed_dark_operator: expansion and conjugation "
                           "differ by " + std::to_string(diff));
  }
  return x;
}

SqueezedCat prep_target(FockSpace space, const DarkOpParams& p) {
  p.validate();
  CodeParams code;
  code.alpha = target_displacement(p);
  code.r = p.r;
  code.phi = p.phi;
  return squeezed_cat(space, code, Parity::kEven);
}

int prep_cutoff(const DarkOpParams& p) {
  p.validate();
  return required_cutoff(squeezed_mean_photons(p));
}

PrepResult unconditional_convergence(FockSpace space, const DarkOpParams& p,
                                     const DensityMatrix& initial,
                                     const EvolutionConfig& config) {
  require_same_space(space, initial.space(), "unconditional_convergence");
  PrepResult out{{}, {}, 0.0, 0.0, 0.0, prep_target(space, p)};
  MasterEquation me(Operator::zero(space));
  me.add_dissipator(squeezed_dark_operator(space, p), 1.0);
  const Ket& target = out.target.ket;
  const Trajectory traj = evolve(me, initial, config, {},
                                 [&](double t, const DensityMatrix& rho) {
                                   out.times.push_back(t);
                                   out.fidelity.push_back(fidelity(rho, target) /
                                                          rho.trace().real());
                                 });
  out.final_fidelity = out.fidelity.back();
  const double tr = traj.final_state.trace().real();
  out.final_purity = traj.final_state.purity() / (tr * tr);
  out.max_trace_drift = traj.max_trace_drift;
  return out;
}

}  // namespace scq
