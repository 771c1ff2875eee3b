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

#include "scq/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace scq {

namespace {

constexpr double kResonanceFraction = 1e-6;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string("CircuitParams: ") + what + " must be finite and > 0");
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InvalidArgument(std::string("CircuitParams: ") + what + " must be finite");
  }
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Complex mode_coefficient(double e_j, double phi_x, double eps, double omega_x,
                         double omega_k, double kappa_x, bool* resonant) {
  const Complex den(kappa_x / 2.0, omega_x - omega_k);
  const double scale = std::max(std::abs(omega_x), kappa_x);
  *resonant = std::abs(den) < kResonanceFraction * scale;
  if (std::abs(den) == 0.0) {
    return Complex(std::numeric_limits<double>::infinity(), 0.0);
  }
  return -kI * e_j * phi_x * eps / den;
}

}  // namespace

void CircuitParams::validate() const {
  require_positive(g3, "g3");
  require_positive(kappa_w, "kappa_w");
  require_positive(E_J, "E_J");
  require_positive(omega_a, "omega_a");
  require_positive(omega_w, "omega_w");
  require_positive(omega_c, "omega_c");
  if (!(lambda > 0.0 && lambda < 0.3)) {
    throw InvalidArgument("CircuitParams: lambda must lie in (0, 0.3)");
  }
  if (!(std::abs(eta) < 1.0)) {
    throw InvalidArgument("CircuitParams: |eta| must be < 1");
  }
  require_finite(phi_a, "phi_a");
  require_finite(phi_c, "phi_c");
  require_finite(phi_w, "phi_w");
  if (!(kappa_a >= 0.0) || !std::isfinite(kappa_a) || !(kappa_c >= 0.0) ||
      !std::isfinite(kappa_c)) {
    throw InvalidArgument("CircuitParams: kappa_a and kappa_c must be finite and >= 0");
  }
}

PumpPlan pump_plan(const CircuitParams& cp, const CodeParams& code) {
  cp.validate();
  code.validate();
  PumpPlan p;
  p.omega_1 = 2.0 * cp.omega_a - cp.omega_w;
  p.omega_2 = 2.0 * cp.omega_a + cp.omega_w;
  p.omega_3 = cp.omega_w;
  const double c = std::cosh(code.r);
  const double s = std::sinh(code.r);
  p.eps_1 = cp.lambda * c * c;
  p.eps_2 = cp.lambda * s * s;
  p.eps_3 = cp.lambda * std::sinh(2.0 * code.r);
  p.kappa2_eff = 4.0 * cp.g3 * cp.g3 / cp.kappa_w;
  const Complex b = beta(code);
  p.omega_eff = -cp.g3 * b * b;
  p.validity_ratio = 2.0 * std::abs(code.alpha) * cp.g3 / cp.kappa_w;

  if (p.validity_ratio >= kValidityLimit) {
    std::ostringstream os;
    os << "adiabatic elimination questionable: 2|alpha| g3 / kappa_w = "
       << p.validity_ratio << " (want < " << kValidityLimit << ")";
    p.warnings.push_back(os.str());
  }
  if (cp.eta != 0.0) {
    std::ostringstream os;
    os << "junction asymmetry eta = " << cp.eta
       << " adds static Kerr-type terms; a comparable device reached |K / kappa2| ~ 1/5";
    p.warnings.push_back(os.str());
  }
  if (p.omega_1 <= 0.0) {
    p.warnings.push_back("omega_1 = 2 omega_a - omega_w is not positive");
  }
  return p;
}

std::array<ModeAmplitude, 3> displaced_frame_amplitudes(const CircuitParams& cp,
                                                        int pump_index,
                                                        double omega_k,
                                                        double eps_k) {
  cp.validate();
  if (pump_index < 1 || pump_index > 3) {
    throw InvalidArgument("displaced_frame_amplitudes: pump index must be 1, 2 or 3");
  }
  if (!std::isfinite(omega_k) || !std::isfinite(eps_k)) {
    throw InvalidArgument("displaced_frame_amplitudes: omega_k and eps_k must be finite");
  }
  struct Mode {
    CircuitMode id;
    double phi, omega, kappa;
  };
  const Mode modes[3] = {{CircuitMode::kStorage, cp.phi_a, cp.omega_a, cp.kappa_a},
                         {CircuitMode::kCoupler, cp.phi_c, cp.omega_c, cp.kappa_c},
                         {CircuitMode::kWaste, cp.phi_w, cp.omega_w, cp.kappa_w}};
  std::array<ModeAmplitude, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i].mode = modes[i].id;
    out[i].coefficient = mode_coefficient(cp.E_J, modes[i].phi, eps_k, modes[i].omega,
                                          omega_k, modes[i].kappa, &out[i].resonant);
    out[i].magnitude = std::abs(out[i].coefficient);
  }
  return out;
}

WasteDrive effective_waste_drive(const CircuitParams& cp, const PumpPlan& plan) {
  cp.validate();
  auto term = [&](double phi, double omega, double kappa) {
    const Complex den(kappa / 2.0, omega - plan.omega_3);
    if (std::abs(den) == 0.0) {
      throw InvalidArgument("effective_waste_drive: undamped mode resonant with pump 3");
    }
    return kI * cp.E_J * plan.eps_3 * phi * phi / den;
  };
  WasteDrive d;
  const Complex ta = term(cp.phi_a, cp.omega_a, cp.kappa_a);
  const Complex tc = term(cp.phi_c, cp.omega_c, cp.kappa_c);
  d.waste_term = term(cp.phi_w, cp.omega_w, cp.kappa_w);
  d.total = ta + tc + d.waste_term;
  d.dropped_storage = std::abs(ta);
  d.dropped_coupler = std::abs(tc);
  d.charge_drive = plan.omega_eff - d.total;
  return d;
}

void TwoModeConfig::validate() const {
  if (storage_cutoff < 0) throw InvalidArgument("TwoModeConfig: storage_cutoff must be >= 0");
  if (waste_cutoff < 2) throw InvalidArgument("TwoModeConfig: waste_cutoff must be >= 2");
  if (!(waste_top_tol > 0.0)) throw InvalidArgument("TwoModeConfig: waste_top_tol must be > 0");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw InvalidArgument("TwoModeConfig: t_final must be finite and > 0");
  }
  if (sample_count < 2) throw InvalidArgument("TwoModeConfig: sample_count must be >= 2");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw InvalidArgument("TwoModeConfig: tolerances must be > 0");
  }
}

Matrix trace_out_second(const Matrix& rho, int n_a, int n_b) {
  if (rho.rows() != Eigen::Index(n_a) * n_b || rho.cols() != rho.rows()) {
    throw DimensionError("trace_out_second: state shape does not match n_a * n_b");
  }
  Matrix out = Matrix::Zero(n_a, n_a);
  for (int i = 0; i < n_a; ++i) {
    for (int j = 0; j < n_a; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < n_b; ++k) acc += rho(i * n_b + k, j * n_b + k);
      out(i, j) = acc;
    }
  }
  return out;
}

TwoModeReport two_mode_validation(const CircuitParams& cp, const CodeParams& code,
                                  const TwoModeConfig& config,
                                  const std::optional<Ket>& storage0) {
  cp.validate();
  code.validate();
  config.validate();

  const PumpPlan plan = pump_plan(cp, code);
  TwoModeReport rep;
  rep.validity_ratio = plan.validity_ratio;
  rep.kappa_w_over_g3 = cp.kappa_w / cp.g3;
  rep.warnings = plan.warnings;

  // kappa2_eff = 1: g3 = rho / 4 and kappa_w = rho^2 / 4 with rho = kappa_w / g3.
  const double ratio = rep.kappa_w_over_g3;
  const double g3 = ratio / 4.0;
  const double kappa_w = ratio * ratio / 4.0;

  const CodeParams target = config.drive ? code : CodeParams{Complex(0.0, 0.0), code.r, code.phi};
  const int na = config.storage_cutoff > 0 ? config.storage_cutoff
                                           : required_cutoff(code.mean_photons());
  const int nw = config.waste_cutoff;
  rep.storage_cutoff = na;
  rep.waste_cutoff = nw;
  const FockSpace sa(na);
  require_cutoff(sa, target.mean_photons(), "two_mode_validation");

  Ket psi0 = storage0 ? *storage0 : Ket::basis(sa, 0);
  if (psi0.space() != sa) {
    throw DimensionError("two_mode_validation: initial storage state has the wrong cutoff");
  }
  psi0 = psi0.normalized();

  // Effective single-mode model.
  NoiseParams eff_noise;
  eff_noise.kappa2 = 1.0;
  const MasterEquation eff = build_master_equation(sa, target, eff_noise);

  // Two-mode model.
  const Matrix b = squeezed_mode(sa, code.r, code.phi).matrix();
  const Matrix b2 = b * b;
  const Matrix w = annihilation(FockSpace(nw)).matrix();
  const Matrix id_a = Matrix::Identity(na, na);
  const Matrix w_full = kron(id_a, w);
  const Matrix int_term = kron(b2, w.adjoint());  // w^dag b^2
  const Complex bt = beta(target);
  const Complex omega = -g3 * bt * bt;
  Matrix h = g3 * (int_term + Matrix(int_term.adjoint())) + omega * Matrix(w_full.adjoint()) +
             std::conj(omega) * w_full;
  h = 0.5 * (h + Matrix(h.adjoint()));
  const FockSpace sj(na * nw);
  MasterEquation two(Operator(sj, h));
  two.add_dissipator(Operator(sj, w_full), kappa_w);

  EvolutionConfig ec;
  ec.t_final = config.t_final;
  ec.sample_count = config.sample_count;
  ec.rel_tol = config.rel_tol;
  ec.abs_tol = config.abs_tol;
  ec.method = Integrator::kDormandPrince;

  std::vector<Matrix> eff_states;
  eff_states.reserve(config.sample_count);
  const DensityMatrix rho_a = DensityMatrix::pure(psi0);
  evolve(eff, rho_a, ec, {}, [&](double, const DensityMatrix& rho) {
    eff_states.push_back(rho.matrix());
  });

  const Matrix vac_w = Ket::basis(FockSpace(nw), 0).amplitudes() *
                       Ket::basis(FockSpace(nw), 0).amplitudes().adjoint();
  const DensityMatrix rho_j =
      DensityMatrix::unchecked(sj, kron(rho_a.matrix(), vac_w));
  const Matrix w_top = kron(id_a, Matrix(Ket::basis(FockSpace(nw), nw - 1).amplitudes() *
                                         Ket::basis(FockSpace(nw), nw - 1).amplitudes().adjoint()));
  const Matrix w_num = kron(id_a, Matrix(w.adjoint() * w));
  std::size_t idx = 0;
  evolve(two, rho_j, ec, {}, [&](double t, const DensityMatrix& rho) {
    const double top = (w_top.cwiseProduct(rho.matrix().transpose())).sum().real();
    rep.max_waste_top_population = std::max(rep.max_waste_top_population, top);
    if (top > config.waste_top_tol) {
      std::ostringstream os;
      os << "two_mode_validation: waste level " << nw - 1 << " holds " << top
         << " at t = " << t << "; raise waste_cutoff";
      throw CutoffError(os.str());
    }
    rep.final_waste_photons = (w_num.cwiseProduct(rho.matrix().transpose())).sum().real();
    const DensityMatrix red = DensityMatrix::unchecked(sa, trace_out_second(rho.matrix(), na, nw));
    const DensityMatrix ref = DensityMatrix::unchecked(sa, eff_states.at(idx++));
    rep.times.push_back(t);
    rep.trace_distance.push_back(trace_distance(red, ref));
  });

  rep.final_trace_distance = rep.trace_distance.back();
  rep.max_trace_distance =
      *std::max_element(rep.trace_distance.begin(), rep.trace_distance.end());
  return rep;
}

Complex skpo_drive(const CodeParams& code, double kerr) {
  code.validate();
  const Complex b = beta(code);
  return -kerr * b * b;
}

SkpoReport skpo_check(FockSpace space, const CodeParams& code, double kerr, Complex eps2) {
  code.validate();
  if (!(kerr > 0.0) || !std::isfinite(kerr)) {
    throw InvalidArgument("skpo_check: K must be finite and > 0");
  }
  const Complex expected = skpo_drive(code, kerr);
  if (std::abs(eps2 - expected) > 1e-12 * std::max(1.0, std::abs(expected))) {
    std::ostringstream os;
    os << "skpo_check: eps2 = " << eps2 << " does not match -K beta^2 = " << expected;
    throw InvalidArgument(os.str());
  }
  require_cutoff(space, code.mean_photons(), "skpo_check");

  const Complex bt = beta(code);
  const Complex b2c = bt * bt;
  const double energy = -kerr * std::norm(b2c);

  auto build = [&](const Matrix& m) {
    const Matrix m2 = m * m;
    const Matrix m2d = m2.adjoint();
    const Matrix expanded = kerr * m2d * m2 + eps2 * m2d + std::conj(eps2) * m2;
    const Matrix id = Matrix::Identity(m.rows(), m.cols());
    const Matrix factored =
        kerr * (m2d - std::conj(b2c) * id) * (m2 - b2c * id) + energy * id;
    return std::pair{expanded, factored};
  };

  SkpoReport rep;
  rep.energy = energy;
  const auto [h, hf] = build(squeezed_mode(space, code.r, code.phi).matrix());
  rep.factored_difference = (h - hf).cwiseAbs().maxCoeff();
  for (Parity p : {Parity::kEven, Parity::kOdd}) {
    const Vector v = squeezed_cat(space, code, p).ket.amplitudes();
    const double res = (h * v - energy * v).norm();
    (p == Parity::kEven ? rep.residual_plus : rep.residual_minus) = res;
  }

  // S^dag H S = K a^dag^2 a^2 + eps2 a^dag^2 + eps2^* a^2 on the unsqueezed mode.
  const auto [hk, hkf] = build(annihilation(space).matrix());
  (void)hkf;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hk, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw ConsistencyError("skpo_check: eigensolver failed");
  }
  const Eigen::VectorXd& ev = es.eigenvalues();
  rep.pair_splitting = ev(1) - ev(0);
  rep.gap = ev(2) - ev(1);
  return rep;
}

}  // namespace scq
