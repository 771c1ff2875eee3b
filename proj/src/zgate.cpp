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

#include "scq/zgate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "scq/observables.hpp"
#include "scq/parallel.hpp"

namespace scq {

namespace {

constexpr double kAdiabaticWarn = 0.3;

double real_alpha(const CodeParams& code, const char* what) {
  code.validate();
  if (code.alpha.imag() != 0.0 || !(code.alpha.real() > 0.0) || code.phi != 0.0) {
    throw InvalidArgument(std::string(what) + ": requires real alpha > 0 and phi = 0");
  }
  return code.alpha.real();
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(what) + " must be finite and > 0");
  }
}

Operator drive(FockSpace space, double eps) {
  const Operator a = annihilation(space);
  return eps * (a + a.dagger());
}

FockSpace gate_space(const CodeParams& code, int cutoff) {
  return FockSpace(cutoff > 0 ? cutoff : required_cutoff(code.mean_photons()));
}

}  // namespace

double drive_amplitude(double theta, double alpha, double t_gate) {
  require_positive(alpha, "drive_amplitude: alpha");
  require_positive(t_gate, "drive_amplitude: t_gate");
  if (!std::isfinite(theta)) throw InvalidArgument("drive_amplitude: theta must be finite");
  return theta / (4.0 * alpha * t_gate);
}

double pz_nonadiabatic(const CodeParams& code, double kappa2, double t_gate) {
  const double a = real_alpha(code, "pz_nonadiabatic");
  require_positive(kappa2, "pz_nonadiabatic: kappa2");
  require_positive(t_gate, "pz_nonadiabatic: t_gate");
  const double a4 = std::pow(a, 4);
  return std::numbers::pi * std::numbers::pi * std::exp(-4.0 * code.r) /
         (16.0 * a4 * kappa2 * t_gate);
}

double pz_model(const CodeParams& code, double kappa_minus, double kappa2,
                double t_gate) {
  const double a = real_alpha(code, "pz_model");
  if (!(kappa_minus >= 0.0)) throw InvalidArgument("pz_model: kappa_minus must be >= 0");
  return kappa_minus * a * a * t_gate + pz_nonadiabatic(code, kappa2, t_gate);
}

double t_opt(const CodeParams& code, double kappa_minus, double kappa2) {
  const double a = real_alpha(code, "t_opt");
  if (!(kappa_minus > 0.0)) {
    throw InvalidArgument("t_opt: kappa_minus = 0 has no finite optimal gate time");
  }
  require_positive(kappa2, "t_opt: kappa2");
  return std::numbers::pi * std::exp(-2.0 * code.r) /
         (4.0 * a * a * a * std::sqrt(kappa_minus * kappa2));
}

BlochXY simulate_gate_sequence(const CodeParams& code, const NoiseParams& noise,
                               const std::vector<GateSegment>& segments,
                               const EvolutionConfig& config, int cutoff) {
  const double alpha = real_alpha(code, "simulate_gate_sequence");
  if (segments.empty()) throw InvalidArgument("simulate_gate_sequence: no segments");
  const FockSpace space = gate_space(code, cutoff);
  DensityMatrix rho = DensityMatrix::pure(squeezed_cat(space, code, Parity::kEven).ket);
  for (const GateSegment& seg : segments) {
    const double eps = drive_amplitude(seg.theta, alpha, seg.t_gate);
    const MasterEquation me = build_master_equation(space, code, noise, drive(space, eps));
    EvolutionConfig cfg = config;
    cfg.t_final = seg.t_gate;
    rho = evolve(me, rho, cfg, {}).final_state;
  }
  BlochXY out;
  out.sigma_x = expectation(rho, parity_jx(space)).real();
  out.sigma_y = expectation(rho, logical_y(space, code)).real();
  return out;
}

GateResult simulate_gate(const CodeParams& code, const NoiseParams& noise,
                         double theta, double t_gate,
                         const EvolutionConfig& config, int cutoff) {
  const double alpha = real_alpha(code, "simulate_gate");
  noise.validate();
  GateResult out;
  out.theta = theta;
  out.t_gate = t_gate;
  out.epsilon_z = drive_amplitude(theta, alpha, t_gate);
  if (std::abs(out.epsilon_z) / noise.kappa2 > kAdiabaticWarn) {
    std::ostringstream msg;
    msg << "epsilon_Z/kappa2 = " << std::abs(out.epsilon_z) / noise.kappa2
        << " exceeds " << kAdiabaticWarn << "; the adiabatic picture is questionable";
    out.warnings.push_back(msg.str());
  }
  const FockSpace space = gate_space(code, cutoff);
  out.cutoff = space.dim();
  const MasterEquation me =
      build_master_equation(space, code, noise, drive(space, out.epsilon_z));
  EvolutionConfig cfg = config;
  cfg.t_final = t_gate;

  const Operator jx = parity_jx(space);
  const Operator jy = logical_y(space, code);
  const Operator jz = logical_z(space, code);

  const SqueezedCat plus = squeezed_cat(space, code, Parity::kEven);
  const Trajectory tp =
      evolve(me, DensityMatrix::pure(plus.ket), cfg, {{"x", jx}, {"y", jy}});
  out.sigma_x = tp.at("x").back();
  out.sigma_y = tp.at("y").back();
  out.p_z = 0.5 * (1.0 - std::cos(theta) * out.sigma_x - std::sin(theta) * out.sigma_y);

  const LogicalBasis basis = logical_basis(space, code);
  const Trajectory tz = evolve(me, DensityMatrix::pure(basis.zero), cfg, {{"z", jz}});
  out.p_x = 0.5 * (1.0 - tz.at("z").back() / tz.at("z").front());

  for (const auto* t : {&tp, &tz}) {
    out.warnings.insert(out.warnings.end(), t->warnings.begin(), t->warnings.end());
  }
  return out;
}

BiasScan bias_preservation_scan(const std::vector<double>& alpha_sq,
                                const std::vector<double>& r,
                                double kappa_minus, const EvolutionConfig& config,
                                int threads) {
  if (alpha_sq.size() < 2 || r.empty()) {
    throw InvalidArgument("bias_preservation_scan: need >= 2 alpha^2 values and one r");
  }
  BiasScan scan;
  for (double rv : r) {
    for (double a2 : alpha_sq) scan.rows.push_back({a2, rv, 0, 0, 0, 0});
  }
  const NoiseParams noise = NoiseParams::loss(kappa_minus);
  parallel_for(scan.rows.size(), threads, [&](std::size_t i) {
    BiasRow& row = scan.rows[i];
    const CodeParams code = CodeParams::real(row.alpha_sq, row.r);
    row.t_gate = t_opt(code, kappa_minus, noise.kappa2);
    const GateResult g =
        simulate_gate(code, noise, std::numbers::pi, row.t_gate, config);
    row.p_z = g.p_z;
    row.p_x = g.p_x;
    row.p_z_model = pz_model(code, kappa_minus, noise.kappa2, row.t_gate);
  });
  for (double rv : r) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const BiasRow& row : scan.rows) {
      if (row.r != rv) continue;
      if (!(row.p_x > 0.0)) {
        throw FitError("bias_preservation_scan: non-positive p_X at alpha^2 = " +
                       std::to_string(row.alpha_sq));
      }
      const double y = std::log(row.p_x);
      sx += row.alpha_sq;
      sy += y;
      sxx += row.alpha_sq * row.alpha_sq;
      sxy += row.alpha_sq * y;
      ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    scan.slopes.push_back({rv, slope, (sy - slope * sx) / n});
  }
  return scan;
}

}  // namespace scq
