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

#include "scq/lindblad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "generator.hpp"

namespace scq {

namespace detail {

namespace {
constexpr double kSparseFill = 0.15;
constexpr double kPositivityWarn = -1e-8;
constexpr double kPositivityAbort = -1e-6;
}  // namespace

std::vector<double> sample_times(const EvolutionConfig& config) {
  std::vector<double> t(config.sample_count);
  for (int i = 0; i < config.sample_count; ++i) {
    t[i] = config.t_final * double(i) / double(config.sample_count - 1);
  }
  t.back() = config.t_final;
  return t;
}

Recorder::Recorder(const std::map<std::string, Operator>& observables,
                   Trajectory& traj, const SampleCallback& cb,
                   bool check_positivity)
    : observables_(observables),
      traj_(traj),
      cb_(cb),
      check_positivity_(check_positivity) {
  for (const auto& [name, op] : observables_) traj_.observables[name] = {};
  traj_.min_eigenvalue = check_positivity
                             ? std::numeric_limits<double>::infinity()
                             : std::numeric_limits<double>::quiet_NaN();
}

void Recorder::sample(double t, const Matrix& rho, FockSpace space) {
  traj_.times.push_back(t);
  const DensityMatrix state = DensityMatrix::unchecked(space, rho);
  for (const auto& [name, op] : observables_) {
    traj_.observables[name].push_back(expectation(state, op).real());
  }
  if (check_positivity_) {
    const double min_ev = state.min_eigenvalue();
    traj_.min_eigenvalue = std::min(traj_.min_eigenvalue, min_ev);
    if (min_ev < kPositivityAbort) {
      std::ostringstream msg;
      msg << "positivity violated at t=" << t << ": eigenvalue " << min_ev;
      throw IntegratorError(msg.str());
    }
    if (min_ev < kPositivityWarn && !warned_) {
      std::ostringstream msg;
      msg << "small negative eigenvalue " << min_ev << " at t=" << t;
      traj_.warnings.push_back(msg.str());
      warned_ = true;
    }
  }
  if (cb_) cb_(t, state);
}

Factor::Factor(const Matrix& m) {
  const Eigen::Index nnz = (m.array() != Complex(0.0)).count();
  sparse_ = double(nnz) < kSparseFill * double(m.size());
  if (sparse_) {
    compressed_ = m.sparseView();
    compressed_.makeCompressed();
  } else {
    dense_ = m;
  }
}

void Factor::left(const Matrix& x, Matrix& out) const {
  if (sparse_) {
    out.noalias() = compressed_ * x;
  } else {
    out.noalias() = dense_ * x;
  }
}

void Factor::right_accumulate(const Matrix& x, Matrix& out) const {
  if (sparse_) {
    out.noalias() += x * compressed_;
  } else {
    out.noalias() += x * dense_;
  }
}

Matrix effective_hamiltonian(const MasterEquation& me) {
  Matrix h = me.hamiltonian.matrix();
  for (const auto& d : me.dissipators) {
    if (d.rate == 0.0) continue;
    const Matrix& l = d.jump.matrix();
    h.noalias() -= Complex(0.0, 0.5 * d.rate) * (l.adjoint() * l);
  }
  return h;
}

Generator::Generator(const MasterEquation& me)
    : Generator(me, effective_hamiltonian(me)) {}

Generator::Generator(const MasterEquation& me, const Matrix& h)
    : dim_(me.space().dim()), h_eff_(h) {
  double bound = 2.0 * h.cwiseAbs().rowwise().sum().maxCoeff();
  for (const auto& d : me.dissipators) {
    if (d.rate == 0.0) continue;
    const Matrix j = std::sqrt(d.rate) * d.jump.matrix();
    jumps_.emplace_back(j);
    jumps_dag_.emplace_back(j.adjoint());
    const double row = j.cwiseAbs().rowwise().sum().maxCoeff();
    bound += row * row;
  }
  radius_bound_ = bound;
}

void Generator::apply(const Matrix& rho, Matrix& out, Matrix& work) const {
  h_eff_.left(rho, work);
  work *= Complex(0.0, -1.0);
  out = work + work.adjoint();
  for (std::size_t k = 0; k < jumps_.size(); ++k) {
    jumps_[k].left(rho, work);
    jumps_dag_[k].right_accumulate(work, out);
  }
}

int operator_parity(const Matrix& m) {
  bool has_even = false;
  bool has_odd = false;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) == Complex(0.0)) continue;
      ((r + c) % 2 == 0 ? has_even : has_odd) = true;
    }
  }
  if (has_even && has_odd) return 0;
  return has_odd ? -1 : 1;
}

}  // namespace detail

// Implemented in propagator.cpp.
Trajectory evolve_propagator(const MasterEquation& me, const DensityMatrix& rho0,
                             const EvolutionConfig& config,
                             const std::map<std::string, Operator>& observables,
                             const SampleCallback& on_sample);
std::size_t largest_sector_dim(const MasterEquation& me);

void NoiseParams::validate() const {
  const std::array<std::pair<const char*, double>, 4> rates{
      {{"kappa2", kappa2}, {"kappa1", kappa1}, {"n_th", n_th},
       {"kappa_phi", kappa_phi}}};
  for (const auto& [name, value] : rates) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
      throw InvalidArgument(std::string("noise parameter ") + name +
                            " must be finite and >= 0");
    }
  }
  if (!std::isfinite(kerr)) throw InvalidArgument("kerr must be finite");
}

void MasterEquation::add_dissipator(Operator jump, double rate) {
  require_same_space(hamiltonian.space(), jump.space(), "add_dissipator");
  if (!(rate >= 0.0)) throw InvalidArgument("dissipator rate must be >= 0");
  dissipators.push_back({std::move(jump), rate});
}

void MasterEquation::validate() const {
  if (hamiltonian.hermiticity_error() > 1e-10 * std::max(1.0, hamiltonian.max_abs())) {
    throw InvalidArgument("Hamiltonian is not Hermitian");
  }
  for (const auto& d : dissipators) {
    require_same_space(hamiltonian.space(), d.jump.space(), "master equation");
    if (!(d.rate >= 0.0)) throw InvalidArgument("dissipator rate must be >= 0");
  }
}

void EvolutionConfig::validate() const {
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw InvalidArgument("t_final must be > 0");
  }
  if (sample_count < 2) throw InvalidArgument("sample_count must be >= 2");
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) {
    throw InvalidArgument("rel_tol must lie in (0, 1e-2]");
  }
  if (!(abs_tol > 0.0 && abs_tol <= 1e-2)) {
    throw InvalidArgument("abs_tol must lie in (0, 1e-2]");
  }
  if (!(trace_abort > 0.0)) throw InvalidArgument("trace_abort must be > 0");
}

const std::vector<double>& Trajectory::at(const std::string& name) const {
  const auto it = observables.find(name);
  if (it == observables.end()) {
    throw InvalidArgument("trajectory has no observable '" + name + "'");
  }
  return it->second;
}

Matrix dissipator_apply(const Operator& a, const DensityMatrix& rho) {
  require_same_space(a.space(), rho.space(), "dissipator_apply");
  const Matrix& l = a.matrix();
  const Matrix& r = rho.matrix();
  const Matrix ldl = l.adjoint() * l;
  return l * r * l.adjoint() - 0.5 * (ldl * r + r * ldl);
}

Operator confinement_dissipator(FockSpace space, const CodeParams& params) {
  params.validate();
  require_cutoff(space, params.mean_photons(), "confinement_dissipator");
  const Operator b = squeezed_mode(space, params.r, params.phi);
  const Complex bt = beta(params);
  return (b * b).shifted(bt * bt);
}

MasterEquation build_master_equation(
    FockSpace space, const CodeParams& code, const NoiseParams& noise,
    const std::optional<Operator>& extra_hamiltonian) {
  noise.validate();
  const Operator a = annihilation(space);
  const Operator ad = a.dagger();
  Operator h = Operator::zero(space);
  if (noise.kerr != 0.0) h += noise.kerr * (ad * ad * a * a);
  if (extra_hamiltonian) h += *extra_hamiltonian;

  MasterEquation me(std::move(h));
  me.add_dissipator(confinement_dissipator(space, code), noise.kappa2);
  if (noise.kappa_minus() > 0.0) me.add_dissipator(a, noise.kappa_minus());
  if (noise.kappa_phi > 0.0) me.add_dissipator(number(space), noise.kappa_phi);
  if (noise.kappa_plus() > 0.0) me.add_dissipator(ad, noise.kappa_plus());
  return me;
}

Matrix lindblad_rhs(const MasterEquation& me, const Matrix& rho) {
  if (rho.rows() != me.space().dim() || rho.cols() != me.space().dim()) {
    throw DimensionError("lindblad_rhs: state shape does not match the space");
  }
  const detail::Generator gen(me);
  Matrix out(rho.rows(), rho.cols());
  Matrix work(rho.rows(), rho.cols());
  gen.apply(rho, out, work);
  return out;
}

Operator lindblad_adjoint(const MasterEquation& me, const Operator& a) {
  require_same_space(me.space(), a.space(), "lindblad_adjoint");
  const Matrix& x = a.matrix();
  const Matrix& h = me.hamiltonian.matrix();
  Matrix out = kI * (h * x - x * h);
  for (const auto& d : me.dissipators) {
    if (d.rate == 0.0) continue;
    const Matrix& l = d.jump.matrix();
    const Matrix ldl = l.adjoint() * l;
    out.noalias() += d.rate * (l.adjoint() * x * l - 0.5 * (ldl * x + x * ldl));
  }
  return Operator(a.space(), std::move(out));
}

double steady_state_residual(const MasterEquation& me,
                             const DensityMatrix& rho) {
  require_same_space(me.space(), rho.space(), "steady_state_residual");
  return lindblad_rhs(me, rho.matrix()).cwiseAbs().maxCoeff();
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// PI controller constants.
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - 0.75 * kBeta;
constexpr double kSafety = 0.9;
constexpr double kMaxShrink = 5.0;   // h_new >= h / 5
constexpr double kMaxGrowth = 0.1;   // h_new <= 10 h

double error_norm(const Matrix& err, const Matrix& y0, const Matrix& y1,
                  double rtol, double atol) {
  const auto scale =
      (atol + rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).eval();
  return std::sqrt((err.cwiseAbs().array() / scale).square().mean());
}

Trajectory evolve_dopri(const MasterEquation& me, const DensityMatrix& rho0,
                        const EvolutionConfig& config,
                        const std::map<std::string, Operator>& observables,
                        const SampleCallback& on_sample) {
  const FockSpace space = me.space();
  const int n = space.dim();
  const detail::Generator gen(me);

  Trajectory traj(rho0);
  traj.method_used = Integrator::kDormandPrince;
  detail::Recorder recorder(observables, traj, on_sample, true);
  const std::vector<double> targets = detail::sample_times(config);

  Matrix y = rho0.matrix();
  const Complex trace0 = y.trace();
  Matrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), k5(n, n), k6(n, n), k7(n, n);
  Matrix stage(n, n), y_new(n, n), err(n, n), work(n, n);

  recorder.sample(0.0, y, space);
  gen.apply(y, k1, work);

  // Initial step (Hairer's heuristic, simplified).
  const double d0 = y.cwiseAbs().maxCoeff();
  const double d1 = std::max(k1.cwiseAbs().maxCoeff(), 1e-300);
  double h = std::min({0.01 * std::max(d0, 1e-5) / d1,
                       targets[1] - targets[0],
                       3.0 / std::max(gen.spectral_radius_bound(), 1e-300)});
  double err_old = 1e-4;
  double t = 0.0;
  const double h_min = 1e-13 * config.t_final;

  for (std::size_t next = 1; next < targets.size(); ++next) {
    const double target = targets[next];
    while (t < target) {
      if (traj.steps + traj.rejected_steps >= config.max_steps) {
        throw IntegratorError("step budget exhausted at t=" + std::to_string(t) +
                              " (problem likely stiff; use the propagator)");
      }
      double step = h;
      bool last = false;
      if (t + step >= target * (1.0 - 1e-14) || target - (t + step) < h_min) {
        step = target - t;
        last = true;
      }
      stage = y + step * a21 * k1;
      gen.apply(stage, k2, work);
      stage = y + step * (a31 * k1 + a32 * k2);
      gen.apply(stage, k3, work);
      stage = y + step * (a41 * k1 + a42 * k2 + a43 * k3);
      gen.apply(stage, k4, work);
      stage = y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      gen.apply(stage, k5, work);
      stage = y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      gen.apply(stage, k6, work);
      y_new = y + step * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      gen.apply(y_new, k7, work);
      err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const double en =
          error_norm(err, y, y_new, config.rel_tol, config.abs_tol);

      if (!std::isfinite(en)) {
        throw IntegratorError("non-finite state at t=" + std::to_string(t));
      }
      const double fac11 = std::pow(en, kExpo);
      if (en <= 1.0) {
        double fac = fac11 / std::pow(err_old, kBeta);
        fac = std::clamp(fac / kSafety, kMaxGrowth, kMaxShrink);
        const double h_new = step / fac;
        err_old = std::max(en, 1e-4);
        t = last ? target : t + step;
        y = 0.5 * (y_new + y_new.adjoint());
        gen.apply(y, k1, work);
        ++traj.steps;
        const double drift = std::abs(y.trace() - trace0);
        traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
        if (drift > config.trace_abort) {
          throw IntegratorError("trace drift " + std::to_string(drift) +
                                " at t=" + std::to_string(t));
        }
        h = last ? std::max(h, h_new) : h_new;
      } else {
        ++traj.rejected_steps;
        h = step / std::min(kMaxShrink, fac11 / kSafety);
      }
      if (h < h_min) {
        throw IntegratorError("step-size underflow at t=" + std::to_string(t) +
                              " (h=" + std::to_string(h) + ")");
      }
    }
    recorder.sample(target, y, space);
  }
  traj.final_state = DensityMatrix::unchecked(space, y);
  return traj;
}

}  // namespace

Trajectory evolve(const MasterEquation& me, const DensityMatrix& rho0,
                  const EvolutionConfig& config,
                  const std::map<std::string, Operator>& observables,
                  const SampleCallback& on_sample) {
  config.validate();
  me.validate();
  require_same_space(me.space(), rho0.space(), "evolve");
  for (const auto& [name, op] : observables) {
    require_same_space(me.space(), op.space(), "evolve observable");
  }
  if (rho0.hermiticity_error() > DensityMatrix::kHermiticityTol ||
      std::abs(rho0.trace() - 1.0) > DensityMatrix::kTraceTol) {
    throw InvalidArgument("evolve: initial state violates density-matrix "
                          "invariants");
  }

  Integrator method = config.method;
  if (method == Integrator::kAuto) {
    const detail::Generator gen(me);
    const double explicit_steps =
        config.t_final * gen.spectral_radius_bound() / 3.0;
    method = (explicit_steps > 2e4 && largest_sector_dim(me) <= 2500)
                 ? Integrator::kPropagator
                 : Integrator::kDormandPrince;
  }
  if (method == Integrator::kPropagator) {
    return evolve_propagator(me, rho0, config, observables, on_sample);
  }
  return evolve_dopri(me, rho0, config, observables, on_sample);
}

}  // namespace scq
