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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "scq/error.hpp"
#include "scq/lindblad.hpp"
#include "scq/observables.hpp"
#include "scq/states.hpp"

namespace scq {
namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix random_hermitian(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(gen), g(gen));
  return 0.5 * (m + Matrix(m.adjoint()));
}

MasterEquation confinement_only(FockSpace s, const CodeParams& code) {
  return build_master_equation(s, code, NoiseParams{});
}

TEST(Dissipator, IdentityVanishes) {
  const FockSpace s(6);
  const DensityMatrix rho = DensityMatrix::thermal(s, 0.7);
  EXPECT_LT(max_abs(dissipator_apply(Operator::identity(s), rho)), 1e-15);
}

TEST(Dissipator, SinglePhotonDecay) {
  const FockSpace s(4);
  const Matrix out = dissipator_apply(annihilation(s), DensityMatrix::pure(Ket::basis(s, 1)));
  Matrix want = Matrix::Zero(4, 4);
  want(0, 0) = 1.0;
  want(1, 1) = -1.0;
  EXPECT_LT(max_abs(out - want), 1e-15);
}

TEST(Dissipator, ConfinementIsTraceless) {
  const FockSpace s(40);
  const Operator l = confinement_dissipator(s, CodeParams::real(1.0, 0.2));
  const Matrix h = random_hermitian(40, 7);
  const Matrix out = dissipator_apply(l, DensityMatrix::unchecked(s, h));
  EXPECT_LT(std::abs(out.trace()), 1e-13 * std::max(1.0, h.norm()) * 50);
  EXPECT_LT(std::abs(out.trace()) / h.norm(), 1e-13);
}

TEST(ConfinementDissipator, AnnihilatesSqueezedCats) {
  const CodeParams p = CodeParams::real(4.0, 0.35);
  const FockSpace s(required_cutoff(p.mean_photons()) + 20);
  const Operator l = confinement_dissipator(s, p);
  EXPECT_LT((l * squeezed_cat(s, p, Parity::kEven).ket).norm(), 1e-7);
  EXPECT_LT((l * squeezed_cat(s, p, Parity::kOdd).ket).norm(), 1e-7);
}

TEST(ConfinementDissipator, ReducesToCatDissipator) {
  const FockSpace s(40);
  const Operator a = annihilation(s);
  const Operator want = (a * a).shifted(2.0);
  EXPECT_LT(max_abs(confinement_dissipator(s, CodeParams::real(2.0, 0.0)).matrix() -
                    want.matrix()),
            1e-14);
}

TEST(ConfinementDissipator, CutoffGuard) {
  EXPECT_THROW(confinement_dissipator(FockSpace(20), CodeParams::real(4.0, 0.0)), CutoffError);
}

TEST(BuildMasterEquation, Terms) {
  const FockSpace s(40);
  const CodeParams code = CodeParams::real(2.0, 0.1);
  const MasterEquation plain = build_master_equation(s, code, NoiseParams{});
  EXPECT_EQ(plain.dissipators.size(), 1u);
  EXPECT_EQ(plain.hamiltonian.max_abs(), 0.0);

  NoiseParams n;
  n.kappa1 = 1e-3;
  n.n_th = 0.1;
  n.kappa_phi = 2e-3;
  n.kerr = 1e-2;
  const MasterEquation full = build_master_equation(s, code, n);
  ASSERT_EQ(full.dissipators.size(), 4u);
  EXPECT_NEAR(full.hamiltonian(2, 2).real(), 2.0 * 1e-2, 1e-16);
  EXPECT_NEAR(full.dissipators[1].rate, 1.1e-3, 1e-18);
  EXPECT_NEAR(full.dissipators[3].rate, 1e-4, 1e-18);
}

TEST(NoiseParams, Validation) {
  NoiseParams n;
  n.kappa1 = -1.0;
  EXPECT_THROW(n.validate(), InvalidArgument);
  NoiseParams m;
  m.n_th = -0.1;
  EXPECT_THROW(m.validate(), InvalidArgument);
}

TEST(EvolutionConfig, Validation) {
  EvolutionConfig c;
  c.t_final = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.sample_count = 1;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.rel_tol = 0.1;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.abs_tol = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(Evolve, ZeroGeneratorIsConstant) {
  const FockSpace s(5);
  MasterEquation me(Operator::zero(s));
  const DensityMatrix rho0 = DensityMatrix::thermal(s, 0.4);
  EvolutionConfig c;
  c.t_final = 3.0;
  c.sample_count = 7;
  const Trajectory tr = evolve(me, rho0, c, {{"n", number(s)}});
  ASSERT_EQ(tr.times.size(), 7u);
  for (double v : tr.at("n")) EXPECT_NEAR(v, tr.at("n").front(), 1e-14);
  EXPECT_LT(max_abs(tr.final_state.matrix() - rho0.matrix()), 1e-14);
}

TEST(Evolve, PureLossDecayLaw) {
  const FockSpace s(6);
  MasterEquation me(Operator::zero(s));
  me.add_dissipator(annihilation(s), 0.3);
  EvolutionConfig c;
  c.t_final = 10.0;
  c.sample_count = 21;
  const Trajectory tr = evolve(me, DensityMatrix::pure(Ket::basis(s, 1)), c, {{"n", number(s)}});
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    EXPECT_NEAR(tr.at("n")[i], std::exp(-0.3 * tr.times[i]), 1e-6);
  }
  for (std::size_t i = 1; i < tr.times.size(); ++i) EXPECT_GT(tr.times[i], tr.times[i - 1]);
}

TEST(Evolve, StabilizationPreservesParity) {
  const CodeParams code = CodeParams::real(2.0, 0.2);
  const FockSpace s(required_cutoff(code.mean_photons()));
  const MasterEquation me = confinement_only(s, code);
  EvolutionConfig c;
  c.t_final = 20.0;
  c.sample_count = 41;
  const Operator jx = parity_jx(s);
  const Trajectory even = evolve(me, DensityMatrix::pure(Ket::basis(s, 0)), c, {{"jx", jx}});
  EXPECT_GT(fidelity(even.final_state, squeezed_cat(s, code, Parity::kEven).ket), 0.999);
  for (double v : even.at("jx")) EXPECT_NEAR(v, 1.0, 1e-8);
  EXPECT_LT(even.max_trace_drift, 1e-8);
  EXPECT_LT(even.final_state.hermiticity_error(), 1e-10);
  EXPECT_GT(even.min_eigenvalue, -1e-6);

  const Trajectory odd = evolve(me, DensityMatrix::pure(Ket::basis(s, 1)), c, {{"jx", jx}});
  EXPECT_GT(fidelity(odd.final_state, squeezed_cat(s, code, Parity::kOdd).ket), 0.999);
  for (double v : odd.at("jx")) EXPECT_NEAR(v, -1.0, 1e-8);
}

TEST(Evolve, ToleranceHalvingConverges) {
  const CodeParams code = CodeParams::real(2.0, 0.3);
  const FockSpace s(required_cutoff(code.mean_photons()));
  NoiseParams n = NoiseParams::loss(1e-2);
  n.kerr = 0.05;
  const MasterEquation me = build_master_equation(s, code, n);
  EvolutionConfig c;
  c.t_final = 5.0;
  c.sample_count = 11;
  c.rel_tol = 1e-6;
  c.abs_tol = 1e-8;
  const std::map<std::string, Operator> obs{{"n", number(s)}, {"jz", logical_z(s, code)}};
  const DensityMatrix rho0 = DensityMatrix::pure(Ket::basis(s, 0));
  const Trajectory coarse = evolve(me, rho0, c, obs);
  c.rel_tol /= 2.0;
  c.abs_tol /= 2.0;
  const Trajectory fine = evolve(me, rho0, c, obs);
  for (const auto& [name, op] : obs) {
    for (std::size_t i = 0; i < fine.times.size(); ++i) {
      const double scale = std::max(1.0, std::abs(fine.at(name)[i]));
      EXPECT_LT(std::abs(fine.at(name)[i] - coarse.at(name)[i]), 5.0 * c.rel_tol * scale)
          << name << " sample " << i;
    }
  }
}

TEST(Evolve, PropagatorMatchesDormandPrince) {
  const CodeParams code = CodeParams::real(2.0, 0.2);
  const FockSpace s(required_cutoff(code.mean_photons()));
  NoiseParams n = NoiseParams::loss(5e-3);
  n.kappa_phi = 1e-3;
  const MasterEquation me = build_master_equation(s, code, n);
  EvolutionConfig c;
  c.t_final = 8.0;
  c.sample_count = 9;
  c.rel_tol = 1e-10;
  c.abs_tol = 1e-12;
  const std::map<std::string, Operator> obs{{"jx", parity_jx(s)}, {"jz", logical_z(s, code)}};
  const DensityMatrix rho0 = DensityMatrix::pure(logical_basis(s, code).zero);
  const Trajectory dp = evolve(me, rho0, c, obs);
  c.method = Integrator::kPropagator;
  const Trajectory pr = evolve(me, rho0, c, obs);
  EXPECT_EQ(pr.method_used, Integrator::kPropagator);
  for (const char* name : {"jx", "jz"}) {
    for (std::size_t i = 0; i < dp.times.size(); ++i) {
      EXPECT_NEAR(dp.at(name)[i], pr.at(name)[i], 1e-8) << name << " sample " << i;
    }
  }
  EXPECT_LT(max_abs(dp.final_state.matrix() - pr.final_state.matrix()), 1e-8);
}

TEST(Evolve, SampleCallbackSeesEverySample) {
  const FockSpace s(4);
  MasterEquation me(Operator::zero(s));
  me.add_dissipator(annihilation(s), 1.0);
  EvolutionConfig c;
  c.sample_count = 5;
  int calls = 0;
  evolve(me, DensityMatrix::pure(Ket::basis(s, 2)), c, {},
         [&](double, const DensityMatrix&) { ++calls; });
  EXPECT_EQ(calls, 5);
}

TEST(LindbladAdjoint, MatchesTraceOfRhs) {
  const CodeParams code = CodeParams::real(1.5, 0.2);
  const FockSpace s(required_cutoff(code.mean_photons()));
  NoiseParams n = NoiseParams::loss(0.02);
  n.kerr = 0.1;
  n.kappa_phi = 0.01;
  n.n_th = 0.2;
  const MasterEquation me = build_master_equation(s, code, n);
  const DensityMatrix rho = DensityMatrix::pure(squeezed_state(s, CodeParams{{0.7, 0.4}, 0.1, 0.0}));
  const Operator o = logical_z(s, code);
  const Complex lhs = (o.matrix() * lindblad_rhs(me, rho.matrix())).trace();
  const Complex rhs = expectation(rho, lindblad_adjoint(me, o));
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
}

TEST(SteadyState, Residuals) {
  const CodeParams code = CodeParams::real(4.0, 0.0);
  const FockSpace s(required_cutoff(code.mean_photons()));
  const MasterEquation me = confinement_only(s, code);
  const Ket plus = squeezed_cat(s, code, Parity::kEven).ket;
  const Ket minus = squeezed_cat(s, code, Parity::kOdd).ket;
  EXPECT_LT(steady_state_residual(me, DensityMatrix::pure(plus)), 1e-7);
  const Matrix mixed = 0.5 * (plus.amplitudes() * plus.amplitudes().adjoint() +
                              minus.amplitudes() * minus.amplitudes().adjoint());
  EXPECT_LT(steady_state_residual(me, DensityMatrix::from_matrix(s, mixed)), 1e-7);
  // Far from steady: a^2|0> = 0, so the largest entry of D[a^2 - beta^2]|0><0|
  // is the <2|.|0> coherence beta^2 / sqrt(2).
  const double far = steady_state_residual(me, DensityMatrix::pure(Ket::basis(s, 0)));
  EXPECT_NEAR(far, 4.0 / std::sqrt(2.0), 1e-12);
}

std::vector<double> slowest_rates(const MasterEquation& me, std::size_t count) {
  std::vector<double> ev;
  for (const LiouvillianSector& sec : liouvillian_sectors(me)) {
    Eigen::ComplexEigenSolver<Matrix> es(sec.generator, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      ev.push_back(es.eigenvalues()(i).real());
    }
  }
  std::sort(ev.begin(), ev.end(), std::greater<>());
  ev.resize(count);
  return ev;
}

TEST(Liouvillian, SectorsSplitByParity) {
  const CodeParams code = CodeParams::real(2.0, 0.0);
  const FockSpace s(12);
  MasterEquation me(Operator::zero(s));
  me.add_dissipator((annihilation(s) * annihilation(s)).shifted(2.0), 1.0);
  const auto secs = liouvillian_sectors(me);
  ASSERT_EQ(secs.size(), 2u);
  EXPECT_EQ(secs[0].elements.size() + secs[1].elements.size(), 144u);
  NoiseParams n;
  n.kerr = 0.1;
  const MasterEquation drive = build_master_equation(
      FockSpace(40), code, n, annihilation(FockSpace(40)) + creation(FockSpace(40)));
  EXPECT_EQ(liouvillian_sectors(drive).size(), 1u);
}

// Slowest eigenvalues from the dense column-stacked Liouvillian in numpy.
TEST(Liouvillian, SlowestEigenvaluesMatchDenseOracle) {
  struct Case {
    double a2, r;
    int n;
    double lambda[4];
  };
  const Case cases[] = {
      {2.0, 0.35, 40, {0.0, -8.4185258886e-08, -4.2550242520e-03, -4.2551070569e-03}},
      {2.0, 0.0, 36, {0.0, -1.3682906976e-06, -4.0001994940e-03, -4.0015284102e-03}},
  };
  for (const Case& c : cases) {
    const CodeParams code = CodeParams::real(c.a2, c.r);
    MasterEquation me(Operator::zero(FockSpace(c.n)));
    const FockSpace s(c.n);
    const Operator b = squeezed_mode(s, c.r);
    me.add_dissipator((b * b).shifted(std::norm(beta(code)) * Complex(1.0)), 1.0);
    me.add_dissipator(annihilation(s), 1e-3);
    const auto ev = slowest_rates(me, 4);
    EXPECT_NEAR(ev[0], 0.0, 1e-11);
    for (int k = 1; k < 4; ++k) {
      // Nonsymmetric eigensolvers resolve eigenvalues to ~eps ||L||.
      EXPECT_NEAR(ev[k], c.lambda[k], 1e-4 * std::abs(c.lambda[k]) + 1e-12)
          << c.a2 << " " << c.r << " k=" << k;
    }
  }
}

}  // namespace
}  // namespace scq
