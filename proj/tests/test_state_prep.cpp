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

#include <cmath>
#include <numbers>

#include "scq/error.hpp"
#include "scq/state_prep.hpp"

namespace scq {
namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(DarkOpParams, CatLimit) {
  const DarkOpParams p = DarkOpParams::cat(2.0, 1e-2, 0.2);
  EXPECT_EQ(p.mu0, Complex(1.0));
  EXPECT_NEAR(std::abs(p.mu1 - Complex(100.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(p.nu + Complex(200.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::norm(p.cat_amplitude()), 2.0, 1e-12);
  EXPECT_THROW(DarkOpParams::cat(2.0, 0.0), InvalidArgument);
  DarkOpParams bad;
  bad.r = -0.1;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  EXPECT_THROW(DarkOpParams{}.cat_amplitude(), InvalidArgument);
}

TEST(DarkOperator, VacuumForPlainCooling) {
  const FockSpace s(30);
  DarkOpParams p;
  p.mu0 = 1.0;
  const Operator l = dark_operator(s, p);
  EXPECT_LT((l * Ket::basis(s, 0)).norm(), 1e-15);
}

TEST(DarkOperator, SqueezedVacuumForLinearDissipator) {
  const FockSpace s(60);
  DarkOpParams p;
  p.mu0 = 1.0;
  p.nu = std::tanh(0.3);
  const Ket sv = squeeze(s, 0.3) * Ket::basis(s, 0);
  EXPECT_LT((dark_operator(s, p) * sv).norm(), 1e-7);
}

TEST(DarkOperator, CatResidualVanishesInCatLimit) {
  double prev = 1e300;
  for (double ratio : {1e-1, 1e-2, 1e-3}) {
    const DarkOpParams p = DarkOpParams::cat(2.0, ratio);
    const FockSpace s(prep_cutoff(p));
    const Ket cat = squeezed_cat(s, CodeParams{p.cat_amplitude(), 0.0, 0.0}, Parity::kEven).ket;
    const double res = (dark_operator(s, p) * cat).norm() / std::abs(p.mu1);
    EXPECT_LT(res, prev) << ratio;
    prev = res;
  }
  EXPECT_LT(prev, 1e-2);
}

TEST(SqueezedDarkOperator, ReducesAtZeroSqueezing) {
  const DarkOpParams p = DarkOpParams::cat(1.5, 0.05);
  const FockSpace s(prep_cutoff(p));
  EXPECT_LT(max_abs(squeezed_dark_operator(s, p).matrix() - dark_operator(s, p).matrix()), 1e-14);
}

TEST(SqueezedDarkOperator, ExpansionMatchesConjugation) {
  const FockSpace s(60);
  DarkOpParams p;
  p.mu0 = Complex(1.0, 0.2);
  p.mu1 = Complex(0.5, -0.1);
  p.nu = Complex(0.0, 0.3);
  p.r = 0.4;
  p.phi = std::numbers::pi / 3;
  const Matrix diff = squeezed_dark_operator_expansion(s, p).matrix() -
                      conjugated_dark_operator(s, p).matrix();
  EXPECT_LT(max_abs(diff), 1e-9);
  EXPECT_NO_THROW(squeezed_dark_operator(s, p));
}

TEST(SqueezedDarkOperator, TargetResidualTracksUnsqueezed) {
  for (double ratio : {1e-1, 1e-2}) {
    const DarkOpParams flat = DarkOpParams::cat(2.0, ratio);
    const DarkOpParams sq = DarkOpParams::cat(2.0, ratio, 0.2);
    const FockSpace s(prep_cutoff(sq) + 10);
    const Ket cat = squeezed_cat(s, CodeParams{flat.cat_amplitude(), 0.0, 0.0}, Parity::kEven).ket;
    const double plain = (dark_operator(s, flat) * cat).norm();
    const double squeezed = (squeezed_dark_operator(s, sq) * prep_target(s, sq).ket).norm();
    EXPECT_LT(squeezed, 2.0 * plain) << ratio;
    EXPECT_GT(squeezed, 0.5 * plain) << ratio;
  }
}

TEST(PrepTarget, SqueezedCatWithConjugatedDisplacement) {
  const DarkOpParams p = DarkOpParams::cat(2.0, 1e-2, 0.2);
  // The unsqueezed cat carries more photons than the target.
  const FockSpace s(prep_cutoff(p) + 10);
  const SqueezedCat t = prep_target(s, p);
  const double a = std::sqrt(2.0);
  const Ket direct = squeeze(s, 0.2) *
                     squeezed_cat(s, CodeParams{{a, 0.0}, 0.0, 0.0}, Parity::kEven).ket;
  EXPECT_GT(fidelity(t.ket, direct), 1.0 - 1e-9);
  EXPECT_NEAR(std::abs(t.params.alpha), a * (std::cosh(0.2) - std::sinh(0.2)), 1e-12);
  EXPECT_NEAR(std::abs(beta(t.params)), a, 1e-12);
}

class Convergence : public ::testing::TestWithParam<int> {};

TEST_P(Convergence, ReachesUniqueDarkState) {
  const DarkOpParams p = DarkOpParams::cat(2.0, 1e-2, 0.2);
  const FockSpace s(prep_cutoff(p));
  DensityMatrix init = DensityMatrix::pure(Ket::basis(s, 0));
  double threshold = 0.99;
  if (GetParam() == 1) {
    init = DensityMatrix::pure(Ket::basis(s, 1));
    threshold = 0.98;
  } else if (GetParam() == 2) {
    init = DensityMatrix::thermal(s, 0.5);
    threshold = 0.98;
  }
  const PrepResult res = unconditional_convergence(s, p, init);
  EXPECT_GT(res.final_fidelity, threshold);
  EXPECT_GT(res.final_purity, 0.98);
  EXPECT_EQ(res.times.size(), res.fidelity.size());
  EXPECT_NEAR(res.times.back(), 50.0, 1e-12);
}

std::string initial_name(const ::testing::TestParamInfo<int>& info) {
  static const char* const kNames[] = {"Vacuum", "OnePhoton", "Thermal"};
  return kNames[info.param];
}

INSTANTIATE_TEST_SUITE_P(InitialStates, Convergence, ::testing::Values(0, 1, 2), initial_name);

}  // namespace
}  // namespace scq
