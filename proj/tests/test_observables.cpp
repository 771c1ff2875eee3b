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
#include <random>

#include "scq/error.hpp"
#include "scq/observables.hpp"
#include "scq/special_functions.hpp"
#include "scq/states.hpp"

namespace scq {
namespace {

TEST(DoubleFactorial, Definition) {
  EXPECT_EQ(double_factorial(5), 15.0);
  EXPECT_EQ(double_factorial(0), 1.0);
  EXPECT_EQ(double_factorial(-1), 1.0);
  EXPECT_EQ(double_factorial(8), 384.0);
  EXPECT_THROW(double_factorial(-3), InvalidArgument);
}

TEST(DoubleFactorial, LogSpace) {
  struct Case {
    int n;
    double v;
  };
  for (const Case c : {Case{0, 0.0}, Case{1, 0.0}, Case{7, 4.653960350157523},
                       Case{20, 22.035884378674968}, Case{201, 435.4811984889065}}) {
    EXPECT_NEAR(log_double_factorial(c.n), c.v, 1e-12 * std::max(1.0, c.v)) << c.n;
  }
}

TEST(LogBessel, MatchesArbitraryPrecision) {
  struct Case {
    int nu;
    double x, v;
  };
  const Case cases[] = {
      {0, 0.5, 0.0615497191854813},   {3, 2.0, -1.5476847077547038},
      {1, 0.001, -7.600902334542085}, {10, 50.0, 46.12085206783563},
      {40, 700.0, 694.6623372754736}, {0, 2000.0, 1995.2806727526574},
      {150, 30.0, -197.32971991538815}, {25, 1e4, 9994.444652235044},
  };
  for (const Case& c : cases) {
    // Absolute error in the log is the relative error of I.
    EXPECT_NEAR(log_bessel_i(c.nu, c.x), c.v, 1e-12 * std::max(1.0, std::abs(c.v)))
        << "nu=" << c.nu << " x=" << c.x;
  }
}

TEST(LogBessel, AllOrdersAgreeWithSingle) {
  for (double x : {0.3, 4.0, 37.0, 800.0}) {
    const std::vector<double> all = log_bessel_i_all(30, x);
    ASSERT_EQ(all.size(), 31u);
    for (int q = 0; q <= 30; ++q) {
      EXPECT_NEAR(all[q], log_bessel_i(q, x), 1e-12 * std::max(1.0, std::abs(all[q])));
    }
  }
}

TEST(LogSinh, LargeAndSmall) {
  EXPECT_NEAR(log_sinh(1000.0), 1000.0 - std::log(2.0), 1e-12);
  EXPECT_NEAR(log_sinh(0.5), std::log(std::sinh(0.5)), 1e-15);
  EXPECT_NEAR(log_sinh(1e-8), std::log(1e-8), 1e-12);
}

TEST(ParityJx, DiagonalSigns) {
  const FockSpace s(40);
  const Operator jx = parity_jx(s);
  Matrix sq = (jx * jx).matrix();
  EXPECT_EQ((sq - Matrix::Identity(40, 40)).cwiseAbs().maxCoeff(), 0.0);
  for (int n = 0; n < 40; ++n) EXPECT_EQ(jx(n, n).real(), n % 2 == 0 ? 1.0 : -1.0);

  const CodeParams p = CodeParams::real(2.0, 0.3);
  const FockSpace t(required_cutoff(p.mean_photons()));
  const Operator j = parity_jx(t);
  EXPECT_NEAR(expectation(squeezed_cat(t, p, Parity::kEven).ket, j).real(), 1.0, 1e-10);
  EXPECT_NEAR(expectation(squeezed_cat(t, p, Parity::kOdd).ket, j).real(), -1.0, 1e-10);
  EXPECT_NEAR(expectation(logical_basis(t, p).zero, j).real(), 0.0, 1e-10);
}

TEST(JzConfig, Validation) {
  EXPECT_THROW((JzConfig{0.0, std::nullopt, 0.0}).validate(), InvalidArgument);
  EXPECT_THROW((JzConfig{2.0, 0, 0.0}).validate(), InvalidArgument);
  EXPECT_NO_THROW((JzConfig{2.0, 3, 0.0}).validate());
}

TEST(JPlusMinus, RejectsNonConvergentTruncation) {
  EXPECT_THROW(j_plus_minus(FockSpace(60), {4.0, 1, 0.0}), InvalidArgument);
  EXPECT_NO_THROW(j_plus_minus(FockSpace(60), {4.0, 25, 0.0}));
}

TEST(Jz, SignOperatorOnCatBasis) {
  const CodeParams p = CodeParams::real(4.0, 0.0);
  const FockSpace s(required_cutoff(p.mean_photons()));
  const Operator jz = jz_operator(s, {4.0, std::nullopt, 0.0});
  EXPECT_LT(jz.hermiticity_error(), 1e-12);
  const LogicalBasis lb = logical_basis(s, p);
  EXPECT_GE(expectation(lb.zero, jz).real(), 0.99);
  EXPECT_LE(expectation(lb.one, jz).real(), -0.99);
}

TEST(Jz, BoundedSpectrum) {
  const FockSpace s(60);
  for (double x : {0.5, 4.0, 12.0}) {
    const Operator jz = jz_operator(s, {x, std::nullopt, 0.0});
    Eigen::SelfAdjointEigenSolver<Matrix> es(jz.matrix());
    EXPECT_LE(es.eigenvalues().cwiseAbs().maxCoeff(), 1.0 + 1e-6) << x;
  }
}

TEST(Jz, RandomKetsBounded) {
  const CodeParams p = CodeParams::real(3.0, 0.35);
  const FockSpace s(required_cutoff(p.mean_photons()));
  const Operator jz = logical_z(s, p);
  std::mt19937 gen(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Vector v(s.dim());
    for (int n = 0; n < s.dim(); ++n) v(n) = Complex(g(gen), g(gen));
    const Ket k = Ket(s, v).normalized();
    const double e = expectation(k, jz).real();
    EXPECT_GE(e, -1.0 - 1e-6);
    EXPECT_LE(e, 1.0 + 1e-6);
  }
}

TEST(Jz, NoOverflowAtLargeArgument) {
  const FockSpace s(required_cutoff(40.0));
  const Operator jz = jz_operator(s, {40.0, std::nullopt, 0.0});
  EXPECT_TRUE(jz.matrix().allFinite());
  const CodeParams p = CodeParams::real(40.0, 0.0);
  EXPECT_GT(expectation(logical_basis(s, p).zero, jz).real(), 0.99);
}

TEST(Jz, SeriesConvergenceInQmax) {
  const CodeParams p = CodeParams::real(4.0, 0.0);
  const FockSpace s(required_cutoff(p.mean_photons()));
  const Ket zero = logical_basis(s, p).zero;
  const double v20 = expectation(zero, logical_z(s, p, 20)).real();
  const double v22 = expectation(zero, logical_z(s, p, 22)).real();
  EXPECT_LT(std::abs(v22 - v20), 1e-10);
  const double full = expectation(zero, logical_z(s, p)).real();
  EXPECT_LT(std::abs(full - v20), 1e-10);
}

TEST(LogicalZ, ReducesToUnsqueezedSeries) {
  const CodeParams p = CodeParams::real(2.5, 0.0);
  const FockSpace s(required_cutoff(p.mean_photons()));
  const Matrix a = logical_z(s, p).matrix();
  const Matrix b = jz_operator(s, {std::norm(p.alpha), std::nullopt, 0.0}).matrix();
  EXPECT_EQ((a - b).cwiseAbs().maxCoeff(), 0.0);
}

TEST(LogicalZ, SqueezedEigenActionAndMirror) {
  const CodeParams p = CodeParams::real(2.0, 0.35);
  const FockSpace s(required_cutoff(p.mean_photons()));
  const Operator jz = logical_z(s, p);
  const LogicalBasis lb = logical_basis(s, p);
  const double z0 = expectation(lb.zero, jz).real();
  const double z1 = expectation(lb.one, jz).real();
  EXPECT_GT(z0, 0.99);
  EXPECT_NEAR(z1, -z0, 1e-8);
  EXPECT_LT(jz.hermiticity_error(), 1e-12);
}

TEST(LogicalZ, WithinOnePercentOverGrid) {
  for (double a2 : {1.0, 2.0, 3.0, 4.0}) {
    for (double r : {0.0, 0.2, 0.5}) {
      const CodeParams p = CodeParams::real(a2, r);
      if (a2 * std::exp(2.0 * r) < 2.0) continue;
      const FockSpace s(required_cutoff(p.mean_photons()));
      const LogicalBasis lb = logical_basis(s, p);
      const Operator jz = logical_z(s, p);
      EXPECT_NEAR(expectation(lb.zero, jz).real(), 1.0, 1e-2) << a2 << " " << r;
      EXPECT_NEAR(expectation(lb.one, jz).real(), -1.0, 1e-2) << a2 << " " << r;
    }
  }
}

TEST(LogicalY, HermitianAndOffDiagonalInBasis) {
  const CodeParams p = CodeParams::real(3.0, 0.2);
  const FockSpace s(required_cutoff(p.mean_photons()));
  const Operator jy = logical_y(s, p);
  EXPECT_LT(jy.hermiticity_error(), 1e-12);
  const LogicalBasis lb = logical_basis(s, p);
  EXPECT_NEAR(expectation(lb.zero, jy).real(), 0.0, 1e-10);
  const Ket plus_i = (lb.zero + kI * lb.one).normalized();
  EXPECT_GT(std::abs(expectation(plus_i, jy).real()), 0.95);
}

TEST(LogicalZ, RejectsComplexCodes) {
  const FockSpace s(50);
  EXPECT_THROW(logical_z(s, CodeParams{{1.0, 1.0}, 0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(logical_z(s, CodeParams{{1.0, 0.0}, 0.2, 0.3}), InvalidArgument);
}

}  // namespace
}  // namespace scq
