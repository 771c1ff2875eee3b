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

#include "scq/error.hpp"
#include "scq/fock.hpp"
#include "scq/states.hpp"

namespace scq {
namespace {

double odd_population(const Ket& k) {
  double p = 0.0;
  for (int n = 1; n < k.dim(); n += 2) p += std::norm(k[n]);
  return p;
}

double even_population(const Ket& k) { return 1.0 - odd_population(k); }

double eigen_residual(const SqueezedCat& cat) {
  const Operator b = squeezed_mode(cat.ket.space(), cat.params.r, cat.params.phi);
  const Complex bb = beta(cat.params);
  return ((b * b) * cat.ket - (bb * bb) * cat.ket).norm();
}

TEST(Beta, ClosedForms) {
  EXPECT_EQ(beta(CodeParams{{1.3, -0.2}, 0.0, 0.4}), Complex(1.3, -0.2));
  EXPECT_NEAR(beta(CodeParams{{2.0, 0.0}, 0.5, 0.0}).real(), 3.2974425414002563, 1e-14);
  const Complex b = beta(CodeParams{{1.0, 1.0}, 0.3, 0.0});
  EXPECT_NEAR(std::abs(b - Complex(1.3498588075760031, 0.74081822068171787)), 0.0, 1e-14);
}

TEST(SqueezingDb, HalfNeper) { EXPECT_NEAR(squeezing_db(0.5), 4.3429448190325183, 1e-13); }

TEST(CodeParams, Validation) {
  EXPECT_THROW((CodeParams{{1.0, 0.0}, -0.1, 0.0}).validate(), InvalidArgument);
  EXPECT_THROW((CodeParams{{NAN, 0.0}, 0.1, 0.0}).validate(), InvalidArgument);
  EXPECT_NEAR(CodeParams::real(2.0, 0.5).mean_photons(), 2.0 + std::pow(std::sinh(0.5), 2),
              1e-14);
}

TEST(SqueezedState, Reductions) {
  const FockSpace s(60);
  const Ket vac = squeezed_state(s, CodeParams{});
  EXPECT_NEAR(std::abs(vac[0]), 1.0, 1e-14);
  EXPECT_LT(odd_population(vac), 1e-28);

  const Ket sv = squeezed_state(s, CodeParams{{0.0, 0.0}, 0.45, 0.7});
  for (int n = 1; n < s.dim(); n += 2) EXPECT_LT(std::abs(sv[n]), 1e-12);

  const Complex al(1.1, -0.6);
  const Ket coh = displacement(s, al) * Ket::basis(s, 0);
  EXPECT_GT(fidelity(squeezed_state(s, CodeParams{al, 0.0, 0.0}), coh), 1.0 - 1e-12);

  const CodeParams sq{{0.0, 0.0}, 0.3, 0.2};
  const Ket ref = squeeze(s, 0.3, 0.2) * Ket::basis(s, 0);
  EXPECT_GT(fidelity(squeezed_state(s, sq), ref), 1.0 - 1e-12);
}

TEST(SqueezedState, TwoPhotonCoherentEquivalence) {
  const FockSpace s(70);
  const CodeParams p{{1.5, 0.0}, 0.4, 0.0};
  const Ket lhs = squeezed_state(s, p);
  const Ket rhs = two_photon_coherent(s, beta(p), p.r, p.phi);
  EXPECT_GT(fidelity(lhs, rhs), 1.0 - 1e-9);

  const CodeParams q{{0.8, 0.5}, 0.25, 1.1};
  EXPECT_GT(fidelity(squeezed_state(s, q), two_photon_coherent(s, beta(q), q.r, q.phi)),
            1.0 - 1e-9);
}

TEST(SqueezedState, DisplacementSqueezeOperatorIdentity) {
  // D(alpha) S(xi) = S(xi) D(beta), compared on the block well below the cutoff.
  const int n = 120;
  const int block = 40;
  const FockSpace s(n);
  const CodeParams p{{1.0, 0.0}, 0.3, 0.0};
  const Matrix lhs = (displacement(s, p.alpha) * squeeze(s, p.r)).matrix();
  const Matrix rhs = (squeeze(s, p.r) * displacement(s, beta(p))).matrix();
  const double diff = (lhs - rhs).topLeftCorner(block, block).cwiseAbs().maxCoeff();
  EXPECT_LT(diff, 1e-8);
}

TEST(SqueezedState, EigenstateOfB) {
  const FockSpace s(120);
  const CodeParams p{{2.0, 0.0}, 0.3, 0.0};
  const Ket k = squeezed_state(s, p);
  const Operator b = squeezed_mode(s, p.r, p.phi);
  EXPECT_LT((b * k - beta(p) * k).norm(), 1e-7);
}

TEST(SqueezedState, CutoffGuard) {
  EXPECT_THROW(squeezed_state(FockSpace(20), CodeParams::real(4.0, 0.3)), CutoffError);
}

TEST(SqueezedCat, EigenstatesOfBSquared) {
  const CodeParams p{{2.0, 0.0}, 0.25, 0.0};
  const FockSpace s(required_cutoff(p.mean_photons()));
  EXPECT_LT(eigen_residual(squeezed_cat(s, p, Parity::kEven)), 1e-7);
  EXPECT_LT(eigen_residual(squeezed_cat(s, p, Parity::kOdd)), 1e-7);
}

// The truncated b^2 drops the a^dag^2 action on the two top levels, and the
// squeezed tail only falls off as tanh(r) per two levels, so the residual
// check carries 20 levels of headroom above the cutoff rule.
constexpr int kResidualHeadroom = 20;

TEST(SqueezedCat, EigenvalueAndParityGrid) {
  for (double a2 : {1.0, 2.0, 3.0, 4.0, 5.0, 6.0}) {
    for (double r : {0.0, 0.2, 0.35, 0.5}) {
      const CodeParams p = CodeParams::real(a2, r);
      const FockSpace s(required_cutoff(p.mean_photons()) + kResidualHeadroom);
      const SqueezedCat plus = squeezed_cat(s, p, Parity::kEven);
      const SqueezedCat minus = squeezed_cat(s, p, Parity::kOdd);
      EXPECT_LT(eigen_residual(plus), 1e-6) << a2 << " " << r;
      EXPECT_LT(eigen_residual(minus), 1e-6) << a2 << " " << r;
      EXPECT_LT(odd_population(plus.ket), 1e-10);
      EXPECT_LT(even_population(minus.ket), 1e-10);
      EXPECT_NEAR(plus.ket.norm(), 1.0, 1e-12);
      EXPECT_NEAR(minus.ket.norm(), 1.0, 1e-12);
    }
  }
}

TEST(SqueezedCat, NormConstantMatchesAnalytic) {
  for (double a2 : {0.5, 1.0, 2.0, 4.0}) {
    for (double r : {0.0, 0.3, 0.5}) {
      const CodeParams p = CodeParams::real(a2, r);
      const FockSpace s(required_cutoff(p.mean_photons()));
      for (Parity par : {Parity::kEven, Parity::kOdd}) {
        const double num = squeezed_cat(s, p, par).norm_constant;
        const double ana = analytic_norm_constant(p, par);
        EXPECT_NEAR(num * num / (ana * ana), 1.0, 1e-8) << a2 << " " << r;
      }
    }
  }
}

TEST(SqueezedCat, OrdinaryCatAtZeroSqueezing) {
  const FockSpace s(60);
  const Complex al(2.0, 0.0);
  const Ket plus = (displacement(s, al) * Ket::basis(s, 0) +
                    displacement(s, -al) * Ket::basis(s, 0)).normalized();
  const Ket minus = (displacement(s, al) * Ket::basis(s, 0) -
                     displacement(s, -al) * Ket::basis(s, 0)).normalized();
  const CodeParams p{al, 0.0, 0.0};
  EXPECT_GT(fidelity(squeezed_cat(s, p, Parity::kEven).ket, plus), 1.0 - 1e-10);
  EXPECT_GT(fidelity(squeezed_cat(s, p, Parity::kOdd).ket, minus), 1.0 - 1e-10);
}

TEST(SqueezedCat, ZeroAmplitudeLimits) {
  const FockSpace s(40);
  const CodeParams p{{0.0, 0.0}, 0.3, 0.0};
  const Ket sv = squeeze(s, 0.3) * Ket::basis(s, 0);
  const Ket s1 = squeeze(s, 0.3) * Ket::basis(s, 1);
  EXPECT_GT(fidelity(squeezed_cat(s, p, Parity::kEven).ket, sv), 1.0 - 1e-12);
  EXPECT_GT(fidelity(squeezed_cat(s, p, Parity::kOdd).ket, s1), 1.0 - 1e-12);
}

TEST(SqueezedCat, AnalyticOverlap) {
  const CodeParams p = CodeParams::real(1.0, 0.0);
  EXPECT_NEAR(analytic_overlap(p), 0.1353352832366127, 1e-15);
  const FockSpace s(40);
  const Ket plus = squeezed_state(s, p);
  const Ket minus = squeezed_state(s, CodeParams{-p.alpha, 0.0, 0.0});
  EXPECT_NEAR(minus.inner(plus).real(), 0.1353352832366127, 1e-12);
  const CodeParams q = CodeParams::real(1.0, 0.3);
  EXPECT_NEAR(analytic_overlap(q), std::exp(-2.0 * std::exp(0.6)), 1e-15);
}

TEST(SqueezedCat, DenseMeanPhotonNumbers) {
  const CodeParams p = CodeParams::real(3.0, 0.2);
  const FockSpace s(required_cutoff(p.mean_photons()));
  const Operator n = number(s);
  EXPECT_NEAR(expectation(squeezed_cat(s, p, Parity::kEven).ket, n).real(),
              3.039282120709863, 1e-8);
  EXPECT_NEAR(expectation(squeezed_cat(s, p, Parity::kOdd).ket, n).real(),
              3.0417905762600608, 1e-8);
}

TEST(LogicalBasis, OrthogonalAndLocalized) {
  {
    const CodeParams p = CodeParams::real(4.0, 0.0);
    const FockSpace s(required_cutoff(p.mean_photons()));
    const LogicalBasis lb = logical_basis(s, p);
    EXPECT_LT(std::abs(lb.zero.inner(lb.one)), 1e-12);
    EXPECT_GT(fidelity(lb.zero, squeezed_state(s, p)), 0.9999999);
  }
  {
    const CodeParams p{{2.0, 0.0}, 0.3, 0.0};
    const FockSpace s(required_cutoff(p.mean_photons()));
    const LogicalBasis lb = logical_basis(s, p);
    EXPECT_LT(std::abs(lb.zero.inner(lb.one)), 1e-12);
    EXPECT_GT(fidelity(lb.one, squeezed_state(s, CodeParams{-p.alpha, p.r, p.phi})),
              1.0 - 1e-6);
  }
}

}  // namespace
}  // namespace scq
