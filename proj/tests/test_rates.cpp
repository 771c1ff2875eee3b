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
#include "scq/observables.hpp"
#include "scq/rates.hpp"

namespace scq {
namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

TEST(FitDecay, ExactExponential) {
  const auto t = linspace(0.0, 200.0, 101);
  std::vector<double> v;
  for (double x : t) v.push_back(std::exp(-0.01 * x));
  RateFitOptions o;
  o.t_start = 2.5;
  const RateFit f = fit_decay(t, v, o);
  EXPECT_NEAR(f.rate, 0.01, 1e-6);
  EXPECT_FALSE(f.floor_clipped);
  EXPECT_GE(f.t_start, 2.5);
  EXPECT_LE(f.t_end, 200.0);
  EXPECT_EQ(f.n_points, 99);
}

TEST(FitDecay, WindowStopsBelowFivePercent) {
  const auto t = linspace(0.0, 10.0, 201);
  std::vector<double> v;
  for (double x : t) v.push_back(std::exp(-0.5 * x));
  const RateFit f = fit_decay(t, v, {});
  EXPECT_NEAR(f.rate, 0.5, 1e-9);
  EXPECT_LE(f.t_end, -std::log(0.05) / 0.5 + 1e-12);
}

TEST(FitDecay, ConstantIsClippedAtFloor) {
  const auto t = linspace(0.0, 50.0, 51);
  const std::vector<double> v(51, 0.8);
  const RateFit f = fit_decay(t, v, {});
  EXPECT_TRUE(f.floor_clipped);
  EXPECT_EQ(f.rate, kRateFloor);
  EXPECT_LE(f.std_error, 1e-15);
}

TEST(FitDecay, SlowRateRecoveredFromNearlyFlatData) {
  const auto t = linspace(0.0, 1000.0, 101);
  std::vector<double> v;
  for (double x : t) v.push_back(std::exp(-3e-10 * x));
  const RateFit f = fit_decay(t, v, {});
  EXPECT_NEAR(f.rate / 3e-10, 1.0, 1e-4);
}

TEST(FitDecay, Errors) {
  const auto t = linspace(0.0, 1.0, 11);
  std::vector<double> v(11, -1.0);
  EXPECT_THROW(fit_decay(t, v, {}), FitError);
  std::vector<double> fast;
  for (double x : t) fast.push_back(std::exp(-100.0 * x));
  EXPECT_THROW(fit_decay(t, fast, {}), FitError);
  RateFitOptions late;
  late.t_start = 5.0;
  EXPECT_THROW(fit_decay(t, std::vector<double>(11, 1.0), late), FitError);
  EXPECT_THROW(fit_decay(t, std::vector<double>(10, 1.0), {}), DimensionError);
}

TEST(ExtractRate, ReadsNamedObservable) {
  const FockSpace s(4);
  MasterEquation me(Operator::zero(s));
  me.add_dissipator(annihilation(s), 0.02);
  EvolutionConfig c;
  c.t_final = 100.0;
  c.sample_count = 51;
  const Trajectory tr = evolve(me, DensityMatrix::pure(Ket::basis(s, 1)), c, {{"n", number(s)}});
  const RateFit f = extract_rate(tr, "n", {});
  EXPECT_NEAR(f.rate, 0.02, 1e-8);
  EXPECT_THROW(extract_rate(tr, "missing", {}), InvalidArgument);
}

TEST(ConfinementTime, QuarterInverseAlphaSq) {
  EXPECT_DOUBLE_EQ(confinement_time(CodeParams::real(2.0, 0.3)), 0.125);
  EXPECT_THROW(confinement_time(CodeParams{}), InvalidArgument);
}

TEST(PhaseFlipMatrixElement, FormulaValues) {
  EXPECT_NEAR(phase_flip_matrix_element(CodeParams::real(4.0, 0.0)), 3.994636197267896, 1e-12);
  EXPECT_NEAR(phase_flip_matrix_element(CodeParams::real(2.0, 0.35)), 1.9948890314534483,
              1e-12);
  EXPECT_NEAR(phase_flip_matrix_element(CodeParams::real(3.0, 0.2)), 2.997680310108279, 1e-12);
  EXPECT_NEAR(phase_flip_matrix_element_exact(CodeParams::real(4.0, 0.0)), 4.00268460160673,
              1e-12);
  EXPECT_NEAR(phase_flip_matrix_element_exact(CodeParams::real(2.0, 0.35)), 2.002558541466633,
              1e-12);
}

TEST(PhaseFlipMatrixElement, ExactFormMatchesConstructedKets) {
  const CodeParams p = CodeParams::real(3.0, 0.2);
  const FockSpace s(required_cutoff(p.mean_photons()));
  const Ket plus = squeezed_cat(s, p, Parity::kEven).ket;
  const Ket minus = squeezed_cat(s, p, Parity::kOdd).ket;
  const double direct = std::norm(plus.inner(annihilation(s) * minus));
  EXPECT_NEAR(direct, 3.0011603326040874, 1e-6);
  EXPECT_NEAR(phase_flip_matrix_element_exact(p), direct, 1e-6);
  // The printed form drops the normalization ratio and sits 1e-3 lower.
  EXPECT_NEAR(phase_flip_matrix_element(p), direct, 5e-3);
}

TEST(PhaseFlipMatrixElement, ApproachesAlphaSqWithSqueezing) {
  for (double a2 : {2.0, 3.0, 4.0}) {
    double prev = std::abs(phase_flip_matrix_element(CodeParams::real(a2, 0.0)) - a2);
    for (double r : {0.1, 0.2, 0.3, 0.4, 0.5}) {
      const CodeParams p = CodeParams::real(a2, r);
      const double dev = std::abs(phase_flip_matrix_element(p) - a2);
      EXPECT_LE(dev, prev + 1e-15) << a2 << " " << r;
      if (std::sqrt(a2) * std::exp(r) >= 3.0) EXPECT_LT(dev / a2, 1e-2);
      prev = dev;
    }
  }
}

TEST(RateModels, DephasingValuesAndReduction) {
  EXPECT_NEAR(gamma_dephasing_model(CodeParams::real(2.0, 0.35), 1.0), 4.029246435433355e-3,
              1e-15);
  for (double a2 : {1.0, 2.5, 4.0}) {
    EXPECT_NEAR(gamma_dephasing_model(CodeParams::real(a2, 0.0), 2e-3),
                2e-3 * a2 / std::sinh(2.0 * a2), 1e-17);
  }
}

TEST(RateModels, GainValuesAndReduction) {
  EXPECT_NEAR(gamma_gain_model(CodeParams::real(4.0, 0.3), 1.0), 1.312558005214893e-6, 1e-18);
  for (double a2 : {1.0, 2.5, 4.0}) {
    EXPECT_NEAR(gamma_gain_model(CodeParams::real(a2, 0.0), 1e-3),
                1e-3 / std::sinh(2.0 * a2), 1e-18);
  }
}

TEST(RateModels, NoOverflowAtLargeBeta) {
  const double g = gamma_gain_model(CodeParams::real(400.0, 0.5), 1.0);
  EXPECT_TRUE(std::isfinite(g));
  EXPECT_GE(g, 0.0);
}

TEST(FitSuppression, SyntheticExponent) {
  std::vector<RatePoint> pts;
  for (double a2 : {2.0, 2.5, 3.0, 4.0, 5.0}) pts.push_back({a2, 10.0 * std::exp(-2.0 * a2)});
  const SuppressionFit f = fit_suppression(pts);
  EXPECT_NEAR(f.gamma, 2.0, 1e-6);
  EXPECT_NEAR(f.prefactor, 10.0, 1e-6);
  EXPECT_EQ(f.points_used, 5);
}

TEST(FitSuppression, DropsClippedAndOutOfRange) {
  std::vector<RatePoint> pts;
  for (double a2 : {1.0, 2.0, 3.0, 4.0, 6.0}) pts.push_back({a2, std::exp(-3.0 * a2)});
  pts.push_back({4.5, kRateFloor, true});
  const SuppressionFit f = fit_suppression(pts);
  EXPECT_EQ(f.points_used, 3);
  EXPECT_NEAR(f.gamma, 3.0, 1e-9);
  pts.erase(pts.begin() + 2);
  EXPECT_THROW(fit_suppression(pts), FitError);
}

TEST(RateCutoff, CoversSqueezedTail) {
  const CodeParams p = CodeParams::real(3.0, 0.5);
  const int n = rate_cutoff(p);
  EXPECT_GE(n, required_cutoff(p.mean_photons()));
  const double s = std::sinh(0.5), c = std::cosh(0.5);
  const double sigma = std::sqrt(3.0 * std::exp(1.0) + 2.0 * s * s * c * c + 1.0);
  EXPECT_EQ(n, int(std::ceil(p.mean_photons() + 8.0 * sigma + 20.0)));
}

TEST(FirstCrossing, InterpolatesInLogLog) {
  const std::vector<double> x{1e-3, 1e-2, 1e-1};
  EXPECT_NEAR(first_crossing(x, {1.0, 1.0, 1.0}, {0.1, 10.0, 100.0}), std::pow(10.0, -2.5),
              1e-12);
  EXPECT_EQ(first_crossing(x, {1.0, 1.0, 1.0}, {0.5, 0.5, 0.5}), -1.0);
  EXPECT_EQ(first_crossing(x, {1.0, 1.0, 1.0}, {2.0, 0.5, 0.5}), 1e-3);
  EXPECT_THROW(first_crossing(x, {1.0}, {1.0}), DimensionError);
}

TEST(Scenario, NoiseKnobs) {
  NoiseParams base;
  base.kappa1 = 1e-3;
  EXPECT_DOUBLE_EQ(scenario_noise(Scenario::kLoss, base, 5e-3).kappa_minus(), 5e-3);
  EXPECT_DOUBLE_EQ(scenario_noise(Scenario::kDephasing, base, 2e-4).kappa_phi, 2e-4);
  EXPECT_DOUBLE_EQ(scenario_noise(Scenario::kGain, base, 0.1).kappa_plus(), 1e-4);
  EXPECT_DOUBLE_EQ(scenario_noise(Scenario::kKerr, base, 0.02).kerr, 0.02);
  EXPECT_THROW(scenario_noise(Scenario::kGain, base, -0.1), InvalidArgument);
  EXPECT_STREQ(knob_name(Scenario::kDephasing), "kappa_phi/kappa2");
}

TEST(StudyGrid, Validation) {
  StudyGrid g;
  EXPECT_THROW(g.validate(), InvalidArgument);
  g.alpha_sq = {2.0};
  g.r = {-0.1};
  g.knob = {1e-3};
  EXPECT_THROW(g.validate(), InvalidArgument);
  g.r = {0.0};
  g.threads = 0;
  EXPECT_THROW(g.validate(), InvalidArgument);
  g.threads = 1;
  EXPECT_NO_THROW(g.validate());
}

// Simulation checks at desk scale.

TEST(MeasureRates, PhaseFlipFollowsCatScaling) {
  RateRunOptions o;
  o.bit_flip = false;
  const PointRates pr = measure_rates(CodeParams::real(2.0, 0.0), NoiseParams::loss(5e-3), o);
  EXPECT_NEAR(pr.phase.rate / 2.0e-2, 1.0, 0.2);
  EXPECT_EQ(pr.cutoff, rate_cutoff(CodeParams::real(2.0, 0.0)));
}

TEST(MeasureRates, PhaseFlipMatchesSlowestLiouvillianMode) {
  // Parity-decay eigenvalue of the dense Liouvillian at a2 = 2, r = 0, N = 36.
  RateRunOptions o;
  o.bit_flip = false;
  const PointRates pr = measure_rates(CodeParams::real(2.0, 0.0), NoiseParams::loss(1e-3), o);
  EXPECT_NEAR(pr.phase.rate / 4.0001994940e-3, 1.0, 2e-3);
}

TEST(MeasureRates, LinearInLoss) {
  const CodeParams code = CodeParams::real(2.0, 0.2);
  const PointRates one = measure_rates(code, NoiseParams::loss(1e-3));
  const PointRates two = measure_rates(code, NoiseParams::loss(2e-3));
  EXPECT_NEAR(two.bit.rate / one.bit.rate, 2.0, 0.2);
  EXPECT_NEAR(two.phase.rate / one.phase.rate, 2.0, 0.2);
}

TEST(MeasureRates, InsensitiveToWindowStart) {
  const CodeParams code = CodeParams::real(2.0, 0.0);
  const NoiseParams noise = NoiseParams::loss(1e-3);
  const PointRates mid = measure_rates(code, noise);
  ASSERT_GT(mid.bit.rate, 1e-10);
  for (double factor : {5.0, 15.0}) {
    RateRunOptions o;
    o.transient_factor = factor;
    const PointRates pr = measure_rates(code, noise, o);
    EXPECT_NEAR(pr.bit.rate / mid.bit.rate, 1.0, 0.05) << factor;
    EXPECT_NEAR(pr.phase.rate / mid.phase.rate, 1.0, 0.05) << factor;
  }
}

TEST(MeasureRates, BitFlipDecreasesWithSqueezing) {
  double prev = 1.0;
  for (double r : {0.0, 0.2, 0.35}) {
    RateRunOptions o;
    o.phase_flip = false;
    const PointRates pr = measure_rates(CodeParams::real(2.0, r), NoiseParams::loss(1e-3), o);
    EXPECT_LT(pr.bit.rate, prev) << r;
    EXPECT_GE(pr.bit.rate, kRateFloor);
    prev = pr.bit.rate;
  }
}

TEST(MeasureRates, RejectsComplexCodes) {
  EXPECT_THROW(measure_rates(CodeParams{{1.0, 1.0}, 0.0, 0.0}, NoiseParams::loss(1e-3)),
               InvalidArgument);
}

TEST(Study, RowOrderIndependentOfThreads) {
  StudyGrid g;
  g.scenario = Scenario::kDephasing;
  g.alpha_sq = {2.0, 1.5};
  g.r = {0.0};
  g.knob = {1e-3, 5e-3};
  g.base = NoiseParams::loss(5e-3);
  g.run.phase_flip = false;
  const auto serial = study(g);
  g.threads = 3;
  const auto pooled = study(g);
  ASSERT_EQ(serial.size(), 4u);
  ASSERT_EQ(pooled.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(serial[i].alpha_sq, pooled[i].alpha_sq);
    EXPECT_EQ(serial[i].knob_value, pooled[i].knob_value);
    EXPECT_EQ(serial[i].rates.bit.rate, pooled[i].rates.bit.rate);
    EXPECT_EQ(serial[i].knob_name, "kappa_phi/kappa2");
  }
  EXPECT_EQ(serial[0].knob_value, 1e-3);
  EXPECT_EQ(serial[0].alpha_sq, 1.5);
  EXPECT_EQ(serial[1].alpha_sq, 2.0);
  EXPECT_GT(serial[2].rates.bit.rate, serial[0].rates.bit.rate);
}

// With pure dephasing the suppression exponent tends to 2, but the |beta|^2
// prefactor of the model pulls a plain fit over 2 <= alpha^2 <= 5 to ~1.69.
TEST(MeasureRatesSlow, DephasingDominatedExponent) {
  NoiseParams n;
  n.kappa_phi = 5e-3;
  RateRunOptions o;
  o.phase_flip = false;
  std::vector<RatePoint> sim, model, scaled;
  for (double a2 : {2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0}) {
    const CodeParams code = CodeParams::real(a2, 0.0);
    const PointRates pr = measure_rates(code, n, o);
    ASSERT_FALSE(pr.bit.floor_clipped);
    EXPECT_NEAR(pr.bit.rate / gamma_dephasing_model(code, n.kappa_phi), 1.0, 0.1) << a2;
    sim.push_back({a2, pr.bit.rate});
    model.push_back({a2, gamma_dephasing_model(code, n.kappa_phi)});
    scaled.push_back({a2, pr.bit.rate / std::norm(beta(code))});
  }
  EXPECT_NEAR(fit_suppression(sim).gamma, fit_suppression(model).gamma, 0.05);
  EXPECT_NEAR(fit_suppression(scaled).gamma, 2.0, 0.15 * 2.0);
}

}  // namespace
}  // namespace scq
