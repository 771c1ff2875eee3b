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

#include "scq/observables.hpp"

#include <cmath>
#include <vector>

#include "scq/special_functions.hpp"

namespace scq {

namespace {

constexpr double kConvergenceRatio = 1e-14;

// Conjugates a padded-space operator by S(r) and crops to `space`.
Operator squeezed_frame(FockSpace space, const Matrix& padded, double r) {
  const int n = space.dim();
  if (r == 0.0) return Operator(space, padded.topLeftCorner(n, n));
  const FockSpace big(int(padded.rows()));
  const Matrix s = squeeze(big, r).matrix();
  const Matrix full = s * padded * s.adjoint();
  return Operator(space, full.topLeftCorner(n, n));
}

void require_real_code(const CodeParams& code, const char* what) {
  code.validate();
  if (code.alpha.imag() != 0.0 || !(code.alpha.real() > 0.0) ||
      code.phi != 0.0) {
    throw InvalidArgument(std::string(what) +
                          ": requires real alpha > 0 and phi = 0");
  }
}

}  // namespace

Operator parity_jx(FockSpace space) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (int n = 0; n < space.dim(); ++n) m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return Operator(space, std::move(m));
}

void JzConfig::validate() const {
  if (!(beta_sq > 0.0) || !std::isfinite(beta_sq)) {
    throw InvalidArgument("JzConfig: beta_sq must be finite and > 0");
  }
  if (q_max && *q_max < 1) throw InvalidArgument("JzConfig: q_max must be >= 1");
  if (!std::isfinite(squeezing_r)) {
    throw InvalidArgument("JzConfig: squeezing_r must be finite");
  }
}

int full_q_max(FockSpace space) { return space.dim() / 2; }

Operator j_plus_minus(FockSpace space, const JzConfig& cfg) {
  cfg.validate();
  const int n = space.dim();
  const int full = full_q_max(space);
  const int q_max = cfg.q_max.value_or(full);
  const double x = cfg.beta_sq;

  const std::vector<double> log_i = log_bessel_i_all(q_max, x);
  // ln sqrt(2x / sinh 2x)
  const double log_norm = 0.5 * (std::log(2.0 * x) - log_sinh(2.0 * x));
  if (q_max < full && log_i[q_max] - log_i[0] - std::log(2.0 * q_max + 1.0) >
                          std::log(kConvergenceRatio)) {
    throw InvalidArgument(
        "j_plus_minus: q_max too small for beta_sq; the last series term is "
        "not below 1e-14 of the first (leave q_max unset to cover the space)");
  }

  Matrix m = Matrix::Zero(n, n);
  for (int q = -q_max; q <= q_max; ++q) {
    const int aq = std::abs(q);
    const double sign = (aq % 2 == 0) ? 1.0 : -1.0;
    const double log_coeff = log_i[aq] + log_norm - std::log(std::abs(2.0 * q + 1.0));
    const double coeff_sign = sign * (2 * q + 1 > 0 ? 1.0 : -1.0);
    if (q >= 0) {
      // <p| J^(q) |p + 2q + 1> for even p.
      for (int p = 0; p + 2 * q + 1 < n; p += 2) {
        const double log_elem =
            log_double_factorial(p - 1) - log_double_factorial(p + 2 * q) +
            0.5 * (std::lgamma(p + 2.0 * q + 2.0) - std::lgamma(p + 1.0));
        m(p, p + 2 * q + 1) += coeff_sign * std::exp(log_coeff + log_elem);
      }
    } else {
      // <m + 2Q - 1| J^(q) |m> for odd m, Q = |q|.
      for (int k = 1; k + 2 * aq - 1 < n; k += 2) {
        const double log_elem =
            log_double_factorial(k) - log_double_factorial(k + 2 * aq - 1) +
            0.5 * (std::lgamma(k + 2.0 * aq) - std::lgamma(k + 1.0));
        m(k + 2 * aq - 1, k) += coeff_sign * std::exp(log_coeff + log_elem);
      }
    }
  }
  if (!m.allFinite()) {
    throw ConsistencyError("j_plus_minus: non-finite series entries");
  }
  return Operator(space, std::move(m));
}

Operator jz_operator(FockSpace space, const JzConfig& cfg) {
  const Operator j = j_plus_minus(space, cfg);
  return j + j.dagger();
}

Operator logical_z(FockSpace space, const CodeParams& code,
                   std::optional<int> q_max) {
  require_real_code(code, "logical_z");
  require_cutoff(space, code.mean_photons(), "logical_z");
  const double beta_sq = std::norm(code.alpha) * std::exp(2.0 * code.r);
  const FockSpace big = code.r == 0.0 ? space : FockSpace(padded_dim(space));
  const Matrix j = j_plus_minus(big, {beta_sq, q_max, code.r}).matrix();
  return squeezed_frame(space, j + j.adjoint(), code.r);
}

Operator logical_y(FockSpace space, const CodeParams& code,
                   std::optional<int> q_max) {
  require_real_code(code, "logical_y");
  require_cutoff(space, code.mean_photons(), "logical_y");
  const double beta_sq = std::norm(code.alpha) * std::exp(2.0 * code.r);
  const FockSpace big = code.r == 0.0 ? space : FockSpace(padded_dim(space));
  const Matrix j = j_plus_minus(big, {beta_sq, q_max, code.r}).matrix();
  return squeezed_frame(space, kI * (j - j.adjoint()), code.r);
}

}  // namespace scq
