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

#pragma once

#include <optional>

#include "scq/fock.hpp"
#include "scq/states.hpp"

namespace scq {

/// Parity operator J_++ - J_--, the logical sigma_X of cat-family codes.
Operator parity_jx(FockSpace space);

struct JzConfig {
  /// Argument of the J_{+-} series; beta^2 = alpha^2 e^{2r} in the squeezed
  /// frame.
  double beta_sq = 0.0;
  /// Series truncation. Unset means every term that fits in the space, which
  /// makes the truncation exact.
  std::optional<int> q_max;
  double squeezing_r = 0.0;

  void validate() const;
};

/// Series for the odd-to-even block J_{+-} of the approximate sign operator
/// sign(a + a^dag):
///   sqrt(2x / sinh 2x) sum_q (-1)^q / (2q + 1) I_|q|(x) J^(q),  x = beta^2.
/// An explicit q_max must either cover the space or leave a last coefficient
/// below 1e-14 of the first.
Operator j_plus_minus(FockSpace space, const JzConfig& cfg);

/// J_{+-} + J_{+-}^dag.
Operator jz_operator(FockSpace space, const JzConfig& cfg);

/// Logical sigma_Z of the squeezed cat code: S(r) J_z(beta^2) S^dag(r) with
/// beta^2 = alpha^2 e^{2r}. Requires real alpha > 0 and phi = 0.
Operator logical_z(FockSpace space, const CodeParams& code,
                   std::optional<int> q_max = std::nullopt);

/// Logical sigma_Y, i S (J_{+-} - J_{+-}^dag) S^dag, under the same rules.
Operator logical_y(FockSpace space, const CodeParams& code,
                   std::optional<int> q_max = std::nullopt);

/// The number of series terms on each side of q = 0 that have nonzero
/// entries in a space of this dimension.
int full_q_max(FockSpace space);

}  // namespace scq
