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

#include "scq/fock.hpp"

namespace scq {

/// Code parameters of a squeezed cat: displacement alpha and squeezing
/// xi = r e^{i phi}.
struct CodeParams {
  Complex alpha{0.0, 0.0};
  double r = 0.0;
  double phi = 0.0;

  static CodeParams real(double alpha_sq, double r) {
    return {Complex(std::sqrt(alpha_sq), 0.0), r, 0.0};
  }
  void validate() const;
  /// |alpha|^2 + sinh^2(r): mean photon number of D(alpha)S(xi)|0>.
  double mean_photons() const;
};

/// beta = alpha cosh(r) + alpha^* e^{-i phi} sinh(r), the eigenvalue of the
/// squeezed mode operator b on |alpha, xi>.
Complex beta(const CodeParams& params);

/// r expressed in decibel: 20 r / ln(10).
double squeezing_db(double r);

/// |alpha, xi> = D(alpha) S(xi) |0>.
Ket squeezed_state(FockSpace space, const CodeParams& params);

/// |alpha>_xi = S(xi) D(alpha) |0>.
Ket two_photon_coherent(FockSpace space, Complex alpha, double r,
                        double phi = 0.0);

enum class Parity { kEven, kOdd };

struct SqueezedCat {
  CodeParams params;
  Parity parity = Parity::kEven;
  Ket ket;
  /// N^pm: norm of |alpha, xi> +- |-alpha, xi> before normalization.
  double norm_constant = 0.0;
};

/// |C^pm> = (|alpha, xi> +- |-alpha, xi>) / N^pm. For alpha = 0 and odd
/// parity the continuous limit S(xi)|1> is returned.
SqueezedCat squeezed_cat(FockSpace space, const CodeParams& params,
                         Parity parity);

/// Analytic overlap <-alpha, xi|alpha, xi> = exp(-2 |beta|^2).
double analytic_overlap(const CodeParams& params);
/// Analytic N^pm = sqrt(2 (1 +- exp(-2 |beta|^2))).
double analytic_norm_constant(const CodeParams& params, Parity parity);

struct LogicalBasis {
  Ket zero;
  Ket one;
};

/// |0> = (|C+> + |C->)/sqrt(2), |1> = (|C+> - |C->)/sqrt(2).
LogicalBasis logical_basis(FockSpace space, const CodeParams& params);

/// Dimension used internally when building states so that truncation of the
/// generators does not contaminate the retained levels.
int padded_dim(FockSpace space);

}  // namespace scq
