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

#include "scq/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "scq/error.hpp"

namespace scq {

double double_factorial(int n) {
  if (n < -1) throw InvalidArgument("double_factorial: n must be >= -1");
  double out = 1.0;
  for (int k = n; k > 1; k -= 2) out *= k;
  return out;
}

double log_double_factorial(int n) {
  if (n < -1) throw InvalidArgument("log_double_factorial: n must be >= -1");
  if (n <= 0) return 0.0;
  if (n % 2 == 0) {
    const double h = n / 2;
    return h * std::numbers::ln2 + std::lgamma(h + 1.0);
  }
  const double h = (n + 1) / 2;
  return std::lgamma(n + 2.0) - h * std::numbers::ln2 - std::lgamma(h + 1.0);
}

double log_sinh(double x) {
  if (!(x > 0.0)) throw InvalidArgument("log_sinh: x must be > 0");
  if (x < 1.0) return std::log(std::sinh(x));
  return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
}

namespace {

// Power series; converges quickly for x < 1.
double log_bessel_series(int q, double x) {
  const double log_first = q * std::log(0.5 * x) - std::lgamma(q + 1.0);
  const double y = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= y / (double(k) * double(k + q));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return log_first + std::log(sum);
}

}  // namespace

std::vector<double> log_bessel_i_all(int q_max, double x) {
  if (q_max < 0) throw InvalidArgument("log_bessel_i_all: q_max must be >= 0");
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw InvalidArgument("log_bessel_i_all: x must be finite and > 0");
  }
  std::vector<double> out(q_max + 1);
  if (x < 1.0) {
    for (int q = 0; q <= q_max; ++q) out[q] = log_bessel_series(q, x);
    return out;
  }
  // Miller's backward recurrence I_{n-1} = I_{n+1} + (2n/x) I_n, normalized
  // with exp(x) = I_0 + 2 sum_{k>=1} I_k. Only ratios matter, so the
  // iterates are rescaled whenever they grow large.
  const int start = std::max(q_max, int(x)) + 30 +
                    int(4.0 * std::sqrt(std::max(double(q_max), x) + 1.0));
  std::vector<double> v(q_max + 1, 0.0);
  double next = 0.0;       // I_{n+1}
  double cur = 1e-300;     // I_n
  double norm = 0.0;       // 2 sum_{k>=1} I_k seen so far
  for (int n = start; n >= 1; --n) {
    const double prev = next + (2.0 * n / x) * cur;  // I_{n-1}
    norm += 2.0 * cur;
    if (n <= q_max) v[n] = cur;
    next = cur;
    cur = prev;
    if (cur > 1e250) {
      constexpr double kShrink = 1e-250;
      cur *= kShrink;
      next *= kShrink;
      norm *= kShrink;
      for (int k = n; k <= q_max; ++k) v[k] *= kShrink;
    }
  }
  v[0] = cur;
  norm += cur;
  const double log_norm = std::log(norm);
  for (int q = 0; q <= q_max; ++q) {
    out[q] = v[q] > 0.0 ? x + std::log(v[q]) - log_norm
                        : -std::numeric_limits<double>::infinity();
  }
  return out;
}

double log_bessel_i(int q, double x) {
  if (q < 0) throw InvalidArgument("log_bessel_i: order must be >= 0");
  return log_bessel_i_all(q, x).back();
}

}  // namespace scq
