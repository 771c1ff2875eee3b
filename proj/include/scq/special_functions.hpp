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

#include <vector>

namespace scq {

/// n!! for n >= -1, with 0!! = (-1)!! = 1. Exact while the result fits in a
/// double mantissa; overflows to infinity beyond n ~ 300.
double double_factorial(int n);

/// ln(n!!) for n >= -1, through lgamma.
double log_double_factorial(int n);

/// ln I_q(x) for integer q >= 0 and x > 0. Relative accuracy ~1e-13 and no
/// overflow for x up to ~1e5.
double log_bessel_i(int q, double x);

/// ln I_q(x) for q = 0..q_max from a single backward recurrence.
std::vector<double> log_bessel_i_all(int q_max, double x);

/// ln sinh(x) for x > 0 without overflow.
double log_sinh(double x);

}  // namespace scq
