// Copyright 2026 The ree2q Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Divided differences of the natural logarithm. These are the kernels of the
// Frechet derivatives of log(X) in X's eigenbasis.

#include <algorithm>
#include <cmath>
#include <limits>

namespace ree {

/// (ln a - ln b) / (a - b), with the confluent value 1/a at a == b.
/// Requires a, b > 0.
inline double log_divided_difference(double a, double b) {
    if (a == b) return 1.0 / a;
    const double diff = a - b;
    const double ratio = diff / b;
    if (std::abs(ratio) < 0.5) return std::log1p(ratio) / diff;
    return (std::log(a) - std::log(b)) / diff;
}

/// Logarithmic mean (a - b) / (ln a - ln b), equal to a at a == b.
/// Extended continuously by 0 when either argument is zero.
inline double log_mean(double a, double b) {
    if (a <= 0.0 || b <= 0.0) return 0.0;
    return 1.0 / log_divided_difference(a, b);
}

/// Second divided difference ln[a, b, c]; symmetric in its arguments.
inline double log_second_divided_difference(double a, double b, double c) {
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    // now a >= b >= c > 0
    constexpr double close = 1e-6;
    if (a - c <= close * a) {
        const double m = (a + b + c) / 3.0;
        return -0.5 / (m * m);
    }
    if (a - b <= close * a) {
        // ln[a, a, c] = (ln[a, c] - 1/a) / (c - a)
        const double m = 0.5 * (a + b);
        return (log_divided_difference(m, c) - 1.0 / m) / (c - m);
    }
    return (log_divided_difference(a, b) - log_divided_difference(b, c)) / (a - c);
}

}  // namespace ree
