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

// Reference computations for the tests. Each one takes a route that shares
// no code with the library it is checking: Pade/Schur matrix logarithms,
// index-shuffle partial transposes, the spin-flip concurrence, quadrature.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <complex>

#include "ree/qmat.hpp"

namespace oracle {

using ree::cplx;
using ree::Mat4;

inline Eigen::MatrixXcd dyn(const Mat4& m) { return Eigen::MatrixXcd(m); }

inline Mat4 logm(const Mat4& m) { return Mat4(dyn(m).log()); }

// S(rho || sigma) in bits for full-rank sigma and rho via matrix logarithms.
// A rank-deficient rho is handled by adding eps I and extrapolating.
inline double relative_entropy_bits(const Mat4& rho, const Mat4& sigma) {
    auto at = [&](double eps) {
        const Mat4 r = (rho + eps * Mat4::Identity()) / (1.0 + 4 * eps);
        return (r * (logm(r) - logm(sigma))).trace().real() / std::log(2.0);
    };
    Eigen::SelfAdjointEigenSolver<Mat4> es(rho);
    if (es.eigenvalues()(0) > 1e-9) return at(0.0);
    // r log r is not analytic at 0; use the spectral form for the rho part.
    double s_rho = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double l = es.eigenvalues()(i);
        if (l > 1e-300) s_rho += l * std::log2(l);
    }
    return s_rho - (rho * logm(sigma)).trace().real() / std::log(2.0);
}

// (i a),(j b) -> (i b),(j a), written as four 2x2 block transposes.
inline Mat4 partial_transpose_blocks(const Mat4& m) {
    Mat4 out;
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj) out.block<2, 2>(2 * bi, 2 * bj) = m.block<2, 2>(2 * bi, 2 * bj).transpose();
    return out;
}

// Wootters: sqrt of eigenvalues of rho (sy x sy) rho* (sy x sy), non-Hermitian route.
inline double concurrence_spin_flip(const Mat4& rho) {
    Mat4 yy = Mat4::Zero();
    yy(0, 3) = -1;
    yy(3, 0) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    const Mat4 r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Mat4> es(r);
    std::array<double, 4> l{};
    for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(es.eigenvalues()(i).real(), 0.0));
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

// D log[sigma](h) by a central difference of matrix logarithms.
inline Mat4 log_derivative_fd(const Mat4& sigma, const Mat4& h, double step = 1e-5) {
    return (logm(sigma + step * h) - logm(sigma - step * h)) / (2 * step);
}

// int_0^inf (sigma + z)^-1 rho (sigma + z)^-1 dz with z = u / (1 - u) and
// Gauss-Legendre panels on u in [0, 1).
inline Mat4 resolvent_integral(const Mat4& sigma, const Mat4& rho, int panels = 400) {
    static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                 0.9061798459386640};
    static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                                 0.2369268850561891};
    Mat4 acc = Mat4::Zero();
    for (int p = 0; p < panels; ++p) {
        // cluster panels toward u = 1 where the substitution is steep
        const double a = 1.0 - std::pow(1.0 - double(p) / panels, 3.0);
        const double b = 1.0 - std::pow(1.0 - double(p + 1) / panels, 3.0);
        for (int k = 0; k < 5; ++k) {
            const double u = 0.5 * (a + b) + 0.5 * (b - a) * gx[k];
            const double z = u / (1.0 - u);
            const double jac = 1.0 / ((1.0 - u) * (1.0 - u));
            const Mat4 inv = (sigma + z * Mat4::Identity()).inverse();
            acc += 0.5 * (b - a) * gw[k] * jac * inv * rho * inv;
        }
    }
    return acc;
}

// min eig of sigma - x g on a fine grid, returning the last feasible x.
inline double x_max_scan(const Mat4& sigma, const Mat4& g, double hi, int steps = 200000) {
    double last = 0.0;
    for (int k = 1; k <= steps; ++k) {
        const double x = hi * k / steps;
        Eigen::SelfAdjointEigenSolver<Mat4> es(Mat4(sigma - x * g));
        if (es.eigenvalues()(0) < -1e-12) break;
        last = x;
    }
    return last;
}

}  // namespace oracle
