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

// Two-qubit entanglement and nonlocality measures.

#include <array>
#include <optional>

#include "ree/bell.hpp"
#include "ree/qmat.hpp"

namespace ree {

namespace pauli {
inline Mat2 matrix(int a) {
    Mat2 m = Mat2::Zero();
    switch (a) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw Error(ErrorCode::invalid_parameter, "Pauli index must be 0..3");
    }
    return m;
}
}  // namespace pauli

/// H2(t) = -t log2 t - (1-t) log2 (1-t)
inline double binary_entropy(double t) { return -xlog2x(t) - xlog2x(1.0 - t); }

/// Wootters concurrence max(0, mu1 - mu2 - mu3 - mu4), mu the descending
/// square roots of the eigenvalues of rho (Y(x)Y) rho* (Y(x)Y). These are
/// the singular values of sqrt(rho) (Y(x)Y) sqrt(rho)*, which avoids taking
/// square roots of eigenvalues near zero.
inline double concurrence(const DensityMatrix& rho) {
    const Mat4 yy = kron(pauli::matrix(2), pauli::matrix(2));
    const auto s = eig_hermitian<4>(rho.mat());
    const Mat4 root = apply_function<4>(s, [](double l) { return std::sqrt(std::max(l, 0.0)); });
    Eigen::JacobiSVD<Mat4> svd(Mat4(root * yy * root.conjugate()));
    const auto mu = svd.singularValues();
    return std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
}

/// Negativity normalized as 2 max(0, -min eig rho^T_B), so that a
/// Bell-diagonal state with largest weight lambda1 has N = 2 lambda1 - 1.
inline double negativity(const DensityMatrix& rho) {
    return 2.0 * std::max(0.0, -min_eigenvalue<4>(partial_transpose(rho.mat())));
}

/// Correlation matrix T_ab = tr[rho (s_a (x) s_b)], a, b = x, y, z.
inline Eigen::Matrix3d correlation_matrix(const DensityMatrix& rho) {
    Eigen::Matrix3d t;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            t(a, b) = (rho.mat() * kron(pauli::matrix(a + 1), pauli::matrix(b + 1))).trace().real();
    return t;
}

/// Horodecki parameter M: sum of the two largest eigenvalues of T^T T.
/// The CHSH inequality is violated iff M > 1.
inline double horodecki_m(const DensityMatrix& rho) {
    const Eigen::Matrix3d t = correlation_matrix(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> s(t.transpose() * t, Eigen::EigenvaluesOnly);
    return s.eigenvalues()(1) + s.eigenvalues()(2);
}

/// E_R = 1 - H2(lambda1) for lambda1 = max r_i >= 1/2, else 0.
inline double ree_bell_diagonal(const std::array<double, 4>& r) {
    double total = 0.0;
    for (double v : r) {
        if (v < -1e-12) throw Error(ErrorCode::invalid_parameter, "Bell-diagonal weights must be nonnegative");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-10) throw Error(ErrorCode::invalid_parameter, "Bell-diagonal weights must sum to 1");
    const double l1 = *std::max_element(r.begin(), r.end());
    return l1 >= 0.5 ? 1.0 - binary_entropy(l1) : 0.0;
}

struct MeasureReport {
    double concurrence = 0.0;
    double negativity = 0.0;
    double horodecki_m = 0.0;
    std::optional<double> ree_if_bell_diagonal;
};

inline MeasureReport measure_report(const DensityMatrix& rho) {
    MeasureReport r{concurrence(rho), negativity(rho), horodecki_m(rho), std::nullopt};
    if (const auto w = bell_diagonal_weights(rho)) {
        std::array<double, 4> clipped{};
        double total = 0.0;
        for (int k = 0; k < 4; ++k) total += clipped[k] = std::max((*w)[k], 0.0);
        for (double& v : clipped) v /= total;
        r.ree_if_bell_diagonal = ree_bell_diagonal(clipped);
    }
    return r;
}

}  // namespace ree
