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

// Seeded random states. No generator state is global; every function takes
// the engine explicitly.

#include <cstdint>
#include <random>

#include "ree/qmat.hpp"

namespace ree {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t default_seed = 20080411;

template <int N>
Mat<N> random_ginibre(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Mat<N> a;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) a(i, j) = cplx(normal(rng), normal(rng));
    return a;
}

template <int N>
Vec<N> random_vector(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec<N> v;
    for (int i = 0; i < N; ++i) v(i) = cplx(normal(rng), normal(rng));
    return v / v.norm();
}

template <int N>
Mat<N> random_hermitian(Rng& rng) {
    const Mat<N> a = random_ginibre<N>(rng);
    return (a + a.adjoint()) * 0.5;
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
template <int N>
Mat<N> random_unitary(Rng& rng) {
    Eigen::HouseholderQR<Mat<N>> qr(random_ginibre<N>(rng));
    Mat<N> q = qr.householderQ();
    const Mat<N> r = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (int k = 0; k < N; ++k) {
        const cplx d = r(k, k);
        if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
    }
    return q;
}

/// Normalized A A^dagger with A a complex Ginibre matrix.
inline DensityMatrix random_density_matrix(Rng& rng) {
    const Mat4 a = random_ginibre<4>(rng);
    return DensityMatrix::from_approximate(a * a.adjoint());
}

inline DensityMatrix random_pure_density(Rng& rng) {
    return DensityMatrix::from_approximate(projector<4>(random_vector<4>(rng)));
}

inline DensityMatrix random_product_state(Rng& rng) {
    return DensityMatrix::from_approximate(projector<4>(kron(random_vector<2>(rng), random_vector<2>(rng))));
}

/// Convex mixture of `terms` random pure product states with random weights.
inline DensityMatrix random_separable(Rng& rng, int terms = 4) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Mat4 acc = Mat4::Zero();
    double total = 0.0;
    for (int k = 0; k < terms; ++k) {
        const double w = uni(rng) + 1e-3;
        acc += w * random_product_state(rng).mat();
        total += w;
    }
    return DensityMatrix::from_approximate(acc / total);
}

/// Local unitary U1 (x) U2.
inline Mat4 random_local_unitary(Rng& rng) { return kron(random_unitary<2>(rng), random_unitary<2>(rng)); }

/// Full-rank state whose partial transpose is PSD with exactly one zero
/// eigenvalue: mix an NPT Ginibre state with white noise until the negative
/// eigenvalue of its partial transpose is lifted to zero.
inline DensityMatrix random_edge_state(Rng& rng) {
    for (;;) {
        const DensityMatrix mu = random_density_matrix(rng);
        const double m = min_eigenvalue<4>(partial_transpose(mu.mat()));
        if (m >= 0.0) continue;
        const double lift = std::abs(m);
        return DensityMatrix::from_approximate((mu.mat() + lift * Mat4::Identity()) / (1.0 + 4.0 * lift));
    }
}

}  // namespace ree
