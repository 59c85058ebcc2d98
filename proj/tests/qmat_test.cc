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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ree/bell.hpp"
#include "ree/divided_difference.hpp"
#include "ree/qmat.hpp"
#include "ree/random.hpp"

using namespace ree;

TEST(qmat, partial_transpose_of_psi_plus_has_eigenvalue_minus_half) {
    const Mat4 pt = partial_transpose(projector<4>(bell_state(BellLabel::psi_plus)));
    const auto s = eig_hermitian<4>(pt);
    EXPECT_NEAR(s.min_value(), -0.5, 1e-15);
    EXPECT_NEAR(s.values(0), 0.5, 1e-15);
    EXPECT_NEAR(s.values(1), 0.5, 1e-15);
    EXPECT_NEAR(s.values(2), 0.5, 1e-15);
}

TEST(qmat, partial_transpose_matches_block_transpose) {
    Rng rng(1);
    for (int k = 0; k < 50; ++k) {
        const Mat4 m = random_ginibre<4>(rng);
        EXPECT_LT(max_abs<4>(Mat4(partial_transpose(m) - oracle::partial_transpose_blocks(m))), 1e-15);
    }
}

TEST(qmat, partial_transpose_properties) {
    Rng rng(2);
    for (int k = 0; k < 100; ++k) {
        const Mat4 m = random_density_matrix(rng).mat();
        const Mat4 pt = partial_transpose(m);
        EXPECT_LT(max_abs<4>(Mat4(partial_transpose(pt) - m)), 1e-15);
        EXPECT_NEAR(pt.trace().real(), 1.0, 1e-12);
        EXPECT_LT(hermiticity_error<4>(pt), 1e-15);
        // transposing the other qubit gives the same spectrum
        const auto a = eig_hermitian<4>(pt), b = eig_hermitian<4>(partial_transpose_first(m));
        EXPECT_LT((a.values - b.values).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(qmat, partial_transpose_rejects_wrong_dimension) {
    const Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(3, 3);
    try {
        partial_transpose(m);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_dimension);
    }
}

TEST(qmat, eig_hermitian_reconstructs_and_sorts) {
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        const Mat4 h = random_hermitian<4>(rng);
        const auto s = eig_hermitian<4>(h);
        EXPECT_LT(max_abs<4>(Mat4(s.reconstruct() - h)), 1e-12);
        EXPECT_LT(max_abs<4>(Mat4(s.vectors.adjoint() * s.vectors - Mat4::Identity())), 1e-12);
        for (int i = 0; i + 1 < 4; ++i) EXPECT_GE(s.values(i), s.values(i + 1));
    }
}

TEST(qmat, eig_hermitian_is_deterministic_on_degenerate_spectra) {
    Rng rng(4);
    const Mat4 maximally_mixed = Mat4::Identity() / 4.0;
    const auto s = eig_hermitian<4>(maximally_mixed);
    EXPECT_LT(max_abs<4>(Mat4(s.vectors - Mat4::Identity())), 1e-15);
    // the same projector given in two different bases gives the same vectors
    for (int k = 0; k < 20; ++k) {
        const Mat4 u = random_unitary<4>(rng);
        Mat4 d = Mat4::Zero();
        d(0, 0) = 0.5;
        d(1, 1) = 0.5;
        const Mat4 m = u * d * u.adjoint();
        Mat4 rotated = u;
        const Mat2 w = random_unitary<2>(rng);
        rotated.leftCols<2>() = u.leftCols<2>() * w;
        const Mat4 m2 = rotated * d * rotated.adjoint();
        const auto a = eig_hermitian<4>(m), b = eig_hermitian<4>(m2);
        EXPECT_LT((a.vectors.leftCols<2>() - b.vectors.leftCols<2>()).cwiseAbs().maxCoeff(), 1e-9);
        for (int c = 0; c < 4; ++c) {
            const Vec4 v = a.vector(c);
            int peak = 0;
            v.cwiseAbs().maxCoeff(&peak);
            EXPECT_NEAR(v(peak).imag(), 0.0, 1e-15);
            EXPECT_GT(v(peak).real(), 0.0);
        }
    }
}

TEST(qmat, eig_hermitian_rejects_non_hermitian) {
    Mat4 m = Mat4::Identity();
    m(0, 1) = 0.3;
    try {
        eig_hermitian<4>(m);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::contract_violation);
    }
}

TEST(qmat, density_matrix_validation) {
    Mat4 bad = Mat4::Identity() / 4.0;
    bad(0, 0) += 1e-3;
    EXPECT_THROW(DensityMatrix{bad}, Error);
    Mat4 neg = Mat4::Zero();
    neg(0, 0) = 1.2;
    neg(1, 1) = -0.2;
    EXPECT_THROW(DensityMatrix{neg}, Error);
    Mat4 asym = Mat4::Identity() / 4.0;
    asym(0, 1) = cplx(0.0, 0.1);
    EXPECT_THROW(DensityMatrix{asym}, Error);
    EXPECT_NO_THROW(DensityMatrix::from_approximate(Mat4(Mat4::Identity() * 3.0)));
    EXPECT_THROW(PureState(Vec4::Constant(1.0)), Error);
    EXPECT_NO_THROW(PureState::normalized(Vec4::Constant(1.0)));
}

TEST(qmat, entropies) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed()), 2.0, 1e-14);
    const DensityMatrix bell = DensityMatrix::from_pure(PureState(bell_state(BellLabel::phi_plus)));
    EXPECT_NEAR(von_neumann_entropy(bell), 0.0, 1e-14);
    EXPECT_NEAR(relative_entropy(bell, DensityMatrix::maximally_mixed()), 2.0, 1e-12);
    // support mismatch
    const DensityMatrix zero = DensityMatrix::from_pure(PureState(ket("00")));
    const DensityMatrix one = DensityMatrix::from_pure(PureState(ket("11")));
    EXPECT_TRUE(std::isinf(relative_entropy(zero, one)));
}

TEST(qmat, relative_entropy_matches_matrix_logarithm) {
    Rng rng(5);
    for (int k = 0; k < 50; ++k) {
        const DensityMatrix rho = random_density_matrix(rng), sigma = random_density_matrix(rng);
        const double want = oracle::relative_entropy_bits(rho.mat(), sigma.mat());
        EXPECT_NEAR(relative_entropy(rho, sigma), want, 1e-10);
        EXPECT_GE(relative_entropy(rho, sigma), -1e-12);
    }
}

TEST(qmat, trace_distance_basics) {
    const DensityMatrix a = DensityMatrix::from_pure(PureState(ket("00")));
    const DensityMatrix b = DensityMatrix::from_pure(PureState(ket("01")));
    EXPECT_NEAR(trace_distance(a, b), 1.0, 1e-15);
    EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-15);
    EXPECT_NEAR(trace_norm(partial_transpose(projector<4>(bell_state(BellLabel::psi_minus)))), 2.0, 1e-14);
}

TEST(divided_difference, log_kernels) {
    EXPECT_DOUBLE_EQ(log_mean(0.3, 0.3), 0.3);
    EXPECT_DOUBLE_EQ(log_mean(0.0, 0.3), 0.0);
    EXPECT_NEAR(log_mean(0.5, 0.25), 0.25 / std::log(2.0), 1e-15);
    // continuity through the confluent branch
    for (double a : {1e-6, 0.1, 0.9}) {
        for (double rel : {1e-14, 1e-9, 1e-5, 0.2, 0.7}) {
            const double b = a * (1.0 + rel);
            // the plain quotient cancels catastrophically for tiny rel; use the series there
            const double direct = rel > 1e-4 ? (std::log(b) - std::log(a)) / (b - a)
                                             : (1.0 - rel / 2 + rel * rel / 3 - rel * rel * rel / 4) / a;
            EXPECT_NEAR(log_divided_difference(b, a) * a, direct * a, 1e-12);
        }
    }
    // second difference against the symmetric formula, and its confluent limit -1/(2a^2)
    EXPECT_NEAR(log_second_divided_difference(0.2, 0.2, 0.2), -0.5 / 0.04, 1e-9);
    const double a = 0.7, b = 0.3, c = 0.05;
    const double want = (std::log(a) / ((a - b) * (a - c)) + std::log(b) / ((b - a) * (b - c)) +
                         std::log(c) / ((c - a) * (c - b)));
    EXPECT_NEAR(log_second_divided_difference(a, b, c), want, 1e-12);
    EXPECT_NEAR(log_second_divided_difference(c, a, b), want, 1e-12);
    const double near = log_second_divided_difference(0.4, 0.4 + 1e-9, 0.1);
    const double limit = (log_divided_difference(0.4, 0.1) - 1.0 / 0.4) / (0.1 - 0.4);
    EXPECT_NEAR(near, limit, 1e-7);
}

TEST(random, generators_are_seeded_and_valid) {
    Rng a(default_seed), b(default_seed);
    EXPECT_LT(max_abs<4>(Mat4(random_density_matrix(a).mat() - random_density_matrix(b).mat())), 1e-300);
    Rng rng(7);
    for (int k = 0; k < 100; ++k) {
        const DensityMatrix sep = random_separable(rng);
        EXPECT_GE(min_eigenvalue<4>(partial_transpose(sep.mat())), -1e-12);
        const DensityMatrix edge = random_edge_state(rng);
        const auto s = eig_hermitian<4>(partial_transpose(edge.mat()));
        EXPECT_NEAR(s.min_value(), 0.0, 1e-12);
        EXPECT_GT(s.values(2), 1e-8);
        EXPECT_EQ(eig_hermitian<4>(edge.mat()).rank(), 4);
        const Mat4 u = random_unitary<4>(rng);
        EXPECT_LT(max_abs<4>(Mat4(u.adjoint() * u - Mat4::Identity())), 1e-12);
    }
}
