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
#include "ree/families.hpp"
#include "ree/oracle.hpp"

using namespace ree;

namespace {

double max_diff(const Mat4& a, const Mat4& b) { return max_abs<4>(Mat4(a - b)); }

// sigma_Z with p00 >= p11 and x' <= x'' (rho_prime_z admissible).
SigmaZ random_admissible_z(Rng& rng) {
    for (;;) {
        SigmaZ s = random_sigma_z(rng);
        if (s.p00 < s.p11) std::swap(s.p00, s.p11);
        const auto b = sigma_z_bounds(s);
        if (b.x_prime <= b.x_dprime_root) return s;
    }
}

}  // namespace

TEST(families, sigma_z_analytic_g_matches_generic) {
    Rng rng(31);
    for (int k = 0; k < 100; ++k) {
        const SigmaZ s = random_sigma_z(rng, k % 2 == 1);
        const CssSolution css = css_sigma_z(s);
        EXPECT_LT(max_diff(css.g_matrix, sigma_z_g_analytic(s)), 1e-10);
        EXPECT_LT(max_diff(css.kernel_pt(), sigma_z_kernel_pt(s)), 1e-10);
    }
}

TEST(families, sigma_z_phase_rotates_g) {
    Rng rng(32);
    for (int k = 0; k < 20; ++k) {
        SigmaZ s = random_sigma_z(rng);
        const Mat4 g0 = sigma_z_g_analytic(s);
        s.phase = 0.7;
        Mat4 d = Mat4::Identity();
        d(1, 1) = std::polar(1.0, 0.7);
        EXPECT_LT(max_diff(sigma_z_g_analytic(s), d * g0 * d.adjoint()), 1e-14);
    }
}

TEST(families, sigma_z_bounds_agree_with_bisection) {
    Rng rng(33);
    int dprime_binding = 0;
    for (int k = 0; k < 200; ++k) {
        const SigmaZ s = random_sigma_z(rng);
        const auto b = sigma_z_bounds(s);
        const CssSolution css = css_sigma_z(s);
        EXPECT_NEAR(css.x_max, b.min(), 1e-9 * b.min());
        // both readings of the printed x'' coincide on this family
        EXPECT_NEAR(b.x_dprime_printed, b.x_dprime_root, 1e-9 * b.x_dprime_root);
        if (b.x_dprime_root < b.x_prime) ++dprime_binding;
    }
    EXPECT_GT(dprime_binding, 0);
}

TEST(families, rho_prime_z_dual_path) {
    Rng rng(34);
    for (int k = 0; k < 100; ++k) {
        const SigmaZ s = random_admissible_z(rng);
        const ExtremalZ e = rho_prime_z(s);
        const CssSolution css = css_sigma_z(s);
        const DensityMatrix rho = generate_rho(css, sigma_z_bounds(s).x_prime);
        EXPECT_LT(max_diff(rho.mat(), e.matrix()), 1e-9);
        EXPECT_NEAR(e.matrix()(3, 3).real(), 0.0, 1e-15);
    }
}

TEST(families, rho_prime_z_preconditions) {
    EXPECT_THROW(rho_prime_z({0.1, 0.4, 0.3, 0.2}), Error);  // p00 < p11
    EXPECT_THROW(rho_prime_z({0.3, 0.3, 0.3, 0.1, 0.5}), Error);
}

TEST(families, symmetric_inversion_round_trip) {
    Rng rng(35);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const double r00 = 0.05 + 0.9 * uni(rng);
        const double y = 0.5 * (1 - r00) * (0.02 + 0.96 * uni(rng));
        const SigmaZ s = invert_symmetric(r00, y);
        const ExtremalZ e = rho_prime_z(s);
        EXPECT_NEAR(e.r00, r00, 1e-10);
        EXPECT_NEAR(e.r01, 0.5 * (1 - r00), 1e-10);
        EXPECT_NEAR(e.coherence, y, 1e-10);
    }
}

TEST(families, symmetric_inversion_example) {
    // r00 = 1/2, y = 1/5: p11 = 4 r00 y^2 / ((1 + r00)^2 - 4 y^2) = 0.08 / 2.09
    const SigmaZ s = invert_symmetric(0.5, 0.2);
    EXPECT_NEAR(s.p11, 0.08 / 2.09, 1e-15);
    EXPECT_NEAR(s.p00, 0.5 + 0.08 / 2.09, 1e-15);
    EXPECT_NEAR(s.p01, 0.25 - 0.08 / 2.09, 1e-15);
    const ExtremalZ e = rho_prime_z(s);
    EXPECT_NEAR(e.coherence, 0.2, 1e-12);
}

TEST(families, symmetric_inversion_edges) {
    // y = r01 lands on the Horodecki CSS
    for (double p : {0.2, 0.5, 0.9}) {
        const SigmaZ s = invert_symmetric(1 - p, p / 2);
        EXPECT_LT(max_diff(sigma_z_matrix(s), css_horodecki(p).mat()), 1e-12);
        const Mat4 rho = sigma_z_matrix(s) - (s.p00 + s.p11) / s.p00 * sigma_z_kernel_pt(s) * sigma_z_matrix(s);
        EXPECT_LT(max_diff(rho, horodecki_state(p).mat()), 1e-12);
    }
    try {
        invert_symmetric(0.2, 0.41);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::out_of_family);
    }
    EXPECT_THROW(invert_symmetric(1.2, 0.0), Error);
}

TEST(families, closed_form_css_are_separable_edge_states) {
    for (double p : {0.1, 0.5, 0.9, 1.0}) {
        for (const DensityMatrix& s : {css_horodecki(p), css_vedral_plenio(p), css_generalized_vp(p, 0.6)}) {
            EXPECT_GE(min_eigenvalue<4>(partial_transpose(s.mat())), -1e-12);
            EXPECT_LT(eig_hermitian<4>(partial_transpose(s.mat())).min_value(), 1e-12);
        }
    }
    EXPECT_THROW(css_generalized_vp(1.0, 0.2), Error);  // p(1-P) > 1/2
}

TEST(families, horodecki_css_matches_direct_formula) {
    // q'^2 |00><00| + 2p'q' |psi+><psi+| + p'^2 |11><11|
    const DensityMatrix s = css_horodecki(0.5);
    EXPECT_NEAR(s(0, 0).real(), 0.5625, 1e-15);
    EXPECT_NEAR(s(3, 3).real(), 0.0625, 1e-15);
    EXPECT_NEAR(s(1, 2).real(), 0.1875, 1e-15);
    const DensityMatrix m = css_horodecki(0.5, -1);
    EXPECT_NEAR(m(1, 2).real(), -0.1875, 1e-15);
}

TEST(families, pure_state_css) {
    const DensityMatrix s = css_pure(PureState(bell_state(BellLabel::psi_plus)));
    Mat4 want = Mat4::Zero();
    want(1, 1) = want(2, 2) = 0.5;
    EXPECT_LT(max_diff(s.mat(), want), 1e-14);
    Rng rng(36);
    for (int k = 0; k < 20; ++k) {
        const PureState psi(random_vector<4>(rng));
        const DensityMatrix rho = DensityMatrix::from_pure(psi);
        const DensityMatrix css = css_pure(psi);
        const double p0 = is_kernel_entangled(psi).p0;
        EXPECT_NEAR(relative_entropy(rho, css), binary_entropy(p0), 1e-10);
        EXPECT_GE(min_eigenvalue<4>(partial_transpose(css.mat())), -1e-12);
    }
}

TEST(families, bell_diagonal_css) {
    const DensityMatrix s = css_bell_diagonal({0.75, 0.25 / 3, 0.25 / 3, 0.25 / 3});
    const auto w = BellBasis().weights(s.mat());
    EXPECT_NEAR(w[0], 0.5, 1e-15);
    EXPECT_NEAR(w[1], 1.0 / 6, 1e-15);
    EXPECT_NEAR(relative_entropy(bell_diagonal_state({0.75, 0.25 / 3, 0.25 / 3, 0.25 / 3}), s),
                1 - binary_entropy(0.75), 1e-12);
    // separable input is its own CSS
    const std::array<double, 4> sep{0.4, 0.3, 0.2, 0.1};
    EXPECT_LT(max_diff(css_bell_diagonal(sep).mat(), bell_diagonal_state(sep).mat()), 1e-15);
    // label covariance: a permuted basis moves the CSS with the state
    const BellBasis other({BellLabel::phi_minus, BellLabel::phi_plus, BellLabel::psi_minus, BellLabel::psi_plus});
    const std::array<double, 4> r{0.7, 0.1, 0.15, 0.05};
    EXPECT_NEAR(relative_entropy(bell_diagonal_state(r, other), css_bell_diagonal(r, other)), 1 - binary_entropy(0.7),
                1e-12);
}

TEST(families, bell_css_family_members) {
    EXPECT_LT(max_diff(css_bell_family({1, 0, 0}).mat(), sigma_z_matrix({0, 0.5, 0.5, 0})), 1e-15);
    EXPECT_LT(max_diff(css_bell_family({0, 1, 1}).mat(), sigma_z_matrix({0.25, 0.25, 0.25, 0.25})), 1e-15);
    EXPECT_THROW(css_bell_family({0, 0, 0}), Error);
    const DensityMatrix bell = DensityMatrix::from_pure(PureState(bell_state(BellLabel::psi_plus)));
    Rng rng(37);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<Mat4> at_half;
    for (int k = 0; k < 10; ++k) {
        const std::array<double, 3> kk{uni(rng), uni(rng), uni(rng)};
        const CssSolution css = bell_family_css(kk);
        EXPECT_NEAR(relative_entropy(bell, css.sigma), 1.0, 1e-9);
        EXPECT_NEAR(css.x_max, 2.0, 1e-9);
        EXPECT_LT(max_diff(generate_rho(css, css.x_max).mat(), bell.mat()), 1e-9);
        const DensityMatrix rho = generate_rho(css, 1.0);
        EXPECT_NEAR(eig_hermitian<4>(rho.mat()).max_value(), 0.75, 1e-12);
        at_half.push_back(rho.mat());
    }
    EXPECT_GT(max_diff(at_half[0], at_half[1]), 1e-3);
}

TEST(families, triple_prime_bell_css) {
    const DensityMatrix s = sigma_bell_triple_prime();
    const DensityMatrix bell = DensityMatrix::from_pure(PureState(bell_state(BellLabel::psi_plus)));
    EXPECT_NEAR(relative_entropy(bell, s), 1.0, 1e-12);
    EXPECT_GE(min_eigenvalue<4>(partial_transpose(s.mat())), -1e-12);
    EXPECT_FALSE(bell_diagonal_weights(s).has_value());
    // the explicit projector sum is the local rotation of sigma''
    const Mat4 u = bell_rotation();
    EXPECT_LT(max_diff(u * sigma_bell_double_prime().mat() * u.adjoint(), s.mat()), 1e-14);
    const CssSolution css = sigma_bell_triple_prime_css();
    EXPECT_LT(max_diff(css.sigma.mat(), s.mat()), 1e-9);
    EXPECT_LT(max_diff(generate_rho(css, css.x_max).mat(), bell.mat()), 1e-9);
}

TEST(families, gisin_inversion) {
    for (auto [p, big] : std::vector<std::pair<double, double>>{{0.8, 0.3}, {0.6, 0.45}, {0.9, 0.8}, {0.7, 0.4}}) {
        const FamilyInversion inv = css_gisin(p, big);
        ASSERT_FALSE(inv.separable_input);
        EXPECT_LE(inv.residual, 1e-10);
        ASSERT_TRUE(inv.sigma_z.has_value());
        EXPECT_NEAR(inv.sigma_z->p00, inv.sigma_z->p11, 1e-15);
        const CssSolution css = make_css(inv.sigma);
        EXPECT_LT(max_diff(generate_rho(css, inv.x).mat(), gisin_state(p, big).mat()), 1e-9);
        ASSERT_TRUE(inv.witness_check.has_value());
        EXPECT_TRUE(inv.witness_check->passed);
    }
}

TEST(families, gisin_bell_diagonal_branch) {
    for (double p : {0.6, 0.8, 0.95}) {
        const FamilyInversion inv = css_gisin(p, 0.5);
        EXPECT_LT(max_diff(inv.sigma.mat(), sigma_bell_double_prime().mat()), 1e-15);
        EXPECT_NEAR(inv.x, 4 * p - 2, 1e-15);
        EXPECT_LT(inv.residual, 1e-9);
        // the Gisin state at P = 1/2 is Bell-diagonal; its REE is 1 - H2(p)
        EXPECT_NEAR(relative_entropy(gisin_state(p, 0.5), inv.sigma), 1.0 - binary_entropy(p), 1e-12);
    }
}

TEST(families, gisin_edges) {
    const FamilyInversion sep = css_gisin(0.3, 0.5);  // p sqrt(P(1-P)) <= (1-p)/2
    EXPECT_TRUE(sep.separable_input);
    EXPECT_LT(max_diff(sep.sigma.mat(), gisin_state(0.3, 0.5).mat()), 1e-15);
    EXPECT_LT(max_diff(css_gisin(1.0, 0.5).sigma.mat(), sigma_bell_double_prime().mat()), 1e-15);
    EXPECT_LT(max_diff(css_gisin(1.0, 0.3).sigma.mat(), css_pure(PureState(psi_p(0.3))).mat()), 1e-14);
}

TEST(families, generalized_horodecki_inversion) {
    for (auto [p, big] : std::vector<std::pair<double, double>>{{0.8, 0.7}, {0.6, 0.3}, {0.3, 0.9}, {0.95, 0.2}}) {
        const FamilyInversion inv = css_generalized_horodecki(p, big);
        EXPECT_LE(inv.residual, 1e-10);
        ASSERT_TRUE(inv.sigma_z.has_value());
        EXPECT_NEAR(inv.x, (inv.sigma_z->p00 + inv.sigma_z->p11) / inv.sigma_z->p00, 1e-15);
        const CssSolution css = make_css(inv.sigma);
        EXPECT_LT(max_diff(generate_rho(css, inv.x).mat(), generalized_horodecki_state(p, big).mat()), 1e-9);
    }
    // P = 1/2 is the Horodecki state
    for (double p : {0.2, 0.6, 0.9}) {
        const FamilyInversion inv = css_generalized_horodecki(p, 0.5);
        EXPECT_LT(max_diff(inv.sigma.mat(), css_horodecki(p).mat()), 1e-8);
    }
    EXPECT_NEAR(ree_generalized_horodecki(1.0, 0.5), 1.0, 1e-12);
    EXPECT_NEAR(ree_generalized_horodecki(0.0, 0.3), 0.0, 1e-15);
}

TEST(families, generalized_horodecki_ree_matches_oracle) {
    for (auto [p, big] : std::vector<std::pair<double, double>>{{0.8, 0.7}, {0.5, 0.5}, {0.4, 0.25}}) {
        const double closed = ree_generalized_horodecki(p, big);
        const OracleResult o = minimize_ree(generalized_horodecki_state(p, big));
        ASSERT_TRUE(o.converged);
        EXPECT_NEAR(closed, o.value, 1e-6);
    }
}

TEST(families, closed_forms_match_oracle) {
    for (double p : {0.15, 0.5, 0.85}) {
        auto check = [&](const DensityMatrix& rho, const DensityMatrix& css) {
            const OracleResult o = minimize_ree(rho);
            ASSERT_TRUE(o.converged) << o.diagnostic;
            EXPECT_NEAR(relative_entropy(rho, css), o.value, 1e-6);
            EXPECT_LE(o.value, relative_entropy(rho, css) + 1e-9);
        };
        check(horodecki_state(p), css_horodecki(p));
        check(horodecki_state(p, -1), css_horodecki(p, -1));
        check(vedral_plenio_state(p), css_vedral_plenio(p));
        check(generalized_vp_state(p, 0.6), css_generalized_vp(p, 0.6));
        check(gisin_state(p, 0.6), css_gisin(p, 0.6).sigma);
        if (p <= 1.0 / 3) check(verstraete_state(p), *family_css(VerstraeteParams{p}));
    }
}

TEST(families, make_state_dispatch) {
    EXPECT_LT(max_diff(make_state(BellDiagonalParams{{0.25, 0.25, 0.25, 0.25}}).mat(), Mat4::Identity() / 4.0), 1e-15);
    EXPECT_LT(max_diff(make_state(HorodeckiParams{0.5, 1}).mat(), horodecki_state(0.5).mat()), 1e-15);
    EXPECT_EQ(family_name(GisinParams{}), "gisin");
    EXPECT_EQ(family_name(BellCssParams{}), "bell-css");
    EXPECT_THROW(make_state(HorodeckiParams{1.5, 1}), Error);
    EXPECT_THROW(make_state(VerstraeteParams{0.5}), Error);
    EXPECT_THROW(make_state(SigmaZ{0.4, 0.1, 0.1, 0.4}), Error);  // p01 p10 < p00 p11
    EXPECT_FALSE(family_css(BellCssParams{}).has_value());
}

TEST(families, bell_nonuniqueness_report) {
    const auto rep = bell_nonuniqueness_report({{1, 1, 1}, {1, 2, 3}, {0.2, 0.9, 0.4}}, 1.0);
    ASSERT_EQ(rep.rows.size(), 6u);
    EXPECT_EQ(rep.rows[0].label, "sigma'_Bell");
    for (const auto& r : rep.rows) {
        EXPECT_NEAR(r.s_bell, 1.0, 1e-9);
        EXPECT_NEAR(r.x_max, 2.0, 1e-9);
        EXPECT_LT(r.regenerated_error, 1e-8);
    }
    EXPECT_LT(rep.ree_spread, 1e-9);
    EXPECT_LT(rep.negativity_spread, 1e-9);
    EXPECT_LT(rep.concurrence_spread, 1e-9);
    EXPECT_LT(rep.lambda1_spread, 1e-9);
    EXPECT_GT(rep.horodecki_m_spread, 1e-3);
    EXPECT_GT(rep.rho_spread, 1e-3);
}
