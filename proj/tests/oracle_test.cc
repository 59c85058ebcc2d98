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

#include "ree/families.hpp"
#include "ree/oracle.hpp"

using namespace ree;

namespace {

void expect_feasible_ppt(const OracleResult& r) {
    EXPECT_GE(min_eigenvalue<4>(r.argmin), -1e-9);
    EXPECT_GE(min_eigenvalue<4>(partial_transpose(r.argmin)), -1e-9);
    EXPECT_NEAR(r.argmin.trace().real(), 1.0, 1e-10);
    EXPECT_GE(r.value, -1e-9);
}

void expect_feasible_rains(const OracleResult& r) {
    EXPECT_LE(trace_norm(partial_transpose(r.argmin)), 1.0 + 1e-9);
    EXPECT_GE(min_eigenvalue<4>(r.argmin), -1e-9);
    EXPECT_GE(r.value, -1e-9);
}

}  // namespace

TEST(oracle, separable_input_is_its_own_css) {
    Rng rng(41);
    for (int k = 0; k < 5; ++k) {
        const DensityMatrix rho = random_separable(rng);
        const OracleResult r = minimize_ree(rho);
        ASSERT_TRUE(r.converged) << r.diagnostic;
        expect_feasible_ppt(r);
        EXPECT_NEAR(r.value, 0.0, 1e-8);
        EXPECT_LT(trace_distance(r.argmin, rho.mat()), 1e-6);
        const OracleResult rr = minimize_rains(rho);
        EXPECT_NEAR(rr.value, 0.0, 1e-8);
    }
}

TEST(oracle, bell_diagonal_value_and_argmin) {
    const std::array<double, 4> w{0.75, 0.25 / 3, 0.25 / 3, 0.25 / 3};
    const OracleResult r = minimize_ree(bell_diagonal_state(w));
    ASSERT_TRUE(r.converged);
    expect_feasible_ppt(r);
    EXPECT_NEAR(r.value, 1 - binary_entropy(0.75), 1e-8);
    EXPECT_LT(trace_distance(r.argmin, css_bell_diagonal(w).mat()), 1e-4);
}

TEST(oracle, bell_state) {
    const DensityMatrix bell = DensityMatrix::from_pure(PureState(bell_state(BellLabel::psi_plus)));
    const OracleResult r = minimize_ree(bell);
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(r.value, 1.0, 1e-8);
}

TEST(oracle, recovers_generated_css) {
    Rng rng(42);
    for (int k = 0; k < 10; ++k) {
        const CssSolution css = make_css(random_edge_state(rng));
        for (double f : {0.25, 0.5, 1.0}) {
            const double x = f * css.x_max;
            const DensityMatrix rho = generate_rho(css, x);
            const OracleResult r = minimize_ree(rho);
            ASSERT_TRUE(r.converged) << r.diagnostic;
            expect_feasible_ppt(r);
            EXPECT_LT(trace_distance(r.argmin, css.sigma.mat()), 1e-4);
            EXPECT_NEAR(r.value, ree_closed(rho, css, x), 1e-6);
            EXPECT_GE(r.certificate, -1e-6);
        }
    }
}

TEST(oracle, monotone_stage_values) {
    Rng rng(43);
    for (int k = 0; k < 10; ++k) {
        const OracleResult r = minimize_ree(random_density_matrix(rng));
        EXPECT_TRUE(r.monotone);
        ASSERT_GE(r.stage_values.size(), 2u);
        for (std::size_t s = 1; s < r.stage_values.size(); ++s)
            EXPECT_LE(r.stage_values[s], r.stage_values[s - 1] + 1e-12);
    }
}

TEST(oracle, restarts_agree) {
    Rng rng(44);
    for (int k = 0; k < 3; ++k) {
        const DensityMatrix rho = random_density_matrix(rng);
        const double base = minimize_ree(rho).value;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            OracleOptions opt;
            opt.random_start = true;
            opt.seed = seed;
            const OracleResult r = minimize_ree(rho, opt);
            ASSERT_TRUE(r.converged);
            EXPECT_NEAR(r.value, base, 1e-7);
        }
    }
}

TEST(oracle, deterministic_given_seed) {
    Rng rng(45);
    const DensityMatrix rho = random_density_matrix(rng);
    OracleOptions opt;
    opt.random_start = true;
    opt.seed = 99;
    const OracleResult a = minimize_ree(rho, opt), b = minimize_ree(rho, opt);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.iterations, b.iterations);
}

TEST(oracle, rains_equals_ree) {
    Rng rng(46);
    for (int k = 0; k < 8; ++k) {
        const DensityMatrix rho = random_density_matrix(rng);
        const auto [e, r] = ree_and_rains(rho);
        ASSERT_TRUE(e.converged);
        ASSERT_TRUE(r.converged);
        expect_feasible_rains(r);
        ASSERT_TRUE(r.rains_gap.has_value());
        EXPECT_LT(*r.rains_gap, 1e-5);
    }
    const auto [e, r] = ree_and_rains(horodecki_state(0.5));
    EXPECT_NEAR(r.value, e.value, 1e-5);
}

TEST(oracle, budget_exhaustion_is_reported) {
    OracleOptions opt;
    opt.max_iterations = 3;
    const OracleResult r = minimize_ree(horodecki_state(0.5), opt);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.diagnostic, "iteration budget exhausted");
}
