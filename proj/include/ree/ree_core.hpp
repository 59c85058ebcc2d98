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

// Inverse solution of the relative-entropy-of-entanglement problem for two
// qubits: given a boundary state sigma (its partial transpose has a one-
// dimensional kernel |phi>), the entangled states whose closest separable
// state is sigma form the segment
//
//     rho(x) = sigma - x G(sigma),   0 <= x <= x_max,
//
// with G(sigma) = sum_ij G_ij |i><i| (|phi><phi|)^T_B |j><j| over the
// eigenbasis of sigma and G_ij the logarithmic mean of lambda_i, lambda_j.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ree/divided_difference.hpp"
#include "ree/qmat.hpp"
#include "ree/random.hpp"

namespace ree {

struct CssSolution {
    DensityMatrix sigma;
    PureState kernel_phi;
    Mat4 g_matrix;
    double x_max = 0.0;
    SpectralDecomposition<4> sigma_spectral;

    /// (|phi><phi|)^T_B
    Mat4 kernel_pt() const { return partial_transpose(kernel_phi.projector()); }
};

struct SchmidtInfo {
    double p0 = 1.0;  // larger Schmidt coefficient, >= 1/2
    bool entangled = false;
};

/// Schmidt coefficients of a two-qubit pure state from the singular values of
/// its 2x2 amplitude matrix.
inline SchmidtInfo is_kernel_entangled(const PureState& phi) {
    Mat2 a;
    a << phi(0), phi(1), phi(2), phi(3);
    const auto s = eig_hermitian<2>(Mat2(a * a.adjoint()));
    SchmidtInfo out;
    out.p0 = std::clamp(s.values(0), 0.5, 1.0);
    out.entangled = out.p0 < 1.0 - 1e-10;
    return out;
}

/// Zero-eigenvalue eigenvector of sigma^T_B for an edge state.
inline PureState kernel_of_edge_state(const DensityMatrix& sigma) {
    const auto s = eig_hermitian<4>(partial_transpose(sigma.mat()));
    const double scale = s.values.cwiseAbs().maxCoeff();
    if (s.min_value() < -1e-9)
        throw Error(ErrorCode::not_an_edge_state, "partial transpose has a negative eigenvalue; state is entangled");
    int zeros = 0;
    for (int k = 0; k < 4; ++k)
        if (s.values(k) < tol::zero_eigenvalue * scale) ++zeros;
    if (zeros == 0) throw Error(ErrorCode::not_an_edge_state, "partial transpose is full rank");
    if (zeros > 1)
        throw Error(ErrorCode::ambiguous_kernel,
                    "partial transpose has rank " + std::to_string(4 - zeros) + "; use a limiting family");
    return PureState::normalized(s.vector(3));
}

namespace detail {

// G from the spectrum of sigma and Phi = (|phi><phi|)^T_B. Zero eigenvalues
// take the continuous extension log_mean(0, .) = 0.
inline Mat4 assemble_g(const SpectralDecomposition<4>& s, const Mat4& phi_pt) {
    const Mat4 rotated = s.vectors.adjoint() * phi_pt * s.vectors;
    Mat4 g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = log_mean(s.values(i), s.values(j)) * rotated(i, j);
    return hermitize<4>(Mat4(s.vectors * g * s.vectors.adjoint()));
}

}  // namespace detail

/// G(sigma) for a full-rank edge state sigma with kernel phi.
inline Mat4 build_g(const DensityMatrix& sigma, const PureState& phi) {
    const auto s = eig_hermitian<4>(sigma.mat());
    if (s.rank() < 4)
        throw Error(ErrorCode::low_rank_css, "sigma is rank deficient; evaluate G through a limiting family");
    return detail::assemble_g(s, partial_transpose(phi.projector()));
}

/// Largest x >= 0 keeping sigma - x G positive semidefinite (bisection).
inline double x_max(const DensityMatrix& sigma, const Mat4& g) {
    if (max_abs<4>(g) < 1e-14) throw Error(ErrorCode::degenerate, "G vanishes; sigma generates no entangled family");
    auto feasible = [&](double x) { return min_eigenvalue<4>(Mat4(sigma.mat() - x * g)) >= -1e-12; };
    double lo = 0.0;
    double hi = 1.0;
    while (feasible(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e8) throw Error(ErrorCode::degenerate, "sigma - xG stays positive for all x");
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

/// Assemble the inverse-problem bundle for a full-rank edge state.
inline CssSolution make_css(const DensityMatrix& sigma) {
    CssSolution css{sigma, kernel_of_edge_state(sigma), Mat4::Zero(), 0.0, eig_hermitian<4>(sigma.mat())};
    if (css.sigma_spectral.rank() < 4)
        throw Error(ErrorCode::low_rank_css, "sigma is rank deficient; evaluate G through a limiting family");
    css.g_matrix = detail::assemble_g(css.sigma_spectral, css.kernel_pt());
    css.x_max = x_max(sigma, css.g_matrix);
    return css;
}

/// CSS data for a rank-deficient boundary state, obtained as the limit of
/// full-rank edge states neighbor(eps) for eps -> 0. The values at the given
/// eps are extrapolated linearly (Richardson); two independent extrapolations
/// must agree within `consistency_tol`.
inline CssSolution limiting_css(const std::function<DensityMatrix(double)>& neighbor,
                                const std::vector<double>& eps = {1e-3, 1e-4, 1e-5},
                                double consistency_tol = 1e-6) {
    if (eps.size() < 3) throw Error(ErrorCode::invalid_parameter, "limiting_css needs three eps values");
    std::vector<CssSolution> seq;
    for (double e : eps) seq.push_back(make_css(neighbor(e)));
    auto extrapolate = [&](std::size_t a, std::size_t b, auto member) {
        const double ea = eps[a], eb = eps[b];
        return Mat4((ea * member(seq[b]) - eb * member(seq[a])) / (ea - eb));
    };
    auto sigma_of = [](const CssSolution& c) { return c.sigma.mat(); };
    auto g_of = [](const CssSolution& c) { return c.g_matrix; };
    auto proj_of = [](const CssSolution& c) { return c.kernel_phi.projector(); };
    const std::size_t n = eps.size();
    const Mat4 sigma0 = extrapolate(n - 2, n - 1, sigma_of);
    const Mat4 g0 = extrapolate(n - 2, n - 1, g_of);
    const Mat4 proj0 = extrapolate(n - 2, n - 1, proj_of);
    const double drift = std::max({max_abs<4>(Mat4(sigma0 - extrapolate(n - 3, n - 2, sigma_of))),
                                   max_abs<4>(Mat4(g0 - extrapolate(n - 3, n - 2, g_of))),
                                   max_abs<4>(Mat4(proj0 - extrapolate(n - 3, n - 2, proj_of)))});
    if (drift > consistency_tol)
        throw Error(ErrorCode::inconsistency, "limiting sequence does not converge linearly in eps");
    const DensityMatrix sigma = DensityMatrix::from_approximate(sigma0);
    const auto ps = eig_hermitian<4>(proj0);
    CssSolution css{sigma, PureState::normalized(ps.vector(0)), hermitize<4>(g0), 0.0,
                    eig_hermitian<4>(sigma.mat())};
    css.x_max = x_max(sigma, css.g_matrix);
    return css;
}

/// rho(x) = sigma - x G. Throws out_of_range unless 0 <= x <= x_max.
inline DensityMatrix generate_rho(const CssSolution& css, double x) {
    if (!(x >= 0.0 && x <= css.x_max + 1e-12))
        throw Error(ErrorCode::out_of_range, "x must lie in [0, x_max]");
    const DensityMatrix rho = DensityMatrix::from_approximate(css.sigma.mat() - x * css.g_matrix);
    if (x >= 1e-6 && min_eigenvalue<4>(partial_transpose(rho.mat())) >= 0.0)
        throw Error(ErrorCode::inconsistency, "generated state is not entangled");
    return rho;
}

/// E_R(rho) = S(sigma) - S(rho) + x tr[(|phi><phi|)^T_B sigma log2 sigma], in
/// bits, cross-checked against the direct relative entropy S(rho||sigma).
inline double ree_closed(const DensityMatrix& rho, const CssSolution& css, double x) {
    if (max_abs<4>(Mat4(rho.mat() - (css.sigma.mat() - x * css.g_matrix))) > 1e-10)
        throw Error(ErrorCode::contract_violation, "rho is not sigma - x G");
    const auto& s = css.sigma_spectral;
    const Mat4 sigma_log_sigma = apply_function<4>(s, [](double l) { return xlog2x(l); });
    const double closed = entropy_of_spectrum<4>(s.values) - von_neumann_entropy(rho) +
                          x * (css.kernel_pt() * sigma_log_sigma).trace().real();
    const double direct = relative_entropy(rho, css.sigma);
    if (!(std::abs(closed - direct) <= 1e-9))
        throw Error(ErrorCode::inconsistency, "closed REE disagrees with S(rho||sigma)");
    return closed;
}

// ---------------------------------------------------------------------------
// Entanglement witness

struct WitnessOperator {
    Mat4 z;
    double scale_x = 0.0;
};

inline WitnessOperator witness(const CssSolution& css, double x) {
    if (!(x > 0.0)) throw Error(ErrorCode::out_of_range, "witness scale x must be positive");
    return {x * css.kernel_pt(), x};
}

struct WitnessReport {
    double identity_error = 0.0;  // (a) max_ij |x<i|Phi|j> - (delta_ij - <i|rho|j>/G_ij)|
    double tr_z_sigma = 0.0;      // (b)
    double tr_z_rho = 0.0;        // (c)
    double min_separable = 0.0;   // (d) min tr Z sigma' over samples
    int samples = 0;
    bool passed = true;
    std::string failed_check;     // "a", "b", "c" or "d"
};

/// Evaluates the witness checks without throwing.
inline WitnessReport check_witness(const WitnessOperator& w, const CssSolution& css, const DensityMatrix& rho,
                                   Rng& rng, int samples = 10000) {
    WitnessReport r;
    const auto& s = css.sigma_spectral;
    if (s.rank() < 4) throw Error(ErrorCode::low_rank_css, "witness identity needs a full-rank sigma");
    const Mat4 phi_rot = s.vectors.adjoint() * css.kernel_pt() * s.vectors;
    const Mat4 rho_rot = s.vectors.adjoint() * rho.mat() * s.vectors;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const cplx rhs = (i == j ? 1.0 : 0.0) - rho_rot(i, j) / log_mean(s.values(i), s.values(j));
            r.identity_error = std::max(r.identity_error, std::abs(w.scale_x * phi_rot(i, j) - rhs));
        }
    r.tr_z_sigma = (w.z * css.sigma.mat()).trace().real();
    r.tr_z_rho = (w.z * rho.mat()).trace().real();
    r.min_separable = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        std::uniform_int_distribution<int> terms(1, 4);
        const DensityMatrix sep = random_separable(rng, terms(rng));
        r.min_separable = std::min(r.min_separable, (w.z * sep.mat()).trace().real());
    }
    r.samples = samples;
    auto fail = [&](const char* id) {
        if (r.passed) {
            r.passed = false;
            r.failed_check = id;
        }
    };
    if (!(r.identity_error <= 1e-9)) fail("a");
    if (!(std::abs(r.tr_z_sigma) <= 1e-9)) fail("b");
    if (w.scale_x >= 1e-6 && !(r.tr_z_rho < 0.0)) fail("c");
    if (samples > 0 && !(r.min_separable >= -1e-12)) fail("d");
    return r;
}

/// Like check_witness but throws witness_violation naming the failing check.
inline WitnessReport verify_witness(const WitnessOperator& w, const CssSolution& css, const DensityMatrix& rho,
                                    Rng& rng, int samples = 10000) {
    WitnessReport r = check_witness(w, css, rho, rng, samples);
    if (!r.passed) throw Error(ErrorCode::witness_violation, "check (" + r.failed_check + ") failed");
    return r;
}

// ---------------------------------------------------------------------------
// Additivity conditions for commuting pairs

struct AdditivityReport {
    bool commutes = false;           // ||[sigma, Phi]||_max <= 1e-9
    bool state_commutes = false;     // ||[rho, sigma]||_max <= 1e-9
    double commutator_state = 0.0;   // ||[rho, sigma]||_max
    double commutator_kernel = 0.0;  // ||[sigma, Phi]||_max
    double x_value = 0.0;
    double p0 = 0.0;
    std::optional<bool> weakly_additive;
    std::optional<bool> strongly_additive;
    std::optional<double> min_eig_check;  // min eig (rho sigma^-1)^T_B
    std::optional<double> identity_error; // ||(rho sigma^-1)^T_B - (I - x|phi><phi|)||_max

    /// The two commutation tests agree (the state commutator scales with x,
    /// so the comparison is meaningful only away from x = 0).
    bool flags_agree() const { return x_value < 1e-6 || commutes == state_commutes; }
};

inline AdditivityReport additivity_check(const DensityMatrix& rho, const CssSolution& css, double x) {
    AdditivityReport r;
    const Mat4& sigma = css.sigma.mat();
    const Mat4 phi_pt = css.kernel_pt();
    r.x_value = x;
    r.p0 = is_kernel_entangled(css.kernel_phi).p0;
    r.commutator_state = max_abs<4>(commutator<4>(rho.mat(), sigma));
    r.commutator_kernel = max_abs<4>(commutator<4>(sigma, phi_pt));
    r.state_commutes = r.commutator_state <= 1e-9;
    r.commutes = r.commutator_kernel <= 1e-9;
    if (!r.commutes) return r;

    if (max_abs<4>(Mat4(rho.mat() - (sigma - x * phi_pt * sigma))) > 1e-9)
        throw Error(ErrorCode::inconsistency, "commuting pair does not satisfy rho = sigma - x Phi sigma");
    if (css.sigma_spectral.rank() < 4) throw Error(ErrorCode::low_rank_css, "sigma^-1 requires a full-rank sigma");
    const Mat4 check = partial_transpose(Mat4(rho.mat() * sigma.inverse()));
    const Mat4 expected = Mat4::Identity() - x * css.kernel_phi.projector();
    r.identity_error = max_abs<4>(Mat4(check - expected));
    r.min_eig_check = min_eigenvalue<4>(hermitize<4>(check));
    r.weakly_additive = *r.min_eig_check >= -1.0 - 1e-9;
    if (!*r.weakly_additive) throw Error(ErrorCode::inconsistency, "(rho sigma^-1)^T_B >= -1 violated");
    r.strongly_additive = x <= 1.0 + 1e-12;
    return r;
}

}  // namespace ree
