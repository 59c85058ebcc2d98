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

// Named two-qubit state families together with their closest separable
// states, the sigma_Z boundary family and its analytic G, the symmetric
// inversion, and numeric in-family inversion where no closed form exists.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ree/bell.hpp"
#include "ree/measures.hpp"
#include "ree/newton.hpp"
#include "ree/ree_core.hpp"

namespace ree {

namespace detail {
inline void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::invalid_parameter, what);
}
inline void require_unit(double v, const char* what) { require(v >= 0.0 && v <= 1.0, what); }
}  // namespace detail

// ---------------------------------------------------------------------------
// Parameter records

struct BellDiagonalParams {
    std::array<double, 4> weights{};  // on beta_1..beta_4
};

/// Boundary family with populations on |00>,|01>,|10>,|11> and the
/// coherence sqrt(p00 p11) e^{i phase} between |01> and |10>.
struct SigmaZ {
    double p00 = 0.25, p01 = 0.25, p10 = 0.25, p11 = 0.25;
    double phase = 0.0;

    double coherence() const { return std::sqrt(p00 * p11); }
};

struct HorodeckiParams {
    double mixing = 1.0;
    int sign = +1;  // +1: psi+, -1: psi-
};
struct VedralPlenioParams {
    double mixing = 1.0;
};
struct GeneralizedVpParams {
    double mixing = 1.0;
    double population01 = 0.5;
};
struct GisinParams {
    double mixing = 1.0;
    double population01 = 0.5;
};
struct GeneralizedHorodeckiParams {
    double mixing = 1.0;
    double population01 = 0.5;
};
struct VerstraeteParams {
    double concurrence = 0.0;
};
struct BellCssParams {
    std::array<double, 3> k{1.0, 0.0, 0.0};  // weights of beta_2..beta_4
};

using FamilyParams = std::variant<BellDiagonalParams, SigmaZ, HorodeckiParams, VedralPlenioParams,
                                  GeneralizedVpParams, GisinParams, GeneralizedHorodeckiParams, VerstraeteParams,
                                  BellCssParams>;

// ---------------------------------------------------------------------------
// sigma_Z family

inline void validate(const SigmaZ& s) {
    detail::require(s.p00 >= 0 && s.p01 >= 0 && s.p10 >= 0 && s.p11 >= 0, "sigma_Z populations must be nonnegative");
    detail::require(std::abs(s.p00 + s.p01 + s.p10 + s.p11 - 1.0) <= 1e-12, "sigma_Z populations must sum to 1");
    detail::require(s.p01 * s.p10 >= s.p00 * s.p11 - 1e-15, "sigma_Z needs p01 p10 >= p00 p11");
}

inline Mat4 sigma_z_matrix(const SigmaZ& s) {
    const cplx y = s.coherence() * std::polar(1.0, s.phase);
    Mat4 m = Mat4::Zero();
    m(0, 0) = s.p00;
    m(1, 1) = s.p01;
    m(2, 2) = s.p10;
    m(3, 3) = s.p11;
    m(1, 2) = y;
    m(2, 1) = std::conj(y);
    return m;
}

inline DensityMatrix sigma_z_state(const SigmaZ& s) {
    validate(s);
    return DensityMatrix::from_approximate(sigma_z_matrix(s));
}

/// G(sigma_Z) from its closed-form entries. Requires a coherence > 0 and a
/// full-rank |01>,|10> block.
inline Mat4 sigma_z_g_analytic(const SigmaZ& s) {
    const double y = s.coherence();
    const double n = s.p00 + s.p11;
    const double diff = s.p01 - s.p10;
    const double sum = s.p01 + s.p10;
    const double z = std::sqrt(diff * diff + 4.0 * s.p00 * s.p11);
    if (!(y > 0.0) || !(sum - z > 0.0))
        throw Error(ErrorCode::low_rank_css, "analytic G needs a full-rank sigma_Z with nonzero coherence");
    const double log_ratio = std::log(sum - z) - std::log(sum + z);
    const double d = 1.0 / (n * z * z * log_ratio);
    const double g00 = y * y / n;
    const double g01 = -2.0 * y * y * d * (diff * (z + s.p01 * log_ratio) + 2.0 * y * y * log_ratio);
    const double g10 = -2.0 * g00 - g01;
    // The off-diagonal carries the sign of the kernel's -Y coupling.
    const double gy = -y * d * (2.0 * y * y * sum * log_ratio - diff * diff * z);
    const cplx gyc = gy * std::polar(1.0, s.phase);
    Mat4 g = Mat4::Zero();
    g(0, 0) = g00;
    g(3, 3) = g00;
    g(1, 1) = g01;
    g(2, 2) = g10;
    g(1, 2) = gyc;
    g(2, 1) = std::conj(gyc);
    return g;
}

/// (|phi><phi|)^T_B for sigma_Z:
/// (R4|00><00| - Y e^{i phase}|01><10| - h.c. + R1|11><11|) / (R1 + R4).
inline Mat4 sigma_z_kernel_pt(const SigmaZ& s) {
    const double n = s.p00 + s.p11;
    detail::require(n > 0.0, "sigma_Z kernel needs p00 + p11 > 0");
    const cplx y = s.coherence() * std::polar(1.0, s.phase);
    Mat4 m = Mat4::Zero();
    m(0, 0) = s.p11 / n;
    m(3, 3) = s.p00 / n;
    m(1, 2) = -y / n;
    m(2, 1) = -std::conj(y) / n;
    return m;
}

/// Random full-rank sigma_Z with p00, p11 in [0.01, 0.3] and a margin of
/// 1e-3 in p01 p10 > p00 p11.
inline SigmaZ random_sigma_z(Rng& rng, bool random_phase = false) {
    std::uniform_real_distribution<double> corner(0.01, 0.3), share(0.0, 1.0), angle(-M_PI, M_PI);
    for (;;) {
        SigmaZ s;
        s.p00 = corner(rng);
        s.p11 = corner(rng);
        const double rest = 1.0 - s.p00 - s.p11;
        const double t = share(rng);
        s.p01 = rest * t;
        s.p10 = rest - s.p01;
        if (random_phase) s.phase = angle(rng);
        if (s.p01 * s.p10 > s.p00 * s.p11 * (1.0 + 1e-3) + 1e-6) return s;
    }
}

/// Generic-path CSS bundle for a full-rank sigma_Z.
inline CssSolution css_sigma_z(const SigmaZ& s) { return make_css(sigma_z_state(s)); }

struct SigmaZBounds {
    double x_prime = 0.0;           // positivity of the |00>,|11> populations
    double x_dprime_printed = 0.0;  // f - sqrt(f^2 - 4 D Dbar) / (2 Dbar), literal parenthesization
    double x_dprime_root = 0.0;     // smallest positive root of D - f x + Dbar x^2
    double min() const { return std::min(x_prime, x_dprime_root); }
};

/// Closed-form bounds on x for the sigma_Z family (phase 0). These are
/// cross-checks for the bisection in x_max().
inline SigmaZBounds sigma_z_bounds(const SigmaZ& s) {
    const Mat4 g = sigma_z_g_analytic(s);
    const double y = s.coherence();
    const double gy = g(1, 2).real() * std::cos(s.phase) + g(1, 2).imag() * std::sin(s.phase);
    const double det = s.p01 * s.p10 - y * y;
    const double det_bar = g(1, 1).real() * g(2, 2).real() - gy * gy;
    const double f = s.p01 * g(2, 2).real() + g(1, 1).real() * s.p10 - 2.0 * y * gy;
    const double disc = std::sqrt(std::max(f * f - 4.0 * det * det_bar, 0.0));
    SigmaZBounds b;
    b.x_prime = (s.p00 + s.p11) / std::max(s.p00, s.p11);
    b.x_dprime_printed = f - disc / (2.0 * det_bar);
    double best = std::numeric_limits<double>::infinity();
    if (std::abs(det_bar) < 1e-300) {
        if (f > 0.0) best = det / f;
    } else {
        for (double root : {(f - disc) / (2.0 * det_bar), (f + disc) / (2.0 * det_bar)})
            if (root > 0.0) best = std::min(best, root);
    }
    b.x_dprime_root = best;
    return b;
}

/// Entries of the extremal state sigma_Z - x' G(sigma_Z) (rank deficient,
/// |11> population zero), phase 0 and p00 >= p11.
struct ExtremalZ {
    double r00 = 0.0, r01 = 0.0, r10 = 0.0, coherence = 0.0;

    Mat4 matrix() const {
        Mat4 m = Mat4::Zero();
        m(0, 0) = r00;
        m(1, 1) = r01;
        m(2, 2) = r10;
        m(1, 2) = coherence;
        m(2, 1) = coherence;
        return m;
    }
};

inline ExtremalZ rho_prime_z(const SigmaZ& s) {
    validate(s);
    detail::require(s.phase == 0.0, "rho_prime_z is defined for phase 0");
    detail::require(s.p00 >= s.p11, "rho_prime_z needs p00 >= p11");
    const double y = s.coherence();
    detail::require(y > 0.0, "rho_prime_z needs nonzero coherence");
    const double diff = s.p01 - s.p10;
    const double sum = s.p01 + s.p10;
    const double z = std::sqrt(diff * diff + 4.0 * y * y);
    detail::require(sum - z > 0.0, "rho_prime_z needs a full-rank sigma_Z");
    const double log_ratio = std::log(sum - z) - std::log(sum + z);
    ExtremalZ e;
    e.r00 = s.p00 - s.p11;
    e.r01 = s.p01 + 2.0 * s.p11 / (z * z) * (s.p01 * s.p01 - s.p01 * s.p10 + 2.0 * y * y) +
            2.0 * s.p11 / (log_ratio * z) * diff;
    e.r10 = 1.0 - e.r00 - e.r01;
    e.coherence = (2.0 * (s.p00 + s.p01) * s.p11 - (e.r01 - s.p01) * diff) / (2.0 * y);
    const auto b = sigma_z_bounds(s);
    if (b.x_prime > b.x_dprime_root * (1.0 + 1e-12) || min_eigenvalue<4>(e.matrix()) < -1e-10)
        throw Error(ErrorCode::invalid_parameter, "rho_prime_z needs x' <= x''");
    return e;
}

/// Symmetric-block inversion: the sigma_Z (p01 = p10) whose extremal state
/// has |00> population r00, equal |01>,|10> populations (1 - r00)/2 and
/// coherence y.
inline SigmaZ invert_symmetric(double r00, double y) {
    detail::require_unit(r00, "r00 must lie in [0, 1]");
    const double r01 = 0.5 * (1.0 - r00);
    if (!(y >= 0.0)) throw Error(ErrorCode::invalid_parameter, "coherence must be nonnegative");
    if (y > r01 + 1e-15) throw Error(ErrorCode::out_of_family, "coherence exceeds the |01> population");
    const double p11 = 4.0 * r00 * y * y / ((1.0 + r00) * (1.0 + r00) - 4.0 * y * y);
    SigmaZ s;
    s.p11 = p11;
    s.p01 = s.p10 = r01 - p11;
    s.p00 = r00 + p11;
    return s;
}

// ---------------------------------------------------------------------------
// State constructors

/// sqrt(P)|01> + e^{i phase} sqrt(1-P)|10>
inline Vec4 psi_p(double population01, double phase = 0.0) {
    detail::require_unit(population01, "population01 must lie in [0, 1]");
    return std::sqrt(population01) * ket("01") + std::polar(std::sqrt(1.0 - population01), phase) * ket("10");
}

inline DensityMatrix horodecki_state(double mixing, int sign = +1) {
    detail::require_unit(mixing, "mixing must lie in [0, 1]");
    detail::require(sign == 1 || sign == -1, "sign must be +1 or -1");
    const Vec4 bell = bell_state(sign > 0 ? BellLabel::psi_plus : BellLabel::psi_minus);
    return DensityMatrix::from_approximate(mixing * projector<4>(bell) + (1.0 - mixing) * projector<4>(ket("00")));
}

inline DensityMatrix vedral_plenio_state(double mixing) {
    detail::require_unit(mixing, "mixing must lie in [0, 1]");
    return DensityMatrix::from_approximate(mixing * projector<4>(bell_state(BellLabel::psi_plus)) +
                                           (1.0 - mixing) * projector<4>(ket("01")));
}

inline DensityMatrix generalized_vp_state(double mixing, double population01) {
    detail::require_unit(mixing, "mixing must lie in [0, 1]");
    return DensityMatrix::from_approximate(mixing * projector<4>(psi_p(population01)) +
                                           (1.0 - mixing) * projector<4>(ket("01")));
}

inline DensityMatrix gisin_state(double mixing, double population01) {
    detail::require_unit(mixing, "mixing must lie in [0, 1]");
    const double q = 0.5 * (1.0 - mixing);
    return DensityMatrix::from_approximate(q * projector<4>(ket("00")) + mixing * projector<4>(psi_p(population01)) +
                                           q * projector<4>(ket("11")));
}

inline DensityMatrix generalized_horodecki_state(double mixing, double population01) {
    detail::require_unit(mixing, "mixing must lie in [0, 1]");
    return DensityMatrix::from_approximate(mixing * projector<4>(psi_p(population01)) +
                                           (1.0 - mixing) * projector<4>(ket("00")));
}

/// State that minimizes fidelity for a given concurrence C <= 1/3.
inline DensityMatrix verstraete_state(double c) {
    detail::require(c >= 0.0 && c <= 1.0 / 3.0 + 1e-15, "Verstraete concurrence must lie in [0, 1/3]");
    const double root = std::sqrt(std::max(1.0 - 2.0 * c - 3.0 * c * c, 0.0));
    Mat4 m = Mat4::Zero();
    m(0, 0) = 0.5 * (1.0 + c);
    m(1, 1) = 0.25 * (1.0 - c + root);
    m(2, 2) = 0.25 * (1.0 - c - root);
    m(1, 2) = m(2, 1) = 0.5 * c;
    return DensityMatrix::from_approximate(m);
}

inline DensityMatrix bell_diagonal_state(const std::array<double, 4>& w, const BellBasis& basis = {}) {
    double total = 0.0;
    for (double v : w) {
        detail::require(v >= 0.0, "Bell-diagonal weights must be nonnegative");
        total += v;
    }
    detail::require(std::abs(total - 1.0) <= 1e-12, "Bell-diagonal weights must sum to 1");
    return DensityMatrix::from_approximate(basis.diagonal(w));
}

// ---------------------------------------------------------------------------
// Closed-form closest separable states

/// CSS of a Bell-diagonal state: the dominant weight is lowered to 1/2 and
/// the others rescaled by 1/(2(1 - r_max)). Separable inputs are returned
/// unchanged.
inline DensityMatrix css_bell_diagonal(const std::array<double, 4>& w, const BellBasis& basis = {}) {
    const DensityMatrix rho = bell_diagonal_state(w, basis);
    const int top = static_cast<int>(std::max_element(w.begin(), w.end()) - w.begin());
    if (w[top] <= 0.5) return rho;
    std::array<double, 4> s{};
    for (int k = 0; k < 4; ++k) s[k] = (k == top) ? 0.5 : w[k] / (2.0 * (1.0 - w[top]));
    return DensityMatrix::from_approximate(basis.diagonal(s));
}

/// q'^2 |00><00| + 2 p'q' |psi+-><psi+-| + p'^2 |11><11| with p' = p/2.
inline DensityMatrix css_horodecki(double mixing, int sign = +1) {
    detail::require_unit(mixing, "mixing must lie in [0, 1]");
    detail::require(sign == 1 || sign == -1, "sign must be +1 or -1");
    const double pp = 0.5 * mixing;
    const double qq = 1.0 - pp;
    const Vec4 bell = bell_state(sign > 0 ? BellLabel::psi_plus : BellLabel::psi_minus);
    return DensityMatrix::from_approximate(qq * qq * projector<4>(ket("00")) + 2.0 * pp * qq * projector<4>(bell) +
                                           pp * pp * projector<4>(ket("11")));
}

/// Dephased two-level CSS (1 - w)|01><01| + w|10><10|.
inline DensityMatrix css_dephased_01_10(double weight10) {
    detail::require(weight10 >= 0.0 && weight10 <= 0.5 + 1e-15, "|10> weight must lie in [0, 1/2]");
    return DensityMatrix::from_approximate((1.0 - weight10) * projector<4>(ket("01")) +
                                           weight10 * projector<4>(ket("10")));
}

inline DensityMatrix css_vedral_plenio(double mixing) {
    detail::require_unit(mixing, "mixing must lie in [0, 1]");
    return css_dephased_01_10(0.5 * mixing);
}

inline DensityMatrix css_generalized_vp(double mixing, double population01) {
    detail::require_unit(mixing, "mixing must lie in [0, 1]");
    detail::require_unit(population01, "population01 must lie in [0, 1]");
    const double w = mixing * (1.0 - population01);
    detail::require(w <= 0.5 + 1e-15, "generalized VP closed form needs p (1 - P) <= 1/2");
    return css_dephased_01_10(w);
}

/// CSS of a pure state: its Schmidt-basis dephasing. For a degenerate
/// Schmidt spectrum the first-qubit basis defaults to the computational one.
inline DensityMatrix css_pure(const PureState& psi) {
    Mat2 a;
    a << psi(0), psi(1), psi(2), psi(3);
    const auto s = eig_hermitian<2>(Mat2(a * a.adjoint()));
    Mat4 out = Mat4::Zero();
    for (int k = 0; k < 2; ++k) {
        const Vec2 u = s.vector(k);
        const Vec2 w = a.transpose() * u.conjugate();  // unnormalized partner, |w|^2 = Schmidt weight
        out += kron(Mat2(projector<2>(u)), Mat2(projector<2>(w)));
    }
    return DensityMatrix::from_approximate(out);
}

// ---------------------------------------------------------------------------
// Bell-state CSS family

/// 1/2 |beta_1><beta_1| + (1/2k) sum_i k_i |beta_i><beta_i|, k = k2 + k3 + k4.
inline DensityMatrix css_bell_family(const std::array<double, 3>& k, const BellBasis& basis = {}) {
    for (double v : k) detail::require(v >= 0.0, "k_i must be nonnegative");
    const double total = k[0] + k[1] + k[2];
    detail::require(total > 0.0, "k_i must not all vanish");
    return bell_diagonal_state({0.5, k[0] / (2 * total), k[1] / (2 * total), k[2] / (2 * total)}, basis);
}

inline DensityMatrix sigma_bell_prime() { return css_bell_family({1.0, 0.0, 0.0}); }
inline DensityMatrix sigma_bell_double_prime() { return css_bell_family({0.0, 1.0, 1.0}); }

/// Local rotation taking phi+ to (psi- + phi+)/sqrt2 while fixing psi+ and
/// phi-.
inline Mat4 bell_rotation() {
    const double h = 1.0 / std::sqrt(2.0);
    const Vec4 pp = bell_state(BellLabel::psi_plus), pm = bell_state(BellLabel::psi_minus);
    const Vec4 fp = bell_state(BellLabel::phi_plus), fm = bell_state(BellLabel::phi_minus);
    const Vec4 mixed = h * (pm + fp);
    const Vec4 partner = h * (pm - fp);
    return pp * pp.adjoint() + fm * fm.adjoint() + mixed * fp.adjoint() + partner * pm.adjoint();
}

/// 1/4 (2|psi+><psi+| + |psi><psi| + |phi-><phi-|), psi = (psi- + phi+)/sqrt2.
inline DensityMatrix sigma_bell_triple_prime() {
    const double h = 1.0 / std::sqrt(2.0);
    const Vec4 psi = h * (bell_state(BellLabel::psi_minus) + bell_state(BellLabel::phi_plus));
    return DensityMatrix::from_approximate(0.25 * (2.0 * projector<4>(bell_state(BellLabel::psi_plus)) +
                                                   projector<4>(psi) +
                                                   projector<4>(bell_state(BellLabel::phi_minus))));
}

/// CSS bundle for a member of the Bell-state CSS family. Rank-deficient
/// members are reached through full-rank neighbors along the segment toward
/// weights (1/2, 1/6, 1/6, 1/6).
inline CssSolution bell_family_css(const std::array<double, 3>& k, const BellBasis& basis = {}) {
    const DensityMatrix sigma = css_bell_family(k, basis);
    if (k[0] > 0 && k[1] > 0 && k[2] > 0) return make_css(sigma);
    const Mat4 center = basis.diagonal({0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6});
    return limiting_css([&](double eps) {
        return DensityMatrix::from_approximate((1.0 - eps) * sigma.mat() + eps * center);
    });
}

/// sigma'_Bell as the eps -> 0 limit of sigma_Z(eps, 1/2 - eps, 1/2 - eps, eps).
inline CssSolution sigma_bell_prime_css() {
    return limiting_css([](double eps) { return sigma_z_state({eps, 0.5 - eps, 0.5 - eps, eps}); });
}

/// sigma''_Bell as the eps -> 0 limit of sigma_Z(1/4 - eps, 1/4 + eps, 1/4 + eps, 1/4 - eps).
inline CssSolution sigma_bell_double_prime_css() {
    return limiting_css([](double eps) { return sigma_z_state({0.25 - eps, 0.25 + eps, 0.25 + eps, 0.25 - eps}); });
}

inline CssSolution sigma_bell_triple_prime_css() {
    const Mat4 u = bell_rotation();
    return limiting_css([&](double eps) {
        const Mat4 s = sigma_z_matrix({0.25 - eps, 0.25 + eps, 0.25 + eps, 0.25 - eps});
        return DensityMatrix::from_approximate(u * s * u.adjoint());
    });
}

// ---------------------------------------------------------------------------
// Numeric inversion inside the sigma_Z family

struct FamilyInversion {
    DensityMatrix sigma;             // closest separable state
    std::optional<SigmaZ> sigma_z;   // sigma_Z parameters when sigma is in that family
    double x = 0.0;                  // rho = sigma - x G(sigma)
    double residual = 0.0;           // max-norm residual of the target equations
    int start_index = -1;            // multistart that converged, -1 for closed-form branches
    bool separable_input = false;
    std::optional<WitnessReport> witness_check;
};

namespace detail {

// Residual of sigma_Z - x G against target (|00> pop, |01> pop, coherence).
inline Eigen::Vector3d z_family_residual(const SigmaZ& s, double x, const Eigen::Vector3d& target) {
    const Mat4 g = sigma_z_g_analytic(s);
    return {s.p00 - x * g(0, 0).real() - target(0), s.p01 - x * g(1, 1).real() - target(1),
            s.coherence() - x * g(1, 2).real() - target(2)};
}

inline bool z_interior(const SigmaZ& s) {
    return s.p00 > 1e-14 && s.p11 > 1e-14 && s.p01 > 0 && s.p10 > 0 && s.p01 * s.p10 - s.p00 * s.p11 > 1e-15;
}

template <class Map>
std::optional<std::pair<Eigen::Vector3d, int>> multistart(Map&& map, const std::vector<Eigen::Vector3d>& grid,
                                                          int starts, double tol) {
    std::vector<std::pair<double, Eigen::Vector3d>> ranked;
    for (const auto& g : grid) {
        if (auto r = map(g)) ranked.emplace_back(r->cwiseAbs().maxCoeff(), g);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const int n = std::min<int>(starts, static_cast<int>(ranked.size()));
    for (int i = 0; i < n; ++i) {
        const auto res = damped_newton<3>(map, ranked[i].second, 1e-13);
        if (res.residual <= tol) return std::make_pair(res.x, i);
    }
    return std::nullopt;
}

inline std::optional<WitnessReport> validate_inversion(const FamilyInversion& inv, const DensityMatrix& target) {
    CssSolution css = make_css(inv.sigma);
    const DensityMatrix rho = generate_rho(css, std::min(inv.x, css.x_max));
    if (max_abs<4>(Mat4(rho.mat() - target.mat())) > 1e-9)
        throw Error(ErrorCode::inconsistency, "inverted CSS does not regenerate the target state");
    Rng rng(default_seed);
    return verify_witness(witness(css, inv.x), css, target, rng, 1000);
}

}  // namespace detail

/// CSS of the Gisin state, solved inside the sigma_Z family with equal
/// |00>,|11> populations. Unknowns: that population, the |01> population,
/// and x.
inline FamilyInversion css_gisin(double mixing, double population01) {
    detail::require_unit(mixing, "mixing must lie in [0, 1]");
    detail::require_unit(population01, "population01 must lie in [0, 1]");
    const DensityMatrix rho = gisin_state(mixing, population01);
    const double q = 0.5 * (1.0 - mixing);
    const double coh = mixing * std::sqrt(population01 * (1.0 - population01));
    if (coh <= q) return {rho, std::nullopt, 0.0, 0.0, -1, true, std::nullopt};
    if (mixing == 1.0) {
        // Pure limit: the equal-population family collapses onto the Bell
        // CSS for P = 1/2 and onto the dephased CSS otherwise.
        const DensityMatrix sigma = population01 == 0.5 ? sigma_bell_double_prime()
                                                        : css_pure(PureState(psi_p(population01)));
        return {sigma, std::nullopt, 0.0, 0.0, -1, false, std::nullopt};
    }
    if (std::abs(population01 - 0.5) <= 1e-12) {
        // Bell-diagonal input: the CSS is sigma''_Bell, whose partial transpose
        // has a two-dimensional kernel, and the Bell weight grows as 1/2 + x/4.
        const SigmaZ s{0.25, 0.25, 0.25, 0.25};
        FamilyInversion inv{sigma_bell_double_prime(), s, 4.0 * mixing - 2.0, 0.0, -1, false, std::nullopt};
        inv.residual = max_abs<4>(Mat4(generate_rho(sigma_bell_double_prime_css(), inv.x).mat() - rho.mat()));
        return inv;
    }
    const Eigen::Vector3d target(q, mixing * population01, coh);
    auto to_sigma = [](const Eigen::Vector3d& v) { return SigmaZ{v(0), v(1), 1.0 - 2.0 * v(0) - v(1), v(0)}; };
    auto map = [&](const Eigen::Vector3d& v) -> std::optional<Eigen::Vector3d> {
        const SigmaZ s = to_sigma(v);
        if (!detail::z_interior(s) || !(v(2) > 0.0)) return std::nullopt;
        return detail::z_family_residual(s, v(2), target);
    };
    std::vector<Eigen::Vector3d> grid;
    for (int ix = 1; ix <= 24; ++ix) {
        const double x = 2.0 * ix / 25.0;
        const double a = q / (1.0 - 0.5 * x);
        if (!(a < 0.5)) continue;
        for (int is = 1; is <= 24; ++is) grid.emplace_back(a, (1.0 - 2.0 * a) * is / 25.0, x);
    }
    const auto sol = detail::multistart(map, grid, 16, 1e-10);
    if (!sol) throw Error(ErrorCode::no_solution, "Gisin inversion did not converge from any start");
    const SigmaZ s = to_sigma(sol->first);
    FamilyInversion inv{sigma_z_state(s), s, sol->first(2), map(sol->first)->cwiseAbs().maxCoeff(), sol->second,
                        false, std::nullopt};
    inv.witness_check = detail::validate_inversion(inv, rho);
    return inv;
}

/// CSS of the generalized Horodecki state p|psi_P><psi_P| + (1-p)|00><00|,
/// solved inside the sigma_Z family at x = x' (vanishing |11> population).
inline FamilyInversion css_generalized_horodecki(double mixing, double population01) {
    detail::require_unit(mixing, "mixing must lie in [0, 1]");
    detail::require_unit(population01, "population01 must lie in [0, 1]");
    const DensityMatrix rho = generalized_horodecki_state(mixing, population01);
    const double coh = mixing * std::sqrt(population01 * (1.0 - population01));
    if (coh == 0.0) return {rho, std::nullopt, 0.0, 0.0, -1, true, std::nullopt};
    if (mixing == 1.0) return {css_pure(PureState(psi_p(population01))), std::nullopt, 0.0, 0.0, -1, false, std::nullopt};
    const double r00 = 1.0 - mixing;

    if (std::abs(population01 - 0.5) <= 1e-12) {
        // Symmetric block: sigma and (|phi><phi|)^T_B commute, so
        // rho = sigma - x Phi sigma is polynomial in the unknowns
        // (p00, p01 = p10). The solution sits on the rank-3 boundary.
        auto map2 = [&](const Eigen::Vector2d& v) -> std::optional<Eigen::Vector2d> {
            const double p00 = v(0), p01 = v(1), p11 = 1.0 - v(0) - 2.0 * v(1);
            if (!(p11 > 0.0 && p00 >= p11 && p01 > 0.0) || p01 * p01 - p00 * p11 < -1e-9) return std::nullopt;
            const double y = std::sqrt(p00 * p11) * (p00 + p01) / p00;
            return Eigen::Vector2d(p00 - p11 - r00, y - coh);
        };
        std::vector<Eigen::Vector2d> grid;
        for (int i = 1; i < 40; ++i)
            for (int j = 1; j < 40; ++j) {
                const double p11 = mixing * 0.5 * i / 40.0;
                grid.emplace_back(r00 + p11, (1.0 - r00 - 2.0 * p11) * 0.5 * j / 40.0);
            }
        std::vector<std::pair<double, Eigen::Vector2d>> ranked;
        for (const auto& g : grid)
            if (auto r = map2(g)) ranked.emplace_back(r->cwiseAbs().maxCoeff(), g);
        std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (int i = 0; i < std::min<int>(16, static_cast<int>(ranked.size())); ++i) {
            const auto res = damped_newton<2>(map2, ranked[i].second, 1e-14);
            if (res.residual > 1e-10) continue;
            SigmaZ s{res.x(0), res.x(1), res.x(1), 1.0 - res.x(0) - 2.0 * res.x(1)};
            const double x = (s.p00 + s.p11) / s.p00;
            return {DensityMatrix::from_approximate(sigma_z_matrix(s)), s, x, res.residual, i, false, std::nullopt};
        }
        throw Error(ErrorCode::no_solution, "symmetric generalized Horodecki inversion did not converge");
    }

    const Eigen::Vector3d target(r00, mixing * population01, coh);
    auto to_sigma = [](const Eigen::Vector3d& v) { return SigmaZ{v(0), v(1), v(2), 1.0 - v(0) - v(1) - v(2)}; };
    auto map = [&](const Eigen::Vector3d& v) -> std::optional<Eigen::Vector3d> {
        const SigmaZ s = to_sigma(v);
        if (!detail::z_interior(s) || s.p00 < s.p11) return std::nullopt;
        return detail::z_family_residual(s, (s.p00 + s.p11) / s.p00, target);
    };
    std::vector<Eigen::Vector3d> grid;
    for (int i = 1; i <= 24; ++i) {
        const double p11 = 0.5 * mixing * i / 25.0;
        const double p00 = r00 + p11;
        const double rest = 1.0 - p00 - p11;
        if (!(rest > 0.0)) continue;
        for (int j = 1; j <= 24; ++j) grid.emplace_back(p00, rest * j / 25.0, rest * (25 - j) / 25.0);
    }
    const auto sol = detail::multistart(map, grid, 16, 1e-10);
    if (!sol) throw Error(ErrorCode::no_solution, "generalized Horodecki inversion did not converge from any start");
    const SigmaZ s = to_sigma(sol->first);
    FamilyInversion inv{sigma_z_state(s), s, (s.p00 + s.p11) / s.p00, map(sol->first)->cwiseAbs().maxCoeff(),
                        sol->second, false, std::nullopt};
    inv.witness_check = detail::validate_inversion(inv, rho);
    return inv;
}

/// E_R of the generalized Horodecki state from its inverted CSS:
/// -H2(r00) - r00 log2 p00 - f_-^2 log2 l_- - f_+^2 log2 l_+, with l_+- the
/// |01>,|10>-block eigenvalues of sigma and f_+- the overlaps of
/// sqrt(r01)|01> + sqrt(r10)|10> with the matching eigenvectors.
inline double ree_generalized_horodecki(double mixing, double population01) {
    const FamilyInversion inv = css_generalized_horodecki(mixing, population01);
    const DensityMatrix rho = generalized_horodecki_state(mixing, population01);
    if (!inv.sigma_z) return relative_entropy(rho, inv.sigma);
    const SigmaZ& s = *inv.sigma_z;
    const double r00 = 1.0 - mixing, r01 = mixing * population01, r10 = mixing * (1.0 - population01);
    const double y = s.coherence();
    const double z = std::sqrt((s.p01 - s.p10) * (s.p01 - s.p10) + 4.0 * y * y);
    double value = -binary_entropy(r00) - (r00 > 0 ? r00 * std::log2(s.p00) : 0.0);
    for (double sign : {-1.0, 1.0}) {
        const double lambda = 0.5 * (s.p01 + s.p10 + sign * z);
        const double a = lambda - s.p10;
        const double f = (a * std::sqrt(r01) + y * std::sqrt(r10)) / std::sqrt(a * a + y * y);
        const double f2 = f * f;
        if (f2 < 1e-20) continue;
        if (!(lambda > 0.0)) throw Error(ErrorCode::inconsistency, "support of rho exceeds that of its CSS");
        value -= f2 * std::log2(lambda);
    }
    const double direct = relative_entropy(rho, inv.sigma);
    if (!(std::abs(value - direct) <= 1e-8))
        throw Error(ErrorCode::inconsistency, "closed REE of the generalized Horodecki state disagrees with S(rho||sigma)");
    return value;
}

// ---------------------------------------------------------------------------
// Dispatch on FamilyParams

inline DensityMatrix make_state(const FamilyParams& params) {
    return std::visit(
        [](const auto& p) -> DensityMatrix {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BellDiagonalParams>) return bell_diagonal_state(p.weights);
            else if constexpr (std::is_same_v<T, SigmaZ>) return sigma_z_state(p);
            else if constexpr (std::is_same_v<T, HorodeckiParams>) return horodecki_state(p.mixing, p.sign);
            else if constexpr (std::is_same_v<T, VedralPlenioParams>) return vedral_plenio_state(p.mixing);
            else if constexpr (std::is_same_v<T, GeneralizedVpParams>) return generalized_vp_state(p.mixing, p.population01);
            else if constexpr (std::is_same_v<T, GisinParams>) return gisin_state(p.mixing, p.population01);
            else if constexpr (std::is_same_v<T, GeneralizedHorodeckiParams>)
                return generalized_horodecki_state(p.mixing, p.population01);
            else if constexpr (std::is_same_v<T, VerstraeteParams>) return verstraete_state(p.concurrence);
            else return css_bell_family(p.k);
        },
        params);
}

inline std::string family_name(const FamilyParams& params) {
    static const char* names[] = {"bell-diagonal", "sigma-z", "horodecki", "vedral-plenio", "generalized-vp",
                                  "gisin", "generalized-horodecki", "verstraete", "bell-css"};
    return names[params.index()];
}

/// Closed-form (or numerically inverted) CSS of a family member, when known.
inline std::optional<DensityMatrix> family_css(const FamilyParams& params) {
    return std::visit(
        [](const auto& p) -> std::optional<DensityMatrix> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BellDiagonalParams>) return css_bell_diagonal(p.weights);
            else if constexpr (std::is_same_v<T, SigmaZ>) return sigma_z_state(p);
            else if constexpr (std::is_same_v<T, HorodeckiParams>) return css_horodecki(p.mixing, p.sign);
            else if constexpr (std::is_same_v<T, VedralPlenioParams>) return css_vedral_plenio(p.mixing);
            else if constexpr (std::is_same_v<T, GeneralizedVpParams>) {
                if (p.mixing * (1.0 - p.population01) > 0.5) return std::nullopt;
                return css_generalized_vp(p.mixing, p.population01);
            } else if constexpr (std::is_same_v<T, GisinParams>) return css_gisin(p.mixing, p.population01).sigma;
            else if constexpr (std::is_same_v<T, GeneralizedHorodeckiParams>)
                return css_generalized_horodecki(p.mixing, p.population01).sigma;
            else if constexpr (std::is_same_v<T, VerstraeteParams>) {
                // Verstraete states are generalized Horodecki states with
                // r00 = (1 + C)/2 and r01 = d+.
                const DensityMatrix v = verstraete_state(p.concurrence);
                const double mixing = 1.0 - v(0, 0).real();
                if (mixing <= 0.0) return v;
                return css_generalized_horodecki(mixing, v(1, 1).real() / mixing).sigma;
            } else return std::nullopt;
        },
        params);
}

// ---------------------------------------------------------------------------
// Nonuniqueness of the Bell-state CSS

struct BellCssRow {
    std::string label;
    std::optional<std::array<double, 3>> k;
    double s_bell = 0.0;            // S(|beta_1><beta_1| || sigma)
    double x_max = 0.0;
    double regenerated_error = 0.0; // ||rho(x_max) - |beta_1><beta_1| ||_max
    // at the probe x
    double lambda1 = 0.0;
    double ree = 0.0;
    double negativity = 0.0;
    double concurrence = 0.0;
    double horodecki_m = 0.0;
    Mat4 rho_probe;
};

struct BellNonuniquenessReport {
    double x_probe = 1.0;
    std::vector<BellCssRow> rows;
    double ree_spread = 0.0;          // max - min across rows
    double negativity_spread = 0.0;
    double concurrence_spread = 0.0;
    double lambda1_spread = 0.0;
    double horodecki_m_spread = 0.0;
    double rho_spread = 0.0;          // max pairwise ||rho_a - rho_b||_max at the probe
};

inline BellCssRow bell_css_row(std::string label, std::optional<std::array<double, 3>> k, const CssSolution& css,
                               double x_probe) {
    BellCssRow row;
    row.label = std::move(label);
    row.k = k;
    const DensityMatrix bell = DensityMatrix::from_pure(PureState(bell_state(BellLabel::psi_plus)));
    row.s_bell = relative_entropy(bell, css.sigma);
    row.x_max = css.x_max;
    const DensityMatrix top = generate_rho(css, css.x_max);
    row.regenerated_error = max_abs<4>(Mat4(top.mat() - bell.mat()));
    const DensityMatrix rho = generate_rho(css, x_probe);
    row.rho_probe = rho.mat();
    row.lambda1 = eig_hermitian<4>(rho.mat()).max_value();
    row.ree = ree_closed(rho, css, x_probe);
    row.negativity = negativity(rho);
    row.concurrence = concurrence(rho);
    row.horodecki_m = horodecki_m(rho);
    return row;
}

inline BellNonuniquenessReport bell_nonuniqueness_report(const std::vector<std::array<double, 3>>& ks = {},
                                                         double x_probe = 1.0) {
    BellNonuniquenessReport rep;
    rep.x_probe = x_probe;
    rep.rows.push_back(bell_css_row("sigma'_Bell", std::array<double, 3>{1, 0, 0}, sigma_bell_prime_css(), x_probe));
    rep.rows.push_back(
        bell_css_row("sigma''_Bell", std::array<double, 3>{0, 1, 1}, sigma_bell_double_prime_css(), x_probe));
    rep.rows.push_back(bell_css_row("sigma'''_Bell", std::nullopt, sigma_bell_triple_prime_css(), x_probe));
    for (const auto& k : ks) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "k=(%g,%g,%g)", k[0], k[1], k[2]);
        rep.rows.push_back(bell_css_row(buf, k, bell_family_css(k), x_probe));
    }
    auto spread = [&](auto member) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& r : rep.rows) {
            lo = std::min(lo, member(r));
            hi = std::max(hi, member(r));
        }
        return hi - lo;
    };
    rep.ree_spread = spread([](const BellCssRow& r) { return r.ree; });
    rep.negativity_spread = spread([](const BellCssRow& r) { return r.negativity; });
    rep.concurrence_spread = spread([](const BellCssRow& r) { return r.concurrence; });
    rep.lambda1_spread = spread([](const BellCssRow& r) { return r.lambda1; });
    rep.horodecki_m_spread = spread([](const BellCssRow& r) { return r.horodecki_m; });
    for (std::size_t a = 0; a < rep.rows.size(); ++a)
        for (std::size_t b = a + 1; b < rep.rows.size(); ++b)
            rep.rho_spread =
                std::max(rep.rho_spread, max_abs<4>(Mat4(rep.rows[a].rho_probe - rep.rows[b].rho_probe)));
    return rep;
}

}  // namespace ree
