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

// Forward REE solver. Minimizes -tr rho ln X over the PPT set (REE) or over
// the Rains set {tau >= 0, tr|tau^T_B| <= 1} with a log-barrier
// path-following Newton method. Every stage ends at an approximately
// central point, where the barrier duality gap m/t bounds the distance to
// the optimum.

#include <array>
#include <optional>
#include <vector>

#include "ree/divided_difference.hpp"
#include "ree/measures.hpp"
#include "ree/qmat.hpp"
#include "ree/random.hpp"

namespace ree {

enum class OracleMode { ree, rains };

struct OracleOptions {
    double tol = 1e-8;               // target gap in bits
    std::uint64_t seed = default_seed;
    bool random_start = false;       // start from a seeded random interior point
    int max_iterations = 50000;      // Newton steps
    double certificate_tol = 1e-6;
};

struct OracleResult {
    double value = 0.0;               // bits
    Mat4 argmin = Mat4::Zero();       // sigma' (REE) or tau' (Rains, unnormalized)
    int iterations = 0;
    bool converged = false;
    double gradient_residual = 0.0;   // max |grad(t f + barrier)| / t at the last point
    double duality_gap = 0.0;         // m / t in bits
    double certificate = 0.0;         // min over product states of tr Z sigma'
    bool monotone = true;             // stage values nonincreasing
    std::vector<double> stage_values; // objective at the end of each stage, bits
    std::optional<double> rains_gap;  // |R - E_R| when both were computed
    std::string diagnostic;
};

namespace oracle_detail {

using Eigen::VectorXd;
using Eigen::MatrixXd;

struct Spectrum {
    Eigen::Vector4d values;
    Mat4 vectors;
};

inline std::optional<Spectrum> positive_spectrum(const Mat4& x) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(hermitize<4>(x));
    if (es.info() != Eigen::Success || !(es.eigenvalues()(0) > 0.0)) return std::nullopt;
    return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

// -tr rho ln X and its derivatives along the basis directions d[k].
struct LogObjective {
    double value = 0.0;
    VectorXd grad;
    MatrixXd hess;
    Mat4 xi;  // U (ln[l_i, l_j] o rho~) U^dagger, so that grad_k = -tr(xi d_k)
};

inline LogObjective log_objective(const Mat4& rho, const Spectrum& s, const std::vector<Mat4>& d, bool want_hess) {
    const int n = static_cast<int>(d.size());
    LogObjective out;
    const Mat4& u = s.vectors;
    const Mat4 rt = u.adjoint() * rho * u;
    Eigen::Matrix4d l1;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) l1(i, j) = log_divided_difference(s.values(i), s.values(j));
    Mat4 w;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) w(i, j) = l1(i, j) * rt(i, j);
    out.xi = u * w * u.adjoint();
    for (int i = 0; i < 4; ++i) out.value -= rt(i, i).real() * std::log(s.values(i));
    std::vector<Mat4> dt(n);
    out.grad.resize(n);
    for (int k = 0; k < n; ++k) {
        dt[k] = u.adjoint() * d[k] * u;
        out.grad(k) = -(w.transpose().cwiseProduct(dt[k])).sum().real();
    }
    if (!want_hess) return out;
    double t2[4][4][4];
    for (int i = 0; i < 4; ++i)
        for (int m = 0; m < 4; ++m)
            for (int j = 0; j < 4; ++j) t2[i][m][j] = log_second_divided_difference(s.values(i), s.values(m), s.values(j));
    // a_k(m, j) = sum_i rho~_ji T_imj Dk~_im, then A_kl = sum_mj a_k(m, j) Dl~_mj
    std::vector<Mat4> a(n);
    for (int k = 0; k < n; ++k) {
        Mat4 ak = Mat4::Zero();
        for (int m = 0; m < 4; ++m)
            for (int j = 0; j < 4; ++j) {
                cplx acc = 0.0;
                for (int i = 0; i < 4; ++i) acc += rt(j, i) * t2[i][m][j] * dt[k](i, m);
                ak(m, j) = acc;
            }
        a[k] = ak;
    }
    out.hess.resize(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l) {
            const double v = -2.0 * (a[k].cwiseProduct(dt[l])).sum().real();
            out.hess(k, l) = out.hess(l, k) = v;
        }
    return out;
}

// Linear matrix map theta -> X0 + sum theta_k D_k that must stay positive definite.
struct LmiBlock {
    Mat4 x0;
    std::vector<Mat4> d;
    Mat4 at(const VectorXd& th) const {
        Mat4 x = x0;
        for (int k = 0; k < static_cast<int>(d.size()); ++k) x += th(k) * d[k];
        return x;
    }
};

// Scalar linear constraint c0 - a.theta > 0.
struct LinearBlock {
    double c0 = 1.0;
    VectorXd a;
};

struct Problem {
    Mat4 rho;
    LmiBlock objective;           // X in -tr rho ln X
    std::vector<LmiBlock> lmis;   // barrier blocks
    std::vector<LinearBlock> lin;
    int barrier_parameter() const { return 4 * static_cast<int>(lmis.size()) + static_cast<int>(lin.size()); }
};

struct Eval {
    double f = 0.0;     // -tr rho ln X, nats
    double phi = 0.0;   // barrier
    VectorXd grad_f, grad_phi;
    MatrixXd hess_f, hess_phi;
    Mat4 xi;
    Spectrum spec;
};

inline std::optional<Eval> evaluate(const Problem& p, const VectorXd& th, bool derivatives) {
    const int n = static_cast<int>(th.size());
    Eval e;
    auto s = positive_spectrum(p.objective.at(th));
    if (!s) return std::nullopt;
    e.spec = *s;
    e.grad_phi = VectorXd::Zero(n);
    e.hess_phi = MatrixXd::Zero(n, n);
    for (const auto& b : p.lmis) {
        const Mat4 x = b.at(th);
        Eigen::LLT<Mat4> llt(hermitize<4>(x));
        if (llt.info() != Eigen::Success) return std::nullopt;
        double logdet = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double dii = llt.matrixLLT()(i, i).real();
            if (!(dii > 0.0)) return std::nullopt;
            logdet += 2.0 * std::log(dii);
        }
        e.phi -= logdet;
        if (!derivatives) continue;
        const Mat4 xinv = llt.solve(Mat4::Identity());
        std::vector<Mat4> y(n);
        for (int k = 0; k < n; ++k) {
            y[k] = xinv * b.d[k];
            e.grad_phi(k) -= y[k].trace().real();
        }
        for (int k = 0; k < n; ++k)
            for (int l = k; l < n; ++l) {
                const double v = (y[k].cwiseProduct(y[l].transpose())).sum().real();
                e.hess_phi(k, l) += v;
                if (l != k) e.hess_phi(l, k) += v;
            }
    }
    for (const auto& c : p.lin) {
        const double slack = c.c0 - c.a.dot(th);
        if (!(slack > 0.0)) return std::nullopt;
        e.phi -= std::log(slack);
        if (!derivatives) continue;
        e.grad_phi += c.a / slack;
        e.hess_phi += c.a * c.a.transpose() / (slack * slack);
    }
    if (derivatives) {
        auto lo = log_objective(p.rho, e.spec, p.objective.d, true);
        e.f = lo.value;
        e.grad_f = lo.grad;
        e.hess_f = lo.hess;
        e.xi = lo.xi;
    } else {
        const Mat4 rt = e.spec.vectors.adjoint() * p.rho * e.spec.vectors;
        for (int i = 0; i < 4; ++i) e.f -= rt(i, i).real() * std::log(e.spec.values(i));
    }
    return e;
}

inline double entropy_bits(const Mat4& rho) {
    return entropy_of_spectrum<4>(eig_hermitian<4>(rho).values);
}

// Minimum of <a b| z |a b> over product pure states by alternating
// eigenvector updates from several starts.
inline double min_over_product_states(const Mat4& z, Rng& rng, int starts = 24) {
    auto reduce_second = [&](const Vec2& a) {
        Mat2 m;
        for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2) {
                cplx acc = 0.0;
                for (int a1 = 0; a1 < 2; ++a1)
                    for (int a2 = 0; a2 < 2; ++a2) acc += std::conj(a(a1)) * z(2 * a1 + b1, 2 * a2 + b2) * a(a2);
                m(b1, b2) = acc;
            }
        return m;
    };
    auto reduce_first = [&](const Vec2& b) {
        Mat2 m;
        for (int a1 = 0; a1 < 2; ++a1)
            for (int a2 = 0; a2 < 2; ++a2) {
                cplx acc = 0.0;
                for (int b1 = 0; b1 < 2; ++b1)
                    for (int b2 = 0; b2 < 2; ++b2) acc += std::conj(b(b1)) * z(2 * a1 + b1, 2 * a2 + b2) * b(b2);
                m(a1, a2) = acc;
            }
        return m;
    };
    auto lowest = [](const Mat2& m) {
        Eigen::SelfAdjointEigenSolver<Mat2> es(hermitize<2>(m));
        return std::make_pair(es.eigenvalues()(0), Vec2(es.eigenvectors().col(0)));
    };
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < starts; ++s) {
        Vec2 b;
        if (s < 6) {
            static const cplx i1(0.0, 1.0);
            const double h = 1.0 / std::sqrt(2.0);
            const Vec2 axes[6] = {Vec2(1, 0), Vec2(0, 1), Vec2(h, h), Vec2(h, -h), Vec2(h, h * i1), Vec2(h, -h * i1)};
            b = axes[s];
        } else {
            b = random_vector<2>(rng).normalized();
        }
        double prev = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 200; ++it) {
            auto [va, a] = lowest(reduce_first(b));
            auto [vb, bb] = lowest(reduce_second(a));
            b = bb;
            best = std::min({best, va, vb});
            if (prev - vb < 1e-15) break;
            prev = vb;
        }
    }
    return best;
}

struct PathResult {
    VectorXd theta;
    Eval last;
    int iterations = 0;
    double t = 1.0;
    bool budget_exhausted = false;
    bool centered = true;
    std::vector<double> stage_f;
};

inline PathResult follow_path(const Problem& p, VectorXd th, double tol_bits, int max_iterations) {
    const int m = p.barrier_parameter();
    // The suboptimality on the central path is a fraction of m/t; running
    // to a tenth of tol keeps oracle values within 1e-9 of feasible points.
    const double gap_target = 0.1 * tol_bits * std::log(2.0);
    PathResult out;
    double t = 1.0;
    for (;;) {
        // centering at t
        std::optional<Eval> e = evaluate(p, th, true);
        if (!e) throw Error(ErrorCode::contract_violation, "oracle iterate left the feasible interior");
        double prev_dec2 = std::numeric_limits<double>::infinity();
        for (int stage_steps = 0;; ++stage_steps) {
            if (out.iterations >= max_iterations) {
                out.budget_exhausted = true;
                break;
            }
            const VectorXd g = t * e->grad_f + e->grad_phi;
            const MatrixXd h = t * e->hess_f + e->hess_phi;
            Eigen::LDLT<MatrixXd> ldlt(h);
            VectorXd step = ldlt.solve(-g);
            double dec2 = -g.dot(step);
            if (!step.allFinite() || !(dec2 > 0.0)) {
                // fall back to a regularized solve
                MatrixXd hr = h;
                hr.diagonal().array() += 1e-12 * h.diagonal().cwiseAbs().maxCoeff() + 1e-300;
                step = hr.ldlt().solve(-g);
                dec2 = -g.dot(step);
                if (!step.allFinite() || !(dec2 > 0.0)) break;
            }
            ++out.iterations;
            if (0.5 * dec2 <= 1e-10) break;
            // Near the center Newton contracts quadratically; a decrement
            // that stops shrinking is sitting on the round-off floor.
            if (dec2 < 1e-6 && dec2 > 0.25 * prev_dec2) break;
            if (stage_steps >= 500) {
                out.centered = false;
                break;
            }
            prev_dec2 = dec2;
            const double fcur = t * e->f + e->phi;
            double alpha = 1.0;
            std::optional<Eval> next;
            while (alpha > 1e-14) {
                const VectorXd trial = th + alpha * step;
                auto ev = evaluate(p, trial, false);
                if (ev && t * ev->f + ev->phi <= fcur - 0.25 * alpha * dec2) {
                    th = trial;
                    next = evaluate(p, th, true);
                    break;
                }
                alpha *= 0.5;
            }
            if (!next) {
                // Armijo fails only once the decrement is at round-off level
                out.centered = dec2 < 1e-6;
                break;
            }
            e = next;
        }
        out.last = *e;
        out.stage_f.push_back(e->f);
        if (out.budget_exhausted || m / t <= gap_target * (1.0 + 1e-12)) break;
        t = std::min(10.0 * t, m / gap_target);
    }
    out.theta = th;
    out.t = t;
    return out;
}

inline std::array<Mat4, 16> pauli_products() {
    std::array<Mat4, 16> out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) out[4 * a + b] = kron(pauli::matrix(a), pauli::matrix(b));
    return out;
}

inline VectorXd coordinates(const Mat4& x, int first, double scale) {
    const auto ps = pauli_products();
    VectorXd th(16 - first);
    for (int k = first; k < 16; ++k) th(k - first) = (ps[k] * x).trace().real() / scale;
    return th;
}

inline OracleResult finish(const Problem& p, const PathResult& path, const Mat4& argmin, double s_rho) {
    OracleResult r;
    r.argmin = argmin;
    r.iterations = path.iterations;
    r.value = path.last.f / std::log(2.0) - s_rho;
    r.duality_gap = p.barrier_parameter() / path.t / std::log(2.0);
    r.gradient_residual = (path.last.grad_f + path.last.grad_phi / path.t).cwiseAbs().maxCoeff();
    for (double f : path.stage_f) r.stage_values.push_back(f / std::log(2.0) - s_rho);
    for (std::size_t k = 1; k < r.stage_values.size(); ++k)
        if (r.stage_values[k] > r.stage_values[k - 1] + 1e-12 * std::max(1.0, std::abs(r.stage_values[k - 1])))
            r.monotone = false;
    return r;
}

}  // namespace oracle_detail

/// REE of rho: min over PPT (= separable for two qubits) sigma' of
/// S(rho || sigma'), in bits.
inline OracleResult minimize_ree(const DensityMatrix& rho, const OracleOptions& opt = {}) {
    using namespace oracle_detail;
    const auto ps = pauli_products();
    Problem p;
    p.rho = rho.mat();
    p.objective.x0 = Mat4::Identity() / 4.0;
    for (int k = 1; k < 16; ++k) p.objective.d.push_back(ps[k] / 4.0);
    LmiBlock pt{Mat4::Identity() / 4.0, {}};
    for (const auto& dk : p.objective.d) pt.d.push_back(partial_transpose(dk));
    p.lmis = {p.objective, pt};

    Mat4 start = Mat4::Identity() / 4.0;
    if (opt.random_start) {
        Rng rng(opt.seed);
        start = 0.5 * start + 0.5 * random_separable(rng).mat();
    }
    const PathResult path = follow_path(p, coordinates(start, 1, 1.0), opt.tol, opt.max_iterations);
    const Mat4 sigma = p.objective.at(path.theta);
    OracleResult r = finish(p, path, sigma, entropy_bits(rho.mat()));

    Rng rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    r.certificate = min_over_product_states(Mat4(Mat4::Identity() - path.last.xi), rng);
    r.converged = !path.budget_exhausted && r.monotone && r.certificate >= -opt.certificate_tol;
    if (path.budget_exhausted) r.diagnostic = "iteration budget exhausted";
    else if (!r.monotone) r.diagnostic = "objective increased between stages";
    else if (!r.converged) r.diagnostic = "witness certificate below tolerance";
    return r;
}

/// Rains bound: min of S(rho || tau') over tau' >= 0 with tr|tau'^T_B| <= 1,
/// parametrized as tau' = (P - N)^T_B with P, N >= 0 and tr P + tr N <= 1.
inline OracleResult minimize_rains(const DensityMatrix& rho, const OracleOptions& opt = {}) {
    using namespace oracle_detail;
    const auto ps = pauli_products();
    const int n = 32;
    Problem p;
    p.rho = rho.mat();
    LmiBlock pos{Mat4::Zero(), std::vector<Mat4>(n, Mat4::Zero())};
    LmiBlock neg = pos;
    LmiBlock tau = pos;
    LinearBlock budget{1.0, VectorXd::Zero(n)};
    for (int k = 0; k < 16; ++k) {
        const Mat4 e = ps[k] / 2.0;
        pos.d[k] = e;
        neg.d[16 + k] = e;
        tau.d[k] = partial_transpose(e);
        tau.d[16 + k] = -partial_transpose(e);
        budget.a(k) = budget.a(16 + k) = e.trace().real();
    }
    p.objective = tau;
    p.lmis = {tau, pos, neg};
    p.lin = {budget};

    Mat4 p0 = 0.2 * Mat4::Identity(), n0 = 0.02 * Mat4::Identity();
    if (opt.random_start) {
        Rng rng(opt.seed);
        p0 = 0.15 * Mat4::Identity() + 0.05 * random_density_matrix(rng).mat();
    }
    VectorXd th(n);
    th << coordinates(p0, 0, 2.0), coordinates(n0, 0, 2.0);
    const PathResult path = follow_path(p, th, opt.tol, opt.max_iterations);
    OracleResult r = finish(p, path, tau.at(path.theta), entropy_bits(rho.mat()));
    r.certificate = -r.duality_gap;
    r.converged = !path.budget_exhausted && r.monotone;
    if (path.budget_exhausted) r.diagnostic = "iteration budget exhausted";
    else if (!r.monotone) r.diagnostic = "objective increased between stages";
    return r;
}

/// Runs both oracles and records |R - E_R| on the Rains result.
inline std::pair<OracleResult, OracleResult> ree_and_rains(const DensityMatrix& rho, const OracleOptions& opt = {}) {
    OracleResult e = minimize_ree(rho, opt);
    OracleResult r = minimize_rains(rho, opt);
    r.rains_gap = std::abs(r.value - e.value);
    e.rains_gap = r.rains_gap;
    return {e, r};
}

}  // namespace ree
