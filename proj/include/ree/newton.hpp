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

#include <Eigen/Dense>
#include <cmath>
#include <optional>

namespace ree {

template <int N>
struct NewtonResult {
    Eigen::Matrix<double, N, 1> x;
    double residual = 0.0;  // max-norm
    int iterations = 0;
    bool converged = false;
};

/// Damped Newton for square systems F(x) = 0 with a finite-difference
/// Jacobian. F returns nullopt outside its domain; steps are halved until
/// they land inside the domain and decrease ||F||.
template <int N, class F>
NewtonResult<N> damped_newton(F&& f, Eigen::Matrix<double, N, 1> x, double tol = 1e-12, int max_iter = 200) {
    using V = Eigen::Matrix<double, N, 1>;
    using M = Eigen::Matrix<double, N, N>;
    NewtonResult<N> out;
    std::optional<V> r = f(x);
    if (!r) return out;
    for (int it = 0; it < max_iter; ++it) {
        out.iterations = it;
        const double norm = r->norm();
        if (r->cwiseAbs().maxCoeff() <= tol) break;
        M jac;
        for (int k = 0; k < N; ++k) {
            const double h = 1e-7 * std::max(1.0, std::abs(x(k)));
            V xp = x, xm = x;
            xp(k) += h;
            xm(k) -= h;
            auto fp = f(xp), fm = f(xm);
            if (fp && fm) jac.col(k) = (*fp - *fm) / (2 * h);
            else if (fp) jac.col(k) = (*fp - *r) / h;
            else if (fm) jac.col(k) = (*r - *fm) / h;
            else return out;
        }
        const V step = jac.colPivHouseholderQr().solve(-*r);
        if (!step.allFinite()) break;
        double alpha = 1.0;
        bool moved = false;
        while (alpha > 1e-12) {
            const V trial = x + alpha * step;
            auto rt = f(trial);
            if (rt && rt->norm() < (1.0 - 1e-4 * alpha) * norm) {
                x = trial;
                r = rt;
                moved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!moved) break;
    }
    out.x = x;
    out.residual = r->cwiseAbs().maxCoeff();
    out.converged = out.residual <= tol;
    return out;
}

}  // namespace ree
