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

// Dense 2x2 / 4x4 complex Hermitian algebra for two-qubit states.
//
// Basis order is |00>, |01>, |10>, |11> (first qubit is the high bit).
// Partial transposition acts on the second qubit. Entropies are in bits.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string_view>

#include "ree/error.hpp"

namespace ree {

using cplx = std::complex<double>;

template <int N>
using Mat = Eigen::Matrix<cplx, N, N>;
template <int N>
using Vec = Eigen::Matrix<cplx, N, 1>;
template <int N>
using RVec = Eigen::Matrix<double, N, 1>;

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;
using Vec2 = Vec<2>;
using Vec4 = Vec<4>;

namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double hermitian_input = 1e-10;
inline constexpr double trace = 1e-12;
inline constexpr double psd = 1e-10;
inline constexpr double norm = 1e-12;
// Relative to the largest eigenvalue.
inline constexpr double zero_eigenvalue = 1e-10;
// Eigenvalues closer than this (relative to the spectral radius) share an
// eigenspace for the purpose of choosing canonical eigenvectors.
inline constexpr double degenerate_cluster = 1e-10;
}  // namespace tol

template <int N>
double max_abs(const Mat<N>& m) {
    return m.cwiseAbs().maxCoeff();
}

template <int N>
double hermiticity_error(const Mat<N>& m) {
    return max_abs<N>(m - m.adjoint());
}

template <int N>
Mat<N> hermitize(const Mat<N>& m) {
    return (m + m.adjoint()) * 0.5;
}

template <int N>
cplx trace(const Mat<N>& m) {
    return m.trace();
}

template <int N>
Mat<N> dagger(const Mat<N>& m) {
    return m.adjoint();
}

template <int N>
Mat<N> commutator(const Mat<N>& a, const Mat<N>& b) {
    return a * b - b * a;
}

/// <u|M|v>
template <int N>
cplx overlap(const Vec<N>& u, const Mat<N>& m, const Vec<N>& v) {
    return u.dot(m * v);
}

template <int N>
Mat<N> projector(const Vec<N>& v) {
    return v * v.adjoint();
}

inline Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 2; ++b2) out(2 * i + a2, 2 * j + b2) = a(i, j) * b(a2, b2);
    return out;
}

inline Vec4 kron(const Vec2& a, const Vec2& b) {
    Vec4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(2 * i + j) = a(i) * b(j);
    return out;
}

/// Computational basis ket from a bit string such as "01".
inline Vec4 ket(std::string_view bits) {
    if (bits.size() != 2 || (bits[0] != '0' && bits[0] != '1') || (bits[1] != '0' && bits[1] != '1'))
        throw Error(ErrorCode::invalid_parameter, "ket label must be two bits");
    Vec4 v = Vec4::Zero();
    v(2 * (bits[0] - '0') + (bits[1] - '0')) = 1.0;
    return v;
}

inline Mat4 identity4() { return Mat4::Identity(); }

// ---------------------------------------------------------------------------
// Partial transposition

/// Transpose with respect to the second qubit:
/// out[(i,a),(j,b)] = in[(i,b),(j,a)].
inline Mat4 partial_transpose(const Mat4& m) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) out(2 * i + a, 2 * j + b) = m(2 * i + b, 2 * j + a);
    return out;
}

inline Mat4 partial_transpose(const Eigen::MatrixXcd& m) {
    if (m.rows() != 4 || m.cols() != 4)
        throw Error(ErrorCode::invalid_dimension, "partial transpose needs a 4x4 matrix");
    return partial_transpose(Mat4(m));
}

/// Transpose with respect to the first qubit.
inline Mat4 partial_transpose_first(const Mat4& m) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) out(2 * i + a, 2 * j + b) = m(2 * j + a, 2 * i + b);
    return out;
}

// ---------------------------------------------------------------------------
// Spectral decomposition

template <int N>
struct SpectralDecomposition {
    RVec<N> values;   // descending
    Mat<N> vectors;   // column k belongs to values(k)

    Vec<N> vector(int k) const { return vectors.col(k); }

    Mat<N> reconstruct() const { return vectors * values.template cast<cplx>().asDiagonal() * vectors.adjoint(); }

    double max_value() const { return values(0); }
    double min_value() const { return values(N - 1); }

    /// Number of eigenvalues above tol::zero_eigenvalue * max(|lambda|).
    int rank() const {
        const double scale = values.cwiseAbs().maxCoeff();
        int r = 0;
        for (int k = 0; k < N; ++k)
            if (values(k) > tol::zero_eigenvalue * scale) ++r;
        return r;
    }
};

namespace detail {

template <int N>
void fix_phase(Vec<N>& v) {
    const double peak = v.cwiseAbs().maxCoeff();
    for (int k = 0; k < N; ++k) {
        if (std::abs(v(k)) >= peak - 1e-12) {
            v *= std::conj(v(k)) / std::abs(v(k));
            v(k) = std::abs(v(k));
            return;
        }
    }
}

// Replace the solver's vectors in a degenerate block [first, last) by
// Gram-Schmidt of the standard basis projected onto that eigenspace.
template <int N>
void canonicalize_block(Mat<N>& vecs, int first, int last) {
    const int dim = last - first;
    const Eigen::Matrix<cplx, N, Eigen::Dynamic, 0, N, N> block = vecs.middleCols(first, dim);
    const Mat<N> proj = block * block.adjoint();
    Mat<N> chosen = Mat<N>::Zero();
    int found = 0;
    for (int e = 0; e < N && found < dim; ++e) {
        Vec<N> v = proj.col(e);
        for (int k = 0; k < found; ++k) v -= chosen.col(k) * chosen.col(k).dot(v);
        for (int k = 0; k < found; ++k) v -= chosen.col(k) * chosen.col(k).dot(v);
        const double n = v.norm();
        if (n > 1e-3) chosen.col(found++) = v / n;
    }
    if (found == dim) vecs.middleCols(first, dim) = chosen.leftCols(dim);
}

}  // namespace detail

/// Hermitian eigendecomposition with eigenvalues in descending order.
///
/// Output is deterministic: vectors inside a degenerate eigenspace are fixed
/// by Gram-Schmidt against the standard basis, and each vector's largest
/// amplitude is made real positive.
template <int N>
SpectralDecomposition<N> eig_hermitian(const Mat<N>& m) {
    if (hermiticity_error<N>(m) > tol::hermitian_input * std::max(1.0, max_abs<N>(m)))
        throw Error(ErrorCode::contract_violation, "eig_hermitian: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat<N>> solver(hermitize<N>(m));
    SpectralDecomposition<N> out;
    for (int k = 0; k < N; ++k) {
        out.values(k) = solver.eigenvalues()(N - 1 - k);
        out.vectors.col(k) = solver.eigenvectors().col(N - 1 - k);
    }
    const double scale = std::max(out.values.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    int first = 0;
    while (first < N) {
        int last = first + 1;
        while (last < N && out.values(last - 1) - out.values(last) <= tol::degenerate_cluster * scale) ++last;
        if (last - first > 1) detail::canonicalize_block<N>(out.vectors, first, last);
        first = last;
    }
    for (int k = 0; k < N; ++k) {
        Vec<N> v = out.vectors.col(k);
        detail::fix_phase<N>(v);
        out.vectors.col(k) = v;
    }
    return out;
}

template <int N>
double min_eigenvalue(const Mat<N>& m) {
    return Eigen::SelfAdjointEigenSolver<Mat<N>>(hermitize<N>(m), Eigen::EigenvaluesOnly).eigenvalues()(0);
}

template <int N>
double max_eigenvalue(const Mat<N>& m) {
    return Eigen::SelfAdjointEigenSolver<Mat<N>>(hermitize<N>(m), Eigen::EigenvaluesOnly).eigenvalues()(N - 1);
}

/// f(M) through the spectral decomposition.
template <int N, class F>
Mat<N> apply_function(const SpectralDecomposition<N>& s, F&& f) {
    RVec<N> fv;
    for (int k = 0; k < N; ++k) fv(k) = f(s.values(k));
    return s.vectors * fv.template cast<cplx>().asDiagonal() * s.vectors.adjoint();
}

// ---------------------------------------------------------------------------
// States

/// Unit vector in C^4.
class PureState {
public:
    PureState() : amp_(Vec4::Zero()) { amp_(0) = 1.0; }

    /// Throws invalid_state unless |v| = 1 within tol::norm.
    explicit PureState(const Vec4& v) : amp_(v) {
        if (std::abs(v.norm() - 1.0) > tol::norm)
            throw Error(ErrorCode::invalid_state, "pure state is not normalized");
    }

    static PureState normalized(const Vec4& v) {
        const double n = v.norm();
        if (n == 0.0) throw Error(ErrorCode::invalid_state, "cannot normalize the zero vector");
        return PureState(Vec4(v / n));
    }

    const Vec4& amplitudes() const { return amp_; }
    cplx operator()(int k) const { return amp_(k); }
    Mat4 projector() const { return ree::projector<4>(amp_); }

private:
    Vec4 amp_;
};

/// 4x4 Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
public:
    DensityMatrix() : m_(Mat4::Identity() * 0.25) {}

    /// Validating constructor; throws invalid_state on a broken invariant.
    explicit DensityMatrix(const Mat4& m) : m_(m) {
        if (hermiticity_error<4>(m) > tol::hermitian)
            throw Error(ErrorCode::invalid_state, "density matrix is not Hermitian");
        m_ = hermitize<4>(m);
        if (std::abs(m_.trace().real() - 1.0) > tol::trace)
            throw Error(ErrorCode::invalid_state, "density matrix trace is not 1");
        if (min_eigenvalue<4>(m_) < -tol::psd)
            throw Error(ErrorCode::invalid_state, "density matrix is not positive semidefinite");
    }

    /// Hermitizes and renormalizes the trace before validating. Use for
    /// matrices that are states up to rounding.
    static DensityMatrix from_approximate(const Mat4& m) {
        Mat4 h = hermitize<4>(m);
        const double t = h.trace().real();
        if (!(t > 0.0)) throw Error(ErrorCode::invalid_state, "matrix has non-positive trace");
        return DensityMatrix(Mat4(h / t));
    }

    static DensityMatrix from_pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

    static DensityMatrix maximally_mixed() { return DensityMatrix(); }

    const Mat4& mat() const { return m_; }
    cplx operator()(int i, int j) const { return m_(i, j); }

private:
    Mat4 m_;
};

inline Mat4 partial_transpose(const DensityMatrix& rho) { return partial_transpose(rho.mat()); }

inline DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double weight_b) {
    return DensityMatrix::from_approximate((1.0 - weight_b) * a.mat() + weight_b * b.mat());
}

/// 1/2 tr|a - b|
inline double trace_distance(const Mat4& a, const Mat4& b) {
    Eigen::SelfAdjointEigenSolver<Mat4> s(hermitize<4>(Mat4(a - b)), Eigen::EigenvaluesOnly);
    return 0.5 * s.eigenvalues().cwiseAbs().sum();
}

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    return trace_distance(a.mat(), b.mat());
}

/// tr|M| for Hermitian M.
inline double trace_norm(const Mat4& m) {
    Eigen::SelfAdjointEigenSolver<Mat4> s(hermitize<4>(m), Eigen::EigenvaluesOnly);
    return s.eigenvalues().cwiseAbs().sum();
}

// ---------------------------------------------------------------------------
// Entropies (bits)

inline double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

template <int N>
double entropy_of_spectrum(const RVec<N>& values) {
    double s = 0.0;
    for (int k = 0; k < N; ++k) s -= xlog2x(values(k));
    return s;
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
    return entropy_of_spectrum<4>(eig_hermitian<4>(rho.mat()).values);
}

/// S(rho||sigma) = tr rho log2 rho - tr rho log2 sigma, +infinity when the
/// support of rho is not contained in that of sigma.
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const auto sr = eig_hermitian<4>(rho.mat());
    const auto ss = eig_hermitian<4>(sigma.mat());
    double cross = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double weight = overlap<4>(ss.vector(k), rho.mat(), ss.vector(k)).real();
        const double lambda = ss.values(k);
        if (lambda < 1e-12) {
            if (weight > 1e-10) return std::numeric_limits<double>::infinity();
            continue;
        }
        cross += weight * std::log2(lambda);
    }
    return -entropy_of_spectrum<4>(sr.values) - cross;
}

}  // namespace ree
