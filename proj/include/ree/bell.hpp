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

#include <array>
#include <optional>
#include <string_view>

#include "ree/qmat.hpp"

namespace ree {

enum class BellLabel { psi_plus, psi_minus, phi_plus, phi_minus };

inline Vec4 bell_state(BellLabel label) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (label) {
        case BellLabel::psi_plus: return h * (ket("01") + ket("10"));
        case BellLabel::psi_minus: return h * (ket("01") - ket("10"));
        case BellLabel::phi_plus: return h * (ket("00") + ket("11"));
        case BellLabel::phi_minus: return h * (ket("00") - ket("11"));
    }
    throw Error(ErrorCode::invalid_parameter, "unknown Bell label");
}

inline std::string_view to_string(BellLabel label) {
    switch (label) {
        case BellLabel::psi_plus: return "psi+";
        case BellLabel::psi_minus: return "psi-";
        case BellLabel::phi_plus: return "phi+";
        case BellLabel::phi_minus: return "phi-";
    }
    return "?";
}

/// Ordered Bell basis beta_1..beta_4. The default order is
/// psi+, psi-, phi+, phi-.
class BellBasis {
public:
    BellBasis() : labels_{BellLabel::psi_plus, BellLabel::psi_minus, BellLabel::phi_plus, BellLabel::phi_minus} {}
    explicit BellBasis(std::array<BellLabel, 4> labels) : labels_(labels) {
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (labels_[i] == labels_[j]) throw Error(ErrorCode::invalid_parameter, "Bell labels must be distinct");
    }

    /// beta_{index+1}
    Vec4 state(int index) const { return bell_state(labels_.at(index)); }
    BellLabel label(int index) const { return labels_.at(index); }

    /// Unitary whose columns are beta_1..beta_4.
    Mat4 matrix() const {
        Mat4 u;
        for (int k = 0; k < 4; ++k) u.col(k) = state(k);
        return u;
    }

    Mat4 diagonal(const std::array<double, 4>& w) const {
        Mat4 m = Mat4::Zero();
        for (int k = 0; k < 4; ++k) m += w[k] * projector<4>(state(k));
        return m;
    }

    std::array<double, 4> weights(const Mat4& m) const {
        std::array<double, 4> w{};
        for (int k = 0; k < 4; ++k) w[k] = overlap<4>(state(k), m, state(k)).real();
        return w;
    }

    /// Largest off-diagonal magnitude of m in this basis.
    double off_diagonal(const Mat4& m) const {
        Mat4 r = matrix().adjoint() * m * matrix();
        r.diagonal().setZero();
        return max_abs<4>(r);
    }

private:
    std::array<BellLabel, 4> labels_;
};

/// Bell-basis weights when rho is Bell-diagonal within `tolerance`.
inline std::optional<std::array<double, 4>> bell_diagonal_weights(const DensityMatrix& rho, double tolerance = 1e-12) {
    const BellBasis basis;
    if (basis.off_diagonal(rho.mat()) > tolerance) return std::nullopt;
    return basis.weights(rho.mat());
}

}  // namespace ree
