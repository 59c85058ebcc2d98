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

// JSON encodings: matrices as {"dim", "re", "im"} (row-major), pure states
// as {"re", "im"}, CSS bundles as {sigma, kernel, g, x_max} and family
// parameters as {"family": name, ...}.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "ree/families.hpp"
#include "ree/oracle.hpp"

namespace ree::io {

using json = nlohmann::json;

inline json matrix_to_json(const Mat4& m) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < 4; ++i) {
        json rr = json::array(), ii = json::array();
        for (int j = 0; j < 4; ++j) {
            rr.push_back(m(i, j).real());
            ii.push_back(m(i, j).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return {{"dim", 4}, {"re", re}, {"im", im}};
}

inline Mat4 matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("re"))
        throw Error(ErrorCode::invalid_state, "matrix JSON needs \"re\" (and optionally \"im\")");
    if (j.contains("dim") && (!j["dim"].is_number_integer() || j["dim"].get<int>() != 4))
        throw Error(ErrorCode::invalid_dimension, "only dim 4 is supported");
    const json& re = j["re"];
    const bool has_im = j.contains("im");
    const json im = has_im ? j["im"] : json();
    auto check_shape = [](const json& a) {
        if (!a.is_array() || a.size() != 4) throw Error(ErrorCode::invalid_dimension, "matrix must have 4 rows");
        for (const auto& row : a)
            if (!row.is_array() || row.size() != 4)
                throw Error(ErrorCode::invalid_dimension, "matrix rows must have 4 entries");
    };
    check_shape(re);
    if (has_im) check_shape(im);
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j2 = 0; j2 < 4; ++j2) {
            if (!re[i][j2].is_number() || (has_im && !im[i][j2].is_number()))
                throw Error(ErrorCode::invalid_state, "matrix entries must be numbers");
            m(i, j2) = cplx(re[i][j2].get<double>(), has_im ? im[i][j2].get<double>() : 0.0);
        }
    return m;
}

inline json pure_to_json(const PureState& psi) {
    json re = json::array(), im = json::array();
    for (int k = 0; k < 4; ++k) {
        re.push_back(psi(k).real());
        im.push_back(psi(k).imag());
    }
    return {{"re", re}, {"im", im}};
}

inline Vec4 amplitudes_from_json(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j["re"].is_array() || j["re"].size() != 4)
        throw Error(ErrorCode::invalid_dimension, "pure state JSON needs 4 amplitudes in \"re\"");
    const bool has_im = j.contains("im");
    if (has_im && (!j["im"].is_array() || j["im"].size() != 4))
        throw Error(ErrorCode::invalid_dimension, "pure state \"im\" must have 4 entries");
    Vec4 v;
    for (int k = 0; k < 4; ++k) {
        if (!j["re"][k].is_number() || (has_im && !j["im"][k].is_number()))
            throw Error(ErrorCode::invalid_state, "amplitudes must be numbers");
        v(k) = cplx(j["re"][k].get<double>(), has_im ? j["im"][k].get<double>() : 0.0);
    }
    return v;
}

inline PureState pure_from_json(const json& j) { return PureState(amplitudes_from_json(j)); }

/// Accepts either a matrix object or a pure-state object (a 1-D "re").
inline DensityMatrix density_from_json(const json& j) {
    if (j.is_object() && j.contains("re") && j["re"].is_array() && !j["re"].empty() && j["re"][0].is_number())
        return DensityMatrix::from_pure(pure_from_json(j));
    return DensityMatrix(matrix_from_json(j));
}

inline json css_to_json(const CssSolution& css) {
    return {{"sigma", matrix_to_json(css.sigma.mat())},
            {"kernel", pure_to_json(css.kernel_phi)},
            {"g", matrix_to_json(css.g_matrix)},
            {"x_max", css.x_max}};
}

inline CssSolution css_from_json(const json& j) {
    for (const char* key : {"sigma", "kernel", "g", "x_max"})
        if (!j.contains(key)) throw Error(ErrorCode::invalid_state, std::string("CSS JSON is missing \"") + key + "\"");
    DensityMatrix sigma(matrix_from_json(j["sigma"]));
    CssSolution css{sigma, PureState::normalized(amplitudes_from_json(j["kernel"])), matrix_from_json(j["g"]),
                    j["x_max"].get<double>(), eig_hermitian<4>(sigma.mat())};
    return css;
}

// ---------------------------------------------------------------------------
// Family parameters

namespace detail {
inline double number(const json& j, const char* key, std::optional<double> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw Error(ErrorCode::invalid_parameter, std::string("missing parameter \"") + key + "\"");
    }
    if (!j[key].is_number()) throw Error(ErrorCode::invalid_parameter, std::string("\"") + key + "\" must be a number");
    return j[key].get<double>();
}
template <std::size_t N>
std::array<double, N> numbers(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != N)
        throw Error(ErrorCode::invalid_parameter,
                    std::string("\"") + key + "\" must be an array of " + std::to_string(N) + " numbers");
    std::array<double, N> out{};
    for (std::size_t k = 0; k < N; ++k) {
        if (!j[key][k].is_number()) throw Error(ErrorCode::invalid_parameter, "array entries must be numbers");
        out[k] = j[key][k].get<double>();
    }
    return out;
}
}  // namespace detail

inline FamilyParams family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        throw Error(ErrorCode::invalid_parameter, "params need a \"family\" string");
    const std::string f = j["family"];
    using detail::number;
    if (f == "bell-diagonal") return BellDiagonalParams{detail::numbers<4>(j, "r")};
    if (f == "sigma-z") {
        const auto r = detail::numbers<4>(j, "R");
        return SigmaZ{r[0], r[1], r[2], r[3], number(j, "phase", 0.0)};
    }
    if (f == "horodecki") return HorodeckiParams{number(j, "p"), static_cast<int>(number(j, "sign", 1.0))};
    if (f == "vedral-plenio") return VedralPlenioParams{number(j, "p")};
    if (f == "generalized-vp") return GeneralizedVpParams{number(j, "p"), number(j, "P")};
    if (f == "gisin") return GisinParams{number(j, "p"), number(j, "P")};
    if (f == "generalized-horodecki") return GeneralizedHorodeckiParams{number(j, "p"), number(j, "P")};
    if (f == "verstraete") return VerstraeteParams{number(j, "C")};
    if (f == "bell-css") return BellCssParams{detail::numbers<3>(j, "k")};
    throw Error(ErrorCode::invalid_parameter, "unknown family \"" + f + "\"");
}

inline json family_to_json(const FamilyParams& params) {
    json j = {{"family", family_name(params)}};
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BellDiagonalParams>) j["r"] = p.weights;
            else if constexpr (std::is_same_v<T, SigmaZ>) {
                j["R"] = {p.p00, p.p01, p.p10, p.p11};
                j["phase"] = p.phase;
            } else if constexpr (std::is_same_v<T, HorodeckiParams>) {
                j["p"] = p.mixing;
                j["sign"] = p.sign;
            } else if constexpr (std::is_same_v<T, VedralPlenioParams>) j["p"] = p.mixing;
            else if constexpr (std::is_same_v<T, VerstraeteParams>) j["C"] = p.concurrence;
            else if constexpr (std::is_same_v<T, BellCssParams>) j["k"] = p.k;
            else {
                j["p"] = p.mixing;
                j["P"] = p.population01;
            }
        },
        params);
    return j;
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const OracleResult& r) {
    json j = {{"value", r.value},
              {"argmin", matrix_to_json(r.argmin)},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"gradient_residual", r.gradient_residual},
              {"duality_gap", r.duality_gap},
              {"certificate", r.certificate},
              {"monotone", r.monotone},
              {"stage_values", r.stage_values}};
    if (r.rains_gap) j["rains_gap"] = *r.rains_gap;
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    return j;
}

inline json to_json(const MeasureReport& m) {
    json j = {{"concurrence", m.concurrence}, {"negativity", m.negativity}, {"horodecki_m", m.horodecki_m}};
    j["ree_if_bell_diagonal"] = m.ree_if_bell_diagonal ? json(*m.ree_if_bell_diagonal) : json(nullptr);
    return j;
}

inline json to_json(const WitnessReport& w) {
    return {{"identity_error", w.identity_error}, {"tr_z_sigma", w.tr_z_sigma}, {"tr_z_rho", w.tr_z_rho},
            {"min_separable", w.min_separable},   {"samples", w.samples},       {"passed", w.passed},
            {"failed_check", w.failed_check}};
}

inline json to_json(const FamilyInversion& inv) {
    json j = {{"sigma", matrix_to_json(inv.sigma.mat())}, {"x", inv.x},
              {"residual", inv.residual},                 {"start_index", inv.start_index},
              {"separable_input", inv.separable_input}};
    if (inv.sigma_z) j["sigma_z"] = family_to_json(*inv.sigma_z);
    if (inv.witness_check) j["witness"] = to_json(*inv.witness_check);
    return j;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::invalid_state, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_state, path + ": " + e.what());
    }
}

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_state, e.what());
    }
}

}  // namespace ree::io
