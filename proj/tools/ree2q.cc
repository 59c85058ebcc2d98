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

// ree2q: command-line front end for the two-qubit REE library.
//
// Exit codes: 0 ok, 1 property violation, 2 invalid input, 3 numerical
// non-convergence.

#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ree/ree.hpp"

namespace {

using namespace ree;
using io::json;

enum Exit { ok = 0, violation = 1, invalid_input = 2, no_convergence = 3 };

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::witness_violation:
        case ErrorCode::inconsistency: return violation;
        case ErrorCode::no_solution: return no_convergence;
        default: return invalid_input;
    }
}

// ---------------------------------------------------------------------------
// Output

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "." + std::to_string(k), out);
    } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else if (!j.is_null()) {
        out.emplace_back(prefix, j.dump());
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

// Tables ({"rows": [...]}) print one CSV line per row; anything else prints
// as a single flattened row.
void emit(const json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::vector<json> rows;
    if (j.is_object() && j.contains("rows") && j["rows"].is_array()) rows.assign(j["rows"].begin(), j["rows"].end());
    else rows.push_back(j);
    std::vector<std::string> header;
    std::vector<std::vector<std::pair<std::string, std::string>>> cells;
    for (const auto& r : rows) {
        cells.emplace_back();
        flatten(r, "", cells.back());
        for (const auto& [k, v] : cells.back())
            if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
    }
    for (std::size_t c = 0; c < header.size(); ++c) std::cout << (c ? "," : "") << csv_escape(header[c]);
    std::cout << "\n";
    for (const auto& row : cells) {
        std::map<std::string, std::string> lookup(row.begin(), row.end());
        for (std::size_t c = 0; c < header.size(); ++c) {
            auto it = lookup.find(header[c]);
            std::cout << (c ? "," : "") << (it == lookup.end() ? "" : csv_escape(it->second));
        }
        std::cout << "\n";
    }
}

// ---------------------------------------------------------------------------
// State input shared by several subcommands

struct StateInput {
    std::string state_file;
    std::string family;
    double p = std::numeric_limits<double>::quiet_NaN();
    double big_p = std::numeric_limits<double>::quiet_NaN();
    double c = std::numeric_limits<double>::quiet_NaN();
    double phase = 0.0;
    int sign = 1;
    std::vector<double> r, big_r, k;

    void attach(CLI::App* app) {
        app->add_option("--state", state_file, "JSON file: matrix, pure state or {\"family\": ...} params");
        app->add_option("--family", family, "bell-diagonal|sigma-z|horodecki|vedral-plenio|generalized-vp|gisin|"
                                             "generalized-horodecki|verstraete|bell-css");
        app->add_option("--p", p, "mixing parameter p");
        app->add_option("--P", big_p, "|01> population P of psi_P");
        app->add_option("--C", c, "Verstraete concurrence");
        app->add_option("--phase", phase, "sigma-z coherence phase");
        app->add_option("--sign", sign, "Horodecki sign (+1: psi+, -1: psi-)");
        app->add_option("--r", r, "Bell-diagonal weights r1,r2,r3,r4")->delimiter(',')->expected(4);
        app->add_option("--R", big_r, "sigma-z populations R1,R2,R3,R4")->delimiter(',')->expected(4);
        app->add_option("--k", k, "bell-css weights k2,k3,k4")->delimiter(',')->expected(3);
    }

    bool has_family() const { return !family.empty() || params_file().has_value(); }

    std::optional<json> params_file() const {
        if (state_file.empty()) return std::nullopt;
        json j = io::read_json_file(state_file);
        if (j.is_object() && j.contains("family")) return j;
        return std::nullopt;
    }

    FamilyParams params() const {
        if (auto j = params_file()) return io::family_from_json(*j);
        json j = {{"family", family}};
        if (!std::isnan(p)) j["p"] = p;
        if (!std::isnan(big_p)) j["P"] = big_p;
        if (!std::isnan(c)) j["C"] = c;
        if (!r.empty()) j["r"] = r;
        if (!big_r.empty()) j["R"] = big_r;
        if (!k.empty()) j["k"] = k;
        j["phase"] = phase;
        j["sign"] = sign;
        return io::family_from_json(j);
    }

    DensityMatrix state() const {
        if (has_family()) return make_state(params());
        if (state_file.empty()) throw Error(ErrorCode::invalid_parameter, "give --state FILE or --family");
        return io::density_from_json(io::read_json_file(state_file));
    }
};

// Closed-form E_R for states the library recognizes, in the order:
// supplied CSS, named family, Bell-diagonal, pure, PPT.
std::pair<double, std::string> closed_ree(const StateInput& in, const DensityMatrix& rho, const std::string& css_file) {
    if (!css_file.empty()) {
        const json j = io::read_json_file(css_file);
        const DensityMatrix sigma = j.contains("sigma") ? DensityMatrix(io::matrix_from_json(j["sigma"]))
                                                        : io::density_from_json(j);
        if (min_eigenvalue<4>(partial_transpose(sigma.mat())) < -1e-9)
            throw Error(ErrorCode::invalid_state, "supplied CSS is not PPT");
        return {relative_entropy(rho, sigma), "supplied-css"};
    }
    if (in.has_family()) {
        const FamilyParams fp = in.params();
        if (const auto* bd = std::get_if<BellDiagonalParams>(&fp)) return {ree_bell_diagonal(bd->weights), "bell-diagonal"};
        if (const auto* gh = std::get_if<GeneralizedHorodeckiParams>(&fp))
            return {ree_generalized_horodecki(gh->mixing, gh->population01), "generalized-horodecki"};
        if (std::holds_alternative<SigmaZ>(fp) || std::holds_alternative<BellCssParams>(fp))
            return {0.0, "separable-family"};
        if (const auto css = family_css(fp)) return {relative_entropy(rho, *css), family_name(fp)};
    }
    if (const auto w = bell_diagonal_weights(rho, 1e-10)) {
        std::array<double, 4> clipped = *w;
        double total = 0.0;
        for (double& v : clipped) total += v = std::max(v, 0.0);
        for (double& v : clipped) v /= total;
        return {ree_bell_diagonal(clipped), "bell-diagonal"};
    }
    const auto eig = eig_hermitian<4>(rho.mat());
    if (eig.rank() == 1) {
        const PureState psi = PureState::normalized(eig.vector(0));
        return {binary_entropy(is_kernel_entangled(psi).p0), "pure"};
    }
    if (min_eigenvalue<4>(partial_transpose(rho.mat())) >= -1e-12) return {0.0, "ppt"};
    throw Error(ErrorCode::invalid_parameter,
                "no closed form for this state; rerun with --method oracle or supply --css FILE");
}

int oracle_exit(const OracleResult& r) { return r.converged ? ok : no_convergence; }

// ---------------------------------------------------------------------------
// verify suites

struct VerifyConfig {
    std::string suite;
    int count = 20;
    std::uint64_t seed = default_seed;
    int samples = 10000;
    double oracle_tol = 1e-8;
    double td_tol = 1e-4;
    double value_tol = 1e-6;
    double rains_tol = 1e-5;
    double g_tol = 1e-10;
    double identity_tol = 1e-9;
};

struct CaseOutcome {
    json row;
    bool pass = true;
    json replay;
};

CaseOutcome roundtrip_case(Rng& rng, int i, const VerifyConfig& cfg) {
    static const double fractions[3] = {0.25, 0.5, 1.0};
    const DensityMatrix sigma = random_edge_state(rng);
    const CssSolution css = make_css(sigma);
    const double x = fractions[i % 3] * css.x_max;
    const DensityMatrix rho = generate_rho(css, x);
    OracleOptions opt;
    opt.tol = cfg.oracle_tol;
    const OracleResult o = minimize_ree(rho, opt);
    const double td = trace_distance(o.argmin, sigma.mat());
    const double gap = std::abs(o.value - ree_closed(rho, css, x));
    CaseOutcome c;
    c.row = {{"case", i}, {"x", x}, {"x_max", css.x_max}, {"trace_distance", td}, {"value_gap", gap},
             {"converged", o.converged}};
    c.pass = o.converged && td < cfg.td_tol && gap < cfg.value_tol;
    c.replay = {{"rho", io::matrix_to_json(rho.mat())}, {"css", io::css_to_json(css)}, {"x", x}};
    return c;
}

CaseOutcome witness_case(Rng& rng, int i, const VerifyConfig& cfg) {
    const CssSolution css = make_css(random_edge_state(rng));
    const double x = std::uniform_real_distribution<double>(0.01, 1.0)(rng) * css.x_max;
    const DensityMatrix rho = generate_rho(css, x);
    const WitnessReport w = check_witness(witness(css, x), css, rho, rng, cfg.samples);
    CaseOutcome c;
    c.row = {{"case", i}, {"x", x}, {"identity_error", w.identity_error}, {"tr_z_sigma", w.tr_z_sigma},
             {"tr_z_rho", w.tr_z_rho}, {"min_separable", w.min_separable}};
    c.pass = w.passed;
    c.replay = {{"css", io::css_to_json(css)}, {"x", x}, {"failed_check", w.failed_check}};
    return c;
}

CaseOutcome rains_case(Rng& rng, int i, const VerifyConfig& cfg) {
    const DensityMatrix rho = random_density_matrix(rng);
    OracleOptions opt;
    opt.tol = cfg.oracle_tol;
    const auto [e, r] = ree_and_rains(rho, opt);
    CaseOutcome c;
    c.row = {{"case", i}, {"ree", e.value}, {"rains", r.value}, {"gap", *r.rains_gap},
             {"converged", e.converged && r.converged}};
    c.pass = e.converged && r.converged && *r.rains_gap < cfg.rains_tol;
    c.replay = {{"rho", io::matrix_to_json(rho.mat())}};
    return c;
}

CaseOutcome additivity_case(Rng& rng, int i, const VerifyConfig& cfg) {
    std::uniform_real_distribution<double> uni(0.05, 1.0);
    const std::array<double, 3> k{uni(rng), uni(rng), uni(rng)};
    const CssSolution css = bell_family_css(k);
    const double x = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    const DensityMatrix rho = generate_rho(css, x);
    const AdditivityReport a = additivity_check(rho, css, x);
    CaseOutcome c;
    c.row = {{"case", i}, {"x", x}, {"identity_error", a.identity_error.value_or(-1.0)},
             {"min_eig", a.min_eig_check.value_or(0.0)}, {"strongly_additive", a.strongly_additive.value_or(false)}};
    c.pass = a.commutes && a.identity_error && *a.identity_error < cfg.identity_tol &&
             *a.min_eig_check >= -1.0 - cfg.identity_tol && *a.strongly_additive == (x <= 1.0);
    c.replay = {{"k", k}, {"x", x}};
    return c;
}

CaseOutcome g_consistency_case(Rng& rng, int i, const VerifyConfig& cfg) {
    const SigmaZ s = random_sigma_z(rng, true);
    const double diff = max_abs<4>(Mat4(css_sigma_z(s).g_matrix - sigma_z_g_analytic(s)));
    CaseOutcome c;
    c.row = {{"case", i}, {"R", {s.p00, s.p01, s.p10, s.p11}}, {"phase", s.phase}, {"max_diff", diff}};
    c.pass = diff < cfg.g_tol;
    c.replay = io::family_to_json(s);
    return c;
}

int run_verify(const VerifyConfig& cfg, const std::string& format) {
    using Runner = CaseOutcome (*)(Rng&, int, const VerifyConfig&);
    static const std::map<std::string, Runner> suites{{"roundtrip", roundtrip_case},
                                                      {"witness", witness_case},
                                                      {"rains", rains_case},
                                                      {"additivity", additivity_case},
                                                      {"g-consistency", g_consistency_case}};
    const auto it = suites.find(cfg.suite);
    if (it == suites.end()) throw Error(ErrorCode::invalid_parameter, "unknown suite " + cfg.suite);
    Rng rng(cfg.seed);
    json rows = json::array();
    int failures = 0;
    for (int i = 0; i < cfg.count; ++i) {
        CaseOutcome c = it->second(rng, i, cfg);
        c.row["pass"] = c.pass;
        rows.push_back(c.row);
        if (!c.pass) {
            ++failures;
            std::cerr << json{{"suite", cfg.suite}, {"seed", cfg.seed}, {"case", i}, {"replay", c.replay}}.dump()
                      << "\n";
        }
    }
    emit(json{{"suite", cfg.suite}, {"seed", cfg.seed}, {"count", cfg.count}, {"failures", failures}, {"rows", rows}},
         format);
    return failures ? violation : ok;
}

// ---------------------------------------------------------------------------

json css_block(const FamilyParams& fp) {
    json out;
    auto with_x_max = [](const FamilyInversion& inv) {
        json j = io::to_json(inv);
        try {
            j["x_max"] = make_css(inv.sigma).x_max;
        } catch (const Error&) {
            j["x_max"] = nullptr;
        }
        return j;
    };
    if (const auto* g = std::get_if<GisinParams>(&fp)) return with_x_max(css_gisin(g->mixing, g->population01));
    if (const auto* g = std::get_if<GeneralizedHorodeckiParams>(&fp))
        return with_x_max(css_generalized_horodecki(g->mixing, g->population01));
    if (const auto* b = std::get_if<BellCssParams>(&fp)) {
        const CssSolution css = bell_family_css(b->k);
        return {{"sigma", io::matrix_to_json(css.sigma.mat())}, {"x_max", css.x_max}};
    }
    if (const auto* z = std::get_if<SigmaZ>(&fp)) {
        const CssSolution css = css_sigma_z(*z);
        return io::css_to_json(css);
    }
    const auto css = family_css(fp);
    if (!css) return json(nullptr);
    out["sigma"] = io::matrix_to_json(css->mat());
    try {
        out["x_max"] = make_css(*css).x_max;
    } catch (const Error&) {
        out["x_max"] = nullptr;  // rank-deficient CSS: no generic G
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit relative entropy of entanglement toolkit"};
    app.require_subcommand(1);
    std::string format = "json";
    std::uint64_t seed = default_seed;
    double tol = 1e-8;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", seed, "random seed (default " + std::to_string(default_seed) + ")");
    };

    // state gen
    auto* state = app.add_subcommand("state", "state constructors");
    state->require_subcommand(1);
    auto* gen = state->add_subcommand("gen", "build a family member");
    StateInput gen_in;
    bool gen_css = false;
    gen_in.attach(gen);
    gen->add_flag("--css", gen_css, "also emit the closest separable state");
    add_common(gen);

    // ree
    auto* ree_cmd = app.add_subcommand("ree", "relative entropy of entanglement");
    StateInput ree_in;
    std::string method = "closed", css_file;
    ree_in.attach(ree_cmd);
    ree_cmd->add_option("--method", method, "closed|oracle|both")->check(CLI::IsMember({"closed", "oracle", "both"}));
    ree_cmd->add_option("--css", css_file, "CSS JSON to evaluate S(rho||sigma) against");
    ree_cmd->add_option("--tol", tol, "oracle gap tolerance in bits");
    add_common(ree_cmd);
    auto* oracle_cmd = ree_cmd->add_subcommand("oracle", "run the forward minimizer");
    StateInput oracle_in;
    std::string mode = "ree";
    bool random_start = false;
    oracle_in.attach(oracle_cmd);
    oracle_cmd->add_option("--mode", mode, "ree|rains")->check(CLI::IsMember({"ree", "rains"}));
    oracle_cmd->add_option("--tol", tol, "gap tolerance in bits");
    oracle_cmd->add_flag("--random-start", random_start, "start from a seeded random interior point");
    add_common(oracle_cmd);

    // css invert
    auto* css_cmd = app.add_subcommand("css", "closest separable states");
    css_cmd->require_subcommand(1);
    auto* invert = css_cmd->add_subcommand("invert", "find sigma with rho = sigma - x G(sigma)");
    StateInput inv_in;
    bool symmetric = false;
    double r1 = std::numeric_limits<double>::quiet_NaN(), y = std::numeric_limits<double>::quiet_NaN();
    inv_in.attach(invert);
    invert->add_flag("--symmetric", symmetric, "symmetric sigma_Z inversion from --r1 and --y");
    invert->add_option("--r1", r1, "|00> population of the target");
    invert->add_option("--y", y, "|01>,|10> coherence of the target");
    invert->add_option("--tol", tol, "oracle gap tolerance in bits");
    add_common(invert);

    // measures
    auto* measures_cmd = app.add_subcommand("measures", "concurrence, negativity, Horodecki M");
    StateInput meas_in;
    meas_in.attach(measures_cmd);
    add_common(measures_cmd);

    // verify
    auto* verify = app.add_subcommand("verify", "property suites");
    VerifyConfig vcfg;
    verify->add_option("--suite", vcfg.suite, "roundtrip|witness|rains|additivity|g-consistency")
        ->required()
        ->check(CLI::IsMember({"roundtrip", "witness", "rains", "additivity", "g-consistency"}));
    verify->add_option("--count", vcfg.count, "number of cases")->check(CLI::NonNegativeNumber);
    verify->add_option("--samples", vcfg.samples, "separable samples per witness case");
    verify->add_option("--tol", vcfg.oracle_tol, "oracle gap tolerance in bits");
    verify->add_option("--td-tol", vcfg.td_tol, "roundtrip trace-distance tolerance");
    verify->add_option("--value-tol", vcfg.value_tol, "roundtrip value tolerance");
    verify->add_option("--rains-tol", vcfg.rains_tol, "|R - E_R| tolerance");
    verify->add_option("--g-tol", vcfg.g_tol, "analytic vs generic G tolerance");
    verify->add_option("--identity-tol", vcfg.identity_tol, "additivity identity tolerance");
    add_common(verify);

    // demo
    auto* demo = app.add_subcommand("demo", "demonstrations");
    demo->require_subcommand(1);
    auto* nonunique = demo->add_subcommand("bell-nonunique", "the Bell state has many closest separable states");
    std::vector<std::string> ks;
    double x_probe = 1.0;
    nonunique->add_option("--k", ks, "extra k2,k3,k4 instances (repeatable)");
    nonunique->add_option("--x", x_probe, "probe x < x_max = 2");
    add_common(nonunique);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : invalid_input;
    }

    try {
        if (gen->parsed()) {
            if (!gen_in.has_family()) throw Error(ErrorCode::invalid_parameter, "state gen needs --family or --state params");
            const FamilyParams fp = gen_in.params();
            json out = {{"params", io::family_to_json(fp)}, {"state", io::matrix_to_json(make_state(fp).mat())}};
            if (gen_css) out["css"] = css_block(fp);
            emit(out, format);
            return ok;
        }
        if (oracle_cmd->parsed()) {
            const DensityMatrix rho = oracle_in.state();
            OracleOptions opt;
            opt.tol = tol;
            opt.seed = seed;
            opt.random_start = random_start;
            const OracleResult r = mode == "ree" ? minimize_ree(rho, opt) : minimize_rains(rho, opt);
            json out = io::to_json(r);
            out["mode"] = mode;
            emit(out, format);
            return oracle_exit(r);
        }
        if (ree_cmd->parsed()) {
            const DensityMatrix rho = ree_in.state();
            json out;
            int code = ok;
            std::optional<double> closed;
            if (method != "oracle") {
                const auto [v, how] = closed_ree(ree_in, rho, css_file);
                closed = v;
                out["closed"] = v;
                out["closed_method"] = how;
            }
            if (method != "closed") {
                OracleOptions opt;
                opt.tol = tol;
                opt.seed = seed;
                const OracleResult r = minimize_ree(rho, opt);
                out["oracle"] = r.value;
                out["oracle_converged"] = r.converged;
                out["oracle_certificate"] = r.certificate;
                if (closed) out["gap"] = std::abs(*closed - r.value);
                code = oracle_exit(r);
            }
            emit(out, format);
            return code;
        }
        if (invert->parsed()) {
            json out;
            if (symmetric) {
                if (std::isnan(r1) || std::isnan(y)) throw Error(ErrorCode::invalid_parameter, "--symmetric needs --r1 and --y");
                const SigmaZ s = invert_symmetric(r1, y);
                Mat4 target = Mat4::Zero();
                target(0, 0) = r1;
                target(1, 1) = target(2, 2) = 0.5 * (1.0 - r1);
                target(1, 2) = target(2, 1) = y;
                const CssSolution css = css_sigma_z(s);
                const Mat4 diff = target - css.sigma.mat();
                const double x = -(css.g_matrix.adjoint() * diff).trace().real() / css.g_matrix.squaredNorm();
                out = {{"method", "symmetric"}, {"sigma_z", io::family_to_json(s)},
                       {"sigma", io::matrix_to_json(css.sigma.mat())}, {"x", x},
                       {"residual", max_abs<4>(Mat4(diff + x * css.g_matrix))}};
            } else if (inv_in.has_family()) {
                const FamilyParams fp = inv_in.params();
                out = {{"method", "family"}, {"params", io::family_to_json(fp)}, {"css", css_block(fp)}};
            } else {
                const DensityMatrix rho = inv_in.state();
                if (const auto w = bell_diagonal_weights(rho, 1e-10)) {
                    std::array<double, 4> clipped = *w;
                    for (double& v : clipped) v = std::max(v, 0.0);
                    const double total = clipped[0] + clipped[1] + clipped[2] + clipped[3];
                    for (double& v : clipped) v /= total;
                    out = {{"method", "bell-diagonal"}, {"sigma", io::matrix_to_json(css_bell_diagonal(clipped).mat())}};
                } else if (eig_hermitian<4>(rho.mat()).rank() == 1) {
                    const PureState psi = PureState::normalized(eig_hermitian<4>(rho.mat()).vector(0));
                    out = {{"method", "pure"}, {"sigma", io::matrix_to_json(css_pure(psi).mat())}};
                } else {
                    OracleOptions opt;
                    opt.tol = tol;
                    opt.seed = seed;
                    const OracleResult r = minimize_ree(rho, opt);
                    out = {{"method", "oracle"}, {"sigma", io::matrix_to_json(r.argmin)}, {"value", r.value},
                           {"converged", r.converged}};
                    emit(out, format);
                    return oracle_exit(r);
                }
            }
            emit(out, format);
            return ok;
        }
        if (measures_cmd->parsed()) {
            const DensityMatrix rho = meas_in.state();
            json out = io::to_json(measure_report(rho));
            out["ppt"] = min_eigenvalue<4>(partial_transpose(rho.mat())) >= -1e-12;
            emit(out, format);
            return ok;
        }
        if (verify->parsed()) {
            vcfg.seed = seed;
            return run_verify(vcfg, format);
        }
        if (nonunique->parsed()) {
            std::vector<std::array<double, 3>> extra;
            for (const auto& s : ks) {
                std::array<double, 3> k{};
                std::stringstream ss(s);
                std::string item;
                int n = 0;
                while (std::getline(ss, item, ',')) {
                    if (n >= 3) throw Error(ErrorCode::invalid_parameter, "--k takes three numbers");
                    try {
                        k[n++] = std::stod(item);
                    } catch (const std::exception&) {
                        throw Error(ErrorCode::invalid_parameter, "--k entries must be numbers");
                    }
                }
                if (n != 3) throw Error(ErrorCode::invalid_parameter, "--k takes three numbers");
                extra.push_back(k);
            }
            const BellNonuniquenessReport rep = bell_nonuniqueness_report(extra, x_probe);
            json rows = json::array();
            for (const auto& r : rep.rows) {
                json row = {{"label", r.label}};
                row["k"] = r.k ? json(*r.k) : json(nullptr);
                row["s_bell"] = r.s_bell;
                row["x_max"] = r.x_max;
                row["regenerated_error"] = r.regenerated_error;
                row["lambda1"] = r.lambda1;
                row["ree"] = r.ree;
                row["negativity"] = r.negativity;
                row["concurrence"] = r.concurrence;
                row["horodecki_m"] = r.horodecki_m;
                row["rho_diag"] = {r.rho_probe(0, 0).real(), r.rho_probe(1, 1).real(), r.rho_probe(2, 2).real(),
                                   r.rho_probe(3, 3).real()};
                rows.push_back(row);
            }
            emit(json{{"x", rep.x_probe},
                      {"ree_spread", rep.ree_spread},
                      {"negativity_spread", rep.negativity_spread},
                      {"concurrence_spread", rep.concurrence_spread},
                      {"horodecki_m_spread", rep.horodecki_m_spread},
                      {"rho_spread", rep.rho_spread},
                      {"rows", rows}},
                 format);
            return ok;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return invalid_input;
    }
    return invalid_input;
}
