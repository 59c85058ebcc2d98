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

// Walks through the inverse direction: pick a separable edge state sigma,
// generate rho = sigma - x G(sigma), then confirm with the forward minimizer
// that sigma is the closest separable state and the closed-form value holds.

#include <cstdio>

#include "ree/ree.hpp"

namespace {

void report(const char* label, const ree::CssSolution& css, double x) {
    using namespace ree;
    const DensityMatrix rho = generate_rho(css, x);
    const double closed = ree_closed(rho, css, x);
    const OracleResult o = minimize_ree(rho);
    std::printf("%-28s x=%.4f/%.4f  closed=%.10f  oracle=%.10f  |sigma-sigma*|_1=%.1e\n", label, x, css.x_max, closed,
                o.value, trace_distance(o.argmin, css.sigma.mat()));
}

}  // namespace

int main() {
    using namespace ree;
    Rng rng(default_seed);

    SigmaZ z;
    z.p00 = 0.45;
    z.p01 = 0.25;
    z.p10 = 0.2;
    z.p11 = 0.1;
    const CssSolution zcss = css_sigma_z(z);
    for (double f : {0.3, 0.7, 1.0}) report("sigma_Z (0.45,0.25,0.2,0.1)", zcss, f * zcss.x_max);

    for (int i = 0; i < 3; ++i) {
        const CssSolution css = make_css(random_edge_state(rng));
        char label[32];
        std::snprintf(label, sizeof label, "random edge state #%d", i);
        report(label, css, 0.5 * css.x_max);
    }

    std::printf("\nGisin states: solve sigma - x G(sigma) = rho_G\n");
    for (double p : {0.6, 0.8, 0.95}) {
        const FamilyInversion inv = css_gisin(p, 0.3);
        const OracleResult o = minimize_ree(gisin_state(p, 0.3));
        std::printf("  p=%.2f  x=%.6f  residual=%.1e  E_R=%.10f  oracle=%.10f\n", p, inv.x, inv.residual,
                    relative_entropy(gisin_state(p, 0.3), inv.sigma), o.value);
    }
}
