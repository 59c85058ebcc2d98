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

// Every member of the Bell CSS family is a closest separable state of the
// Bell state, yet the states each one generates at the same x differ: E_R,
// negativity and concurrence coincide while Horodecki's M does not.

#include <cstdio>

#include "ree/ree.hpp"

int main() {
    using namespace ree;
    const std::vector<std::array<double, 3>> extra{{0.2, 0.3, 0.5}, {0.6, 0.1, 0.3}, {1.0, 1.0, 1.0}};
    for (double x : {0.5, 1.0, 1.5}) {
        const BellNonuniquenessReport rep = bell_nonuniqueness_report(extra, x);
        std::printf("x = %.2f\n", x);
        std::printf("  %-24s %10s %10s %10s %10s %10s\n", "sigma", "S(Bell||s)", "E_R", "N", "C", "M");
        for (const auto& row : rep.rows)
            std::printf("  %-24s %10.6f %10.6f %10.6f %10.6f %10.6f\n", row.label.c_str(), row.s_bell, row.ree,
                        row.negativity, row.concurrence, row.horodecki_m);
        std::printf("  spreads: E_R %.1e  N %.1e  C %.1e  M %.3f  rho %.3f\n\n", rep.ree_spread,
                    rep.negativity_spread, rep.concurrence_spread, rep.horodecki_m_spread, rep.rho_spread);
    }
}
