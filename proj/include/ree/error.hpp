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

#include <stdexcept>
#include <string>
#include <string_view>

namespace ree {

enum class ErrorCode {
    invalid_dimension,
    contract_violation,
    invalid_state,
    invalid_parameter,
    not_an_edge_state,
    ambiguous_kernel,
    low_rank_css,
    degenerate,
    out_of_range,
    inconsistency,
    witness_violation,
    out_of_family,
    no_solution,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_dimension: return "invalid-dimension";
        case ErrorCode::contract_violation: return "contract-violation";
        case ErrorCode::invalid_state: return "invalid-state";
        case ErrorCode::invalid_parameter: return "invalid-parameter";
        case ErrorCode::not_an_edge_state: return "not-an-edge-state";
        case ErrorCode::ambiguous_kernel: return "ambiguous-kernel";
        case ErrorCode::low_rank_css: return "low-rank-css";
        case ErrorCode::degenerate: return "degenerate";
        case ErrorCode::out_of_range: return "out-of-range";
        case ErrorCode::inconsistency: return "inconsistency";
        case ErrorCode::witness_violation: return "witness-violation";
        case ErrorCode::out_of_family: return "out-of-family";
        case ErrorCode::no_solution: return "no-solution";
    }
    return "unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (notably the CLI) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ree
