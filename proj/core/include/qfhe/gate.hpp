// Copyright 2026 The qfhe-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "qfhe/common.hpp"

namespace qfhe {

/// Gate alphabet of the evaluator. P is the phase gate diag(1, i) and R the
/// eighth-root phase gate diag(1, e^{i pi/4}); everything except R is
/// Clifford.
enum class GateKind : std::uint8_t { X, Y, Z, H, P, CNOT, R };

const char* gate_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);

/// A gate instance with 1-based qubit indices. For CNOT, `control` and
/// `target` are both meaningful; for single-qubit kinds only `target` is.
struct Gate {
    GateKind kind;
    std::uint16_t target = 0;
    std::uint16_t control = 0;  // CNOT only, 0 otherwise

    static Gate single(GateKind kind, std::size_t qubit);
    static Gate cnot(std::size_t control, std::size_t target);

    bool is_cnot() const { return kind == GateKind::CNOT; }

    friend bool operator==(const Gate&, const Gate&) = default;
};

/// Column-major-agnostic 2x2 matrix entries {m00, m01, m10, m11} of a
/// single-qubit gate kind. CNOT is rejected with index-out-of-range.
std::array<cdouble, 4> gate_matrix(GateKind kind);

/// Checks that a gate's indices lie within 1..width and that a CNOT is
/// non-degenerate; throws otherwise.
void validate_gate(const Gate& gate, std::size_t width);

}  // namespace qfhe
