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

#include "qfhe/gate.hpp"

#include <cmath>
#include <numbers>

namespace qfhe {

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::P: return "P";
        case GateKind::CNOT: return "CNOT";
        case GateKind::R: return "R";
    }
    return "?";
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    if (name == "X") return GateKind::X;
    if (name == "Y") return GateKind::Y;
    if (name == "Z") return GateKind::Z;
    if (name == "H") return GateKind::H;
    if (name == "P") return GateKind::P;
    if (name == "CNOT") return GateKind::CNOT;
    if (name == "R") return GateKind::R;
    return std::nullopt;
}

Gate Gate::single(GateKind kind, std::size_t qubit) {
    if (kind == GateKind::CNOT) {
        throw Error(ErrorKind::invalid_dimensions, "CNOT requires two qubit indices");
    }
    Gate g;
    g.kind = kind;
    g.target = static_cast<std::uint16_t>(qubit);
    return g;
}

Gate Gate::cnot(std::size_t control, std::size_t target) {
    Gate g;
    g.kind = GateKind::CNOT;
    g.control = static_cast<std::uint16_t>(control);
    g.target = static_cast<std::uint16_t>(target);
    return g;
}

std::array<cdouble, 4> gate_matrix(GateKind kind) {
    constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    const cdouble i(0.0, 1.0);
    switch (kind) {
        case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Y: return {0.0, -i, i, 0.0};
        case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
        case GateKind::H: return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
        case GateKind::P: return {1.0, 0.0, 0.0, i};
        case GateKind::R:
            return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4.0)};
        case GateKind::CNOT: break;
    }
    throw Error(ErrorKind::index_out_of_range, "CNOT has no 2x2 matrix");
}

void validate_gate(const Gate& gate, std::size_t width) {
    auto check = [width](std::size_t w, const char* what) {
        if (w < 1 || w > width) {
            throw Error(ErrorKind::index_out_of_range,
                        std::string(what) + " index " + std::to_string(w) +
                            " outside 1.." + std::to_string(width));
        }
    };
    check(gate.target, "target");
    if (gate.is_cnot()) {
        check(gate.control, "control");
        if (gate.control == gate.target) {
            throw Error(ErrorKind::degenerate_cnot,
                        "CNOT control equals target (" + std::to_string(gate.target) + ")");
        }
    }
}

}  // namespace qfhe
