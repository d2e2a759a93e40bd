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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qfhe/gate.hpp"

namespace qfhe {

/// An ordered gate list over n data qubits (1..n) followed by m encoding
/// qubits (n+1..n+m).
struct Circuit {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<Gate> gates;

    std::size_t width() const { return n + m; }
    std::size_t gate_count() const { return gates.size(); }
    std::size_t r_gate_count() const;

    /// Throws if any gate index is outside 1..n+m or a CNOT is degenerate.
    void validate() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Canonical one-object JSON form:
///   {"gates":[{"g":"H","q":[1]},{"g":"CNOT","q":[1,2]}],"m":1,"n":2}
/// Qubit indices are 1-based; a CNOT lists [control, target]. Key order is
/// alphabetical so the text form is byte-stable.
std::string circuit_to_json(const Circuit& circuit);

/// Parses the JSON form; malformed input raises parse-error with the line
/// and column of the offending byte.
Circuit circuit_from_json(std::string_view text);

Circuit load_circuit(const std::filesystem::path& path);
void save_circuit(const Circuit& circuit, const std::filesystem::path& path);

/// FNV-1a over the canonical JSON text. Stable across runs and platforms.
std::uint64_t circuit_digest(const Circuit& circuit);

}  // namespace qfhe
