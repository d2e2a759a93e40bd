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

#include "qfhe/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qfhe {

namespace {

using json = nlohmann::json;

/// nlohmann reports a byte offset; tests and humans want line:column.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min(byte, text.size());
    for (std::size_t i = 0; i + 1 < stop + 1 && i < stop; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

[[noreturn]] void fail_parse(const std::string& what) {
    throw Error(ErrorKind::parse_error, what);
}

std::size_t require_count(const json& value, const char* name) {
    if (!value.is_number_unsigned()) {
        fail_parse(std::string("\"") + name + "\" must be a non-negative integer");
    }
    return value.get<std::size_t>();
}

}  // namespace

std::size_t Circuit::r_gate_count() const {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(),
                      [](const Gate& g) { return g.kind == GateKind::R; }));
}

void Circuit::validate() const {
    if (n == 0) {
        throw Error(ErrorKind::invalid_dimensions, "circuit needs at least one data qubit");
    }
    for (const Gate& g : gates) validate_gate(g, width());
}

std::string circuit_to_json(const Circuit& circuit) {
    json gates = json::array();
    for (const Gate& g : circuit.gates) {
        json entry;
        entry["g"] = std::string(gate_name(g.kind));
        if (g.is_cnot()) {
            entry["q"] = {g.control, g.target};
        } else {
            entry["q"] = {g.target};
        }
        gates.push_back(std::move(entry));
    }
    json root;
    root["gates"] = std::move(gates);
    root["m"] = circuit.m;
    root["n"] = circuit.n;
    return root.dump();
}

Circuit circuit_from_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        std::ostringstream msg;
        msg << "line " << line << ", column " << column << ": " << e.what();
        fail_parse(msg.str());
    }

    if (!root.is_object()) fail_parse("top level must be an object");
    for (const auto& [key, value] : root.items()) {
        if (key != "n" && key != "m" && key != "gates") {
            fail_parse("unknown key \"" + key + "\"");
        }
    }
    if (!root.contains("n") || !root.contains("m") || !root.contains("gates")) {
        fail_parse("required keys: \"n\", \"m\", \"gates\"");
    }

    Circuit circuit;
    circuit.n = require_count(root["n"], "n");
    circuit.m = require_count(root["m"], "m");
    const json& gates = root["gates"];
    if (!gates.is_array()) fail_parse("\"gates\" must be an array");

    for (std::size_t i = 0; i < gates.size(); ++i) {
        const json& entry = gates[i];
        const std::string at = "gate " + std::to_string(i + 1) + ": ";
        if (!entry.is_object()) fail_parse(at + "entries must be objects");
        for (const auto& [key, value] : entry.items()) {
            if (key != "g" && key != "q") fail_parse(at + "unknown key \"" + key + "\"");
        }
        if (!entry.contains("g") || !entry["g"].is_string()) {
            fail_parse(at + "\"g\" must name a gate");
        }
        const auto kind_opt = gate_kind_from_name(entry["g"].get<std::string>());
        if (!kind_opt) {
            fail_parse(at + "unknown gate \"" + entry["g"].get<std::string>() + "\"");
        }
        const GateKind kind = *kind_opt;
        if (!entry.contains("q") || !entry["q"].is_array()) {
            fail_parse(at + "\"q\" must be an array of qubit indices");
        }
        const json& q = entry["q"];
        const std::size_t want = kind == GateKind::CNOT ? 2 : 1;
        if (q.size() != want) {
            fail_parse(at + "\"q\" needs " + std::to_string(want) + " index" +
                       (want == 2 ? "es" : "") + " for " + std::string(gate_name(kind)));
        }
        std::vector<std::uint16_t> idx;
        for (const json& v : q) {
            if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0 ||
                v.get<std::uint64_t>() > UINT16_MAX) {
                fail_parse(at + "qubit indices must be positive integers");
            }
            idx.push_back(static_cast<std::uint16_t>(v.get<std::uint64_t>()));
        }
        circuit.gates.push_back(kind == GateKind::CNOT ? Gate::cnot(idx[0], idx[1])
                                                       : Gate::single(kind, idx[0]));
    }

    // A structurally invalid circuit in a file is a parse failure, whatever
    // rule it breaks.
    try {
        circuit.validate();
    } catch (const Error& e) {
        fail_parse(e.what());
    }
    return circuit;
}

Circuit load_circuit(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::io_error, "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return circuit_from_json(buffer.str());
}

void save_circuit(const Circuit& circuit, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::io_error, "cannot write " + path.string());
    }
    out << circuit_to_json(circuit) << '\n';
    if (!out.flush()) {
        throw Error(ErrorKind::io_error, "short write to " + path.string());
    }
}

std::uint64_t circuit_digest(const Circuit& circuit) {
    return fnv1a64(circuit_to_json(circuit));
}

}  // namespace qfhe
