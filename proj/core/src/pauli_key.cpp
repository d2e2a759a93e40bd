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

#include "qfhe/pauli_key.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <utility>

namespace qfhe {

PauliKey::PauliKey(std::size_t n, std::size_t m)
    : n_(n), m_(m), x_(n + m, 0), z_(n + m, 0) {}

PauliKey::PauliKey(std::size_t n, std::size_t m, Bits x, Bits z)
    : n_(n), m_(m), x_(std::move(x)), z_(std::move(z)) {
    if (x_.size() != n + m || z_.size() != n + m) {
        throw Error(ErrorKind::invalid_dimensions,
                    "key bitstrings must have length n+m = " + std::to_string(n + m));
    }
    for (auto& b : x_) b &= 1u;
    for (auto& b : z_) b &= 1u;
}

void PauliKey::check_index(std::size_t w) const {
    if (w < 1 || w > width()) {
        throw Error(ErrorKind::index_out_of_range,
                    "key position " + std::to_string(w) + " outside 1.." + std::to_string(width()));
    }
}

std::uint8_t PauliKey::x(std::size_t w) const {
    check_index(w);
    return x_[w - 1];
}

std::uint8_t PauliKey::z(std::size_t w) const {
    check_index(w);
    return z_[w - 1];
}

void PauliKey::set_x(std::size_t w, std::uint8_t bit) {
    check_index(w);
    x_[w - 1] = bit & 1u;
}

void PauliKey::set_z(std::size_t w, std::uint8_t bit) {
    check_index(w);
    z_[w - 1] = bit & 1u;
}

Bits PauliKey::x_prefix(std::size_t count) const {
    if (count > width()) {
        throw Error(ErrorKind::index_out_of_range, "prefix longer than the key");
    }
    return Bits(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(count));
}

Bits PauliKey::z_prefix(std::size_t count) const {
    if (count > width()) {
        throw Error(ErrorKind::index_out_of_range, "prefix longer than the key");
    }
    return Bits(z_.begin(), z_.begin() + static_cast<std::ptrdiff_t>(count));
}

PauliKey PauliKey::with_encoding_bits_cleared() const {
    PauliKey out = *this;
    std::fill(out.x_.begin() + static_cast<std::ptrdiff_t>(n_), out.x_.end(), 0);
    std::fill(out.z_.begin() + static_cast<std::ptrdiff_t>(n_), out.z_.end(), 0);
    return out;
}

PauliKey keygen(std::size_t n, std::size_t m, RandomBitSource& rng) {
    if (n == 0) {
        throw Error(ErrorKind::invalid_dimensions, "keygen needs at least one data qubit");
    }
    PauliKey key(n, m);
    // Draw order is part of the determinism contract: x(1..n) first, then
    // z(1..n). Encoding positions stay zero and consume no randomness.
    for (std::size_t w = 1; w <= n; ++w) key.set_x(w, rng.next_bit());
    for (std::size_t w = 1; w <= n; ++w) key.set_z(w, rng.next_bit());
    return key;
}

PauliKey update_clifford(const PauliKey& key, const Gate& gate, std::uint64_t* xor_ops) {
    validate_gate(gate, key.width());
    PauliKey out = key;
    std::uint64_t xors = 0;
    switch (gate.kind) {
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
            break;  // Paulis commute with the mask up to phase.
        case GateKind::H: {
            const auto xw = out.x(gate.target);
            out.set_x(gate.target, out.z(gate.target));
            out.set_z(gate.target, xw);
            break;
        }
        case GateKind::P:
            out.set_z(gate.target, out.z(gate.target) ^ out.x(gate.target));
            xors = 1;
            break;
        case GateKind::CNOT:
            out.set_z(gate.control, out.z(gate.control) ^ out.z(gate.target));
            out.set_x(gate.target, out.x(gate.target) ^ out.x(gate.control));
            xors = 2;
            break;
        case GateKind::R:
            throw Error(ErrorKind::unsupported_program,
                        "R is not a Clifford step; use update_r with the interaction bits");
    }
    if (xor_ops) *xor_ops += xors;
    return out;
}

PauliKey update_r(const PauliKey& key, std::size_t w, RandomBitPair pair,
                  std::uint64_t* xor_ops) {
    PauliKey out = key;
    const auto xw = key.x(w);
    out.set_x(w, (pair.r ^ xw) & 1u);
    out.set_z(w, (pair.r_prime ^ xw ^ key.z(w)) & 1u);
    if (xor_ops) *xor_ops += 3;
    return out;
}

std::uint64_t KeySchedule::total_xor_ops() const {
    return std::accumulate(xor_per_step.begin(), xor_per_step.end(), std::uint64_t{0});
}

std::uint8_t KeySchedule::max_xor_per_step() const {
    return xor_per_step.empty() ? 0 : *std::max_element(xor_per_step.begin(), xor_per_step.end());
}

KeySchedule run_key_schedule(const PauliKey& ek, const Circuit& circuit,
                             const std::vector<RandomBitPair>& r_pairs) {
    if (ek.width() != circuit.width()) {
        throw Error(ErrorKind::dimension_mismatch, "key width does not match the circuit");
    }
    if (r_pairs.size() != circuit.r_gate_count()) {
        throw Error(ErrorKind::rpair_count_mismatch,
                    std::to_string(r_pairs.size()) + " bit pairs for " +
                        std::to_string(circuit.r_gate_count()) + " R gates");
    }
    KeySchedule schedule;
    schedule.initial = ek;
    schedule.r_pairs = r_pairs;
    PauliKey key = ek;
    std::size_t next_pair = 0;
    for (const Gate& g : circuit.gates) {
        std::uint64_t xors = 0;
        key = g.kind == GateKind::R ? update_r(key, g.target, r_pairs[next_pair++], &xors)
                                    : update_clifford(key, g, &xors);
        schedule.steps.push_back(key);
        schedule.xor_per_step.push_back(static_cast<std::uint8_t>(xors));
    }
    return schedule;
}

namespace {

std::string bits_to_hex(const Bits& bits) {
    std::string out;
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        unsigned nibble = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            nibble <<= 1;
            if (i + j < bits.size()) nibble |= bits[i + j] & 1u;
        }
        out.push_back("0123456789abcdef"[nibble]);
    }
    if (out.empty()) out = "0";
    return out;
}

Bits hex_to_bits(std::string_view hex, std::size_t count) {
    Bits bits;
    bits.reserve(hex.size() * 4);
    for (char c : hex) {
        unsigned nibble;
        if (c >= '0' && c <= '9') {
            nibble = static_cast<unsigned>(c - '0');
        } else if (c >= 'a' && c <= 'f') {
            nibble = static_cast<unsigned>(c - 'a' + 10);
        } else {
            throw Error(ErrorKind::parse_error, std::string("bad hex digit '") + c + "'");
        }
        for (int j = 3; j >= 0; --j) bits.push_back((nibble >> j) & 1u);
    }
    if (bits.size() < count || bits.size() - count >= 4) {
        throw Error(ErrorKind::parse_error, "hex field length does not match n+m");
    }
    for (std::size_t i = count; i < bits.size(); ++i) {
        if (bits[i]) throw Error(ErrorKind::parse_error, "nonzero padding bits");
    }
    bits.resize(count);
    return bits;
}

std::size_t parse_count(std::string_view field, std::string_view name) {
    if (!field.starts_with(name) || field.size() < name.size() + 2 ||
        field[name.size()] != '=') {
        throw Error(ErrorKind::parse_error,
                    "expected " + std::string(name) + "=<value> field");
    }
    std::string_view digits = field.substr(name.size() + 1);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw Error(ErrorKind::parse_error, std::string(name) + " is not a number");
    }
    return value;
}

std::string_view parse_hex_field(std::string_view field, std::string_view name) {
    if (!field.starts_with(name) || field.size() < name.size() + 1 ||
        field[name.size()] != '=') {
        throw Error(ErrorKind::parse_error,
                    "expected " + std::string(name) + "=<hex> field");
    }
    return field.substr(name.size() + 1);
}

}  // namespace

std::string key_to_string(const PauliKey& key) {
    std::ostringstream out;
    out << "qfhe-key v1 n=" << key.n() << " m=" << key.m() << " x=" << bits_to_hex(key.x_bits())
        << " z=" << bits_to_hex(key.z_bits());
    return out.str();
}

PauliKey key_from_string(std::string_view text) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(' ', pos);
        const std::size_t end = next == std::string_view::npos ? text.size() : next;
        if (end > pos) fields.push_back(text.substr(pos, end - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    if (fields.size() != 6 || fields[0] != "qfhe-key" || fields[1] != "v1") {
        throw Error(ErrorKind::parse_error, "expected 'qfhe-key v1 n=... m=... x=... z=...'");
    }
    const std::size_t n = parse_count(fields[2], "n");
    const std::size_t m = parse_count(fields[3], "m");
    if (n == 0) {
        throw Error(ErrorKind::parse_error, "key needs n >= 1");
    }
    Bits x = hex_to_bits(parse_hex_field(fields[4], "x"), n + m);
    Bits z = hex_to_bits(parse_hex_field(fields[5], "z"), n + m);
    return PauliKey(n, m, std::move(x), std::move(z));
}

}  // namespace qfhe
