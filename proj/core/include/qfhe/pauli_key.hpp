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

/**
 * @file
 * Classical key material for the QOTP scheme: key generation, the per-gate
 * key-updating rules, and key schedules. Keys are pure mod-2 bitstrings;
 * global phases produced by conjugation are never tracked here.
 *
 * Bit positions are 1-based in the API (x(w), z(w) for w in 1..n+m) and
 * 0-based in storage; the accessors are the only conversion point.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qfhe/circuit.hpp"
#include "qfhe/common.hpp"
#include "qfhe/gate.hpp"
#include "qfhe/rng.hpp"

namespace qfhe {

/// The (x, z) bit pair drawn by the client for one R-gate interaction.
/// Pairs for distinct R occurrences are drawn independently.
struct RandomBitPair {
    std::uint8_t r = 0;
    std::uint8_t r_prime = 0;

    friend bool operator==(const RandomBitPair&, const RandomBitPair&) = default;
};

/// Two bitstrings (x, z) of length n+m. A freshly generated encryption key
/// has zeros on the m encoding positions; intermediate keys generally do not.
class PauliKey {
  public:
    /// Width-0 placeholder, only useful as a to-be-assigned slot.
    PauliKey() = default;

    /// All-zero key.
    PauliKey(std::size_t n, std::size_t m);

    /// Wraps explicit bitstrings; both must have length n+m.
    PauliKey(std::size_t n, std::size_t m, Bits x, Bits z);

    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    std::size_t width() const { return n_ + m_; }

    /// 1-based bit accessors, w in 1..n+m.
    std::uint8_t x(std::size_t w) const;
    std::uint8_t z(std::size_t w) const;

    void set_x(std::size_t w, std::uint8_t bit);
    void set_z(std::size_t w, std::uint8_t bit);

    const Bits& x_bits() const { return x_; }
    const Bits& z_bits() const { return z_; }

    /// First `count` bits of x / z as prefixes (used to mask the data block).
    Bits x_prefix(std::size_t count) const;
    Bits z_prefix(std::size_t count) const;

    /// Zeroes the m encoding positions (n+1..n+m) of both strings.
    PauliKey with_encoding_bits_cleared() const;

    friend bool operator==(const PauliKey&, const PauliKey&) = default;

  private:
    void check_index(std::size_t w) const;

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    Bits x_;
    Bits z_;
};

/// Draws a fresh encryption key: the first n bits of x then z are uniform,
/// the m trailing bits are zero. Consumes exactly 2n bits from `rng`.
PauliKey keygen(std::size_t n, std::size_t m, RandomBitSource& rng);

/// One key-update step for a Clifford gate:
///   X/Y/Z: unchanged; H@w: swap (x(w), z(w)); P@w: z(w) ^= x(w);
///   CNOT(w -> w'): z(w) ^= z(w'), x(w') ^= x(w).
/// When `xor_ops` is given it is incremented by the number of bit-XORs the
/// step performed (0, 1 or 2).
PauliKey update_clifford(const PauliKey& key, const Gate& gate, std::uint64_t* xor_ops = nullptr);

/// One key-update step for an R gate at qubit w:
///   (x(w), z(w)) := (r ^ x(w), r' ^ x(w) ^ z(w)).
/// Performs 3 bit-XORs.
PauliKey update_r(const PauliKey& key, std::size_t w, RandomBitPair pair,
                  std::uint64_t* xor_ops = nullptr);

/// The full key trajectory of one circuit pass. steps[j] is the key after
/// gate j+1; the last entry (or `initial` for an empty circuit) is dk.
struct KeySchedule {
    PauliKey initial;
    std::vector<PauliKey> steps;
    std::vector<RandomBitPair> r_pairs;
    std::vector<std::uint8_t> xor_per_step;

    const PauliKey& dk() const { return steps.empty() ? initial : steps.back(); }
    std::uint64_t total_xor_ops() const;
    std::uint8_t max_xor_per_step() const;
};

/// Folds the update rules over the circuit's gates in execution order.
/// r_pairs must hold one entry per R gate; purely classical.
KeySchedule run_key_schedule(const PauliKey& ek, const Circuit& circuit,
                             const std::vector<RandomBitPair>& r_pairs);

/// Canonical text form: `qfhe-key v1 n=<n> m=<m> x=<hex> z=<hex>`.
/// Bits are packed MSB-first into nibbles (bit 1 is the top bit of the first
/// hex digit) and zero-padded on the right to a nibble boundary.
std::string key_to_string(const PauliKey& key);
PauliKey key_from_string(std::string_view text);

}  // namespace qfhe
