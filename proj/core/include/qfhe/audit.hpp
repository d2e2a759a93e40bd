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
 * Executable security and complexity checks: QOTP mixing, conjugation
 * identities, interaction privacy, and the counter relations of a run.
 * "Perfect security" is operationalized as the finite witnesses these
 * checks verify exhaustively, plus the structural fact that the server role
 * never holds key material.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfhe/density_matrix.hpp"
#include "qfhe/message.hpp"
#include "qfhe/pauli_key.hpp"
#include "qfhe/state_vector.hpp"

namespace qfhe {
namespace audit {

/// Equal-weight average over all 4^n Pauli masks of the encrypted density
/// matrix; returns the max entrywise deviation from I/2^n. Exhaustive mode,
/// n <= 3 (4^n terms); larger n raises too-large.
double qotp_mixing_check(std::size_t n, const StateVector& plain);

struct SampledMixingResult {
    double max_deviation = 0.0;
    std::size_t samples = 0;
    /// Standard-error-based bound on the deviation expected from sampling
    /// noise alone (3 sigma on each matrix entry).
    double stderr_bound = 0.0;
};

/// Monte-Carlo variant for n > 3: keys drawn with replacement from a fixed
/// seed.
SampledMixingResult qotp_mixing_check_sampled(std::size_t n, const StateVector& plain,
                                              std::size_t samples, std::uint64_t seed);

struct ConjugationCase {
    std::string group;  // "single_qubit", "cnot", "r_gate", "mask_involution"
    std::string label;
    double error = 0.0;
    bool pass = false;
};

struct ConjugationReport {
    std::vector<ConjugationCase> cases;
    double max_error = 0.0;
    bool all_pass = false;

    std::size_t case_count() const { return cases.size(); }
    std::string to_text() const;
    std::string to_json() const;
};

/// Exhaustive matrix verification of the key-update conjugation relations:
/// 20 single-qubit cases (X,Y,Z,H,P over the 4 key-bit values), 16 CNOT
/// cases (both key-bit pairs), 16 R cases (4 key-bit values x 4 (r,r')
/// pairs), and the 4 mask self-inverse cases the decryption step relies on.
/// 56 cases total; each passes iff the phase-aligned matrix error is below
/// 1e-12.
ConjugationReport conjugation_suite();

/// Average over the 4 (r, r') values of the post-correction reduced state
/// of qubit w.
DensityMatrix interaction_averaged_state(std::uint8_t x_bit, const StateVector& incoming,
                                         std::size_t w);

/// Max entrywise deviation of that average from I/2.
double interaction_privacy_check(std::uint8_t x_bit, const StateVector& incoming, std::size_t w);

struct ComplexitySummary {
    std::uint64_t enc_mask_ops = 0;
    std::uint64_t expected_enc_mask_ops = 0;
    std::uint64_t gates_executed = 0;
    std::uint64_t expected_gates = 0;       // |C_U| * N
    std::uint64_t messages = 0;
    std::uint64_t expected_messages = 0;    // 2 * n_R * N
    std::uint64_t max_xors_per_step = 0;    // must be <= 3
    bool pass = false;

    std::string to_text() const;
    std::string to_json() const;
};

/// Checks the counter relations of a completed run against its shape.
ComplexitySummary complexity_counters(const Transcript& transcript);

/// Same, additionally checking every step of a key schedule for the 3-XOR
/// bound.
ComplexitySummary complexity_counters(const Transcript& transcript, const KeySchedule& schedule);

}  // namespace audit
}  // namespace qfhe
