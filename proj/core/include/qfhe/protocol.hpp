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
 * The delegated-evaluation protocol: two state machines exchanging messages
 * over a transport, with qubit custody over a shared backend. The server
 * role never sees key material; the interaction consists of one
 * send/return qubit pair per executed R gate.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qfhe/backend.hpp"
#include "qfhe/circuit.hpp"
#include "qfhe/common.hpp"
#include "qfhe/message.hpp"
#include "qfhe/pauli_key.hpp"
#include "qfhe/qotp.hpp"
#include "qfhe/rng.hpp"
#include "qfhe/state_vector.hpp"
#include "qfhe/transport.hpp"
#include "qfhe/uqc.hpp"

namespace qfhe {

/// What the server executes: the public UQC, the encoding selecting the
/// transformation, and how many times the circuit is carried out.
struct EvaluationPlan {
    Circuit circuit;
    Bits encoding;              // length m
    std::size_t repetitions = 1;

    void validate() const;
    std::uint64_t digest() const;  // covers circuit, encoding and repetitions
};

/// How the client obtains the key bits it needs during interactions.
/// Both modes must produce the same decryption key.
enum class ScheduleMode : std::uint8_t {
    lazy,        // fold update rules gate by gate, synchronized with execution
    precomputed, // run the whole schedule up front, look up bits during the run
};

/// Masks the n-qubit data block with ek and appends the encoding register:
/// returns (X^{x0} Z^{z0} |d>) tensor |e>. The encoding positions of a fresh
/// ek are zero, so the encoding register starts unmasked.
StateVector client_encrypt(const StateVector& data, const PauliKey& ek, const Bits& encoding,
                           RunCounters* counters = nullptr);

/// Unmasks all n+m qubits with dk, checks that the encoding register equals
/// |e> (overlap at least 1 - 1e-9, otherwise encoding-register-mismatch),
/// and returns the detached n-qubit result.
StateVector client_decrypt(const StateVector& result, const PauliKey& dk, const Bits& encoding,
                           RunCounters* counters = nullptr);

/// The client's half of one R-gate interaction: applies P^{x_bit}, then
/// Z^{r'}, then X^{r} to qubit w (custody-checked; identity factors are
/// skipped). Key updating is the caller's job.
void client_r_step(SimBackend& backend, std::size_t w, std::uint8_t x_bit, RandomBitPair pair);

/// Pure-state form of the same correction, for analyses.
StateVector apply_r_correction(const StateVector& state, std::size_t w, std::uint8_t x_bit,
                               RandomBitPair pair);

/// Server role. Owns no key material: constructed from the public plan, the
/// shared backend and a transport endpoint only.
class ServerEngine {
  public:
    ServerEngine(SimBackend& backend, const EvaluationPlan& plan, TransportEndpoint& endpoint,
                 std::uint64_t run_id);

    /// Emits eval_start and executes gates until the first R interaction
    /// (or to completion, emitting eval_done).
    void start();

    /// Feed one incoming message (expects return_qubit while waiting).
    void on_message(const Message& message);

    bool done() const { return done_; }

  private:
    void advance();

    SimBackend& backend_;
    EvaluationPlan plan_;
    TransportEndpoint& endpoint_;
    std::uint64_t run_id_;
    std::size_t rep_ = 0;
    std::size_t gate_index_ = 0;
    std::optional<std::size_t> awaiting_return_;  // qubit sent to the client
    bool started_ = false;
    bool done_ = false;
};

/// Client role. Holds the encryption key and the pre-drawn (r, r') pairs;
/// advances its key schedule in lockstep with the announced execution.
class ClientEngine {
  public:
    ClientEngine(SimBackend& backend, const EvaluationPlan& plan, TransportEndpoint& endpoint,
                 const PauliKey& ek, std::vector<RandomBitPair> r_pairs, ScheduleMode mode,
                 std::uint64_t run_id);

    void on_message(const Message& message);

    bool done() const { return done_; }

    /// Decryption key; valid once done().
    const PauliKey& dk() const;

    std::uint64_t key_update_xors() const { return xor_ops_; }
    std::uint64_t max_key_update_xors() const { return max_step_xors_; }

  private:
    void advance_key_to_next_interaction();
    void precompute_schedule();

    SimBackend& backend_;
    EvaluationPlan plan_;
    TransportEndpoint& endpoint_;
    PauliKey key_;
    std::vector<RandomBitPair> r_pairs_;
    ScheduleMode mode_;
    std::uint64_t run_id_;

    std::size_t rep_ = 0;
    std::size_t gate_index_ = 0;
    std::size_t r_cursor_ = 0;
    bool eval_started_ = false;
    bool done_ = false;
    std::uint64_t xor_ops_ = 0;
    std::uint64_t max_step_xors_ = 0;

    // precomputed mode: key after each global step, one entry per gate of
    // every repetition, plus the boundary-cleared keys.
    std::vector<PauliKey> precomputed_steps_;
    std::size_t precomputed_cursor_ = 0;
    PauliKey precomputed_dk_;
};

struct DelegationOptions {
    ScheduleMode schedule = ScheduleMode::lazy;
    /// Run the two roles on separate threads (required for SocketTransport;
    /// the in-process transport defaults to a single-threaded lockstep pump).
    bool threaded = false;
    std::uint64_t run_id = 0;
};

struct DelegationResult {
    StateVector plain;
    Transcript transcript;
    PauliKey dk;
};

/// Orchestrates encrypt -> evaluate (with interactive R steps) -> decrypt.
/// r_pairs must hold one pair per R gate per repetition, in execution order.
DelegationResult run_delegation(const StateVector& data, const PauliKey& ek,
                                const EvaluationPlan& plan, Transport& transport,
                                const std::vector<RandomBitPair>& r_pairs,
                                const DelegationOptions& options = {});

/// Same, drawing the r-pairs from `rng` in execution order (r before r').
DelegationResult run_delegation(const StateVector& data, const PauliKey& ek,
                                const EvaluationPlan& plan, Transport& transport,
                                RandomBitSource& rng, const DelegationOptions& options = {});

}  // namespace qfhe
