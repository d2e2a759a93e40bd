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
#include <mutex>
#include <vector>

#include "qfhe/common.hpp"
#include "qfhe/gate.hpp"
#include "qfhe/message.hpp"
#include "qfhe/state_vector.hpp"

namespace qfhe {

/// Which party may currently operate on each simulated qubit. Models
/// physical qubit transmission: entangled amplitudes cannot be split, so a
/// "sent" qubit stays in the shared backend and only its ownership moves.
class CustodyMap {
  public:
    CustodyMap(std::size_t width, Party initial_owner);

    Party owner(std::size_t w) const;  // 1-based
    void transfer(std::size_t w, Party to);
    void transfer_all(Party to);
    std::size_t width() const { return owners_.size(); }

  private:
    std::vector<Party> owners_;
};

/// The shared simulation arbiter. Every state mutation goes through it under
/// one lock, and every gate application is custody-checked against the
/// acting party; violations throw, never pass silently.
class SimBackend {
  public:
    SimBackend(StateVector initial, Party initial_owner);

    /// Applies a gate on behalf of `actor`. Throws custody-violation if the
    /// actor does not own every touched qubit.
    void apply_gate(Party actor, const Gate& gate);

    /// Resets the listed qubits (1-based) to the given basis bits. Each
    /// qubit must currently hold a definite basis value (its marginal
    /// probability within 1e-9 of 0 or 1); used to re-prepare the encoding
    /// register between repetitions. Not counted as circuit gates.
    void reset_register(Party actor, const std::vector<std::size_t>& qubits, const Bits& bits);

    Party owner(std::size_t w) const;
    void transfer(std::size_t w, Party to);
    void transfer_all(Party to);

    StateVector state() const;

    std::uint64_t gate_ops(Party actor) const;

  private:
    void check_custody(Party actor, std::size_t w) const;

    mutable std::mutex mu_;
    StateVector state_;
    CustodyMap custody_;
    std::uint64_t server_gate_ops_ = 0;
    std::uint64_t client_gate_ops_ = 0;
};

}  // namespace qfhe
