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

#include <vector>

#include "qfhe/common.hpp"
#include "qfhe/pauli_key.hpp"
#include "qfhe/state_vector.hpp"

namespace qfhe {

/// Applies the Pauli mask X^{x[i]} Z^{z[i]} to qubit targets[i] (1-based)
/// for every i. Z is applied before X on each qubit. The mask is its own
/// inverse up to global phase, so this serves as both encryption and
/// decryption. x, z and targets must have equal length.
StateVector qotp_apply(const StateVector& state, const Bits& x, const Bits& z,
                       const std::vector<std::size_t>& targets);

/// Masks qubits 1..count with the first `count` bit pairs of the key.
StateVector qotp_apply_prefix(const StateVector& state, const PauliKey& key, std::size_t count);

}  // namespace qfhe
