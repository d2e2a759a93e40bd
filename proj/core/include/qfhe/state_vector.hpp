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
 * Dense statevector over a small register. Qubit indices are 1-based and
 * qubit 1 is the most significant bit of the amplitude index, matching the
 * left-to-right tensor order of kets written |q1 q2 ... qn>.
 */

#pragma once

#include <cstddef>
#include <vector>

#include "qfhe/common.hpp"
#include "qfhe/gate.hpp"

namespace qfhe {

/// Dense simulation refuses registers above this size unless the caller
/// passes an explicit higher cap.
inline constexpr std::size_t kDefaultMaxQubits = 12;

inline constexpr double kNormTolerance = 1e-10;

class StateVector {
  public:
    /// |0...0> over `num_qubits` qubits (num_qubits may be 0: a scalar 1).
    explicit StateVector(std::size_t num_qubits, std::size_t max_qubits = kDefaultMaxQubits);

    /// Computational basis state |bits>.
    static StateVector basis(const Bits& bits, std::size_t max_qubits = kDefaultMaxQubits);

    /// Wraps an amplitude array. The length must be a power of two and the
    /// norm must be 1 within kNormTolerance.
    static StateVector from_amplitudes(std::vector<cdouble> amplitudes,
                                       std::size_t max_qubits = kDefaultMaxQubits);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<cdouble>& amplitudes() const { return amplitudes_; }
    cdouble amplitude(std::size_t index) const { return amplitudes_.at(index); }

    double norm() const;

    /// Bit value of 1-based qubit w inside amplitude index `index`.
    std::uint8_t qubit_bit(std::size_t index, std::size_t w) const;

    friend bool operator==(const StateVector&, const StateVector&) = default;

  private:
    StateVector(std::vector<cdouble> amplitudes, std::size_t num_qubits)
        : amplitudes_(std::move(amplitudes)), num_qubits_(num_qubits) {}

    std::vector<cdouble> amplitudes_;
    std::size_t num_qubits_ = 0;
};

/// Returns the gate applied to a copy of the state. Norm is preserved to
/// machine precision.
[[nodiscard]] StateVector apply_gate(const StateVector& state, const Gate& gate);

cdouble inner_product(const StateVector& a, const StateVector& b);

/// True iff |<a|b>| >= 1 - tol. States must have the same width.
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol);

/// Kronecker product; `a` occupies the high (leftmost) qubits.
StateVector tensor(const StateVector& a, const StateVector& b,
                   std::size_t max_qubits = kDefaultMaxQubits);

}  // namespace qfhe
