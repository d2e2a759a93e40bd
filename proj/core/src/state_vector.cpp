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

#include "qfhe/state_vector.hpp"

#include <cmath>

namespace qfhe {

namespace {

std::size_t qubits_for_dim(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw Error(ErrorKind::dimension_mismatch,
                    "amplitude count " + std::to_string(dim) + " is not a power of two");
    }
    std::size_t q = 0;
    while ((std::size_t{1} << q) < dim) ++q;
    return q;
}

void check_cap(std::size_t num_qubits, std::size_t max_qubits) {
    if (num_qubits > max_qubits) {
        throw Error(ErrorKind::too_large, "register of " + std::to_string(num_qubits) +
                                              " qubits exceeds the cap of " +
                                              std::to_string(max_qubits) +
                                              " (pass an explicit max_qubits to override)");
    }
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits, std::size_t max_qubits) : num_qubits_(num_qubits) {
    check_cap(num_qubits, max_qubits);
    amplitudes_.assign(std::size_t{1} << num_qubits, cdouble{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector StateVector::basis(const Bits& bits, std::size_t max_qubits) {
    StateVector s(bits.size(), max_qubits);
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[bits_to_index(bits)] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<cdouble> amplitudes, std::size_t max_qubits) {
    std::size_t q = qubits_for_dim(amplitudes.size());
    check_cap(q, max_qubits);
    StateVector s(std::move(amplitudes), q);
    if (std::abs(s.norm() - 1.0) > kNormTolerance) {
        throw Error(ErrorKind::dimension_mismatch,
                    "state is not normalized (norm " + std::to_string(s.norm()) + ")");
    }
    return s;
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes_) sum += std::norm(a);
    return std::sqrt(sum);
}

std::uint8_t StateVector::qubit_bit(std::size_t index, std::size_t w) const {
    return static_cast<std::uint8_t>((index >> (num_qubits_ - w)) & 1u);
}

StateVector apply_gate(const StateVector& state, const Gate& gate) {
    const std::size_t q = state.num_qubits();
    validate_gate(gate, q);

    std::vector<cdouble> amps = state.amplitudes();
    if (gate.is_cnot()) {
        // Flip the target bit wherever the control bit is set.
        const std::size_t cmask = std::size_t{1} << (q - gate.control);
        const std::size_t tmask = std::size_t{1} << (q - gate.target);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & cmask) != 0 && (i & tmask) == 0) {
                std::swap(amps[i], amps[i | tmask]);
            }
        }
    } else {
        const auto u = gate_matrix(gate.kind);
        const std::size_t mask = std::size_t{1} << (q - gate.target);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & mask) != 0) continue;
            const cdouble a0 = amps[i];
            const cdouble a1 = amps[i | mask];
            amps[i] = u[0] * a0 + u[1] * a1;
            amps[i | mask] = u[2] * a0 + u[3] * a1;
        }
    }
    return StateVector::from_amplitudes(std::move(amps), q);
}

cdouble inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw Error(ErrorKind::dimension_mismatch,
                    "inner product of " + std::to_string(a.num_qubits()) + " and " +
                        std::to_string(b.num_qubits()) + " qubit states");
    }
    cdouble sum{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        sum += std::conj(a.amplitude(i)) * b.amplitude(i);
    }
    return sum;
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
    return std::abs(inner_product(a, b)) >= 1.0 - tol;
}

StateVector tensor(const StateVector& a, const StateVector& b, std::size_t max_qubits) {
    check_cap(a.num_qubits() + b.num_qubits(), max_qubits);
    std::vector<cdouble> amps;
    amps.reserve(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            amps.push_back(a.amplitude(i) * b.amplitude(j));
        }
    }
    return StateVector::from_amplitudes(std::move(amps), max_qubits);
}

}  // namespace qfhe
