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

#include "qfhe/backend.hpp"

#include <cmath>

namespace qfhe {

CustodyMap::CustodyMap(std::size_t width, Party initial_owner)
    : owners_(width, initial_owner) {
    if (width == 0) {
        throw Error(ErrorKind::invalid_dimensions, "custody map over zero qubits");
    }
}

Party CustodyMap::owner(std::size_t w) const {
    if (w < 1 || w > owners_.size()) {
        throw Error(ErrorKind::index_out_of_range,
                    "qubit " + std::to_string(w) + " outside 1.." + std::to_string(owners_.size()));
    }
    return owners_[w - 1];
}

void CustodyMap::transfer(std::size_t w, Party to) {
    owner(w);  // bounds check
    owners_[w - 1] = to;
}

void CustodyMap::transfer_all(Party to) {
    for (auto& o : owners_) o = to;
}

SimBackend::SimBackend(StateVector initial, Party initial_owner)
    : state_(std::move(initial)), custody_(state_.num_qubits(), initial_owner) {}

void SimBackend::check_custody(Party actor, std::size_t w) const {
    if (custody_.owner(w) != actor) {
        throw Error(ErrorKind::custody_violation,
                    std::string(party_name(actor)) + " acted on qubit " + std::to_string(w) +
                        " held by " + party_name(custody_.owner(w)));
    }
}

void SimBackend::apply_gate(Party actor, const Gate& gate) {
    std::lock_guard<std::mutex> lock(mu_);
    validate_gate(gate, state_.num_qubits());
    check_custody(actor, gate.target);
    if (gate.is_cnot()) check_custody(actor, gate.control);
    state_ = qfhe::apply_gate(state_, gate);
    (actor == Party::server ? server_gate_ops_ : client_gate_ops_) += 1;
}

void SimBackend::reset_register(Party actor, const std::vector<std::size_t>& qubits,
                                const Bits& bits) {
    if (qubits.size() != bits.size()) {
        throw Error(ErrorKind::dimension_mismatch, "reset needs one bit per qubit");
    }
    std::lock_guard<std::mutex> lock(mu_);
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const std::size_t w = qubits[i];
        if (w < 1 || w > state_.num_qubits()) {
            throw Error(ErrorKind::index_out_of_range, "reset qubit " + std::to_string(w));
        }
        check_custody(actor, w);

        double p1 = 0.0;
        for (std::size_t idx = 0; idx < state_.dim(); ++idx) {
            if (state_.qubit_bit(idx, w)) p1 += std::norm(state_.amplitude(idx));
        }
        // A nondefinite qubit would be measured, not relabeled; the arbiter
        // refuses so the protocol cannot hide a collapse here.
        if (p1 > 1e-9 && p1 < 1.0 - 1e-9) {
            throw Error(ErrorKind::protocol_desync,
                        "reset of qubit " + std::to_string(w) + " with marginal p1 = " +
                            std::to_string(p1));
        }
        const std::uint8_t current = p1 >= 0.5 ? 1 : 0;
        if (current != (bits[i] & 1u)) {
            state_ = qfhe::apply_gate(state_, Gate::single(GateKind::X,
                                                           static_cast<std::uint16_t>(w)));
        }
    }
}

Party SimBackend::owner(std::size_t w) const {
    std::lock_guard<std::mutex> lock(mu_);
    return custody_.owner(w);
}

void SimBackend::transfer(std::size_t w, Party to) {
    std::lock_guard<std::mutex> lock(mu_);
    custody_.transfer(w, to);
}

void SimBackend::transfer_all(Party to) {
    std::lock_guard<std::mutex> lock(mu_);
    custody_.transfer_all(to);
}

StateVector SimBackend::state() const {
    std::lock_guard<std::mutex> lock(mu_);
    return state_;
}

std::uint64_t SimBackend::gate_ops(Party actor) const {
    std::lock_guard<std::mutex> lock(mu_);
    return actor == Party::server ? server_gate_ops_ : client_gate_ops_;
}

}  // namespace qfhe
