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

#include "qfhe/protocol.hpp"

#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

namespace qfhe {

void EvaluationPlan::validate() const {
    circuit.validate();
    if (encoding.size() != circuit.m) {
        throw Error(ErrorKind::dimension_mismatch,
                    "encoding has " + std::to_string(encoding.size()) + " bits, circuit has m = " +
                        std::to_string(circuit.m));
    }
    for (auto b : encoding) {
        if (b > 1) throw Error(ErrorKind::parse_error, "encoding bits must be 0 or 1");
    }
    if (repetitions < 1) {
        throw Error(ErrorKind::invalid_dimensions, "plan needs at least one repetition");
    }
}

std::uint64_t EvaluationPlan::digest() const {
    std::string text = circuit_to_json(circuit);
    text += "|e=";
    text += bits_to_string(encoding);
    text += "|N=";
    text += std::to_string(repetitions);
    return fnv1a64(text);
}

StateVector client_encrypt(const StateVector& data, const PauliKey& ek, const Bits& encoding,
                           RunCounters* counters) {
    if (data.num_qubits() != ek.n()) {
        throw Error(ErrorKind::dimension_mismatch,
                    "data register has " + std::to_string(data.num_qubits()) +
                        " qubits, key expects n = " + std::to_string(ek.n()));
    }
    if (encoding.size() != ek.m()) {
        throw Error(ErrorKind::dimension_mismatch,
                    "encoding has " + std::to_string(encoding.size()) + " bits, key expects m = " +
                        std::to_string(ek.m()));
    }
    const StateVector masked = qotp_apply_prefix(data, ek, ek.n());
    if (counters) counters->enc_mask_ops += ek.n();
    return tensor(masked, StateVector::basis(encoding));
}

StateVector client_decrypt(const StateVector& result, const PauliKey& dk, const Bits& encoding,
                           RunCounters* counters) {
    if (result.num_qubits() != dk.width()) {
        throw Error(ErrorKind::dimension_mismatch,
                    "result register has " + std::to_string(result.num_qubits()) +
                        " qubits, key covers " + std::to_string(dk.width()));
    }
    if (encoding.size() != dk.m()) {
        throw Error(ErrorKind::dimension_mismatch, "encoding length does not match the key's m");
    }
    const std::size_t n = dk.n();
    const std::size_t m = dk.m();
    const StateVector unmasked = qotp_apply_prefix(result, dk, n + m);
    if (counters) counters->dec_mask_ops += n + m;

    // The encoding register must carry |e> as a clean factor; anything else
    // means the schedule and the execution disagreed.
    const std::uint64_t e_index = bits_to_index(encoding);
    const std::uint64_t enc_dim = std::uint64_t{1} << m;
    double p = 0.0;
    for (std::size_t d = 0; d < (std::size_t{1} << n); ++d) {
        p += std::norm(unmasked.amplitude(d * enc_dim + e_index));
    }
    if (p < 1.0 - 1e-9) {
        throw Error(ErrorKind::encoding_mismatch,
                    "encoding register overlap " + std::to_string(p) + " after unmasking");
    }
    const double scale = 1.0 / std::sqrt(p);
    std::vector<cdouble> amps(std::size_t{1} << n);
    for (std::size_t d = 0; d < amps.size(); ++d) {
        amps[d] = unmasked.amplitude(d * enc_dim + e_index) * scale;
    }
    return StateVector::from_amplitudes(std::move(amps));
}

void client_r_step(SimBackend& backend, std::size_t w, std::uint8_t x_bit, RandomBitPair pair) {
    const auto q = static_cast<std::uint16_t>(w);
    if (x_bit & 1u) backend.apply_gate(Party::client, Gate::single(GateKind::P, q));
    if (pair.r_prime & 1u) backend.apply_gate(Party::client, Gate::single(GateKind::Z, q));
    if (pair.r & 1u) backend.apply_gate(Party::client, Gate::single(GateKind::X, q));
}

StateVector apply_r_correction(const StateVector& state, std::size_t w, std::uint8_t x_bit,
                               RandomBitPair pair) {
    const auto q = static_cast<std::uint16_t>(w);
    StateVector out = state;
    if (x_bit & 1u) out = apply_gate(out, Gate::single(GateKind::P, q));
    if (pair.r_prime & 1u) out = apply_gate(out, Gate::single(GateKind::Z, q));
    if (pair.r & 1u) out = apply_gate(out, Gate::single(GateKind::X, q));
    return out;
}

ServerEngine::ServerEngine(SimBackend& backend, const EvaluationPlan& plan,
                           TransportEndpoint& endpoint, std::uint64_t run_id)
    : backend_(backend), plan_(plan), endpoint_(endpoint), run_id_(run_id) {
    plan_.validate();
}

void ServerEngine::start() {
    if (started_) {
        throw Error(ErrorKind::protocol_desync, "server started twice");
    }
    started_ = true;
    Message msg;
    msg.kind = MessageKind::eval_start;
    msg.run_id = run_id_;
    msg.digest = plan_.digest();
    endpoint_.send(msg);
    advance();
}

void ServerEngine::advance() {
    const auto& gates = plan_.circuit.gates;
    while (rep_ < plan_.repetitions) {
        while (gate_index_ < gates.size()) {
            const Gate& gate = gates[gate_index_];
            backend_.apply_gate(Party::server, gate);
            ++gate_index_;
            if (gate.kind == GateKind::R) {
                // The qubit travels to the client for the correction; custody
                // moves before the message so the receiver may act on arrival.
                backend_.transfer(gate.target, Party::client);
                awaiting_return_ = gate.target;
                Message msg;
                msg.kind = MessageKind::send_qubit;
                msg.qubit = gate.target;
                msg.run_id = run_id_;
                endpoint_.send(msg);
                return;
            }
        }
        ++rep_;
        gate_index_ = 0;
        if (rep_ < plan_.repetitions) {
            // Fresh encoding for the next pass; the register is definite
            // here, so this is re-preparation rather than measurement.
            std::vector<std::size_t> enc_qubits(plan_.circuit.m);
            std::iota(enc_qubits.begin(), enc_qubits.end(), plan_.circuit.n + 1);
            backend_.reset_register(Party::server, enc_qubits, plan_.encoding);
        }
    }
    backend_.transfer_all(Party::client);
    Message msg;
    msg.kind = MessageKind::eval_done;
    msg.run_id = run_id_;
    endpoint_.send(msg);
    done_ = true;
}

void ServerEngine::on_message(const Message& message) {
    if (message.run_id != run_id_) {
        throw Error(ErrorKind::protocol_desync,
                    "run id " + std::to_string(message.run_id) + " does not match " +
                        std::to_string(run_id_));
    }
    if (done_) {
        throw Error(ErrorKind::protocol_desync, "message after eval_done");
    }
    if (message.kind != MessageKind::return_qubit) {
        throw Error(ErrorKind::protocol_desync,
                    std::string("server expected return_qubit, got ") +
                        message_kind_name(message.kind));
    }
    if (!awaiting_return_) {
        throw Error(ErrorKind::protocol_desync, "return_qubit with no qubit in flight");
    }
    if (message.qubit != *awaiting_return_) {
        throw Error(ErrorKind::protocol_desync,
                    "returned qubit " + std::to_string(message.qubit) + ", expected " +
                        std::to_string(*awaiting_return_));
    }
    awaiting_return_.reset();
    advance();
}

ClientEngine::ClientEngine(SimBackend& backend, const EvaluationPlan& plan,
                           TransportEndpoint& endpoint, const PauliKey& ek,
                           std::vector<RandomBitPair> r_pairs, ScheduleMode mode,
                           std::uint64_t run_id)
    : backend_(backend),
      plan_(plan),
      endpoint_(endpoint),
      key_(ek),
      r_pairs_(std::move(r_pairs)),
      mode_(mode),
      run_id_(run_id) {
    plan_.validate();
    if (ek.n() != plan_.circuit.n || ek.m() != plan_.circuit.m) {
        throw Error(ErrorKind::dimension_mismatch, "key dimensions do not match the plan");
    }
    const std::size_t expected = plan_.circuit.r_gate_count() * plan_.repetitions;
    if (r_pairs_.size() != expected) {
        throw Error(ErrorKind::rpair_count_mismatch,
                    std::to_string(r_pairs_.size()) + " bit pairs for " + std::to_string(expected) +
                        " R-gate executions");
    }
    if (mode_ == ScheduleMode::precomputed) precompute_schedule();
}

void ClientEngine::precompute_schedule() {
    PauliKey key = key_;
    std::size_t cursor = 0;
    for (std::size_t rep = 0; rep < plan_.repetitions; ++rep) {
        if (rep > 0) {
            key = key.with_encoding_bits_cleared();
            precomputed_steps_.push_back(key);
        }
        for (const Gate& gate : plan_.circuit.gates) {
            std::uint64_t xors = 0;
            key = gate.kind == GateKind::R ? update_r(key, gate.target, r_pairs_[cursor++], &xors)
                                           : update_clifford(key, gate, &xors);
            xor_ops_ += xors;
            if (xors > max_step_xors_) max_step_xors_ = xors;
            precomputed_steps_.push_back(key);
        }
    }
    precomputed_dk_ = key;
}

void ClientEngine::advance_key_to_next_interaction() {
    const auto& gates = plan_.circuit.gates;
    while (rep_ < plan_.repetitions) {
        while (gate_index_ < gates.size()) {
            const Gate& gate = gates[gate_index_];
            if (gate.kind == GateKind::R) return;  // park; the qubit is on its way
            if (mode_ == ScheduleMode::precomputed) {
                key_ = precomputed_steps_[precomputed_cursor_++];
            } else {
                std::uint64_t xors = 0;
                key_ = update_clifford(key_, gate, &xors);
                xor_ops_ += xors;
                if (xors > max_step_xors_) max_step_xors_ = xors;
            }
            ++gate_index_;
        }
        ++rep_;
        gate_index_ = 0;
        if (rep_ < plan_.repetitions) {
            if (mode_ == ScheduleMode::precomputed) {
                key_ = precomputed_steps_[precomputed_cursor_++];
            } else {
                key_ = key_.with_encoding_bits_cleared();
            }
        }
    }
}

void ClientEngine::on_message(const Message& message) {
    if (message.run_id != run_id_) {
        throw Error(ErrorKind::protocol_desync,
                    "run id " + std::to_string(message.run_id) + " does not match " +
                        std::to_string(run_id_));
    }
    if (done_) {
        throw Error(ErrorKind::protocol_desync, "message after eval_done");
    }
    switch (message.kind) {
        case MessageKind::eval_start: {
            if (eval_started_) {
                throw Error(ErrorKind::protocol_desync, "second eval_start");
            }
            if (message.digest != plan_.digest()) {
                throw Error(ErrorKind::protocol_desync, "evaluation plan digest mismatch");
            }
            eval_started_ = true;
            advance_key_to_next_interaction();
            return;
        }
        case MessageKind::send_qubit: {
            if (!eval_started_) {
                throw Error(ErrorKind::protocol_desync, "send_qubit before eval_start");
            }
            const auto& gates = plan_.circuit.gates;
            const bool at_r = rep_ < plan_.repetitions && gate_index_ < gates.size() &&
                              gates[gate_index_].kind == GateKind::R &&
                              gates[gate_index_].target == message.qubit;
            if (!at_r) {
                throw Error(ErrorKind::protocol_desync,
                            "send_qubit(" + std::to_string(message.qubit) +
                                ") does not match the announced schedule");
            }
            if (r_cursor_ >= r_pairs_.size()) {
                throw Error(ErrorKind::rpair_count_mismatch, "ran out of (r, r') pairs");
            }
            const std::size_t w = message.qubit;
            const std::uint8_t x_bit = key_.x(w);
            const RandomBitPair pair = r_pairs_[r_cursor_++];
            client_r_step(backend_, w, x_bit, pair);
            if (mode_ == ScheduleMode::precomputed) {
                key_ = precomputed_steps_[precomputed_cursor_++];
            } else {
                std::uint64_t xors = 0;
                key_ = update_r(key_, w, pair, &xors);
                xor_ops_ += xors;
                if (xors > max_step_xors_) max_step_xors_ = xors;
            }
            ++gate_index_;
            backend_.transfer(w, Party::server);
            Message reply;
            reply.kind = MessageKind::return_qubit;
            reply.qubit = message.qubit;
            reply.run_id = run_id_;
            endpoint_.send(reply);
            advance_key_to_next_interaction();
            return;
        }
        case MessageKind::eval_done: {
            if (!eval_started_) {
                throw Error(ErrorKind::protocol_desync, "eval_done before eval_start");
            }
            if (rep_ != plan_.repetitions) {
                throw Error(ErrorKind::protocol_desync, "eval_done before the schedule finished");
            }
            done_ = true;
            return;
        }
        case MessageKind::return_qubit:
            throw Error(ErrorKind::protocol_desync, "client received return_qubit");
    }
    throw Error(ErrorKind::protocol_desync, "unknown message kind");
}

const PauliKey& ClientEngine::dk() const {
    if (!done_) {
        throw Error(ErrorKind::protocol_desync, "decryption key requested before eval_done");
    }
    return key_;
}

namespace {

void pump_single_threaded(Transport& transport, ServerEngine& server, ClientEngine& client) {
    server.start();
    Message msg;
    while (!server.done() || !client.done()) {
        bool progressed = false;
        while (transport.client_end().try_receive(msg)) {
            client.on_message(msg);
            progressed = true;
        }
        while (transport.server_end().try_receive(msg)) {
            server.on_message(msg);
            progressed = true;
        }
        if (!progressed) {
            throw Error(ErrorKind::protocol_desync, "both roles idle before completion");
        }
    }
}

void pump_threaded(Transport& transport, ServerEngine& server, ClientEngine& client,
                   std::uint64_t run_id) {
    std::exception_ptr server_error;
    std::exception_ptr client_error;
    auto unblock_peer = [run_id](TransportEndpoint& endpoint) {
        // Best effort so the other thread's blocking receive wakes up; the
        // original error is rethrown below either way.
        try {
            Message msg;
            msg.kind = MessageKind::eval_done;
            msg.run_id = run_id;
            endpoint.send(msg);
        } catch (...) {
        }
    };
    std::thread server_thread([&] {
        try {
            server.start();
            while (!server.done()) server.on_message(transport.server_end().receive());
        } catch (...) {
            server_error = std::current_exception();
            unblock_peer(transport.server_end());
        }
    });
    std::thread client_thread([&] {
        try {
            while (!client.done()) client.on_message(transport.client_end().receive());
        } catch (...) {
            client_error = std::current_exception();
            unblock_peer(transport.client_end());
        }
    });
    server_thread.join();
    client_thread.join();
    if (server_error) std::rethrow_exception(server_error);
    if (client_error) std::rethrow_exception(client_error);
}

}  // namespace

DelegationResult run_delegation(const StateVector& data, const PauliKey& ek,
                                const EvaluationPlan& plan, Transport& transport,
                                const std::vector<RandomBitPair>& r_pairs,
                                const DelegationOptions& options) {
    plan.validate();
    if (ek.n() != plan.circuit.n || ek.m() != plan.circuit.m) {
        throw Error(ErrorKind::dimension_mismatch, "key dimensions do not match the plan");
    }

    Transcript transcript;
    transcript.shape.n = plan.circuit.n;
    transcript.shape.m = plan.circuit.m;
    transcript.shape.circuit_gates = plan.circuit.gate_count();
    transcript.shape.r_gates = plan.circuit.r_gate_count();
    transcript.shape.repetitions = plan.repetitions;
    transport.attach_transcript(&transcript);

    const StateVector encrypted = client_encrypt(data, ek, plan.encoding, &transcript.counters);
    SimBackend backend(encrypted, Party::client);
    backend.transfer_all(Party::server);  // the ciphertext travels to the server

    ServerEngine server(backend, plan, transport.server_end(), options.run_id);
    ClientEngine client(backend, plan, transport.client_end(), ek, r_pairs, options.schedule,
                        options.run_id);

    try {
        if (options.threaded) {
            pump_threaded(transport, server, client, options.run_id);
        } else {
            pump_single_threaded(transport, server, client);
        }
    } catch (...) {
        transport.attach_transcript(nullptr);
        throw;
    }

    transcript.counters.gates_executed = backend.gate_ops(Party::server);
    transcript.counters.client_correction_ops = backend.gate_ops(Party::client);
    transcript.counters.key_update_xors = client.key_update_xors();
    transcript.counters.max_key_update_xors = client.max_key_update_xors();

    const PauliKey dk = client.dk();
    StateVector plain = client_decrypt(backend.state(), dk, plan.encoding, &transcript.counters);
    transport.attach_transcript(nullptr);
    return DelegationResult{std::move(plain), std::move(transcript), dk};
}

DelegationResult run_delegation(const StateVector& data, const PauliKey& ek,
                                const EvaluationPlan& plan, Transport& transport,
                                RandomBitSource& rng, const DelegationOptions& options) {
    plan.validate();
    std::vector<RandomBitPair> pairs(plan.circuit.r_gate_count() * plan.repetitions);
    for (auto& pair : pairs) {
        pair.r = rng.next_bit();
        pair.r_prime = rng.next_bit();
    }
    return run_delegation(data, ek, plan, transport, pairs, options);
}

}  // namespace qfhe
