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

#include "qfhe/message.hpp"

#include <json.hpp>

namespace qfhe {

namespace {

constexpr std::size_t kHeaderBytes = 11;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) {
        out.push_back(static_cast<std::uint8_t>(v >> shift));
    }
}

std::uint16_t get_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>((std::uint16_t{p[0]} << 8) | p[1]);
}

std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
    return v;
}

}  // namespace

const char* party_name(Party party) {
    return party == Party::client ? "client" : "server";
}

const char* message_kind_name(MessageKind kind) {
    switch (kind) {
        case MessageKind::eval_start: return "eval_start";
        case MessageKind::send_qubit: return "send_qubit";
        case MessageKind::return_qubit: return "return_qubit";
        case MessageKind::eval_done: return "eval_done";
    }
    return "unknown";
}

std::vector<std::uint8_t> encode_message(const Message& message) {
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderBytes + 8);
    out.push_back(static_cast<std::uint8_t>(message.kind));
    put_u16(out, message.qubit);
    put_u64(out, message.run_id);
    if (message.kind == MessageKind::eval_start) put_u64(out, message.digest);
    return out;
}

Message decode_message(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < kHeaderBytes) {
        throw Error(ErrorKind::parse_error, "message shorter than the fixed header");
    }
    const std::uint8_t kind_byte = bytes[0];
    if (kind_byte < 1 || kind_byte > 4) {
        throw Error(ErrorKind::parse_error,
                    "unknown message kind " + std::to_string(kind_byte));
    }
    Message msg;
    msg.kind = static_cast<MessageKind>(kind_byte);
    msg.qubit = get_u16(bytes.data() + 1);
    msg.run_id = get_u64(bytes.data() + 3);
    const std::size_t want = msg.kind == MessageKind::eval_start ? kHeaderBytes + 8 : kHeaderBytes;
    if (bytes.size() != want) {
        throw Error(ErrorKind::parse_error,
                    std::string(message_kind_name(msg.kind)) + " message has " +
                        std::to_string(bytes.size()) + " bytes, expected " + std::to_string(want));
    }
    if (msg.kind == MessageKind::eval_start) msg.digest = get_u64(bytes.data() + kHeaderBytes);
    return msg;
}

void Transcript::record(Party from, const Message& message) {
    TranscriptEntry entry;
    entry.seq = entries_.size();
    entry.from = from;
    entry.message = message;
    entries_.push_back(entry);
    if (message.kind == MessageKind::send_qubit || message.kind == MessageKind::return_qubit) {
        ++counters.qubit_transfer_messages;
    }
}

std::uint64_t Transcript::qubit_transfer_count() const {
    return counters.qubit_transfer_messages;
}

std::string Transcript::to_json_lines() const {
    using json = nlohmann::json;
    std::string out;
    for (const TranscriptEntry& e : entries_) {
        json line;
        line["digest"] = e.message.digest;
        line["from"] = party_name(e.from);
        line["kind"] = message_kind_name(e.message.kind);
        line["qubit"] = e.message.qubit;
        line["run_id"] = e.message.run_id;
        line["seq"] = e.seq;
        out += line.dump();
        out += '\n';
    }
    json trailer;
    trailer["counters"] = {
        {"client_correction_ops", counters.client_correction_ops},
        {"dec_mask_ops", counters.dec_mask_ops},
        {"enc_mask_ops", counters.enc_mask_ops},
        {"gates_executed", counters.gates_executed},
        {"key_update_xors", counters.key_update_xors},
        {"max_key_update_xors", counters.max_key_update_xors},
        {"qubit_transfer_messages", counters.qubit_transfer_messages},
    };
    trailer["shape"] = {
        {"circuit_gates", shape.circuit_gates},
        {"m", shape.m},
        {"n", shape.n},
        {"r_gates", shape.r_gates},
        {"repetitions", shape.repetitions},
    };
    out += trailer.dump();
    out += '\n';
    return out;
}

}  // namespace qfhe
