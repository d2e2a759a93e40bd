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
#include <string>
#include <vector>

#include "qfhe/common.hpp"

namespace qfhe {

enum class Party : std::uint8_t { client, server };

const char* party_name(Party party);

enum class MessageKind : std::uint8_t {
    eval_start = 1,   // server -> client, carries the plan digest
    send_qubit = 2,   // server -> client, custody of `qubit` moves with it
    return_qubit = 3, // client -> server
    eval_done = 4,    // server -> client
};

const char* message_kind_name(MessageKind kind);

/// Protocol message. Payloads never contain key bits, random bits or
/// amplitudes; the digest covers only the public evaluation plan.
struct Message {
    MessageKind kind = MessageKind::eval_start;
    std::uint16_t qubit = 0;   // 1-based; 0 when not applicable
    std::uint64_t run_id = 0;
    std::uint64_t digest = 0;  // eval_start only

    friend bool operator==(const Message&, const Message&) = default;
};

/// Wire form: a fixed header of 1-byte kind, 2-byte qubit index big-endian
/// and 8-byte run id big-endian; eval_start appends the 8-byte digest. The
/// stream framing (4-byte big-endian length prefix) is the transport's job.
std::vector<std::uint8_t> encode_message(const Message& message);
Message decode_message(const std::vector<std::uint8_t>& bytes);

struct TranscriptEntry {
    std::uint64_t seq = 0;
    Party from = Party::server;
    Message message;
};

/// Counters accumulated over one delegation run.
struct RunCounters {
    std::uint64_t gates_executed = 0;          // server-side circuit gate applications
    std::uint64_t key_update_xors = 0;         // total bit-XORs in key updating
    std::uint64_t max_key_update_xors = 0;     // worst single step
    std::uint64_t qubit_transfer_messages = 0; // send_qubit + return_qubit
    std::uint64_t client_correction_ops = 0;   // gates applied during R interactions
    std::uint64_t enc_mask_ops = 0;            // per-qubit masks applied by encryption
    std::uint64_t dec_mask_ops = 0;            // per-qubit masks applied by decryption
};

/// Public shape of the run, used by the complexity audit.
struct RunShape {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t circuit_gates = 0;  // |C_U|, one pass
    std::size_t r_gates = 0;        // n_R, one pass
    std::size_t repetitions = 1;    // N
};

/// Ordered message log plus counters for one evaluation run.
class Transcript {
  public:
    void record(Party from, const Message& message);

    const std::vector<TranscriptEntry>& entries() const { return entries_; }
    std::uint64_t qubit_transfer_count() const;

    /// JSON lines: one message object per line, then a trailer object with
    /// the run shape and counters. Byte-stable for identical runs.
    std::string to_json_lines() const;

    RunCounters counters;
    RunShape shape;

  private:
    std::vector<TranscriptEntry> entries_;
};

}  // namespace qfhe
