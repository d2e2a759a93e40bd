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

#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>

#include "qfhe/message.hpp"

namespace qfhe {

/// One side of a bidirectional message channel.
class TransportEndpoint {
  public:
    virtual ~TransportEndpoint() = default;

    virtual void send(const Message& message) = 0;
    /// Blocks until a message arrives.
    virtual Message receive() = 0;
    /// Non-blocking; returns false when no message is pending.
    virtual bool try_receive(Message& out) = 0;
};

/// A client/server channel pair. Every sent message is also recorded into
/// the attached transcript, tagged with the sending party.
class Transport {
  public:
    virtual ~Transport() = default;

    virtual TransportEndpoint& client_end() = 0;
    virtual TransportEndpoint& server_end() = 0;

    void attach_transcript(Transcript* transcript) { transcript_ = transcript; }

  protected:
    void record(Party from, const Message& message);

  private:
    std::mutex record_mu_;
    Transcript* transcript_ = nullptr;
};

/// Two in-memory queues. Usable single-threaded (via try_receive) for
/// deterministic runs, or with blocking receive across threads.
class InProcTransport : public Transport {
  public:
    InProcTransport();
    ~InProcTransport() override;
    TransportEndpoint& client_end() override;
    TransportEndpoint& server_end() override;

  private:
    struct Queue {
        std::mutex mu;
        std::condition_variable cv;
        std::deque<Message> messages;
    };
    class End;

    Queue to_client_;
    Queue to_server_;
    std::unique_ptr<End> client_;
    std::unique_ptr<End> server_;
};

/// Length-prefixed byte stream over a local AF_UNIX socket pair. Each frame
/// is a 4-byte big-endian body length followed by the encoded message.
class SocketTransport : public Transport {
  public:
    SocketTransport();
    ~SocketTransport() override;
    TransportEndpoint& client_end() override;
    TransportEndpoint& server_end() override;

  private:
    class End;
    std::unique_ptr<End> client_;
    std::unique_ptr<End> server_;
};

}  // namespace qfhe
