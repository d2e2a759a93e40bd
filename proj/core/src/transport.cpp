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

#include "qfhe/transport.hpp"

#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace qfhe {

void Transport::record(Party from, const Message& message) {
    std::lock_guard<std::mutex> lock(record_mu_);
    if (transcript_) transcript_->record(from, message);
}

class InProcTransport::End : public TransportEndpoint {
  public:
    End(InProcTransport& owner, Party party, Queue& outgoing, Queue& incoming)
        : owner_(owner), party_(party), outgoing_(outgoing), incoming_(incoming) {}

    void send(const Message& message) override {
        owner_.record(party_, message);
        {
            std::lock_guard<std::mutex> lock(outgoing_.mu);
            outgoing_.messages.push_back(message);
        }
        outgoing_.cv.notify_one();
    }

    Message receive() override {
        std::unique_lock<std::mutex> lock(incoming_.mu);
        incoming_.cv.wait(lock, [this] { return !incoming_.messages.empty(); });
        Message msg = incoming_.messages.front();
        incoming_.messages.pop_front();
        return msg;
    }

    bool try_receive(Message& out) override {
        std::lock_guard<std::mutex> lock(incoming_.mu);
        if (incoming_.messages.empty()) return false;
        out = incoming_.messages.front();
        incoming_.messages.pop_front();
        return true;
    }

  private:
    InProcTransport& owner_;
    Party party_;
    Queue& outgoing_;
    Queue& incoming_;
};

InProcTransport::InProcTransport()
    : client_(std::make_unique<End>(*this, Party::client, to_server_, to_client_)),
      server_(std::make_unique<End>(*this, Party::server, to_client_, to_server_)) {}

InProcTransport::~InProcTransport() = default;

TransportEndpoint& InProcTransport::client_end() { return *client_; }
TransportEndpoint& InProcTransport::server_end() { return *server_; }

class SocketTransport::End : public TransportEndpoint {
  public:
    End(SocketTransport& owner, Party party, int fd) : owner_(owner), party_(party), fd_(fd) {}

    ~End() override {
        if (fd_ >= 0) ::close(fd_);
    }

    void send(const Message& message) override {
        owner_.record(party_, message);
        const std::vector<std::uint8_t> body = encode_message(message);
        std::vector<std::uint8_t> frame;
        frame.reserve(4 + body.size());
        const auto len = static_cast<std::uint32_t>(body.size());
        for (int shift = 24; shift >= 0; shift -= 8) {
            frame.push_back(static_cast<std::uint8_t>(len >> shift));
        }
        frame.insert(frame.end(), body.begin(), body.end());
        write_all(frame.data(), frame.size());
    }

    Message receive() override {
        std::uint8_t len_bytes[4];
        read_all(len_bytes, 4);
        std::uint32_t len = 0;
        for (int i = 0; i < 4; ++i) len = (len << 8) | len_bytes[i];
        if (len > 64) {
            throw Error(ErrorKind::parse_error,
                        "frame of " + std::to_string(len) + " bytes exceeds the wire limit");
        }
        std::vector<std::uint8_t> body(len);
        read_all(body.data(), body.size());
        return decode_message(body);
    }

    bool try_receive(Message& out) override {
        // Sockets are used with one blocking thread per party; polling is
        // only meaningful for the in-process transport.
        out = receive();
        return true;
    }

  private:
    void write_all(const std::uint8_t* data, std::size_t size) {
        while (size > 0) {
            const ssize_t n = ::write(fd_, data, size);
            if (n < 0) {
                if (errno == EINTR) continue;
                throw Error(ErrorKind::io_error,
                            std::string("socket write: ") + std::strerror(errno));
            }
            data += n;
            size -= static_cast<std::size_t>(n);
        }
    }

    void read_all(std::uint8_t* data, std::size_t size) {
        while (size > 0) {
            const ssize_t n = ::read(fd_, data, size);
            if (n == 0) {
                throw Error(ErrorKind::io_error, "socket closed mid-frame");
            }
            if (n < 0) {
                if (errno == EINTR) continue;
                throw Error(ErrorKind::io_error,
                            std::string("socket read: ") + std::strerror(errno));
            }
            data += n;
            size -= static_cast<std::size_t>(n);
        }
    }

    SocketTransport& owner_;
    Party party_;
    int fd_;
};

SocketTransport::SocketTransport() {
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) {
        throw Error(ErrorKind::io_error, std::string("socketpair: ") + std::strerror(errno));
    }
    client_ = std::make_unique<End>(*this, Party::client, fds[0]);
    server_ = std::make_unique<End>(*this, Party::server, fds[1]);
}

SocketTransport::~SocketTransport() = default;

TransportEndpoint& SocketTransport::client_end() { return *client_; }
TransportEndpoint& SocketTransport::server_end() { return *server_; }

}  // namespace qfhe
