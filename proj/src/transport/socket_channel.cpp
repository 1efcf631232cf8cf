// src/transport/socket_channel.cpp

// Copyright 2026  the vcnorm authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <condition_variable>
#include <cstring>
#include <deque>
#include <thread>

#include "common/error.hpp"
#include "transport/channel.hpp"

namespace vcn {

namespace {

// Plain stream sockets, no TLS: confidentiality in this system comes from
// the secret sharing, not from transport encryption.  A writer thread drains
// an outbound queue so that two endpoints sending large frames at the same
// time cannot deadlock on full kernel buffers.
class SocketChannel final : public Channel {
 public:
  explicit SocketChannel(int fd) : fd_(fd) {
    const int one = 1;
    setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    writer_ = std::thread([this] { writer_loop(); });
  }

  ~SocketChannel() override {
    SocketChannel::close();
    if (writer_.joinable()) writer_.join();
    if (fd_ >= 0) ::close(fd_);
  }

  void close() override {
    {
      std::lock_guard<std::mutex> lock(mu_);
      closing_ = true;
    }
    cv_.notify_all();
    // A half-close lets the peer drain what is already in flight.
    if (fd_ >= 0) ::shutdown(fd_, SHUT_WR);
  }

 protected:
  void do_send(std::vector<uint8_t> wire) override {
    {
      std::lock_guard<std::mutex> lock(mu_);
      VCN_CHECK(!closing_, kProtocol) << "send on closed channel";
      outbox_.push_back(std::move(wire));
    }
    cv_.notify_one();
  }

  Frame do_recv() override {
    Frame f;
    while (!reader_.next(&f)) {
      uint8_t buf[65536];
      const ssize_t got = ::recv(fd_, buf, sizeof(buf), 0);
      VCN_CHECK(got > 0, kProtocol) << "socket recv failed or peer closed";
      reader_.feed(buf, static_cast<size_t>(got));
    }
    return f;
  }

 private:
  void writer_loop() {
    while (true) {
      std::vector<uint8_t> wire;
      {
        std::unique_lock<std::mutex> lock(mu_);
        cv_.wait(lock, [this] { return !outbox_.empty() || closing_; });
        if (outbox_.empty()) return;
        wire = std::move(outbox_.front());
        outbox_.pop_front();
      }
      size_t off = 0;
      while (off < wire.size()) {
        const ssize_t sent =
            ::send(fd_, wire.data() + off, wire.size() - off, MSG_NOSIGNAL);
        if (sent <= 0) return;  // peer gone; recv side reports the error
        off += static_cast<size_t>(sent);
      }
    }
  }

  int fd_;
  FrameReader reader_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::vector<uint8_t>> outbox_;
  bool closing_ = false;
  std::thread writer_;
};

}  // namespace

ChannelPair make_socket_pair() {
  const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
  VCN_CHECK(listener >= 0, kIo) << "socket() failed";
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  if (::bind(listener, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) !=
          0 ||
      ::listen(listener, 1) != 0) {
    ::close(listener);
    VCN_THROW(kIo) << "bind/listen on loopback failed: " << strerror(errno);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listener, reinterpret_cast<sockaddr *>(&addr), &len);

  int client = ::socket(AF_INET, SOCK_STREAM, 0);
  VCN_CHECK(client >= 0, kIo) << "socket() failed";
  if (::connect(client, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) !=
      0) {
    ::close(client);
    ::close(listener);
    VCN_THROW(kIo) << "loopback connect failed: " << strerror(errno);
  }
  const int accepted = ::accept(listener, nullptr, nullptr);
  ::close(listener);
  VCN_CHECK(accepted >= 0, kIo) << "accept failed";

  ChannelPair pair;
  pair.first = std::make_unique<SocketChannel>(accepted);
  pair.second = std::make_unique<SocketChannel>(client);
  return pair;
}

}  // namespace vcn
