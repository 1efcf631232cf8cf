// src/transport/channel.cpp

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

#include "transport/channel.hpp"

#include <condition_variable>
#include <cstdlib>
#include <cstring>
#include <deque>

#include "common/container.hpp"
#include "common/error.hpp"

namespace vcn {

std::vector<uint8_t> encode_frame(MsgType type,
                                  const std::vector<uint8_t> &payload) {
  VCN_CHECK(payload.size() < (uint64_t{1} << 31), kProtocol)
      << "oversized frame: " << payload.size() << " bytes";
  std::vector<uint8_t> wire;
  wire.reserve(5 + payload.size());
  put_be32(wire, static_cast<uint32_t>(payload.size()));
  wire.push_back(static_cast<uint8_t>(type));
  wire.insert(wire.end(), payload.begin(), payload.end());
  return wire;
}

void FrameReader::feed(const uint8_t *data, size_t len) {
  buf_.insert(buf_.end(), data, data + len);
}

bool FrameReader::next(Frame *out) {
  if (buf_.size() < 5) return false;
  const uint32_t len = get_be32(buf_.data());
  if (buf_.size() < 5 + static_cast<size_t>(len)) return false;
  out->type = static_cast<MsgType>(buf_[4]);
  out->payload.assign(buf_.begin() + 5, buf_.begin() + 5 + len);
  buf_.erase(buf_.begin(), buf_.begin() + 5 + len);
  return true;
}

void NetConfig::validate() const {
  VCN_CHECK(bandwidth_bps > 0.0 && rtt_seconds > 0.0, kInvalidArgument)
      << "net config must be positive";
}

double simulated_time(const ChannelStats &stats, const NetConfig &config) {
  const double bytes =
      static_cast<double>(stats.bytes_sent + stats.bytes_received);
  return static_cast<double>(stats.rounds) * config.rtt_seconds +
         bytes * 8.0 / config.bandwidth_bps;
}

void TranscriptLog::record(int sender, const Frame &f) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back({sender, f.type, f.payload});
}

std::vector<TranscriptEntry> TranscriptLog::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

void Channel::send_frame(MsgType type, const std::vector<uint8_t> &payload) {
  auto wire = encode_frame(type, payload);
  stats_.bytes_sent += wire.size();
  stats_.frames_sent += 1;
  sends_since_recv_ += 1;
  if (transcript_) transcript_->record(party_id_, Frame{type, payload});
  do_send(std::move(wire));
}

Frame Channel::recv_frame() {
  Frame f = do_recv();
  stats_.bytes_received += f.wire_size();
  stats_.frames_received += 1;
  if (sends_since_recv_ > 0) {
    stats_.rounds += 1;
    sends_since_recv_ = 0;
  }
  return f;
}

namespace {

struct FrameQueue {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<Frame> q;
  bool closed = false;

  void push(Frame f) {
    {
      std::lock_guard<std::mutex> lock(mu);
      q.push_back(std::move(f));
    }
    cv.notify_one();
  }
  Frame pop() {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [this] { return !q.empty() || closed; });
    VCN_CHECK(!q.empty(), kProtocol) << "recv on closed channel";
    Frame f = std::move(q.front());
    q.pop_front();
    return f;
  }
  void close() {
    {
      std::lock_guard<std::mutex> lock(mu);
      closed = true;
    }
    cv.notify_all();
  }
};

class InprocChannel final : public Channel {
 public:
  InprocChannel(std::shared_ptr<FrameQueue> tx, std::shared_ptr<FrameQueue> rx)
      : tx_(std::move(tx)), rx_(std::move(rx)) {}
  ~InprocChannel() override { InprocChannel::close(); }

  void close() override {
    if (tx_) tx_->close();
  }

 protected:
  void do_send(std::vector<uint8_t> wire) override {
    // The queue carries decoded frames; wire bytes are already accounted.
    Frame f;
    f.type = static_cast<MsgType>(wire[4]);
    f.payload.assign(wire.begin() + 5, wire.end());
    tx_->push(std::move(f));
  }
  Frame do_recv() override { return rx_->pop(); }

 private:
  std::shared_ptr<FrameQueue> tx_, rx_;
};

}  // namespace

ChannelPair make_inproc_pair() {
  auto ab = std::make_shared<FrameQueue>();
  auto ba = std::make_shared<FrameQueue>();
  ChannelPair pair;
  pair.first = std::make_unique<InprocChannel>(ab, ba);
  pair.second = std::make_unique<InprocChannel>(ba, ab);
  return pair;
}

ChannelPair connect_pair(const NetConfig &config, NetMode mode) {
  config.validate();
  return connect_pair(mode);
}

ChannelPair connect_pair(NetMode mode) {
  return mode == NetMode::kInproc ? make_inproc_pair() : make_socket_pair();
}

NetMode parse_net_mode(const std::string &name) {
  std::string v = name;
  if (v.empty()) {
    const char *env = std::getenv("VC_NET_MODE");
    if (env) v = env;
  }
  if (v.empty() || v == "inproc") return NetMode::kInproc;
  if (v == "socket") return NetMode::kSocket;
  VCN_THROW(kInvalidArgument) << "unknown net mode '" << v << "'";
}

}  // namespace vcn
