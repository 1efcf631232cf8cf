// src/transport/channel.hpp

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

#ifndef VCNORM_TRANSPORT_CHANNEL_HPP_
#define VCNORM_TRANSPORT_CHANNEL_HPP_

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace vcn {

// Wire message: 4-byte big-endian payload length, 1-byte type, payload.
enum class MsgType : uint8_t {
  kShareUpload = 1,
  kTripleBlock = 2,
  kAndOpen = 3,
  kOpenIndex = 4,
  kResult = 5,
};

struct Frame {
  MsgType type;
  std::vector<uint8_t> payload;

  size_t wire_size() const { return 5 + payload.size(); }
};

std::vector<uint8_t> encode_frame(MsgType type,
                                  const std::vector<uint8_t> &payload);

// Incremental decoder; tolerates arbitrary chunk splits of the byte stream.
class FrameReader {
 public:
  void feed(const uint8_t *data, size_t len);
  bool next(Frame *out);

 private:
  std::vector<uint8_t> buf_;
};

struct ChannelStats {
  uint64_t rounds = 0;  // matched send->recv pairs
  uint64_t bytes_sent = 0;
  uint64_t bytes_received = 0;
  uint64_t frames_sent = 0;
  uint64_t frames_received = 0;
};

struct NetConfig {
  double bandwidth_bps = 1e9;  // 1 Gbit/s
  double rtt_seconds = 1e-3;   // 1 ms round trip

  void validate() const;
};

// Simulated network time for a session: one RTT per lockstep round plus the
// serialization time of all bytes that crossed the endpoint, i.e.
//   rounds * rtt + (bytes_sent + bytes_received) * 8 / bandwidth.
double simulated_time(const ChannelStats &stats, const NetConfig &config);

struct TranscriptEntry {
  int sender = 0;
  MsgType type = MsgType::kAndOpen;
  std::vector<uint8_t> payload;
};

class TranscriptLog {
 public:
  void record(int sender, const Frame &f);
  std::vector<TranscriptEntry> entries() const;

 private:
  mutable std::mutex mu_;
  std::vector<TranscriptEntry> entries_;
};

// Ordered reliable framed duplex endpoint.  Byte/round accounting lives here
// so in-process and socket transports count identically.
class Channel {
 public:
  virtual ~Channel() = default;

  void send_frame(MsgType type, const std::vector<uint8_t> &payload);
  Frame recv_frame();

  const ChannelStats &stats() const { return stats_; }
  void reset_stats() { stats_ = ChannelStats{}; }

  void set_transcript(TranscriptLog *log, int party_id) {
    transcript_ = log;
    party_id_ = party_id;
  }
  virtual void close() {}

 protected:
  virtual void do_send(std::vector<uint8_t> wire) = 0;
  virtual Frame do_recv() = 0;

 private:
  ChannelStats stats_;
  uint64_t sends_since_recv_ = 0;
  TranscriptLog *transcript_ = nullptr;
  int party_id_ = 0;
};

struct ChannelPair {
  std::unique_ptr<Channel> first;
  std::unique_ptr<Channel> second;
};

enum class NetMode { kInproc, kSocket };

// Ordered reliable bidirectional framed pair with zeroed counters.  Socket
// mode runs over loopback TCP.  The network config is validated here and
// applied by the simulated-time model.
ChannelPair connect_pair(const NetConfig &config, NetMode mode);
ChannelPair connect_pair(NetMode mode);
ChannelPair make_inproc_pair();
ChannelPair make_socket_pair();

// Resolves "inproc"/"socket"; empty falls back to VC_NET_MODE, then inproc.
NetMode parse_net_mode(const std::string &name);

}  // namespace vcn

#endif  // VCNORM_TRANSPORT_CHANNEL_HPP_
