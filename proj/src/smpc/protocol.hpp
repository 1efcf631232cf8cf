// src/smpc/protocol.hpp

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

#ifndef VCNORM_SMPC_PROTOCOL_HPP_
#define VCNORM_SMPC_PROTOCOL_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "common/bitvec.hpp"
#include "smpc/circuit.hpp"
#include "smpc/triples.hpp"
#include "transport/channel.hpp"

namespace vcn {

// One party's view of a lockstep subprotocol.  Every round the party emits
// exactly one frame and absorbs exactly one peer frame; both parties advance
// through identical round schedules, which is what makes single-threaded
// interleaving and the cost planner's round predictions exact.
class RoundMachine {
 public:
  virtual ~RoundMachine() = default;
  virtual bool done() const = 0;
  virtual Frame round_message() = 0;
  virtual void absorb(const Frame &peer) = 0;
};

// w-bit little-endian vector of shared bits.
struct SharedInteger {
  BitVec bits;

  size_t width() const { return bits.size(); }
};

// Beaver multiplication state for one batched AND round.
struct PendingAnd {
  BitVec a, b, c;          // triple shares
  BitVec d_share, e_share; // x ^ a, y ^ b
  size_t gates = 0;
};

PendingAnd beaver_prepare(TriplePool *pool, const BitVec &x, const BitVec &y);
std::vector<uint8_t> beaver_payload(const PendingAnd &p);
// d/e are opened by XORing the peer's halves; party 0 adds the d&e term.
BitVec beaver_finish(int party, const PendingAnd &p,
                     const std::vector<uint8_t> &peer_payload);

// Vectorised one-round Beaver AND of two equal-length shared bit vectors.
class AndMachine final : public RoundMachine {
 public:
  AndMachine(int party, TriplePool *pool, BitVec x_share, BitVec y_share);
  bool done() const override { return state_ == 2; }
  Frame round_message() override;
  void absorb(const Frame &peer) override;
  const BitVec &result() const;

 private:
  int party_;
  TriplePool *pool_;
  BitVec x_, y_;
  PendingAnd pending_;
  BitVec result_;
  int state_ = 0;
};

// Balanced full/half-adder tree compressing N shared bits per entry into a
// binary weight, SIMD across `entries` independent instances.  Input slots
// are column-major: slots[k] holds bit k of every entry.
class HammingMachine final : public RoundMachine {
 public:
  HammingMachine(int party, TriplePool *pool, std::vector<BitVec> slots);
  bool done() const override;
  Frame round_message() override;
  void absorb(const Frame &peer) override;
  // Result columns, least significant first, padded to `width`.
  std::vector<BitVec> result(unsigned width) const;

 private:
  struct Op {
    size_t col;
    bool full;     // full adder (3 bits) vs half adder (2 bits)
    BitVec sum;    // computed at build time
    BitVec z;      // third operand, XORed back into the AND result (FA only)
  };
  void build_layer();

  int party_;
  TriplePool *pool_;
  size_t entries_;
  std::vector<std::vector<BitVec>> cols_;
  std::vector<Op> layer_;
  std::vector<std::vector<BitVec>> leftovers_;  // per column, after ops
  PendingAnd pending_;
  bool layer_open_ = false;
};

// Batched ripple-borrow comparator: strict unsigned greater-than of the
// first operand over the second, one AND round per bit.  Columns are
// least-significant-first BitVecs across `nodes` comparator instances.
class CompareMachine final : public RoundMachine {
 public:
  CompareMachine(int party, TriplePool *pool, std::vector<BitVec> lhs_cols,
                 std::vector<BitVec> rhs_cols);
  bool done() const override { return bit_ >= width_; }
  Frame round_message() override;
  void absorb(const Frame &peer) override;
  const BitVec &result() const;  // share of (lhs > rhs) per node

 private:
  int party_;
  TriplePool *pool_;
  std::vector<BitVec> lhs_, rhs_;
  size_t width_, bit_ = 0;
  BitVec borrow_;
  PendingAnd pending_;
};

// n-fold secure tournament maximum over (key, index) pairs.  Keys carry a
// leading validity bit above the weight bits; the opened winner's key is
// zeroed locally (the index is public once opened) so a revealed entry can
// never win again.  Ties go to the lowest index because pairing follows
// ascending index order and equal keys keep the left operand.
class TournamentMachine final : public RoundMachine {
 public:
  TournamentMachine(int party, TriplePool *pool,
                    std::vector<BitVec> key_cols, std::vector<BitVec> idx_cols,
                    std::vector<uint64_t> ids, size_t n);
  bool done() const override { return opened_.size() >= n_; }
  Frame round_message() override;
  void absorb(const Frame &peer) override;
  const std::vector<uint64_t> &revealed_ids() const { return opened_; }

 private:
  enum class Phase { kCompare, kMux, kOpen };
  void start_iteration();
  void start_layer();

  int party_;
  TriplePool *pool_;
  std::vector<BitVec> global_key_, global_idx_;
  std::vector<uint64_t> ids_;
  size_t count_, n_;

  std::vector<BitVec> cur_key_, cur_idx_;  // current layer nodes
  Phase phase_ = Phase::kCompare;
  std::unique_ptr<CompareMachine> cmp_;
  BitVec selector_;  // share of (left key >= right key) per pair
  PendingAnd pending_;
  BitVec mux_rhs_;   // concatenated right operands for the mux round
  std::vector<uint64_t> opened_;
  bool message_outstanding_ = false;
};

// Full pruning pipeline: batched AND of the sample BK against every cohort
// BK, Hamming weights, then top-n selection.  Only the n winning indices are
// opened.
class PruneMachine final : public RoundMachine {
 public:
  PruneMachine(int party, TriplePool *pool, const BitVec &sample_share,
               const std::vector<BitVec> &cohort_shares,
               std::vector<uint64_t> cohort_ids, size_t max_weight, size_t n);
  bool done() const override;
  Frame round_message() override;
  void absorb(const Frame &peer) override;
  const std::vector<uint64_t> &revealed_ids() const;

 private:
  enum class Phase { kAnd, kHamming, kTopN };
  void advance();

  int party_;
  TriplePool *pool_;
  size_t entries_, bk_bits_;
  unsigned weight_width_, idx_width_;
  size_t n_;
  std::vector<uint64_t> ids_;

  Phase phase_ = Phase::kAnd;
  BitVec and_x_, and_y_;
  PendingAnd pending_;
  bool and_sent_ = false;
  std::unique_ptr<HammingMachine> hamming_;
  std::unique_ptr<TournamentMachine> tournament_;
};

}  // namespace vcn

#endif  // VCNORM_SMPC_PROTOCOL_HPP_
