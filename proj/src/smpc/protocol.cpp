// src/smpc/protocol.cpp

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

#include "smpc/protocol.hpp"

#include "common/error.hpp"

namespace vcn {

PendingAnd beaver_prepare(TriplePool *pool, const BitVec &x, const BitVec &y) {
  VCN_CHECK(x.size() == y.size(), kDimension) << "AND operand lengths differ";
  auto slice = pool->take(x.size());
  PendingAnd p;
  p.a = std::move(slice.a);
  p.b = std::move(slice.b);
  p.c = std::move(slice.c);
  p.d_share = x ^ p.a;
  p.e_share = y ^ p.b;
  p.gates = x.size();
  return p;
}

std::vector<uint8_t> beaver_payload(const PendingAnd &p) {
  BitVec de = p.d_share;
  de.append(p.e_share);
  return de.to_bytes();
}

BitVec beaver_finish(int party, const PendingAnd &p,
                     const std::vector<uint8_t> &peer_payload) {
  const size_t g = p.gates;
  VCN_CHECK(peer_payload.size() == (2 * g + 7) / 8, kProtocol)
      << "AND open payload size mismatch";
  BitVec peer = BitVec::from_bytes(peer_payload.data(), 2 * g);
  BitVec d = p.d_share ^ peer.slice(0, g);
  BitVec e = p.e_share ^ peer.slice(g, g);
  // z = c ^ d.b ^ e.a, plus d.e on party 0 so the public term enters once.
  BitVec z = p.c ^ (d & p.b) ^ (e & p.a);
  if (party == 0) z ^= d & e;
  return z;
}

// ---------------------------------------------------------------------------
// AndMachine

AndMachine::AndMachine(int party, TriplePool *pool, BitVec x_share,
                       BitVec y_share)
    : party_(party), pool_(pool), x_(std::move(x_share)),
      y_(std::move(y_share)) {}

Frame AndMachine::round_message() {
  VCN_CHECK(state_ == 0, kProtocol) << "AndMachine round out of order";
  pending_ = beaver_prepare(pool_, x_, y_);
  state_ = 1;
  return Frame{MsgType::kAndOpen, beaver_payload(pending_)};
}

void AndMachine::absorb(const Frame &peer) {
  VCN_CHECK(state_ == 1 && peer.type == MsgType::kAndOpen, kProtocol)
      << "AndMachine unexpected frame";
  result_ = beaver_finish(party_, pending_, peer.payload);
  state_ = 2;
}

const BitVec &AndMachine::result() const {
  VCN_CHECK(state_ == 2, kProtocol) << "AND result before completion";
  return result_;
}

// ---------------------------------------------------------------------------
// HammingMachine

HammingMachine::HammingMachine(int party, TriplePool *pool,
                               std::vector<BitVec> slots)
    : party_(party), pool_(pool) {
  entries_ = slots.empty() ? 0 : slots[0].size();
  for (const auto &s : slots)
    VCN_CHECK(s.size() == entries_, kDimension) << "ragged slot batch";
  cols_.push_back(std::move(slots));
}

bool HammingMachine::done() const {
  if (layer_open_) return false;
  for (const auto &c : cols_)
    if (c.size() > 1) return false;
  return true;
}

Frame HammingMachine::round_message() {
  VCN_CHECK(!layer_open_ && !done(), kProtocol) << "Hamming round misuse";
  build_layer();
  layer_open_ = true;
  return Frame{MsgType::kAndOpen, beaver_payload(pending_)};
}

void HammingMachine::build_layer() {
  layer_.clear();
  leftovers_.assign(cols_.size(), {});
  BitVec xs, ys;
  auto settled_below = [&](size_t ci) {
    for (size_t i = 0; i < ci; ++i)
      if (cols_[i].size() > 1) return false;
    return true;
  };
  for (size_t ci = 0; ci < cols_.size(); ++ci) {
    const auto &col = cols_[ci];
    const ColumnOps ops = column_layer_ops(col.size(), settled_below(ci));
    size_t used = 0;
    for (size_t f = 0; f < ops.full_adders; ++f) {
      const BitVec &x = col[3 * f];
      const BitVec &y = col[3 * f + 1];
      const BitVec &z = col[3 * f + 2];
      Op op;
      op.col = ci;
      op.full = true;
      op.sum = x ^ y ^ z;
      op.z = z;
      xs.append(x ^ z);
      ys.append(y ^ z);
      layer_.push_back(std::move(op));
      used += 3;
    }
    if (ops.half_adder) {
      Op op;
      op.col = ci;
      op.full = false;
      op.sum = col[0] ^ col[1];
      xs.append(col[0]);
      ys.append(col[1]);
      layer_.push_back(std::move(op));
      used += 2;
    }
    for (size_t i = used; i < col.size(); ++i)
      leftovers_[ci].push_back(col[i]);
  }
  pending_ = beaver_prepare(pool_, xs, ys);
}

void HammingMachine::absorb(const Frame &peer) {
  VCN_CHECK(layer_open_ && peer.type == MsgType::kAndOpen, kProtocol)
      << "Hamming unexpected frame";
  BitVec res = beaver_finish(party_, pending_, peer.payload);
  std::vector<std::vector<BitVec>> next(cols_.size() + 1);
  for (size_t ci = 0; ci < leftovers_.size(); ++ci)
    next[ci] = std::move(leftovers_[ci]);
  for (const auto &op : layer_) next[op.col].push_back(op.sum);
  size_t off = 0;
  for (const auto &op : layer_) {
    BitVec and_bits = res.slice(off, entries_);
    off += entries_;
    next[op.col + 1].push_back(op.full ? and_bits ^ op.z
                                       : std::move(and_bits));
  }
  if (!next.empty() && next.back().empty()) next.pop_back();
  cols_ = std::move(next);
  layer_open_ = false;
}

std::vector<BitVec> HammingMachine::result(unsigned width) const {
  VCN_CHECK(done(), kProtocol) << "Hamming result before completion";
  std::vector<BitVec> out;
  out.reserve(width);
  for (unsigned i = 0; i < width; ++i) {
    if (i < cols_.size() && !cols_[i].empty())
      out.push_back(cols_[i][0]);
    else
      out.push_back(BitVec(entries_));
  }
  return out;
}

// ---------------------------------------------------------------------------
// CompareMachine

CompareMachine::CompareMachine(int party, TriplePool *pool,
                               std::vector<BitVec> lhs_cols,
                               std::vector<BitVec> rhs_cols)
    : party_(party), pool_(pool), lhs_(std::move(lhs_cols)),
      rhs_(std::move(rhs_cols)) {
  VCN_CHECK(lhs_.size() == rhs_.size() && !lhs_.empty(), kDimension)
      << "comparator width mismatch";
  width_ = lhs_.size();
  const size_t nodes = lhs_[0].size();
  for (const auto *side : {&lhs_, &rhs_})
    for (const auto &c : *side)
      VCN_CHECK(c.size() == nodes, kDimension) << "ragged comparator columns";
  borrow_ = BitVec(nodes);
}

Frame CompareMachine::round_message() {
  VCN_CHECK(bit_ < width_, kProtocol) << "comparator past final bit";
  // Borrow recursion for rhs - lhs:  br' = maj(~rhs_j, lhs_j, br), realised
  // as ((~rhs_j ^ br) & (lhs_j ^ br)) ^ br with the NOT applied by party 0.
  BitVec u = party_ == 0 ? rhs_[bit_].flipped() : rhs_[bit_];
  u ^= borrow_;
  BitVec v = lhs_[bit_] ^ borrow_;
  pending_ = beaver_prepare(pool_, u, v);
  return Frame{MsgType::kAndOpen, beaver_payload(pending_)};
}

void CompareMachine::absorb(const Frame &peer) {
  VCN_CHECK(peer.type == MsgType::kAndOpen, kProtocol)
      << "comparator unexpected frame";
  BitVec t = beaver_finish(party_, pending_, peer.payload);
  borrow_ ^= t;
  ++bit_;
}

const BitVec &CompareMachine::result() const {
  VCN_CHECK(done(), kProtocol) << "comparator result before completion";
  return borrow_;
}

// ---------------------------------------------------------------------------
// TournamentMachine

namespace {

BitVec gather_stride2(const BitVec &v, bool odd, size_t pairs) {
  BitVec out(pairs);
  for (size_t p = 0; p < pairs; ++p)
    out.set(p, v.get(2 * p + (odd ? 1 : 0)));
  return out;
}

}  // namespace

TournamentMachine::TournamentMachine(int party, TriplePool *pool,
                                     std::vector<BitVec> key_cols,
                                     std::vector<BitVec> idx_cols,
                                     std::vector<uint64_t> ids, size_t n)
    : party_(party), pool_(pool), global_key_(std::move(key_cols)),
      global_idx_(std::move(idx_cols)), ids_(std::move(ids)), n_(n) {
  count_ = ids_.size();
  VCN_CHECK(count_ >= 1, kInvalidArgument) << "empty selection";
  VCN_CHECK(n_ >= 1 && n_ <= count_, kInvalidArgument)
      << "top-n " << n_ << " of " << count_;
  for (const auto *cols : {&global_key_, &global_idx_})
    for (const auto &c : *cols)
      VCN_CHECK(c.size() == count_, kDimension) << "selection column size";
  start_iteration();
}

void TournamentMachine::start_iteration() {
  cur_key_ = global_key_;
  cur_idx_ = global_idx_;
  start_layer();
}

void TournamentMachine::start_layer() {
  const size_t m = cur_key_[0].size();
  if (m == 1) {
    phase_ = Phase::kOpen;
    return;
  }
  const size_t pairs = m / 2;
  // Selector g = (left >= right) = NOT(right > left); comparing in
  // ascending-index pair order sends ties to the lower index.
  std::vector<BitVec> lhs, rhs;
  for (const auto &c : cur_key_) {
    lhs.push_back(gather_stride2(c, true, pairs));   // right operand
    rhs.push_back(gather_stride2(c, false, pairs));  // left operand
  }
  cmp_ = std::make_unique<CompareMachine>(party_, pool_, std::move(lhs),
                                          std::move(rhs));
  phase_ = Phase::kCompare;
}

Frame TournamentMachine::round_message() {
  VCN_CHECK(!done() && !message_outstanding_, kProtocol)
      << "tournament round misuse";
  message_outstanding_ = true;
  switch (phase_) {
    case Phase::kCompare:
      return cmp_->round_message();
    case Phase::kMux: {
      const size_t m = cur_key_[0].size();
      const size_t pairs = m / 2;
      BitVec xs, ys;
      mux_rhs_ = BitVec();
      for (const auto *cols : {&cur_key_, &cur_idx_}) {
        for (const auto &c : *cols) {
          BitVec left = gather_stride2(c, false, pairs);
          BitVec right = gather_stride2(c, true, pairs);
          xs.append(selector_);
          ys.append(left ^ right);
          mux_rhs_.append(right);
        }
      }
      pending_ = beaver_prepare(pool_, xs, ys);
      return Frame{MsgType::kAndOpen, beaver_payload(pending_)};
    }
    case Phase::kOpen: {
      BitVec mine(global_idx_.size());
      for (size_t j = 0; j < global_idx_.size(); ++j)
        mine.set(j, cur_idx_[j].get(0));
      return Frame{MsgType::kOpenIndex, mine.to_bytes()};
    }
  }
  VCN_THROW(kProtocol) << "unreachable";
}

void TournamentMachine::absorb(const Frame &peer) {
  VCN_CHECK(message_outstanding_, kProtocol) << "absorb without send";
  message_outstanding_ = false;
  switch (phase_) {
    case Phase::kCompare: {
      cmp_->absorb(peer);
      if (cmp_->done()) {
        selector_ = cmp_->result();
        if (party_ == 0) selector_.flip_all();  // g = NOT(right > left)
        phase_ = Phase::kMux;
      }
      return;
    }
    case Phase::kMux: {
      BitVec res = beaver_finish(party_, pending_, peer.payload);
      const size_t m = cur_key_[0].size();
      const size_t pairs = m / 2;
      const bool bye = (m % 2) != 0;
      std::vector<BitVec> new_key, new_idx;
      size_t off = 0;
      for (auto *cols : {&cur_key_, &cur_idx_}) {
        auto &dst = (cols == &cur_key_) ? new_key : new_idx;
        for (const auto &c : *cols) {
          BitVec winner = res.slice(off, pairs) ^ mux_rhs_.slice(off, pairs);
          off += pairs;
          if (bye) winner.append_bit(c.get(m - 1));
          dst.push_back(std::move(winner));
        }
      }
      cur_key_ = std::move(new_key);
      cur_idx_ = std::move(new_idx);
      start_layer();
      return;
    }
    case Phase::kOpen: {
      VCN_CHECK(peer.type == MsgType::kOpenIndex, kProtocol)
          << "expected index opening";
      const size_t iw = global_idx_.size();
      VCN_CHECK(peer.payload.size() == (iw + 7) / 8, kProtocol)
          << "index opening size";
      BitVec theirs = BitVec::from_bytes(peer.payload.data(), iw);
      BitVec mine(iw);
      for (size_t j = 0; j < iw; ++j) mine.set(j, cur_idx_[j].get(0));
      const uint64_t pos = (mine ^ theirs).to_uint();
      VCN_CHECK(pos < count_, kProtocol) << "opened index out of range";
      opened_.push_back(ids_[pos]);
      // The index is public now, so zeroing the winner's key (validity bit
      // included) is a local share operation on both sides.
      for (auto &c : global_key_) c.set(pos, false);
      if (opened_.size() < n_) start_iteration();
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// PruneMachine

PruneMachine::PruneMachine(int party, TriplePool *pool,
                           const BitVec &sample_share,
                           const std::vector<BitVec> &cohort_shares,
                           std::vector<uint64_t> cohort_ids, size_t max_weight,
                           size_t n)
    : party_(party), pool_(pool), entries_(cohort_shares.size()),
      bk_bits_(sample_share.size()), n_(n), ids_(std::move(cohort_ids)) {
  VCN_CHECK(entries_ >= 1, kInvalidArgument) << "empty cohort";
  VCN_CHECK(ids_.size() == entries_, kDimension) << "cohort id count";
  VCN_CHECK(n_ >= 1 && n_ <= entries_, kInvalidArgument)
      << "top-n " << n_ << " of cohort " << entries_;
  for (const auto &c : cohort_shares)
    VCN_CHECK(c.size() == bk_bits_, kDimension)
        << "cohort BK length " << c.size() << " vs sample " << bk_bits_;
  weight_width_ = integer_width(max_weight);
  idx_width_ = integer_width(entries_ - 1);

  // Slot-major batch: gate (k, e) computes sample_k AND cohort_e_k.
  const BitVec ones = BitVec(entries_).flipped();
  const BitVec zeros(entries_);
  and_x_ = BitVec();
  and_y_ = BitVec();
  for (size_t k = 0; k < bk_bits_; ++k) {
    and_x_.append(sample_share.get(k) ? ones : zeros);
    BitVec slot(entries_);
    for (size_t e = 0; e < entries_; ++e) slot.set(e, cohort_shares[e].get(k));
    and_y_.append(slot);
  }
}

bool PruneMachine::done() const {
  return phase_ == Phase::kTopN && tournament_ && tournament_->done();
}

void PruneMachine::advance() {
  if (phase_ == Phase::kHamming && hamming_->done()) {
    std::vector<BitVec> key_cols = hamming_->result(weight_width_);
    key_cols.push_back(party_ == 0 ? BitVec(entries_).flipped()
                                   : BitVec(entries_));  // validity bit (MSB)
    std::vector<BitVec> idx_cols;
    for (unsigned j = 0; j < idx_width_; ++j) {
      BitVec col(entries_);
      if (party_ == 0)
        for (size_t e = 0; e < entries_; ++e)
          col.set(e, ((e >> j) & 1) != 0);
      idx_cols.push_back(std::move(col));
    }
    tournament_ = std::make_unique<TournamentMachine>(
        party_, pool_, std::move(key_cols), std::move(idx_cols), ids_, n_);
    phase_ = Phase::kTopN;
  }
}

Frame PruneMachine::round_message() {
  switch (phase_) {
    case Phase::kAnd:
      VCN_CHECK(!and_sent_, kProtocol) << "prune AND round misuse";
      pending_ = beaver_prepare(pool_, and_x_, and_y_);
      and_sent_ = true;
      return Frame{MsgType::kAndOpen, beaver_payload(pending_)};
    case Phase::kHamming:
      return hamming_->round_message();
    case Phase::kTopN:
      return tournament_->round_message();
  }
  VCN_THROW(kProtocol) << "unreachable";
}

void PruneMachine::absorb(const Frame &peer) {
  switch (phase_) {
    case Phase::kAnd: {
      BitVec res = beaver_finish(party_, pending_, peer.payload);
      std::vector<BitVec> slots;
      slots.reserve(bk_bits_);
      for (size_t k = 0; k < bk_bits_; ++k)
        slots.push_back(res.slice(k * entries_, entries_));
      hamming_ = std::make_unique<HammingMachine>(party_, pool_,
                                                  std::move(slots));
      phase_ = Phase::kHamming;
      advance();  // N == 1 has no adder rounds
      return;
    }
    case Phase::kHamming:
      hamming_->absorb(peer);
      advance();
      return;
    case Phase::kTopN:
      tournament_->absorb(peer);
      return;
  }
}

const std::vector<uint64_t> &PruneMachine::revealed_ids() const {
  VCN_CHECK(done(), kProtocol) << "prune result before completion";
  return tournament_->revealed_ids();
}

}  // namespace vcn
