// src/smpc/runner.cpp

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

#include "smpc/runner.hpp"

#include <chrono>
#include <exception>
#include <thread>

#include "common/error.hpp"

namespace vcn {

namespace {

void run_interleaved(RoundMachine *m0, RoundMachine *m1, Channel *c0,
                     Channel *c1) {
  while (!(m0->done() && m1->done())) {
    VCN_CHECK(!m0->done() && !m1->done(), kProtocol)
        << "parties fell out of lockstep";
    const Frame f0 = m0->round_message();
    const Frame f1 = m1->round_message();
    c0->send_frame(f0.type, f0.payload);
    c1->send_frame(f1.type, f1.payload);
    m0->absorb(c0->recv_frame());
    m1->absorb(c1->recv_frame());
  }
}

void party_loop(RoundMachine *m, Channel *c) {
  while (!m->done()) {
    const Frame f = m->round_message();
    c->send_frame(f.type, f.payload);
    m->absorb(c->recv_frame());
  }
}

void run_threaded(RoundMachine *m0, RoundMachine *m1, Channel *c0,
                  Channel *c1) {
  std::exception_ptr err0, err1;
  std::thread t0([&] {
    try {
      party_loop(m0, c0);
    } catch (...) {
      err0 = std::current_exception();
      c0->close();
    }
  });
  std::thread t1([&] {
    try {
      party_loop(m1, c1);
    } catch (...) {
      err1 = std::current_exception();
      c1->close();
    }
  });
  t0.join();
  t1.join();
  if (err0) std::rethrow_exception(err0);
  if (err1) std::rethrow_exception(err1);
}

}  // namespace

ProtocolRun run_pair(RoundMachine *m0, RoundMachine *m1, Channel *c0,
                     Channel *c1, ExecMode mode) {
  const auto t0 = std::chrono::steady_clock::now();
  if (mode == ExecMode::kInterleaved)
    run_interleaved(m0, m1, c0, c1);
  else
    run_threaded(m0, m1, c0, c1);
  ProtocolRun run;
  run.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  run.stats0 = c0->stats();
  run.stats1 = c1->stats();
  return run;
}

SecureSession make_session(size_t triples, uint64_t seed, NetMode net,
                           ExecMode exec) {
  SecureSession s;
  s.channels = connect_pair(net);
  Rng dealer = Rng(seed).split(0xdea1e5);
  auto blocks = deal_triples(triples, dealer);
  s.pool0 = TriplePool(std::move(blocks.first));
  s.pool1 = TriplePool(std::move(blocks.second));
  s.exec = exec;
  return s;
}

std::pair<BitVec, BitVec> secure_and(SecureSession *s, const BitVec &x0,
                                     const BitVec &x1, const BitVec &y0,
                                     const BitVec &y1) {
  AndMachine m0(0, &s->pool0, x0, y0);
  AndMachine m1(1, &s->pool1, x1, y1);
  s->last_run = run_pair(&m0, &m1, &s->c0(), &s->c1(), s->exec);
  return {m0.result(), m1.result()};
}

namespace {

std::vector<BitVec> int_to_slots(const SharedInteger &v) {
  std::vector<BitVec> slots;
  slots.reserve(v.width());
  for (size_t i = 0; i < v.width(); ++i) {
    BitVec s(1);
    s.set(0, v.bits.get(i));
    slots.push_back(std::move(s));
  }
  return slots;
}

std::vector<BitVec> bits_to_slots(const BitVec &v) {
  std::vector<BitVec> slots;
  slots.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    BitVec s(1);
    s.set(0, v.get(i));
    slots.push_back(std::move(s));
  }
  return slots;
}

SharedInteger cols_to_int(const std::vector<BitVec> &cols) {
  SharedInteger out;
  out.bits = BitVec(cols.size());
  for (size_t i = 0; i < cols.size(); ++i) out.bits.set(i, cols[i].get(0));
  return out;
}

}  // namespace

std::pair<SharedInteger, SharedInteger> hamming_weight_circuit(
    SecureSession *s, const BitVec &v0, const BitVec &v1) {
  const unsigned width = integer_width(v0.size());
  HammingMachine m0(0, &s->pool0, bits_to_slots(v0));
  HammingMachine m1(1, &s->pool1, bits_to_slots(v1));
  s->last_run = run_pair(&m0, &m1, &s->c0(), &s->c1(), s->exec);
  return {cols_to_int(m0.result(width)), cols_to_int(m1.result(width))};
}

std::pair<BitVec, BitVec> greater_than_circuit(SecureSession *s,
                                               const SharedInteger &a0,
                                               const SharedInteger &a1,
                                               const SharedInteger &b0,
                                               const SharedInteger &b1) {
  VCN_CHECK(a0.width() == b0.width() && a1.width() == b1.width() &&
                a0.width() == a1.width(),
            kDimension)
      << "comparator width mismatch";
  CompareMachine m0(0, &s->pool0, int_to_slots(a0), int_to_slots(b0));
  CompareMachine m1(1, &s->pool1, int_to_slots(a1), int_to_slots(b1));
  s->last_run = run_pair(&m0, &m1, &s->c0(), &s->c1(), s->exec);
  return {m0.result(), m1.result()};
}

namespace {

// Column-major view of a list of shared integers, plus the validity MSB and
// public index columns for the tournament.
void build_selection_columns(const std::vector<SharedInteger> &weights,
                             int party, std::vector<BitVec> *key_cols,
                             std::vector<BitVec> *idx_cols) {
  const size_t count = weights.size();
  const size_t w = weights[0].width();
  key_cols->clear();
  for (size_t j = 0; j < w; ++j) {
    BitVec col(count);
    for (size_t e = 0; e < count; ++e) col.set(e, weights[e].bits.get(j));
    key_cols->push_back(std::move(col));
  }
  key_cols->push_back(party == 0 ? BitVec(count).flipped() : BitVec(count));
  const unsigned iw = integer_width(count - 1);
  idx_cols->clear();
  for (unsigned j = 0; j < iw; ++j) {
    BitVec col(count);
    if (party == 0)
      for (size_t e = 0; e < count; ++e) col.set(e, ((e >> j) & 1) != 0);
    idx_cols->push_back(std::move(col));
  }
}

PruneResult result_from(const std::vector<uint64_t> &ids0,
                        const std::vector<uint64_t> &ids1,
                        const ProtocolRun &run) {
  VCN_CHECK(ids0 == ids1, kProtocol)
      << "parties revealed different selections";
  PruneResult r;
  r.ids = ids0;
  r.rounds = run.stats0.rounds;
  r.bytes_sent0 = run.stats0.bytes_sent;
  r.bytes_sent1 = run.stats1.bytes_sent;
  return r;
}

}  // namespace

PruneResult top_n_select(SecureSession *s,
                         const std::vector<SharedInteger> &weights0,
                         const std::vector<SharedInteger> &weights1,
                         const std::vector<uint64_t> &ids, size_t n) {
  VCN_CHECK(!weights0.empty() && weights0.size() == weights1.size() &&
                weights0.size() == ids.size(),
            kDimension)
      << "selection inputs";
  std::vector<BitVec> key0, idx0, key1, idx1;
  build_selection_columns(weights0, 0, &key0, &idx0);
  build_selection_columns(weights1, 1, &key1, &idx1);
  TournamentMachine m0(0, &s->pool0, std::move(key0), std::move(idx0), ids, n);
  TournamentMachine m1(1, &s->pool1, std::move(key1), std::move(idx1), ids, n);
  s->last_run = run_pair(&m0, &m1, &s->c0(), &s->c1(), s->exec);
  return result_from(m0.revealed_ids(), m1.revealed_ids(), s->last_run);
}

PruneResult secure_prune(SecureSession *s, const BitVec &sample0,
                         const BitVec &sample1,
                         const std::vector<BitVec> &cohort0,
                         const std::vector<BitVec> &cohort1,
                         const std::vector<uint64_t> &ids, size_t max_weight,
                         size_t n) {
  PruneMachine m0(0, &s->pool0, sample0, cohort0, ids, max_weight, n);
  PruneMachine m1(1, &s->pool1, sample1, cohort1, ids, max_weight, n);
  s->last_run = run_pair(&m0, &m1, &s->c0(), &s->c1(), s->exec);
  return result_from(m0.revealed_ids(), m1.revealed_ids(), s->last_run);
}

}  // namespace vcn
