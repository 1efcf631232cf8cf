// src/smpc/runner.hpp

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

#ifndef VCNORM_SMPC_RUNNER_HPP_
#define VCNORM_SMPC_RUNNER_HPP_

#include <memory>
#include <utility>
#include <vector>

#include "smpc/protocol.hpp"
#include "smpc/shares.hpp"

namespace vcn {

// Parties either interleave in one execution context or run on their own
// threads; transcripts and counters are identical either way.
enum class ExecMode { kInterleaved, kThreaded };

struct ProtocolRun {
  ChannelStats stats0, stats1;
  double wall_seconds = 0.0;
};

ProtocolRun run_pair(RoundMachine *m0, RoundMachine *m1, Channel *c0,
                     Channel *c1, ExecMode mode);

// Two-party session for the op-level entry points: a channel pair plus one
// dealt triple pool per party.
struct SecureSession {
  ChannelPair channels;
  TriplePool pool0, pool1;
  ExecMode exec = ExecMode::kInterleaved;
  ProtocolRun last_run;

  Channel &c0() { return *channels.first; }
  Channel &c1() { return *channels.second; }
};

SecureSession make_session(size_t triples, uint64_t seed,
                           NetMode net = NetMode::kInproc,
                           ExecMode exec = ExecMode::kInterleaved);

// Ordered identifiers of the selected entries (descending weight, ties to
// the lowest id) plus the communication footprint of the selection.
struct PruneResult {
  std::vector<uint64_t> ids;
  uint64_t rounds = 0;
  uint64_t bytes_sent0 = 0;
  uint64_t bytes_sent1 = 0;
};

std::pair<BitVec, BitVec> secure_and(SecureSession *s, const BitVec &x0,
                                     const BitVec &x1, const BitVec &y0,
                                     const BitVec &y1);

std::pair<SharedInteger, SharedInteger> hamming_weight_circuit(
    SecureSession *s, const BitVec &v0, const BitVec &v1);

// Shared bit: reconstructs to 1 iff a > b (unsigned).
std::pair<BitVec, BitVec> greater_than_circuit(SecureSession *s,
                                               const SharedInteger &a0,
                                               const SharedInteger &a1,
                                               const SharedInteger &b0,
                                               const SharedInteger &b1);

PruneResult top_n_select(SecureSession *s,
                         const std::vector<SharedInteger> &weights0,
                         const std::vector<SharedInteger> &weights1,
                         const std::vector<uint64_t> &ids, size_t n);

PruneResult secure_prune(SecureSession *s, const BitVec &sample0,
                         const BitVec &sample1,
                         const std::vector<BitVec> &cohort0,
                         const std::vector<BitVec> &cohort1,
                         const std::vector<uint64_t> &ids, size_t max_weight,
                         size_t n);

}  // namespace vcn

#endif  // VCNORM_SMPC_RUNNER_HPP_
