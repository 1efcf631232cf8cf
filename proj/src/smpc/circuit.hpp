// src/smpc/circuit.hpp

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

#ifndef VCNORM_SMPC_CIRCUIT_HPP_
#define VCNORM_SMPC_CIRCUIT_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vcn {

// Cost plan for one protocol phase, per party.  The planner walks the exact
// layer policy the round machines execute, so measured gate counts, rounds
// and payload bytes must match these numbers to the byte.
struct PhasePlan {
  uint64_t and_gates = 0;
  uint64_t rounds = 0;
  uint64_t payload_bytes = 0;  // sum of per-round frame payloads
  uint64_t frames = 0;         // one frame per round per party

  uint64_t wire_bytes() const { return payload_bytes + 5 * frames; }
  PhasePlan &operator+=(const PhasePlan &o);
};

// Bits needed to carry values in [0, max_value]: ceil(log2(max_value + 1)).
unsigned integer_width(uint64_t max_value);

// Per-layer compression policy for one adder-tree column holding `bits`
// shared bits: as many full adders as fit; a half adder only when the column
// holds exactly two bits and every lower column is settled (<= 1 bit), i.e.
// no more carries can arrive.  Total AND gates over the tree come out at
// N - popcount(N).
struct ColumnOps {
  size_t full_adders = 0;
  bool half_adder = false;
};
ColumnOps column_layer_ops(size_t bits, bool all_lower_settled);

PhasePlan plan_and_batch(uint64_t gates);
PhasePlan plan_hamming(uint64_t input_bits, uint64_t entries);
// Final column count of the adder tree (result width before padding).
unsigned hamming_result_width(uint64_t input_bits);
PhasePlan plan_compare(unsigned width, uint64_t nodes);
// Full top-n tournament: key_width includes the validity bit.
PhasePlan plan_top_n(uint64_t count, unsigned key_width, unsigned idx_width,
                     uint64_t n);
// secure_prune composition: AND, Hamming weight per cohort entry, top-n.
PhasePlan plan_prune(uint64_t bk_bits, uint64_t cohort_size, uint64_t max_weight,
                     uint64_t n);

}  // namespace vcn

#endif  // VCNORM_SMPC_CIRCUIT_HPP_
