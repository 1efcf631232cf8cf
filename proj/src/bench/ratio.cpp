// src/bench/ratio.cpp

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

#include "bench/ratio.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "common/error.hpp"

namespace vcn {

double improvement_ratio(size_t full_cohort_size, const TimingLedger &ledger) {
  const double denom = ledger.t_bk + ledger.t_gmw +
                       static_cast<double>(ledger.n) * ledger.t_he_per_cmp;
  VCN_CHECK(denom > 0.0, kInvalidArgument)
      << "improvement ratio with zero pipeline time";
  return static_cast<double>(full_cohort_size) * ledger.t_he_per_cmp / denom;
}

const double kReferenceHePerComparison = 0.32;
const double kReferenceBkZ = 28.2975;
const double kReferenceBkT = 16.8592;
const size_t kReferenceCohortZ = 11640;
const size_t kReferenceCohortT = 3812;

const std::vector<ReferenceTimingRow> &reference_timing_table() {
  static const std::vector<ReferenceTimingRow> kTable = {
      {50, 156.583, 18.5423672282775, 51.572, 14.4477396981211},
      {100, 177.229, 15.681618682547, 58.718, 11.3392057052981},
      {150, 197.791, 13.5897711870436, 65.667, 9.34555667750995},
      {200, 220.220, 11.918692553217, 72.550, 7.95154397519836},
      {250, 247.070, 10.4815437540011, 82.047, 6.81832155621214},
      {300, 268.772, 9.47618678121808, 89.239, 6.03587760801432},
      {400, 282.889, 8.48113500756512, 93.555, 5.11647376708267},
  };
  return kTable;
}

std::string reference_ratio_report() {
  std::ostringstream os;
  os << "reference improvement ratios (t_he = "
     << kReferenceHePerComparison << " s per comparison)\n";
  os << "  z side: cohort " << kReferenceCohortZ << ", BK " << kReferenceBkZ
     << " s; t side: cohort " << kReferenceCohortT << ", BK "
     << kReferenceBkT << " s\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%6s %12s %10s %10s %12s %10s %10s\n",
                "n", "gmw_z[s]", "ratio_z", "ref_z", "gmw_t[s]", "ratio_t",
                "ref_t");
  os << line;
  for (const auto &row : reference_timing_table()) {
    const double rz = improvement_ratio(
        kReferenceCohortZ,
        {kReferenceBkZ, row.gmw_z, kReferenceHePerComparison,
         kReferenceCohortZ, row.n});
    const double rt = improvement_ratio(
        kReferenceCohortT,
        {kReferenceBkT, row.gmw_t, kReferenceHePerComparison,
         kReferenceCohortT, row.n});
    std::snprintf(line, sizeof(line),
                  "%6zu %12.3f %10.2f %10.2f %12.3f %10.2f %10.2f\n", row.n,
                  row.gmw_z, rz, row.ratio_z, row.gmw_t, rt, row.ratio_t);
    os << line;
  }
  return os.str();
}

}  // namespace vcn
