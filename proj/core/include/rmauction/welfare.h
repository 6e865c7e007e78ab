// Copyright 2026 The rmauction Authors
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

#ifndef RMAUCTION_WELFARE_H_
#define RMAUCTION_WELFARE_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "rmauction/model.h"
#include "rmauction/rational.h"

namespace rmauction::welfare {

struct WelfareResult {
  Rational value;
  // Input order. Among optimal sets, the one whose sorted index sequence is
  // lexicographically smallest (a proper prefix sorts first).
  std::vector<std::string> winners;
};

// Exact 0/1 knapsack over capacity k, O(n k) time.
WelfareResult max_welfare(std::span<const Bidder> bidders, int k);
WelfareResult max_welfare(const TypeProfile& profile);

// Exhaustive enumeration, test oracle only. Throws std::invalid_argument for
// more than kBruteforceLimit bidders.
inline constexpr std::size_t kBruteforceLimit = 22;
Rational max_welfare_bruteforce(const TypeProfile& profile);

// Best single-group welfare.
Rational group_max_welfare(const GroupedProfile& profile);

struct VcgResult {
  std::vector<std::string> winners;
  std::map<std::string, Rational> payment;
  Rational revenue;
};

// Efficient allocation with Clarke pivot payments, on the raw profile (no
// dummy padding).
VcgResult vcg(const TypeProfile& profile);

}  // namespace rmauction::welfare

#endif  // RMAUCTION_WELFARE_H_
