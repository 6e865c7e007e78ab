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

#ifndef RMAUCTION_TESTS_ORACLES_REFERENCE_H_
#define RMAUCTION_TESTS_ORACLES_REFERENCE_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "rmauction/model.h"
#include "rmauction/rational.h"

// Straight-line re-derivations of the mechanisms from their definitions,
// sharing no code with the library beyond the value types. Used as oracles.
namespace rmauction::testing {

struct RefOutcome {
  std::map<std::string, Rational> win_prob;    // real bidders only
  std::map<std::string, Rational> payment;     // expected
  std::map<std::string, Rational> critical;    // positive-probability bidders
  Rational revenue;
  std::string label;  // "HIGH" / "LOW_PARTIAL" / "LOW_FULL" for mcaii
};

RefOutcome reference_caii(const TypeProfile& profile);
RefOutcome reference_mcaii(const GroupedProfile& profile);

// (2 ceil(k/2) / 3) ppi_r + v_second_high / 3.
Rational caii_closed_form(const TypeProfile& profile);

// max(V, max_{j <= ceil(k/2)} j u_j) of one group.
Rational reference_mprg(const std::vector<Bidder>& group, int k);

// One realization of the randomized rule with its probability.
struct Realization {
  Rational probability;
  std::set<std::string> winners;  // real bidders
  std::map<std::string, Rational> charge;
  int items_sold = 0;
};

// Every realization of CAII, enumerated over the branch coin and all subsets
// of the low candidates. Throws if there are more than 16 candidates.
std::vector<Realization> enumerate_caii(const TypeProfile& profile);

}  // namespace rmauction::testing

#endif  // RMAUCTION_TESTS_ORACLES_REFERENCE_H_
