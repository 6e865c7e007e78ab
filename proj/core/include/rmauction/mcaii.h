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

#ifndef RMAUCTION_MCAII_H_
#define RMAUCTION_MCAII_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rmauction/model.h"
#include "rmauction/rational.h"
#include "rmauction/rng.h"

// Multi-group mechanism: winners must all come from one group.
//
// Every group is scored by its maximum possible revenue
//
//   mprg = max(V, max_{j <= ceil(k/2)} j * u_j)
//
// where V is its highest high-demand valuation and u_j the per-item price of
// the low-demand bidder (in ppi order) whose prefix demand first covers item
// j. The top-scoring group wins; the second-highest score R acts as a
// reserve, and revenue always lies in [R, mprg(winner)].
namespace rmauction::mcaii {

enum class Case { kHigh, kLowPartial, kLowFull };

std::string_view to_string(Case c);

struct GroupAnalysis {
  std::string group_id;
  ClassifiedProfile classified;
  Bidder top_high;
  Rational top_high_value;     // V
  Rational second_high_value;  // V2
  std::vector<Rational> item_values;  // u_1..u_k, nonincreasing
  Rational best_low_revenue;          // max_{j <= ceil(k/2)} j * u_j
  Rational mprg;
  std::size_t runner_up_pos = 0;  // 1-based, in classified.low
  Rational runner_up_ppi;
};

// u_1..u_k for a ppi-sorted low list whose total demand is at least k.
std::vector<Rational> item_values(std::span<const Bidder> low_sorted, int k);

GroupAnalysis analyze_group(const Group& group, int k);

Rational mprg(std::span<const Bidder> group, int k);

struct GroupSelection {
  std::size_t position = 0;  // into GroupedProfile::groups
  std::string group_id;
  Rational reserve;  // R; zero with a single group
};

// argmax mprg, ties to the lowest group position.
GroupSelection select_group(const GroupedProfile& profile);
GroupSelection select_group(std::span<const GroupAnalysis> analyses);

struct Decision {
  std::string winning_group;
  Rational reserve;    // R
  Rational threshold;  // max(R, V)
  // True when an earlier group attains R and M = R: comparisons against M
  // are then strict.
  bool strict = false;
  Case decision_case = Case::kHigh;
  std::optional<int> jstar;
  std::optional<std::size_t> a;  // LOW_FULL only
  std::optional<int> A;          // LOW_FULL only
  // Per-winner (positive probability) data; dummies excluded.
  std::map<std::string, Rational> win_prob;
  std::map<std::string, Rational> expected_payment;
  std::map<std::string, Rational> critical_bid;
  Rational expected_revenue;
  std::vector<GroupAnalysis> groups;  // in profile order
  std::size_t winner_position = 0;

  const GroupAnalysis& winner() const { return groups[winner_position]; }
};

struct Allocation {
  Decision decision;
  OutcomeDistribution outcome;
};

Allocation allocate(const GroupedProfile& profile);

// Closed form: HIGH -> max(R, best_low_revenue, V2); LOW_PARTIAL ->
// max(R, V); LOW_FULL -> max(ceil(k/2) * ppi_r, R, V).
Rational expected_revenue(const GroupedProfile& profile);
Rational expected_revenue(const Decision& decision, int k);

std::map<std::string, Rational> critical_bids(const GroupedProfile& profile);

// HIGH and LOW_PARTIAL are deterministic and consume no draws. LOW_FULL
// consumes one draw per candidate 1..a in ranked order.
class Sampler {
 public:
  explicit Sampler(const GroupedProfile& profile);
  SampledOutcome draw(Rng& rng) const;
  Case decision_case() const { return case_; }

 private:
  struct Candidate {
    std::string id;
    int demand;
    Rational charge;
    bool dummy;
  };
  Case case_;
  std::uint64_t threshold_ = 0;
  std::vector<Candidate> candidates_;
};

SampledOutcome sample(const GroupedProfile& profile, Rng& rng);

}  // namespace rmauction::mcaii

#endif  // RMAUCTION_MCAII_H_
