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

#ifndef RMAUCTION_MODEL_H_
#define RMAUCTION_MODEL_H_

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rmauction/rational.h"

namespace rmauction {

// Raised when a profile violates its type invariants.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A single-parameter bidder: wants exactly `demand` items and values the
// bundle at `valuation`. Demands are public, valuations private.
struct Bidder {
  std::string id;
  int demand = 1;
  Rational valuation;
  bool dummy = false;

  friend bool operator==(const Bidder&, const Bidder&) = default;
};

// Price per item, valuation / demand.
Rational ppi(const Bidder& b);

// k identical items and an ordered bidder list. The position in `bidders`
// is the bidder's tie-breaking index.
struct TypeProfile {
  int k = 1;
  std::vector<Bidder> bidders;

  friend bool operator==(const TypeProfile&, const TypeProfile&) = default;
};

struct Group {
  std::string id;
  std::vector<Bidder> bidders;

  friend bool operator==(const Group&, const Group&) = default;
};

// Bidders partitioned into groups; all winners must come from one group.
struct GroupedProfile {
  int k = 1;
  std::vector<Group> groups;

  friend bool operator==(const GroupedProfile&,
                         const GroupedProfile&) = default;
};

// Throw ValidationError unless: k >= 1, ids are nonempty, unique and do not
// start with the reserved '#' prefix, every demand is in [1, k], every
// valuation is >= 0 and no bidder is flagged dummy.
void validate(const TypeProfile& profile);
// Additionally: at least one group, group ids nonempty and unique, bidder ids
// unique across groups. Groups may be empty.
void validate(const GroupedProfile& profile);

// Flattened view of a grouped profile (group order, then bidder order).
TypeProfile flatten(const GroupedProfile& profile);

// Bidders with demand <= low_demand_limit(k) are low-demand.
constexpr int low_demand_limit(int k) { return k / 2; }
constexpr int half_up(int k) { return (k + 1) / 2; }

using IndexMap = std::unordered_map<std::string, std::size_t>;

// Strict "more valuable" order among low-demand bidders: higher ppi, ties to
// the lower original index.
bool more_valuable_low(const Bidder& a, const Bidder& b, const IndexMap& idx);
// Same for high-demand bidders, comparing valuations.
bool more_valuable_high(const Bidder& a, const Bidder& b, const IndexMap& idx);

// Profile split at demand floor(k/2), padded and sorted.
//
// Padding: demand-1, value-0 dummies are appended to the low side until its
// total demand reaches k, and two demand-k, value-0 dummies are appended to
// the high side, so the runner-up and the two highest high valuations always
// exist. Dummies are indexed after every real bidder.
struct ClassifiedProfile {
  int k = 1;
  std::vector<Bidder> low;
  std::vector<Bidder> high;
  IndexMap index_map;

  friend bool operator==(const ClassifiedProfile&,
                         const ClassifiedProfile&) = default;
};

ClassifiedProfile classify(const TypeProfile& profile);

int total_demand(std::span<const Bidder> bidders);

// Analytic outcome of a randomized mechanism. Maps cover every real bidder
// (dummies never appear).
struct OutcomeDistribution {
  std::map<std::string, Rational> win_prob;
  std::map<std::string, Rational> expected_payment;
  Rational expected_revenue;
  Rational expected_welfare;
  Rational expected_items_sold;

  friend bool operator==(const OutcomeDistribution&,
                         const OutcomeDistribution&) = default;
};

// Which random branch produced a sample.
enum class Branch { kNone, kHigh, kLow };

// One realization of a mechanism. Dummies are filtered out.
struct SampledOutcome {
  std::set<std::string> winners;
  std::map<std::string, Rational> charge;
  int items_sold = 0;
  Branch branch = Branch::kNone;

  Rational revenue() const;
  friend bool operator==(const SampledOutcome&,
                         const SampledOutcome&) = default;
};

// Sum of win_prob(i) * v_i and win_prob(i) * d_i over `bidders`, filling in
// the instance-level fields of `out` from its per-bidder maps.
void fill_totals(std::span<const Bidder> bidders, OutcomeDistribution& out);

}  // namespace rmauction

#endif  // RMAUCTION_MODEL_H_
