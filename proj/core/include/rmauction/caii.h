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

#ifndef RMAUCTION_CAII_H_
#define RMAUCTION_CAII_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rmauction/model.h"
#include "rmauction/rational.h"
#include "rmauction/rng.h"

// Randomized revenue-monotone mechanism for k identical items.
//
// With probability 1/3 the most valuable high-demand bidder wins and pays the
// second-highest high-demand valuation. With probability 2/3 the low-demand
// side is used: bidders are ranked by ppi, the runner-up r is the first
// bidder whose prefix demand reaches k, and each of the r-1 bidders ahead of
// it wins independently with probability ceil(k/2)/A (A = their total
// demand), paying d_i * ppi_r. Expected revenue is
//
//   (2 ceil(k/2) / 3) * ppi_r + v_second_high / 3.
namespace rmauction::caii {

struct Analysis {
  ClassifiedProfile classified;
  // 1-based position of the runner-up in classified.low.
  std::size_t runner_up_pos = 0;
  Rational runner_up_ppi;
  // Total demand of low positions 1..r-1.
  int prefix_demand = 0;
  // 2 ceil(k/2) / (3A); zero when there are no candidates (k = 1).
  Rational low_win_prob;
  Bidder top_high;
  Rational second_high_value;

  // The low-side candidates, positions 1..r-1.
  std::span<const Bidder> candidates() const {
    return std::span<const Bidder>(classified.low).first(runner_up_pos - 1);
  }
};

// Least 1-based r with prefix demand >= k. Throws std::invalid_argument when
// the total demand is below k.
std::size_t runner_up(std::span<const Bidder> low_sorted, int k);

Analysis analyze(const TypeProfile& profile);

OutcomeDistribution allocate(const TypeProfile& profile);
OutcomeDistribution allocate(const TypeProfile& profile,
                             const Analysis& analysis);

// Closed form; equals allocate(profile).expected_revenue.
Rational expected_revenue(const TypeProfile& profile);
Rational expected_revenue(const Analysis& analysis);

// Per-winner bid at which the win probability steps from zero to its level:
// the second-highest high valuation for the high winner, d_i * ppi_r for low
// candidates. Bidders with zero win probability are absent.
std::map<std::string, Rational> critical_bids(const TypeProfile& profile);

// Precomputed sampling plan. Draw 1 is the branch coin (high branch iff
// u < 1/3); in the low branch draws 2..r select candidates 1..r-1 in ranked
// order.
class Sampler {
 public:
  explicit Sampler(const TypeProfile& profile);
  SampledOutcome draw(Rng& rng) const;

 private:
  struct Candidate {
    std::string id;
    int demand;
    Rational charge;
    bool dummy;
  };
  std::uint64_t high_threshold_;
  std::uint64_t low_threshold_ = 0;
  bool high_real_ = false;
  Candidate high_;
  std::vector<Candidate> low_;
};

SampledOutcome sample(const TypeProfile& profile, Rng& rng);

}  // namespace rmauction::caii

#endif  // RMAUCTION_CAII_H_
