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

#ifndef RMAUCTION_VERIFY_H_
#define RMAUCTION_VERIFY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rmauction/model.h"
#include "rmauction/rational.h"
#include "rmauction/rng.h"

// Property checks for randomized single-parameter mechanisms: truthfulness
// via the monotone-allocation / payment-identity characterization, revenue
// monotonicity under augmentations, and welfare ratios. All comparisons are
// exact.
namespace rmauction::verify {

using Instance = std::variant<TypeProfile, GroupedProfile>;

template <class Profile>
struct Mechanism {
  std::string name;
  std::function<OutcomeDistribution(const Profile&)> allocate;
  std::function<SampledOutcome(const Profile&, Rng&)> sample;
  // Bid at which each positive-probability bidder's win probability steps up.
  std::function<std::map<std::string, Rational>(const Profile&)> critical_bids;
  // Optional: prepares a reusable sampler; used by Monte Carlo when present.
  std::function<std::function<SampledOutcome(Rng&)>(const Profile&)> sampler;
};

using FlatMechanism = Mechanism<TypeProfile>;
using GroupedMechanism = Mechanism<GroupedProfile>;

FlatMechanism caii_mechanism();
GroupedMechanism mcaii_mechanism();
// Deterministic VCG; sample returns the efficient allocation.
FlatMechanism vcg_mechanism();

// Mutation hooks. first_price charges every bidder win_prob * v_i;
// overcharge adds eps * win_prob to each positive-probability bidder.
template <class P>
Mechanism<P> first_price(Mechanism<P> base);
template <class P>
Mechanism<P> overcharge(Mechanism<P> base, Rational eps);

// Every real bidder of a profile, in profile order.
std::vector<Bidder> bidders_of(const TypeProfile& profile);
std::vector<Bidder> bidders_of(const GroupedProfile& profile);

TypeProfile with_valuation(const TypeProfile& profile, const std::string& id,
                           const Rational& bid);
GroupedProfile with_valuation(const GroupedProfile& profile,
                              const std::string& id, const Rational& bid);

// ---------------------------------------------------------------------------
// Incentive compatibility.

struct ProbePoint {
  Rational bid;
  Rational win_prob;
};

struct BidderVerdict {
  std::string id;
  Rational win_prob;
  std::optional<Rational> critical_bid;
  bool monotone = true;
  bool single_step = true;
  bool payment_identity_holds = true;
  Rational reported_payment;
  Rational identity_payment;
  std::vector<ProbePoint> probed_points;  // sorted by bid
  std::string detail;                     // empty when everything holds

  bool ok() const { return monotone && single_step && payment_identity_holds; }
};

struct IcReport {
  std::vector<BidderVerdict> bidders;
  bool overall = true;
};

// Probes each bidder's allocation curve at 0, c(1 - 1/1000), c,
// c(1 + 1/1000), 2c + 1, the bidder's own bid and `probes_per_bidder` random points
// in [0, 2c + 2], where c is the mechanism-reported critical bid (the
// absolute offset 1/1000 replaces c/1000 when c = 0). Bidders with zero win
// probability are probed on [0, 2v + 2] and must have a zero curve up to v.
// Violations are reported; std::logic_error is thrown only if the mechanism
// is nondeterministic. Throws std::invalid_argument if probes_per_bidder < 4.
template <class P>
IcReport check_ic(const Mechanism<P>& mech, const P& profile,
                  int probes_per_bidder, Rng& rng);

// ---------------------------------------------------------------------------
// Revenue monotonicity.

struct AddBidder {
  Bidder bidder;
  std::string group;  // grouped profiles only; created if missing
  friend bool operator==(const AddBidder&, const AddBidder&) = default;
};
struct RaiseBid {
  std::string id;
  Rational delta;  // must be > 0
  friend bool operator==(const RaiseBid&, const RaiseBid&) = default;
};
struct AddGroup {
  Group group;  // grouped profiles only
  friend bool operator==(const AddGroup&, const AddGroup&) = default;
};
using Augmentation = std::variant<AddBidder, RaiseBid, AddGroup>;

std::string describe(const Augmentation& aug);

// Throw std::invalid_argument for a non-positive delta, an unknown bidder,
// a duplicate id or AddGroup on a flat profile.
TypeProfile apply(const TypeProfile& profile, const Augmentation& aug);
GroupedProfile apply(const GroupedProfile& profile, const Augmentation& aug);

struct RmReport {
  Instance base;
  Instance augmented;
  std::string augmentation;
  Rational revenue_before;
  Rational revenue_after;
  bool violated = false;
};

template <class P>
RmReport check_rm(const Mechanism<P>& mech, const P& profile,
                  const Augmentation& aug);

// ---------------------------------------------------------------------------
// Price of revenue monotonicity.

struct PormReport {
  Rational mech_welfare;
  Rational max_welfare;
  // max_welfare / mech_welfare; nullopt means infinite (mechanism welfare 0
  // while the optimum is positive). 0/0 is reported as 1.
  std::optional<Rational> ratio;
  Rational bound;
  bool within_bound = true;
};

// Uses welfare::max_welfare for flat profiles and the best single-group
// welfare for grouped ones.
template <class P>
PormReport porm_ratio(const Mechanism<P>& mech, const P& profile,
                      const Rational& bound);

// Rational upper bound on ln(k), within 1e-9 of the true value. Computed
// from ln k = e ln 2 + ln(k / 2^e) with both logarithms expanded as
// 2 atanh(x) series, every term rounded up and the tail bounded, then
// rounded up to a multiple of 1e-12.
Rational ln_upper_bound(int k);

// 2 + ln k, rounded up.
Rational mcaii_porm_bound(int k);

// ---------------------------------------------------------------------------
// Monte Carlo.

struct MonteCarloReport {
  std::size_t trials = 0;
  Rational analytic_revenue;
  Rational mean_revenue;  // exact mean of the realized revenues
  Rational var_revenue;   // exact sample variance (n - 1 denominator)
  double stderr_revenue = 0.0;
  // |mean - analytic| / stderr; 0 when both the variance and the gap are
  // zero, +inf when only the variance is.
  double z_revenue = 0.0;
  std::size_t low_branch_trials = 0;
  Rational mean_low_items;  // items sold, conditional on the low branch
  Rational var_low_items;
  double stderr_low_items = 0.0;
  int max_items_sold = 0;
};

// `observe`, when set, sees every realization in draw order.
using SampleObserver = std::function<void(std::size_t, const SampledOutcome&)>;

template <class P>
MonteCarloReport monte_carlo_revenue(const Mechanism<P>& mech,
                                     const P& profile, std::size_t trials,
                                     Rng& rng,
                                     const SampleObserver& observe = {});

}  // namespace rmauction::verify

#endif  // RMAUCTION_VERIFY_H_
