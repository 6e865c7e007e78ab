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

#include "rmauction/mcaii.h"

#include <map>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/reference.h"
#include "rmauction/generator.h"
#include "rmauction/rng.h"
#include "rmauction/verify.h"
#include "rmauction/welfare.h"

namespace rmauction {
namespace {

Bidder B(const char* id, int d, Rational v) { return Bidder{id, d, v}; }

Group golden_group() {
  return Group{"g1",
               {B("b1", 2, 10), B("b2", 1, 4), B("b3", 2, 6), B("b4", 1, 1),
                B("b5", 3, 9), B("b6", 4, 6)}};
}

GroupedProfile two_groups() {
  return GroupedProfile{4, {golden_group(), Group{"g2", {B("c1", 4, 7)}}}};
}

GeneratorParams grouped_params(std::uint64_t seed, std::size_t count) {
  GeneratorParams p;
  p.grouped = true;
  p.seed = seed;
  p.count = count;
  return p;
}

TEST(ItemValuesTest, Golden) {
  const mcaii::GroupAnalysis g = mcaii::analyze_group(golden_group(), 4);
  EXPECT_EQ(g.item_values, (std::vector<Rational>{5, 5, 4, 3}));
  EXPECT_EQ(g.best_low_revenue, Rational(10));
  EXPECT_EQ(g.top_high_value, Rational(9));
  EXPECT_EQ(g.second_high_value, Rational(6));
  EXPECT_EQ(g.mprg, Rational(10));
  EXPECT_EQ(g.runner_up_pos, 3u);
  EXPECT_EQ(g.runner_up_ppi, Rational(3));
}

TEST(MprgTest, Examples) {
  const Group g = golden_group();
  EXPECT_EQ(mcaii::mprg(g.bidders, 4), Rational(10));
  EXPECT_EQ(mcaii::mprg(std::vector<Bidder>{B("c1", 4, 7)}, 4), Rational(7));
  EXPECT_EQ(mcaii::mprg(std::vector<Bidder>{}, 4), Rational(0));
  EXPECT_EQ(mcaii::mprg(std::vector<Bidder>{B("x", 1, 3), B("y", 1, 3)}, 3),
            Rational(6));
}

TEST(SelectGroupTest, ReserveIsSecondScore) {
  const mcaii::GroupSelection s = mcaii::select_group(two_groups());
  EXPECT_EQ(s.position, 0u);
  EXPECT_EQ(s.group_id, "g1");
  EXPECT_EQ(s.reserve, Rational(7));
}

TEST(SelectGroupTest, TiesGoToLowestPosition) {
  const GroupedProfile p{
      2, {Group{"a", {B("x", 2, 5)}}, Group{"b", {B("y", 2, 5)}},
          Group{"c", {B("z", 1, 1)}}}};
  const mcaii::GroupSelection s = mcaii::select_group(p);
  EXPECT_EQ(s.group_id, "a");
  EXPECT_EQ(s.reserve, Rational(5));
}

TEST(SelectGroupTest, SingleGroupHasZeroReserve) {
  const mcaii::GroupSelection s =
      mcaii::select_group(GroupedProfile{4, {golden_group()}});
  EXPECT_EQ(s.group_id, "g1");
  EXPECT_TRUE(s.reserve.is_zero());
}

TEST(AllocateTest, TwoGroupsLowFull) {
  const mcaii::Allocation a = mcaii::allocate(two_groups());
  const mcaii::Decision& d = a.decision;
  EXPECT_EQ(d.winning_group, "g1");
  EXPECT_EQ(d.reserve, Rational(7));
  EXPECT_EQ(d.threshold, Rational(9));
  EXPECT_EQ(d.decision_case, mcaii::Case::kLowFull);
  EXPECT_EQ(d.jstar, 2);
  EXPECT_EQ(d.a, 1u);
  EXPECT_EQ(d.A, 2);
  EXPECT_FALSE(d.strict);
  EXPECT_EQ(d.expected_revenue, Rational(9));
  EXPECT_EQ(a.outcome.win_prob.at("b1"), Rational(1));
  EXPECT_EQ(a.outcome.expected_payment.at("b1"), Rational(9));
  EXPECT_TRUE(a.outcome.win_prob.at("c1").is_zero());
  EXPECT_EQ(mcaii::expected_revenue(two_groups()), Rational(9));
  EXPECT_EQ(mcaii::to_string(d.decision_case), "LOW_FULL");
}

TEST(AllocateTest, HighCasePaysReserve) {
  const GroupedProfile p{
      4, {Group{"g1", {B("h", 3, 30), B("l", 1, 5)}}, Group{"g2", {B("w", 4, 20)}}}};
  const mcaii::Allocation a = mcaii::allocate(p);
  EXPECT_EQ(a.decision.decision_case, mcaii::Case::kHigh);
  EXPECT_EQ(a.decision.expected_revenue, Rational(20));
  EXPECT_EQ(a.outcome.win_prob.at("h"), Rational(1));
  EXPECT_EQ(mcaii::critical_bids(p).at("h"), Rational(20));
}

TEST(AllocateTest, LowPartial) {
  // u = 8, 1, 1, 1 with c = 2: 1 * u_1 = 8 reaches M = 6 but 2 * u_2 does not.
  const GroupedProfile p{
      4, {Group{"g1", {B("a", 1, 8), B("b", 2, 2), B("c", 1, 1)}},
          Group{"g2", {B("w", 4, 6)}}}};
  const mcaii::Allocation a = mcaii::allocate(p);
  EXPECT_EQ(a.decision.decision_case, mcaii::Case::kLowPartial);
  EXPECT_EQ(a.decision.jstar, 1);
  EXPECT_EQ(a.decision.expected_revenue, Rational(6));
  EXPECT_EQ(a.outcome.win_prob.at("a"), Rational(1));
  EXPECT_TRUE(a.outcome.win_prob.at("b").is_zero());
}

TEST(AllocateTest, AllZeroValuations) {
  const GroupedProfile p{
      3, {Group{"g1", {B("a", 1, 0), B("b", 2, 0)}}, Group{"g2", {B("c", 3, 0)}}}};
  const mcaii::Allocation a = mcaii::allocate(p);
  EXPECT_EQ(a.decision.winning_group, "g1");
  EXPECT_TRUE(a.decision.expected_revenue.is_zero());
  EXPECT_TRUE(a.outcome.expected_welfare.is_zero());
}

TEST(AllocateTest, EmptyGroupsOnly) {
  const GroupedProfile p{3, {Group{"g1", {}}, Group{"g2", {}}}};
  const mcaii::Allocation a = mcaii::allocate(p);
  EXPECT_TRUE(a.decision.expected_revenue.is_zero());
  EXPECT_TRUE(a.outcome.win_prob.empty());
}

TEST(AllocateTest, EarlierGroupAtReserveMakesComparisonsStrict) {
  const GroupedProfile p{
      2, {Group{"g1", {B("z", 2, 6)}},
          Group{"g2", {B("x", 1, 10), B("y", 1, 6)}}}};
  const mcaii::Allocation a = mcaii::allocate(p);
  EXPECT_EQ(a.decision.winning_group, "g2");
  EXPECT_EQ(a.decision.reserve, Rational(6));
  EXPECT_TRUE(a.decision.strict);
  EXPECT_EQ(a.decision.decision_case, mcaii::Case::kLowFull);
  EXPECT_EQ(a.outcome.win_prob.at("x"), Rational(1));
  EXPECT_EQ(a.decision.expected_revenue, Rational(6));

  // At the critical bid the tie goes to the earlier group.
  const GroupedProfile at_tie = verify::with_valuation(p, "x", Rational(6));
  const mcaii::Allocation t = mcaii::allocate(at_tie);
  EXPECT_EQ(t.decision.winning_group, "g1");
  EXPECT_TRUE(t.outcome.win_prob.at("x").is_zero());
}

TEST(AllocateTest, RejectsInvalidProfiles) {
  EXPECT_THROW(mcaii::allocate(GroupedProfile{2, {}}), ValidationError);
}

TEST(GeneratedMcaii, MatchesReference) {
  const InstanceGenerator g(grouped_params(7, 2000));
  for (std::size_t i = 0; i < g.params().count; ++i) {
    const GroupedProfile p = g.grouped(i);
    const mcaii::Allocation a = mcaii::allocate(p);
    const testing::RefOutcome ref = testing::reference_mcaii(p);
    ASSERT_EQ(a.outcome.win_prob, ref.win_prob) << "instance " << i;
    ASSERT_EQ(a.outcome.expected_payment, ref.payment) << "instance " << i;
    ASSERT_EQ(a.decision.expected_revenue, ref.revenue) << "instance " << i;
    ASSERT_EQ(mcaii::critical_bids(p), ref.critical) << "instance " << i;
    ASSERT_EQ(mcaii::to_string(a.decision.decision_case), ref.label);
    ASSERT_EQ(mcaii::expected_revenue(a.decision, p.k),
              a.decision.expected_revenue);
  }
}

TEST(GeneratedMcaii, RevenueSandwichAndFullCandidates) {
  const InstanceGenerator g(grouped_params(8, 2000));
  for (std::size_t i = 0; i < g.params().count; ++i) {
    const GroupedProfile p = g.grouped(i);
    const mcaii::Decision d = mcaii::allocate(p).decision;
    ASSERT_LE(d.reserve, d.expected_revenue) << "instance " << i;
    ASSERT_LE(d.expected_revenue, d.winner().mprg) << "instance " << i;
    if (d.decision_case == mcaii::Case::kLowFull && *d.a > 0) {
      ASSERT_GE(*d.A, half_up(p.k)) << "instance " << i;
    }
  }
}

TEST(GeneratedMcaii, MprgBoundsGroupWelfareWithinLogFactor) {
  // mprg <= group welfare <= (2 + ln k) mprg.
  const InstanceGenerator g(grouped_params(9, 1000));
  for (std::size_t i = 0; i < g.params().count; ++i) {
    const GroupedProfile p = g.grouped(i);
    const Rational bound = verify::mcaii_porm_bound(p.k);
    for (const auto& grp : p.groups) {
      const Rational m = mcaii::mprg(grp.bidders, p.k);
      const Rational w = welfare::max_welfare(grp.bidders, p.k).value;
      ASSERT_LE(m, w) << "instance " << i << " group " << grp.id;
      ASSERT_LE(w, bound * m) << "instance " << i << " group " << grp.id;
    }
  }
}

TEST(GeneratedMcaii, CrossGroupTiesAreTruthful) {
  const InstanceGenerator g(grouped_params(0, 10000));
  const verify::GroupedMechanism mech = verify::mcaii_mechanism();
  Rng rng(1);
  std::size_t strict = 0;
  for (std::size_t i = 0; i < g.params().count && strict < 40; ++i) {
    const GroupedProfile p = g.grouped(i);
    const mcaii::Decision d = mcaii::allocate(p).decision;
    if (!d.strict) continue;
    ++strict;
    EXPECT_TRUE(verify::check_ic(mech, p, 16, rng).overall) << "instance " << i;
    EXPECT_LE(d.reserve, d.expected_revenue);
    EXPECT_LE(d.expected_revenue, d.winner().mprg);
  }
  EXPECT_GE(strict, 5u);
}

TEST(SamplerTest, DeterministicCasesUseNoDraws) {
  const GroupedProfile p{
      4, {Group{"g1", {B("h", 3, 30), B("l", 1, 5)}}, Group{"g2", {B("w", 4, 20)}}}};
  const mcaii::Sampler s(p);
  EXPECT_EQ(s.decision_case(), mcaii::Case::kHigh);
  Rng a(5);
  Rng b(5);
  const SampledOutcome o = s.draw(a);
  EXPECT_EQ(o.winners, (std::set<std::string>{"h"}));
  EXPECT_EQ(o.revenue(), Rational(20));
  EXPECT_EQ(a.draw(), b.draw());
}

TEST(SamplerTest, SamplesAreFeasible) {
  const InstanceGenerator g(grouped_params(10, 300));
  Rng rng(2);
  for (std::size_t i = 0; i < g.params().count; ++i) {
    const GroupedProfile p = g.grouped(i);
    const mcaii::Sampler s(p);
    const auto crit = mcaii::critical_bids(p);
    std::map<std::string, std::pair<std::string, const Bidder*>> owner;
    for (const auto& grp : p.groups) {
      for (const auto& b : grp.bidders) owner[b.id] = {grp.id, &b};
    }
    for (int t = 0; t < 20; ++t) {
      const SampledOutcome o = s.draw(rng);
      ASSERT_LE(o.items_sold, p.k);
      std::set<std::string> groups;
      for (const auto& id : o.winners) {
        groups.insert(owner.at(id).first);
        ASSERT_LE(o.charge.at(id), owner.at(id).second->valuation);
        ASSERT_EQ(o.charge.at(id), crit.at(id));
      }
      ASSERT_LE(groups.size(), 1u);
    }
  }
}

}  // namespace
}  // namespace rmauction
