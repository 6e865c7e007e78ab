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

#include <stdexcept>

#include "rmauction/caii.h"

namespace rmauction::mcaii {
namespace {

Rational as_rational(int x) { return Rational(static_cast<long>(x)); }

}  // namespace

std::string_view to_string(Case c) {
  switch (c) {
    case Case::kHigh:
      return "HIGH";
    case Case::kLowPartial:
      return "LOW_PARTIAL";
    case Case::kLowFull:
      return "LOW_FULL";
  }
  return "?";
}

std::vector<Rational> item_values(std::span<const Bidder> low_sorted, int k) {
  std::vector<Rational> u;
  u.reserve(static_cast<std::size_t>(k));
  for (const auto& b : low_sorted) {
    const Rational p = ppi(b);
    for (int t = 0; t < b.demand && static_cast<int>(u.size()) < k; ++t) {
      u.push_back(p);
    }
    if (static_cast<int>(u.size()) == k) return u;
  }
  throw std::invalid_argument("low-demand total is below k = " +
                              std::to_string(k));
}

GroupAnalysis analyze_group(const Group& group, int k) {
  GroupAnalysis g;
  g.group_id = group.id;
  g.classified = classify(TypeProfile{k, group.bidders});
  g.top_high = g.classified.high[0];
  g.top_high_value = g.classified.high[0].valuation;
  g.second_high_value = g.classified.high[1].valuation;
  g.item_values = item_values(g.classified.low, k);
  for (int j = 1; j <= half_up(k); ++j) {
    g.best_low_revenue =
        max(g.best_low_revenue, as_rational(j) * g.item_values[j - 1]);
  }
  g.mprg = max(g.top_high_value, g.best_low_revenue);
  g.runner_up_pos = caii::runner_up(g.classified.low, k);
  g.runner_up_ppi = ppi(g.classified.low[g.runner_up_pos - 1]);
  return g;
}

Rational mprg(std::span<const Bidder> group, int k) {
  return analyze_group(Group{"", {group.begin(), group.end()}}, k).mprg;
}

GroupSelection select_group(std::span<const GroupAnalysis> analyses) {
  if (analyses.empty()) throw std::invalid_argument("no groups to select");
  GroupSelection sel;
  for (std::size_t i = 1; i < analyses.size(); ++i) {
    if (analyses[i].mprg > analyses[sel.position].mprg) sel.position = i;
  }
  sel.group_id = analyses[sel.position].group_id;
  for (std::size_t i = 0; i < analyses.size(); ++i) {
    if (i != sel.position) sel.reserve = max(sel.reserve, analyses[i].mprg);
  }
  return sel;
}

GroupSelection select_group(const GroupedProfile& profile) {
  std::vector<GroupAnalysis> analyses;
  for (const auto& g : profile.groups) {
    analyses.push_back(analyze_group(g, profile.k));
  }
  return select_group(analyses);
}

Allocation allocate(const GroupedProfile& profile) {
  validate(profile);
  const int k = profile.k;
  const int c = half_up(k);
  Allocation result;
  Decision& d = result.decision;
  for (const auto& g : profile.groups) d.groups.push_back(analyze_group(g, k));
  const GroupSelection sel = select_group(d.groups);
  d.winner_position = sel.position;
  d.winning_group = sel.group_id;
  d.reserve = sel.reserve;

  const GroupAnalysis& g = d.winner();
  const Rational& V = g.top_high_value;
  const Rational& L = g.best_low_revenue;
  d.threshold = max(d.reserve, V);

  // Group ties go to the earlier group, so when an earlier group's MPRG
  // equals R, the winning group's own quantities must strictly exceed R to
  // count as reaching it. Applying the same rule inside the group keeps
  // each winner's price equal to the bid at which its group would lose.
  bool yields = false;
  for (std::size_t i = 0; i < d.winner_position; ++i) {
    if (d.groups[i].mprg == d.reserve) yields = true;
  }
  d.strict = yields && V <= d.reserve;
  auto reaches = [&](const Rational& x, const Rational& bar) {
    return d.strict ? x > bar : x >= bar;
  };

  // V == R > L satisfies neither the strict high-demand rule nor any low
  // rule; the high-demand bidder is the only feasible winner there.
  if (V > L && (V > d.reserve || (V == d.reserve && !yields))) {
    d.decision_case = Case::kHigh;
    const Rational price = max(max(d.reserve, L), g.second_high_value);
    d.win_prob[g.top_high.id] = Rational(1);
    d.expected_payment[g.top_high.id] = price;
    d.critical_bid[g.top_high.id] = price;
  } else {
    const Rational& M = d.threshold;
    int jstar = 0;
    for (int j = c; j >= 1; --j) {
      if (reaches(as_rational(j) * g.item_values[j - 1], M)) {
        jstar = j;
        break;
      }
    }
    if (jstar == 0) {
      throw std::logic_error("no feasible low-demand sale in group " + g.group_id);
    }
    d.jstar = jstar;
    const auto& low = g.classified.low;
    if (jstar < c) {
      d.decision_case = Case::kLowPartial;
      const Rational& cutoff = g.item_values[jstar - 1];
      const Rational per_item = M / as_rational(jstar);
      for (const auto& b : low) {
        if (ppi(b) < cutoff) break;
        const Rational price = as_rational(b.demand) * per_item;
        d.win_prob[b.id] = Rational(1);
        d.expected_payment[b.id] = price;
        d.critical_bid[b.id] = price;
      }
    } else {
      d.decision_case = Case::kLowFull;
      const Rational per_item_floor = M / as_rational(c);
      std::size_t a = 0;
      int A = 0;
      while (a + 1 < g.runner_up_pos && reaches(ppi(low[a]), per_item_floor)) {
        A += low[a].demand;
        ++a;
      }
      d.a = a;
      d.A = A;
      if (a > 0) {
        const Rational prob(c, A);
        const Rational per_item = max(g.runner_up_ppi, per_item_floor);
        for (std::size_t i = 0; i < a; ++i) {
          const Bidder& b = low[i];
          if (b.dummy) continue;
          const Rational price = as_rational(b.demand) * per_item;
          d.win_prob[b.id] = prob;
          d.expected_payment[b.id] = prob * price;
          d.critical_bid[b.id] = price;
        }
      }
    }
  }
  // Dummies can only win at price zero; drop them from the per-winner maps.
  std::erase_if(d.win_prob, [](const auto& kv) { return kv.first[0] == '#'; });
  std::erase_if(d.expected_payment,
                [](const auto& kv) { return kv.first[0] == '#'; });
  std::erase_if(d.critical_bid,
                [](const auto& kv) { return kv.first[0] == '#'; });

  for (const auto& [id, p] : d.expected_payment) d.expected_revenue += p;

  OutcomeDistribution& out = result.outcome;
  const TypeProfile flat = flatten(profile);
  for (const auto& b : flat.bidders) {
    auto w = d.win_prob.find(b.id);
    out.win_prob[b.id] = w == d.win_prob.end() ? Rational() : w->second;
    auto p = d.expected_payment.find(b.id);
    out.expected_payment[b.id] =
        p == d.expected_payment.end() ? Rational() : p->second;
  }
  fill_totals(flat.bidders, out);
  return result;
}

Rational expected_revenue(const Decision& d, int k) {
  const GroupAnalysis& g = d.winner();
  switch (d.decision_case) {
    case Case::kHigh:
      return max(max(d.reserve, g.best_low_revenue), g.second_high_value);
    case Case::kLowPartial:
      return d.threshold;
    case Case::kLowFull:
      return max(as_rational(half_up(k)) * g.runner_up_ppi, d.threshold);
  }
  return Rational();
}

Rational expected_revenue(const GroupedProfile& profile) {
  return expected_revenue(allocate(profile).decision, profile.k);
}

std::map<std::string, Rational> critical_bids(const GroupedProfile& profile) {
  return allocate(profile).decision.critical_bid;
}

Sampler::Sampler(const GroupedProfile& profile) {
  const Decision d = allocate(profile).decision;
  case_ = d.decision_case;
  if (case_ == Case::kLowFull) {
    if (d.A.value_or(0) > 0) {
      threshold_ = bernoulli_threshold(Rational(half_up(profile.k), *d.A));
    }
    const auto& low = d.winner().classified.low;
    for (std::size_t i = 0; i < d.a.value_or(0); ++i) {
      const Bidder& b = low[i];
      auto it = d.critical_bid.find(b.id);
      candidates_.push_back({b.id, b.demand,
                             it == d.critical_bid.end() ? Rational() : it->second,
                             b.dummy});
    }
  } else {
    for (const auto& b : flatten(profile).bidders) {
      auto it = d.critical_bid.find(b.id);
      if (it != d.critical_bid.end()) {
        candidates_.push_back({b.id, b.demand, it->second, false});
      }
    }
  }
}

SampledOutcome Sampler::draw(Rng& rng) const {
  SampledOutcome out;
  if (case_ != Case::kLowFull) {
    out.branch = case_ == Case::kHigh ? Branch::kHigh : Branch::kLow;
    for (const auto& c : candidates_) {
      out.winners.insert(c.id);
      out.charge[c.id] = c.charge;
      out.items_sold += c.demand;
    }
    return out;
  }
  out.branch = Branch::kLow;
  for (const auto& c : candidates_) {
    if (!rng.bernoulli(threshold_) || c.dummy) continue;
    out.winners.insert(c.id);
    out.charge[c.id] = c.charge;
    out.items_sold += c.demand;
  }
  return out;
}

SampledOutcome sample(const GroupedProfile& profile, Rng& rng) {
  return Sampler(profile).draw(rng);
}

}  // namespace rmauction::mcaii
