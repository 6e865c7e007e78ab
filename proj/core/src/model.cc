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

#include "rmauction/model.h"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace rmauction {
namespace {

constexpr char kDummyPrefix = '#';

void validate_bidder(const Bidder& b, int k) {
  if (b.id.empty()) throw ValidationError("bidder with empty id");
  if (b.id.front() == kDummyPrefix) {
    throw ValidationError("bidder id \"" + b.id +
                          "\" uses the reserved '#' prefix");
  }
  if (b.dummy) throw ValidationError("bidder \"" + b.id + "\" is a dummy");
  if (b.demand < 1 || b.demand > k) {
    throw ValidationError("bidder \"" + b.id + "\" has demand " +
                          std::to_string(b.demand) + " outside [1, " +
                          std::to_string(k) + "]");
  }
  if (b.valuation.sign() < 0) {
    throw ValidationError("bidder \"" + b.id + "\" has negative valuation " +
                          b.valuation.str());
  }
}

struct Keyed {
  Rational key;
  std::size_t index;
  const Bidder* bidder;
};

// Descending key, ascending index.
std::vector<Bidder> sort_by_key(std::vector<Keyed> keyed) {
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.key != b.key) return a.key > b.key;
    return a.index < b.index;
  });
  std::vector<Bidder> out;
  out.reserve(keyed.size());
  for (const auto& e : keyed) out.push_back(*e.bidder);
  return out;
}

}  // namespace

Rational ppi(const Bidder& b) {
  return b.valuation / Rational(static_cast<long>(b.demand));
}

void validate(const TypeProfile& profile) {
  if (profile.k < 1) throw ValidationError("k must be at least 1");
  std::unordered_set<std::string> seen;
  for (const auto& b : profile.bidders) {
    validate_bidder(b, profile.k);
    if (!seen.insert(b.id).second) {
      throw ValidationError("duplicate bidder id \"" + b.id + "\"");
    }
  }
}

void validate(const GroupedProfile& profile) {
  if (profile.k < 1) throw ValidationError("k must be at least 1");
  if (profile.groups.empty()) throw ValidationError("no groups");
  std::unordered_set<std::string> group_ids;
  std::unordered_set<std::string> bidder_ids;
  for (const auto& g : profile.groups) {
    if (g.id.empty()) throw ValidationError("group with empty id");
    if (!group_ids.insert(g.id).second) {
      throw ValidationError("duplicate group id \"" + g.id + "\"");
    }
    for (const auto& b : g.bidders) {
      validate_bidder(b, profile.k);
      if (!bidder_ids.insert(b.id).second) {
        throw ValidationError("duplicate bidder id \"" + b.id + "\"");
      }
    }
  }
}

TypeProfile flatten(const GroupedProfile& profile) {
  TypeProfile flat{profile.k, {}};
  for (const auto& g : profile.groups) {
    flat.bidders.insert(flat.bidders.end(), g.bidders.begin(),
                        g.bidders.end());
  }
  return flat;
}

bool more_valuable_low(const Bidder& a, const Bidder& b, const IndexMap& idx) {
  const Rational pa = ppi(a);
  const Rational pb = ppi(b);
  if (pa != pb) return pa > pb;
  return idx.at(a.id) < idx.at(b.id);
}

bool more_valuable_high(const Bidder& a, const Bidder& b,
                        const IndexMap& idx) {
  if (a.valuation != b.valuation) return a.valuation > b.valuation;
  return idx.at(a.id) < idx.at(b.id);
}

ClassifiedProfile classify(const TypeProfile& profile) {
  const int k = profile.k;
  const int limit = low_demand_limit(k);
  ClassifiedProfile out;
  out.k = k;

  std::vector<Bidder> storage = profile.bidders;
  int low_demand = 0;
  for (const auto& b : profile.bidders) {
    if (b.demand <= limit) low_demand += b.demand;
  }
  std::size_t n_low_dummies =
      low_demand >= k ? 0 : static_cast<std::size_t>(k - low_demand);
  // At k = 1 no real bidder is low-demand, so the low side is dummies only.
  for (std::size_t i = 0; i < n_low_dummies; ++i) {
    storage.push_back(Bidder{"#low" + std::to_string(i), 1, Rational(), true});
  }
  const std::size_t first_high_dummy = storage.size();
  for (int i = 0; i < 2; ++i) {
    storage.push_back(Bidder{"#high" + std::to_string(i), k, Rational(), true});
  }

  std::vector<Keyed> low, high;
  for (std::size_t i = 0; i < storage.size(); ++i) {
    const Bidder& b = storage[i];
    out.index_map.emplace(b.id, i);
    const bool is_high_dummy = i >= first_high_dummy;
    // Low-side dummies are demand 1 regardless of the threshold.
    const bool is_low = !is_high_dummy && (b.dummy || b.demand <= limit);
    if (is_low) {
      low.push_back({ppi(b), i, &b});
    } else {
      high.push_back({b.valuation, i, &b});
    }
  }
  out.low = sort_by_key(std::move(low));
  out.high = sort_by_key(std::move(high));
  return out;
}

int total_demand(std::span<const Bidder> bidders) {
  return std::accumulate(bidders.begin(), bidders.end(), 0,
                         [](int acc, const Bidder& b) { return acc + b.demand; });
}

Rational SampledOutcome::revenue() const {
  Rational sum;
  for (const auto& [id, c] : charge) sum += c;
  return sum;
}

void fill_totals(std::span<const Bidder> bidders, OutcomeDistribution& out) {
  out.expected_revenue = Rational();
  out.expected_welfare = Rational();
  out.expected_items_sold = Rational();
  for (const auto& b : bidders) {
    if (b.dummy) continue;
    const Rational& w = out.win_prob.at(b.id);
    out.expected_revenue += out.expected_payment.at(b.id);
    out.expected_welfare += w * b.valuation;
    out.expected_items_sold += w * Rational(static_cast<long>(b.demand));
  }
}

}  // namespace rmauction
