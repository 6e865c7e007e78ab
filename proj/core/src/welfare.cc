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

#include "rmauction/welfare.h"

#include <stdexcept>

namespace rmauction::welfare {

WelfareResult max_welfare(std::span<const Bidder> bidders, int k) {
  const std::size_t n = bidders.size();
  const std::size_t cap = static_cast<std::size_t>(k);
  // best[c] holds the optimum over the suffix i..n-1 at capacity c while the
  // loop runs from the last bidder to the first. take[i][c] records that
  // bidder i is part of some suffix optimum at capacity c; empty[i][c] that
  // the suffix optimum is zero.
  std::vector<Rational> best(cap + 1);
  std::vector<std::vector<bool>> take(n, std::vector<bool>(cap + 1));
  std::vector<std::vector<bool>> empty(n + 1, std::vector<bool>(cap + 1, true));
  for (std::size_t i = n; i-- > 0;) {
    const Bidder& b = bidders[i];
    const std::size_t d = static_cast<std::size_t>(b.demand);
    for (std::size_t c = cap + 1; c-- > 0;) {
      if (d <= c) {
        Rational with = b.valuation + best[c - d];
        if (with >= best[c]) {
          take[i][c] = true;
          best[c] = std::move(with);
        }
      }
      empty[i][c] = best[c].is_zero();
    }
  }

  WelfareResult result;
  result.value = best[cap];
  std::size_t c = cap;
  for (std::size_t i = 0; i < n && !empty[i][c]; ++i) {
    if (take[i][c]) {
      result.winners.push_back(bidders[i].id);
      c -= static_cast<std::size_t>(bidders[i].demand);
    }
  }
  return result;
}

WelfareResult max_welfare(const TypeProfile& profile) {
  validate(profile);
  return max_welfare(profile.bidders, profile.k);
}

Rational max_welfare_bruteforce(const TypeProfile& profile) {
  const auto& bidders = profile.bidders;
  const std::size_t n = bidders.size();
  if (n > kBruteforceLimit) {
    throw std::invalid_argument("brute force limited to " +
                                std::to_string(kBruteforceLimit) + " bidders");
  }
  // Gray-code walk: each step toggles one bidder.
  Rational value;
  int demand = 0;
  Rational best;
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t step = 1; step < total; ++step) {
    const std::size_t flip = static_cast<std::size_t>(__builtin_ctzll(step));
    const std::uint64_t bit = std::uint64_t{1} << flip;
    gray ^= bit;
    if (gray & bit) {
      value += bidders[flip].valuation;
      demand += bidders[flip].demand;
    } else {
      value -= bidders[flip].valuation;
      demand -= bidders[flip].demand;
    }
    if (demand <= profile.k && value > best) best = value;
  }
  return best;
}

Rational group_max_welfare(const GroupedProfile& profile) {
  Rational best;
  for (const auto& g : profile.groups) {
    best = max(best, max_welfare(g.bidders, profile.k).value);
  }
  return best;
}

VcgResult vcg(const TypeProfile& profile) {
  VcgResult result;
  const WelfareResult all = max_welfare(profile);
  result.winners = all.winners;
  for (const auto& id : all.winners) {
    std::vector<Bidder> others;
    Rational own;
    for (const auto& b : profile.bidders) {
      if (b.id == id) {
        own = b.valuation;
      } else {
        others.push_back(b);
      }
    }
    const Rational without = max_welfare(others, profile.k).value;
    Rational pay = without - (all.value - own);
    result.revenue += pay;
    result.payment.emplace(id, std::move(pay));
  }
  return result;
}

}  // namespace rmauction::welfare
