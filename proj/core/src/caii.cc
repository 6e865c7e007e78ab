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

#include "rmauction/caii.h"

#include <stdexcept>

namespace rmauction::caii {
namespace {

const Rational kOneThird(1, 3);
const Rational kTwoThirds(2, 3);

}  // namespace

std::size_t runner_up(std::span<const Bidder> low_sorted, int k) {
  int prefix = 0;
  for (std::size_t i = 0; i < low_sorted.size(); ++i) {
    prefix += low_sorted[i].demand;
    if (prefix >= k) return i + 1;
  }
  throw std::invalid_argument("low-demand total " + std::to_string(prefix) +
                              " is below k = " + std::to_string(k));
}

Analysis analyze(const TypeProfile& profile) {
  validate(profile);
  Analysis a;
  a.classified = classify(profile);
  const auto& low = a.classified.low;
  const int k = profile.k;

  a.runner_up_pos = runner_up(low, k);
  a.runner_up_ppi = ppi(low[a.runner_up_pos - 1]);
  a.prefix_demand = total_demand(a.candidates());
  if (a.prefix_demand > 0) {
    a.low_win_prob = kTwoThirds * Rational(half_up(k), a.prefix_demand);
  }
  a.top_high = a.classified.high[0];
  a.second_high_value = a.classified.high[1].valuation;
  return a;
}

OutcomeDistribution allocate(const TypeProfile& profile) {
  return allocate(profile, analyze(profile));
}

OutcomeDistribution allocate(const TypeProfile& profile,
                             const Analysis& analysis) {
  OutcomeDistribution out;
  for (const auto& b : profile.bidders) {
    out.win_prob[b.id] = Rational();
    out.expected_payment[b.id] = Rational();
  }
  if (!analysis.top_high.dummy) {
    out.win_prob[analysis.top_high.id] = kOneThird;
    out.expected_payment[analysis.top_high.id] =
        analysis.second_high_value * kOneThird;
  }
  for (const auto& b : analysis.candidates()) {
    if (b.dummy) continue;
    out.win_prob[b.id] = analysis.low_win_prob;
    out.expected_payment[b.id] = analysis.low_win_prob *
                                 Rational(static_cast<long>(b.demand)) *
                                 analysis.runner_up_ppi;
  }
  fill_totals(profile.bidders, out);
  return out;
}

Rational expected_revenue(const TypeProfile& profile) {
  return expected_revenue(analyze(profile));
}

Rational expected_revenue(const Analysis& analysis) {
  const int c = half_up(analysis.classified.k);
  return kTwoThirds * Rational(c) * analysis.runner_up_ppi +
         analysis.second_high_value * kOneThird;
}

std::map<std::string, Rational> critical_bids(const TypeProfile& profile) {
  const Analysis a = analyze(profile);
  std::map<std::string, Rational> out;
  if (!a.top_high.dummy) out[a.top_high.id] = a.second_high_value;
  for (const auto& b : a.candidates()) {
    if (b.dummy) continue;
    out[b.id] = Rational(static_cast<long>(b.demand)) * a.runner_up_ppi;
  }
  return out;
}

Sampler::Sampler(const TypeProfile& profile)
    : high_threshold_(bernoulli_threshold(kOneThird)) {
  const Analysis a = analyze(profile);
  high_real_ = !a.top_high.dummy;
  high_ = {a.top_high.id, a.top_high.demand, a.second_high_value,
           a.top_high.dummy};
  if (a.prefix_demand > 0) {
    low_threshold_ = bernoulli_threshold(
        Rational(half_up(profile.k), a.prefix_demand));
  }
  for (const auto& b : a.candidates()) {
    low_.push_back({b.id, b.demand,
                    Rational(static_cast<long>(b.demand)) * a.runner_up_ppi,
                    b.dummy});
  }
}

SampledOutcome Sampler::draw(Rng& rng) const {
  SampledOutcome out;
  if (rng.draw() < high_threshold_) {
    out.branch = Branch::kHigh;
    if (high_real_) {
      out.winners.insert(high_.id);
      out.charge[high_.id] = high_.charge;
      out.items_sold = high_.demand;
    }
    return out;
  }
  out.branch = Branch::kLow;
  for (const auto& c : low_) {
    if (!rng.bernoulli(low_threshold_) || c.dummy) continue;
    out.winners.insert(c.id);
    out.charge[c.id] = c.charge;
    out.items_sold += c.demand;
  }
  return out;
}

SampledOutcome sample(const TypeProfile& profile, Rng& rng) {
  return Sampler(profile).draw(rng);
}

}  // namespace rmauction::caii
