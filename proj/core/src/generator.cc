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


#include "rmauction/generator.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "rmauction/rng.h"

namespace rmauction {
namespace {

constexpr std::uint64_t kAugmentStream = 0x9e3779b97f4a7c15ULL;
constexpr long kDenominators[] = {1, 1, 1, 2, 3, 4};

int pick_k(Rng& rng, int k_max) {
  // Small supplies are where the low/high split and padding matter most.
  if (k_max > 8 && rng.below(4) == 0) {
    return static_cast<int>(rng.between(1, 8));
  }
  return static_cast<int>(rng.between(1, k_max));
}

int pick_demand(Rng& rng, int k) {
  if (k == 1) return 1;
  const int half = low_demand_limit(k);
  switch (rng.below(10)) {
    case 0: case 1: case 2: case 3: case 4:
      return static_cast<int>(rng.between(1, half));
    case 5: case 6:
      return static_cast<int>(rng.between(half + 1, k));
    case 7:
      return k;
    default:
      return static_cast<int>(rng.between(1, k));
  }
}

Rational pick_value(Rng& rng, long value_max) {
  if (rng.below(10) == 0) return Rational();
  const long num = static_cast<long>(rng.between(1, value_max));
  const long den = kDenominators[rng.below(std::size(kDenominators))];
  return Rational(num, den);
}

Bidder make_bidder(Rng& rng, int k, long value_max, std::string id) {
  Bidder b;
  b.id = std::move(id);
  b.demand = pick_demand(rng, k);
  b.valuation = pick_value(rng, value_max);
  return b;
}

// Copies the ppi (or, for high-demand pairs, the valuation) of one bidder
// onto a few others.
void plant_ties(Rng& rng, long value_max, std::vector<Bidder*>& bidders) {
  if (bidders.size() < 2) return;
  const std::size_t n = bidders.size();
  const std::size_t a = rng.below(n);
  const Bidder anchor = *bidders[a];
  const Rational anchor_ppi = ppi(anchor);
  const std::size_t copies = 1 + rng.below(std::min<std::size_t>(3, n - 1));
  for (std::size_t i = 0; i < copies; ++i) {
    Bidder* b = bidders[(a + 1 + rng.below(n - 1)) % n];
    const Rational scaled = anchor_ppi * Rational(static_cast<long>(b->demand));
    if (rng.below(3) == 0 || scaled > Rational(value_max)) {
      b->demand = anchor.demand;
      b->valuation = anchor.valuation;
    } else {
      b->valuation = scaled;
    }
  }
}

}  // namespace

InstanceGenerator::InstanceGenerator(GeneratorParams params)
    : params_(params) {
  if (params_.n_max < 1 || params_.k_max < 1 || params_.value_max < 1 ||
      params_.max_groups < 1) {
    throw std::invalid_argument("generator bounds must be positive");
  }
}

TypeProfile InstanceGenerator::flat(std::size_t index) const {
  Rng rng(derive_seed(params_.seed, index));
  TypeProfile p;
  p.k = pick_k(rng, params_.k_max);
  const int kind = static_cast<int>(index % 10);
  int n;
  if (kind == 0) {
    n = 1;
  } else if (kind <= 2) {
    n = static_cast<int>(rng.between(std::min(2, params_.n_max), params_.n_max));
  } else {
    n = rng.below(20) == 0 ? 0
                           : static_cast<int>(rng.between(1, params_.n_max));
  }
  for (int i = 0; i < n; ++i) {
    p.bidders.push_back(
        make_bidder(rng, p.k, params_.value_max, "b" + std::to_string(i)));
  }
  if (kind == 1 || kind == 2) {
    std::vector<Bidder*> ptrs;
    for (auto& b : p.bidders) ptrs.push_back(&b);
    plant_ties(rng, params_.value_max, ptrs);
  }
  return p;
}

GroupedProfile InstanceGenerator::grouped(std::size_t index) const {
  Rng rng(derive_seed(params_.seed, index));
  GroupedProfile p;
  p.k = pick_k(rng, params_.k_max);
  const int kind = static_cast<int>(index % 10);
  const int m = kind == 0 ? 1 : static_cast<int>(rng.between(1, params_.max_groups));
  const int per_group = std::max(1, params_.n_max / m);
  int next_id = 0;
  for (int g = 0; g < m; ++g) {
    Group group;
    group.id = "g" + std::to_string(g);
    int n;
    if (kind == 0) {
      n = 1;
    } else if (m > 1 && rng.below(10) == 0) {
      n = 0;
    } else {
      n = static_cast<int>(rng.between(1, per_group));
    }
    for (int i = 0; i < n; ++i) {
      group.bidders.push_back(make_bidder(rng, p.k, params_.value_max,
                                          "b" + std::to_string(next_id++)));
    }
    p.groups.push_back(std::move(group));
  }
  if (kind == 1 || kind == 2) {
    std::vector<Bidder*> ptrs;
    for (auto& g : p.groups) {
      for (auto& b : g.bidders) ptrs.push_back(&b);
    }
    plant_ties(rng, params_.value_max, ptrs);
  }
  return p;
}

verify::Instance InstanceGenerator::instance(std::size_t index) const {
  if (params_.grouped) return grouped(index);
  return flat(index);
}

std::vector<verify::Augmentation> InstanceGenerator::augmentations(
    const verify::Instance& instance, std::size_t index, int count) const {
  Rng rng(derive_seed(params_.seed ^ kAugmentStream, index));
  const bool grouped = std::holds_alternative<GroupedProfile>(instance);
  const TypeProfile flat_view =
      grouped ? flatten(std::get<GroupedProfile>(instance))
              : std::get<TypeProfile>(instance);
  std::vector<std::string> group_ids;
  if (grouped) {
    for (const auto& g : std::get<GroupedProfile>(instance).groups) {
      group_ids.push_back(g.id);
    }
  }
  const int kinds = grouped ? 3 : 2;
  const int k = flat_view.k;
  std::vector<verify::Augmentation> out;
  for (int j = 0; j < count; ++j) {
    int kind = static_cast<int>((j + index) % kinds);
    if (kind == 1 && flat_view.bidders.empty()) kind = 0;
    if (kind == 0) {
      verify::AddBidder a;
      a.bidder = make_bidder(rng, k, params_.value_max, "x" + std::to_string(j));
      if (grouped) {
        const std::size_t pick = rng.below(group_ids.size() + 1);
        a.group = pick < group_ids.size() ? group_ids[pick]
                                          : "gx" + std::to_string(j);
      }
      out.emplace_back(std::move(a));
    } else if (kind == 1) {
      const Bidder& b = flat_view.bidders[rng.below(flat_view.bidders.size())];
      const long num = static_cast<long>(rng.between(1, params_.value_max));
      const long den = kDenominators[rng.below(std::size(kDenominators))];
      out.emplace_back(verify::RaiseBid{b.id, Rational(num, den)});
    } else {
      verify::AddGroup a;
      a.group.id = "gx" + std::to_string(j);
      const int n = static_cast<int>(rng.between(1, 3));
      for (int i = 0; i < n; ++i) {
        a.group.bidders.push_back(make_bidder(
            rng, k, params_.value_max,
            "x" + std::to_string(j) + "_" + std::to_string(i)));
      }
      out.emplace_back(std::move(a));
    }
  }
  return out;
}

std::vector<verify::Instance> gen_instances(const GeneratorParams& params) {
  InstanceGenerator gen(params);
  std::vector<verify::Instance> out;
  out.reserve(params.count);
  for (std::size_t i = 0; i < params.count; ++i) out.push_back(gen.instance(i));
  return out;
}

}  // namespace rmauction
