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

#ifndef RMAUCTION_CAMPAIGN_H_
#define RMAUCTION_CAMPAIGN_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rmauction/rational.h"
#include "rmauction/verify.h"

namespace rmauction {

enum class CampaignMechanism { kCaii, kMcaii, kVcgDemo };

std::string_view to_string(CampaignMechanism m);

struct CampaignOptions {
  CampaignMechanism mechanism = CampaignMechanism::kCaii;
  std::size_t instances = 1000;
  std::uint64_t seed = 0;
  int k_max = 64;
  int n_max = 20;
  long value_max = 100;
  int max_groups = 5;
  int augmentations = 5;
  int probes_per_bidder = 4;
  // IC is checked on instances [0, ic_instances); nullopt means all.
  std::optional<std::size_t> ic_instances;
  unsigned jobs = 1;
};

struct Violation {
  // nullopt for the fixed two-item counterexample of the VCG demo.
  std::optional<std::size_t> instance;
  std::string check;  // "ic", "rm", "porm", "revenue", "bounds"
  std::string detail;
  verify::Instance scenario;
  std::optional<std::string> augmentation;
  std::optional<verify::Instance> augmented;
};

struct CampaignStats {
  std::size_t ic_checks = 0;
  std::size_t rm_checks = 0;
  std::size_t porm_checks = 0;
  std::size_t revenue_checks = 0;
  std::size_t bounds_checks = 0;
  // Largest finite max/mech welfare ratio seen, and its bound.
  Rational worst_porm_ratio;
  std::optional<std::size_t> worst_porm_instance;
};

struct CampaignResult {
  CampaignOptions options;
  CampaignStats stats;
  std::vector<Violation> violations;  // ordered by instance index
};

// The VCG demo: k = 2, bidders (d=1, v=2) and (d=2, v=2); the augmentation
// adds a second (d=1, v=2) bidder.
TypeProfile vcg_demo_profile();
verify::AddBidder vcg_demo_augmentation();

// Runs the property suite on generated instances. caii: revenue identity,
// runner-up prefix bounds, IC, RM and welfare ratio <= 3. mcaii: revenue
// sandwich, IC, RM and ratio <= 2 + ln k. vcg-demo: RM of VCG on the demo
// profile and on the generated instances. Throws std::invalid_argument on
// bad options.
CampaignResult run_campaign(const CampaignOptions& options);

}  // namespace rmauction

#endif  // RMAUCTION_CAMPAIGN_H_
