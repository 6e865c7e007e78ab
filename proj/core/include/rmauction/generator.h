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

#ifndef RMAUCTION_GENERATOR_H_
#define RMAUCTION_GENERATOR_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rmauction/model.h"
#include "rmauction/verify.h"

namespace rmauction {

struct GeneratorParams {
  int n_max = 20;
  int k_max = 64;
  long value_max = 100;
  bool grouped = false;
  int max_groups = 5;
  std::size_t count = 1;
  std::uint64_t seed = 0;
};

// Random valid profiles. Instance i depends only on (seed, i), so any shard
// of a campaign can be regenerated on its own. Indices with i % 10 == 0 are
// single-bidder instances and i % 10 in {1, 2} carry deliberate ppi and
// valuation ties; about a tenth of all valuations are zero.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(GeneratorParams params);

  const GeneratorParams& params() const { return params_; }

  TypeProfile flat(std::size_t index) const;
  GroupedProfile grouped(std::size_t index) const;
  verify::Instance instance(std::size_t index) const;

  // `count` augmentations of the given instance, cycling through bidder
  // additions, bid raises and (grouped) group additions.
  std::vector<verify::Augmentation> augmentations(
      const verify::Instance& instance, std::size_t index, int count) const;

 private:
  GeneratorParams params_;
};

std::vector<verify::Instance> gen_instances(const GeneratorParams& params);

}  // namespace rmauction

#endif  // RMAUCTION_GENERATOR_H_
