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

#ifndef RMAUCTION_TOOLS_CLI_SCENARIO_H_
#define RMAUCTION_TOOLS_CLI_SCENARIO_H_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rmauction/model.h"
#include "rmauction/rational.h"
#include "rmauction/verify.h"

namespace rmauction::cli {

// Input error with the 1-based line it refers to (0 when unknown).
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(int line, const std::string& message,
                const std::string& source = "");
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  std::string message_;
};

struct ScenarioBidder {
  std::string id;
  int demand = 1;
  Rational valuation;
  std::optional<std::string> group;

  friend bool operator==(const ScenarioBidder&,
                         const ScenarioBidder&) = default;
};

// {"k": 4, "bidders": [{"id": "b1", "demand": 2, "valuation": "10",
// "group": "g1"}, ...]}. Either every bidder has a group or none does. An
// optional "groups" list fixes the group order and may name empty groups.
struct Scenario {
  int k = 1;
  std::vector<ScenarioBidder> bidders;
  std::vector<std::string> groups;  // declared order; may be empty

  bool grouped() const;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// One bidder per line, so golden files diff cleanly.
std::string serialize_scenario(const Scenario& scenario);

TypeProfile to_flat(const Scenario& scenario);
// Groups in order of first appearance. A flat scenario becomes one group.
GroupedProfile to_grouped(const Scenario& scenario);

Scenario from_profile(const TypeProfile& profile);
Scenario from_profile(const GroupedProfile& profile);
Scenario from_instance(const verify::Instance& instance);

}  // namespace rmauction::cli

#endif  // RMAUCTION_TOOLS_CLI_SCENARIO_H_
