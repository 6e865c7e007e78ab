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

#ifndef RMAUCTION_TOOLS_CLI_REPORT_H_
#define RMAUCTION_TOOLS_CLI_REPORT_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "rmauction/campaign.h"
#include "rmauction/rational.h"
#include "rmauction/verify.h"
#include "rmauction/welfare.h"
#include "scenario.h"

namespace rmauction::cli {

using Json = nlohmann::ordered_json;

enum class MechanismChoice { kAuto, kCaii, kMcaii };

// {"exact": "83/9", "decimal": "9.22222222222"}.
Json number_json(const Rational& x);
Json optional_number_json(const std::optional<Rational>& x);
// 12 significant digits, for statistics that are not rational.
std::string approx(double x);

Json scenario_json(const Scenario& scenario);

// Resolves kAuto by the presence of groups.
bool uses_mcaii(const Scenario& scenario, MechanismChoice choice);

Json run_report(const Scenario& scenario, MechanismChoice choice);
Json sample_report(const Scenario& scenario, MechanismChoice choice,
                   std::uint64_t seed, std::size_t trials, std::size_t show);
Json campaign_report(const CampaignResult& result,
                     std::size_t max_violations);
Json vcg_demo_report();

void print_run_table(const Json& report, std::ostream& os);
void print_sample_table(const Json& report, std::ostream& os);
void print_campaign_table(const Json& report, std::ostream& os);
void print_vcg_demo_table(const Json& report, std::ostream& os);

}  // namespace rmauction::cli

#endif  // RMAUCTION_TOOLS_CLI_REPORT_H_
