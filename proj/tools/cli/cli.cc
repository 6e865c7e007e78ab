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


#include "cli.h"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "report.h"
#include "rmauction/campaign.h"
#include "scenario.h"

namespace rmauction::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, MechanismChoice> kScenarioMechanisms{
    {"auto", MechanismChoice::kAuto},
    {"caii", MechanismChoice::kCaii},
    {"mcaii", MechanismChoice::kMcaii}};

const std::map<std::string, CampaignMechanism> kCampaignMechanisms{
    {"caii", CampaignMechanism::kCaii},
    {"mcaii", CampaignMechanism::kMcaii},
    {"vcg-demo", CampaignMechanism::kVcgDemo}};

std::uint64_t parse_seed(const std::string& raw, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (raw.empty() || raw[0] == '-') throw std::invalid_argument(raw);
    v = std::stoull(raw, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != raw.size()) {
    throw UsageError(what + " is not an unsigned 64-bit integer: '" + raw + "'");
  }
  return v;
}

std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
  if (flag) return parse_seed(*flag, "--seed");
  if (const char* env = std::getenv(kSeedEnv)) {
    return parse_seed(env, kSeedEnv);
  }
  return 0;
}

void emit(const Json& report, const std::string& format, std::ostream& out,
          void (*table)(const Json&, std::ostream&)) {
  if (format == "json") {
    out << report.dump(2) << "\n";
  } else {
    table(report, out);
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Revenue-monotone combinatorial auctions for identical items"};
  app.name("rmauction");
  app.require_subcommand(1);

  std::string format = "table";
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
  };

  std::string scenario_path;
  std::string mechanism = "auto";
  std::optional<std::string> seed_flag;

  auto* run = app.add_subcommand("run", "Analytic outcome of a scenario");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--mechanism", mechanism, "auto, caii or mcaii")
      ->check(CLI::IsMember({"auto", "caii", "mcaii"}))
      ->capture_default_str();
  add_format(run);

  long long trials = 1000;
  long long show = 10;
  auto* sample = app.add_subcommand("sample", "Seeded realizations of a scenario");
  sample->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  sample->add_option("--mechanism", mechanism, "auto, caii or mcaii")
      ->check(CLI::IsMember({"auto", "caii", "mcaii"}))
      ->capture_default_str();
  sample->add_option("--seed", seed_flag,
                     std::string("RNG seed (default: $") + kSeedEnv + " or 0)");
  sample->add_option("--trials", trials, "Number of realizations")
      ->capture_default_str();
  sample->add_option("--show", show, "Realizations to list")->capture_default_str();
  add_format(sample);

  std::string campaign_mechanism = "caii";
  long long instances = 1000;
  int k_max = 64;
  int n_max = 20;
  long long jobs = 1;
  long long max_violations = 20;
  std::string report_path;
  auto* verify = app.add_subcommand("verify", "Property campaign on generated instances");
  verify->add_option("--mechanism", campaign_mechanism, "caii, mcaii or vcg-demo")
      ->check(CLI::IsMember({"caii", "mcaii", "vcg-demo"}))
      ->capture_default_str();
  verify->add_option("--instances", instances, "Generated instances")
      ->capture_default_str();
  verify->add_option("--seed", seed_flag,
                     std::string("Campaign seed (default: $") + kSeedEnv + " or 0)");
  verify->add_option("--k-max", k_max, "Largest supply k")->capture_default_str();
  verify->add_option("--n-max", n_max, "Most bidders per instance")
      ->capture_default_str();
  verify->add_option("--jobs", jobs, "Worker threads (0: hardware)")
      ->capture_default_str();
  verify->add_option("--max-violations", max_violations,
                     "Violations listed in the report")
      ->capture_default_str();
  verify->add_option("--report", report_path, "Also write the JSON report here");
  add_format(verify);

  auto* demo = app.add_subcommand("vcg-demo", "VCG losing revenue when a bidder joins");
  add_format(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*run) {
      const Scenario s = load_scenario(scenario_path);
      emit(run_report(s, kScenarioMechanisms.at(mechanism)), format, out,
           print_run_table);
      return kExitOk;
    }
    if (*sample) {
      if (trials < 1) throw UsageError("--trials must be at least 1");
      if (show < 0) throw UsageError("--show must be nonnegative");
      const std::uint64_t seed = resolve_seed(seed_flag);
      const Scenario s = load_scenario(scenario_path);
      emit(sample_report(s, kScenarioMechanisms.at(mechanism), seed,
                         static_cast<std::size_t>(trials),
                         static_cast<std::size_t>(show)),
           format, out, print_sample_table);
      return kExitOk;
    }
    if (*verify) {
      if (instances < 1) throw UsageError("--instances must be at least 1");
      if (k_max < 1) throw UsageError("--k-max must be at least 1");
      if (n_max < 1) throw UsageError("--n-max must be at least 1");
      if (jobs < 0) throw UsageError("--jobs must be nonnegative");
      if (max_violations < 0) throw UsageError("--max-violations must be nonnegative");
      CampaignOptions opt;
      opt.mechanism = kCampaignMechanisms.at(campaign_mechanism);
      opt.instances = static_cast<std::size_t>(instances);
      opt.seed = resolve_seed(seed_flag);
      opt.k_max = k_max;
      opt.n_max = n_max;
      opt.jobs = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency())
                           : static_cast<unsigned>(jobs);
      const CampaignResult result = run_campaign(opt);
      const Json report =
          campaign_report(result, static_cast<std::size_t>(max_violations));
      if (!report_path.empty()) {
        std::ofstream file(report_path);
        if (!file) throw UsageError("cannot write " + report_path);
        file << report.dump(2) << "\n";
      }
      emit(report, format, out, print_campaign_table);
      return result.violations.empty() ? kExitOk : kExitViolation;
    }
    if (*demo) {
      emit(vcg_demo_report(), format, out, print_vcg_demo_table);
      return kExitOk;
    }
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rmauction::cli
