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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Expected values come from the oracles in tests/oracles and from
// independent computations here, never from the library under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli/cli.h"
#include "oracles/reference.h"
#include "rmauction/caii.h"
#include "rmauction/campaign.h"
#include "rmauction/generator.h"
#include "rmauction/mcaii.h"
#include "rmauction/rng.h"
#include "rmauction/verify.h"
#include "rmauction/welfare.h"

namespace rmauction {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kSuite = 10000;
constexpr std::size_t kIcSuite = 1000;
constexpr int kAugmentations = 5;
constexpr std::uint64_t kSeed = 0;

const std::string kData = RMAUCTION_TEST_DATA;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = Outcome{false, std::string("exception: ") + e.what()};
  }
  const double t = seconds_since(start);
  std::printf("%s %2d %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), t);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

GeneratorParams suite_params(bool grouped, std::size_t count) {
  GeneratorParams p;
  p.n_max = 20;
  p.k_max = 64;
  p.grouped = grouped;
  p.count = count;
  p.seed = kSeed;
  return p;
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rmauction");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code =
      cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return CliRun{code, out.str() + err.str()};
}

// Exhaustive welfare over all subsets.
Rational brute_welfare(const TypeProfile& p) {
  const std::size_t n = p.bidders.size();
  Rational best;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    int d = 0;
    Rational v;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        d += p.bidders[i].demand;
        v += p.bidders[i].valuation;
      }
    }
    if (d <= p.k && v > best) best = v;
  }
  return best;
}

Rational best_group_welfare(const GroupedProfile& p) {
  Rational best;
  for (const auto& g : p.groups) {
    best = max(best, welfare::max_welfare(g.bidders, p.k).value);
  }
  return best;
}

// Lower bound on exp(x) for x >= 0: a partial Taylor sum.
Rational exp_lower(const Rational& x, int terms) {
  Rational sum(1);
  Rational term(1);
  for (int n = 1; n < terms; ++n) {
    term = term * x / Rational(n);
    sum += term;
  }
  return sum;
}

Outcome vcg_demo_exactness() {
  const auto start = Clock::now();
  const CliRun r = cli({"vcg-demo", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  const std::string before = j["revenue_before"]["exact"];
  const std::string after = j["revenue_after"]["exact"];
  const double t = seconds_since(start);
  const bool ok = r.code == 0 && before == "2" && after == "0" && t < 1.0;
  return {ok, "revenue " + before + " -> " + after};
}

Outcome caii_revenue_identity() {
  const auto start = Clock::now();
  const InstanceGenerator gen(suite_params(false, kSuite));
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < kSuite; ++i) {
    const TypeProfile p = gen.flat(i);
    const OutcomeDistribution o = caii::allocate(p);
    Rational sum;
    for (const auto& [id, pay] : o.expected_payment) sum += pay;
    if (sum != testing::caii_closed_form(p)) ++mismatches;
  }
  const double t = seconds_since(start);
  return {mismatches == 0 && t < 30.0,
          std::to_string(mismatches) + " mismatches on " +
              std::to_string(kSuite) + " instances"};
}

template <class P>
std::size_t rm_violations(const InstanceGenerator& gen,
                          const verify::Mechanism<P>& mech,
                          std::size_t* checks) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < gen.params().count; ++i) {
    const verify::Instance inst = gen.instance(i);
    const P& p = std::get<P>(inst);
    const Rational before = mech.allocate(p).expected_revenue;
    for (const auto& aug : gen.augmentations(inst, i, kAugmentations)) {
      const P q = verify::apply(p, aug);
      ++*checks;
      if (mech.allocate(q).expected_revenue < before) ++bad;
    }
  }
  return bad;
}

Outcome caii_rm() {
  const InstanceGenerator gen(suite_params(false, kSuite));
  std::size_t checks = 0;
  const std::size_t bad = rm_violations(gen, verify::caii_mechanism(), &checks);
  return {bad == 0 && checks == kSuite * kAugmentations,
          std::to_string(bad) + " decreases in " + std::to_string(checks) +
              " augmentations"};
}

Outcome caii_porm() {
  const InstanceGenerator gen(suite_params(false, kSuite));
  std::size_t bad = 0;
  Rational worst;
  for (std::size_t i = 0; i < kSuite; ++i) {
    const TypeProfile p = gen.flat(i);
    const Rational mech = caii::allocate(p).expected_welfare;
    const Rational opt = welfare::max_welfare(p).value;
    if (Rational(3) * mech < opt) ++bad;
    if (!mech.is_zero()) worst = max(worst, opt / mech);
  }
  const TypeProfile witness{2, {Bidder{"h", 2, Rational(5)}}};
  const Rational w = welfare::max_welfare(witness).value /
                     caii::allocate(witness).expected_welfare;
  return {bad == 0 && w == Rational(3),
          std::to_string(bad) + " violations, worst ratio " + worst.str() +
              ", witness ratio " + w.str()};
}

Outcome caii_ic() {
  const InstanceGenerator gen(suite_params(false, kIcSuite));
  const verify::FlatMechanism mech = verify::caii_mechanism();
  const verify::FlatMechanism mutant = verify::first_price(mech);
  Rng rng(derive_seed(kSeed, 5));
  std::size_t failed = 0;
  std::size_t differ = 0;
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < kIcSuite; ++i) {
    const TypeProfile p = gen.flat(i);
    if (!verify::check_ic(mech, p, 4, rng).overall) ++failed;
    if (mutant.allocate(p) == mech.allocate(p)) continue;
    ++differ;
    if (!verify::check_ic(mutant, p, 4, rng).overall) ++flagged;
  }
  const bool ok = failed == 0 && differ > 0 && flagged * 100 >= differ * 99;
  return {ok, std::to_string(failed) + " IC failures on " +
                  std::to_string(kIcSuite) + "; first-price flagged on " +
                  std::to_string(flagged) + "/" + std::to_string(differ)};
}

Outcome observation_bounds() {
  const InstanceGenerator gen(suite_params(false, kSuite));
  std::size_t bad_a = 0;
  for (std::size_t i = 0; i < kSuite; ++i) {
    const TypeProfile p = gen.flat(i);
    const int a = caii::analyze(p).prefix_demand;
    // A single item leaves no low-demand candidates: A = 0.
    const bool ok = p.k == 1 ? a == 0 : (half_up(p.k) <= a && a < p.k);
    if (!ok) ++bad_a;
  }
  constexpr std::size_t kInstances = 1000;
  constexpr std::size_t kPerInstance = 1000;
  std::size_t oversold = 0;
  std::size_t samples = 0;
  Rng rng(derive_seed(kSeed, 6));
  for (std::size_t i = 0; i < kInstances; ++i) {
    const TypeProfile p = gen.flat(i);
    const caii::Sampler sampler(p);
    for (std::size_t t = 0; t < kPerInstance; ++t, ++samples) {
      const SampledOutcome s = sampler.draw(rng);
      int items = 0;
      for (const auto& b : p.bidders) {
        if (s.winners.count(b.id)) items += b.demand;
      }
      if (items > p.k || s.items_sold != items) ++oversold;
    }
  }
  return {bad_a == 0 && oversold == 0 && samples == 1000000,
          std::to_string(bad_a) + " A-bound violations on " +
              std::to_string(kSuite) + " instances; " +
              std::to_string(oversold) + " oversold in " +
              std::to_string(samples) + " samples"};
}

Outcome monte_carlo() {
  const auto start = Clock::now();
  const TypeProfile golden{4,
                           {Bidder{"b1", 2, Rational(10)}, Bidder{"b2", 1, Rational(4)},
                            Bidder{"b3", 2, Rational(6)}, Bidder{"b4", 1, Rational(1)},
                            Bidder{"b5", 3, Rational(9)}, Bidder{"b6", 4, Rational(6)}}};
  Rng rng(derive_seed(kSeed, 7));
  const verify::MonteCarloReport r = verify::monte_carlo_revenue(
      verify::caii_mechanism(), golden, 1000000, rng);
  const double t = seconds_since(start);
  const double rev_gap = std::abs(r.mean_revenue.to_double() - 6.0);
  const double items_gap = std::abs(r.mean_low_items.to_double() - 2.0);
  const bool ok = rev_gap <= 4 * r.stderr_revenue &&
                  items_gap <= 4 * r.stderr_low_items && t < 60.0 &&
                  r.max_items_sold <= 4;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "mean revenue %.5f (se %.5f), low-branch items %.5f (se %.5f)",
                r.mean_revenue.to_double(), r.stderr_revenue,
                r.mean_low_items.to_double(), r.stderr_low_items);
  return {ok, buf};
}

Outcome mcaii_sandwich() {
  const InstanceGenerator gen(suite_params(true, kSuite));
  std::size_t bad = 0;
  std::size_t mismatched = 0;
  for (std::size_t i = 0; i < kSuite; ++i) {
    const GroupedProfile p = gen.grouped(i);
    std::vector<Rational> scores;
    std::size_t star = 0;
    for (std::size_t g = 0; g < p.groups.size(); ++g) {
      scores.push_back(testing::reference_mprg(p.groups[g].bidders, p.k));
      if (scores[g] > scores[star]) star = g;
    }
    Rational reserve;
    for (std::size_t g = 0; g < scores.size(); ++g) {
      if (g != star) reserve = max(reserve, scores[g]);
    }
    const Rational rev = mcaii::allocate(p).decision.expected_revenue;
    if (rev < reserve || rev > scores[star]) ++bad;
    if (rev != testing::reference_mcaii(p).revenue) ++mismatched;
  }
  return {bad == 0 && mismatched == 0,
          std::to_string(bad) + " sandwich violations, " +
              std::to_string(mismatched) + " reference mismatches on " +
              std::to_string(kSuite) + " grouped instances"};
}

Outcome mcaii_rm() {
  const InstanceGenerator gen(suite_params(true, kSuite));
  std::size_t checks = 0;
  const std::size_t bad = rm_violations(gen, verify::mcaii_mechanism(), &checks);
  return {bad == 0 && checks == kSuite * kAugmentations,
          std::to_string(bad) + " decreases in " + std::to_string(checks) +
              " augmentations"};
}

Outcome mcaii_porm() {
  // The ln k bound must be sound: exp(bound) >= k.
  std::size_t unsound = 0;
  for (int k = 1; k <= 64; ++k) {
    if (exp_lower(verify::ln_upper_bound(k), 60) < Rational(k)) ++unsound;
  }
  const InstanceGenerator gen(suite_params(true, kSuite));
  std::size_t bad = 0;
  for (std::size_t i = 0; i < kSuite; ++i) {
    const GroupedProfile p = gen.grouped(i);
    const Rational mech = mcaii::allocate(p).outcome.expected_welfare;
    if (verify::mcaii_porm_bound(p.k) * mech < best_group_welfare(p)) ++bad;
  }
  return {bad == 0 && unsound == 0,
          std::to_string(bad) + " violations on " + std::to_string(kSuite) +
              " grouped instances; ln bound unsound for " +
              std::to_string(unsound) + " k"};
}

Outcome welfare_oracle() {
  GeneratorParams params = suite_params(false, 1000);
  params.n_max = 12;
  const InstanceGenerator gen(params);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < params.count; ++i) {
    const TypeProfile p = gen.flat(i);
    if (welfare::max_welfare(p).value != brute_welfare(p)) ++bad;
  }
  return {bad == 0, std::to_string(bad) + " mismatches on 1000 instances"};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"run", kData + "/golden_k4.json"},
      {"run", kData + "/grouped_two.json", "--format", "json"},
      {"sample", kData + "/golden_k4.json", "--seed", "42", "--trials", "2000",
       "--show", "50", "--format", "json"},
      {"sample", kData + "/grouped_two.json", "--seed", "42", "--trials", "500"},
      {"verify", "--mechanism", "caii", "--instances", "300", "--seed", "9",
       "--format", "json"},
      {"verify", "--mechanism", "mcaii", "--instances", "150", "--seed", "9",
       "--format", "json"},
      {"verify", "--mechanism", "vcg-demo", "--instances", "150", "--seed", "9"},
      {"vcg-demo"},
  };
  std::size_t differing = 0;
  for (const auto& c : commands) {
    if (cli(c).out != cli(c).out) ++differing;
  }
  // Parallel campaigns must match the serial run byte for byte.
  std::vector<std::string> serial = {"verify", "--mechanism", "mcaii",
                                     "--instances", "150", "--seed", "9",
                                     "--format", "json", "--jobs", "1"};
  std::vector<std::string> parallel = serial;
  parallel.back() = "3";
  if (cli(serial).out != cli(parallel).out) ++differing;
  return {differing == 0, std::to_string(differing) + " of " +
                              std::to_string(commands.size() + 1) +
                              " command pairs differ"};
}

}  // namespace
}  // namespace rmauction

int main() {
  using namespace rmauction;
  criterion(1, "vcg-demo exactness", vcg_demo_exactness);
  criterion(2, "caii revenue identity", caii_revenue_identity);
  criterion(3, "caii revenue monotonicity", caii_rm);
  criterion(4, "caii welfare ratio", caii_porm);
  criterion(5, "caii truthfulness", caii_ic);
  criterion(6, "observation bounds", observation_bounds);
  criterion(7, "monte carlo consistency", monte_carlo);
  criterion(8, "mcaii revenue sandwich", mcaii_sandwich);
  criterion(9, "mcaii revenue monotonicity", mcaii_rm);
  criterion(10, "mcaii welfare ratio", mcaii_porm);
  criterion(11, "welfare oracle", welfare_oracle);
  criterion(12, "determinism", determinism);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
