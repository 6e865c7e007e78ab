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


#include "report.h"

#include <cstdio>
#include <iomanip>

#include "rmauction/caii.h"
#include "rmauction/mcaii.h"
#include "rmauction/rng.h"

namespace rmauction::cli {
namespace {

Json bidder_rows(const Scenario& s, const OutcomeDistribution& out) {
  Json rows = Json::array();
  for (const auto& b : s.bidders) {
    Json row;
    row["id"] = b.id;
    if (b.group) row["group"] = *b.group;
    row["demand"] = b.demand;
    row["valuation"] = number_json(b.valuation);
    row["win_prob"] = number_json(out.win_prob.at(b.id));
    row["expected_payment"] = number_json(out.expected_payment.at(b.id));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json caii_decision(const TypeProfile& p) {
  const caii::Analysis a = caii::analyze(p);
  Json d;
  d["runner_up"] = a.runner_up_pos;
  d["runner_up_bidder"] = a.classified.low[a.runner_up_pos - 1].id;
  d["runner_up_ppi"] = number_json(a.runner_up_ppi);
  d["A"] = a.prefix_demand;
  d["low_win_prob"] = number_json(a.low_win_prob);
  d["top_high"] = a.top_high.dummy ? Json(nullptr) : Json(a.top_high.id);
  d["second_high_value"] = number_json(a.second_high_value);
  return d;
}

Json mcaii_decision(const mcaii::Decision& dec) {
  Json d;
  d["winning_group"] = dec.winning_group;
  d["R"] = number_json(dec.reserve);
  d["M"] = number_json(dec.threshold);
  d["case"] = std::string(mcaii::to_string(dec.decision_case));
  d["jstar"] = dec.jstar ? Json(*dec.jstar) : Json(nullptr);
  d["a"] = dec.a ? Json(*dec.a) : Json(nullptr);
  d["A"] = dec.A ? Json(*dec.A) : Json(nullptr);
  d["strict"] = dec.strict;
  Json groups = Json::array();
  for (const auto& g : dec.groups) {
    Json row;
    row["id"] = g.group_id;
    row["mprg"] = number_json(g.mprg);
    row["V"] = number_json(g.top_high_value);
    row["L"] = number_json(g.best_low_revenue);
    groups.push_back(std::move(row));
  }
  d["groups"] = std::move(groups);
  return d;
}

std::string text(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_object() && v.contains("exact")) {
    const std::string exact = v["exact"].get<std::string>();
    const std::string dec = v["decimal"].get<std::string>();
    return exact == dec ? exact : exact + " (" + dec + ")";
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print_fields(const Json& obj, std::ostream& os, const std::string& indent,
                  std::initializer_list<const char*> skip = {}) {
  for (const auto& [key, value] : obj.items()) {
    bool skipped = false;
    for (const char* s : skip) skipped = skipped || key == s;
    if (skipped) continue;
    if (value.is_object() && !value.contains("exact")) {
      os << indent << key << ":\n";
      print_fields(value, os, indent + "  ");
    } else if (value.is_array() && !value.empty() && value[0].is_object()) {
      os << indent << key << ":\n";
      for (const auto& row : value) {
        os << indent << "  -";
        for (const auto& [k, v] : row.items()) os << " " << k << "=" << text(v);
        os << "\n";
      }
    } else if (value.is_array()) {
      os << indent << key << ": [";
      for (std::size_t i = 0; i < value.size(); ++i) {
        os << (i ? ", " : "") << text(value[i]);
      }
      os << "]\n";
    } else {
      os << indent << key << ": " << text(value) << "\n";
    }
  }
}

Json vcg_json(const TypeProfile& p) {
  const welfare::VcgResult r = welfare::vcg(p);
  Json j;
  j["scenario"] = scenario_json(from_profile(p));
  j["winners"] = r.winners;
  Json pay;
  for (const auto& [id, x] : r.payment) pay[id] = number_json(x);
  j["payments"] = std::move(pay);
  j["revenue"] = number_json(r.revenue);
  return j;
}

}  // namespace

Json number_json(const Rational& x) {
  Json j;
  j["exact"] = x.str();
  j["decimal"] = x.decimal(12);
  return j;
}

Json optional_number_json(const std::optional<Rational>& x) {
  return x ? number_json(*x) : Json(nullptr);
}

std::string approx(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json scenario_json(const Scenario& s) {
  Json j;
  j["k"] = s.k;
  if (!s.groups.empty()) j["groups"] = s.groups;
  Json list = Json::array();
  for (const auto& b : s.bidders) {
    Json row;
    row["id"] = b.id;
    row["demand"] = b.demand;
    row["valuation"] = b.valuation.str();
    if (b.group) row["group"] = *b.group;
    list.push_back(std::move(row));
  }
  j["bidders"] = std::move(list);
  return j;
}

bool uses_mcaii(const Scenario& s, MechanismChoice choice) {
  if (choice == MechanismChoice::kAuto) return s.grouped();
  return choice == MechanismChoice::kMcaii;
}

Json run_report(const Scenario& s, MechanismChoice choice) {
  Json r;
  OutcomeDistribution out;
  Json decision;
  verify::PormReport porm;
  std::vector<std::string> efficient;
  if (uses_mcaii(s, choice)) {
    const GroupedProfile p = to_grouped(s);
    const mcaii::Allocation a = mcaii::allocate(p);
    out = a.outcome;
    decision = mcaii_decision(a.decision);
    porm = verify::porm_ratio(verify::mcaii_mechanism(), p,
                              verify::mcaii_porm_bound(p.k));
    r["mechanism"] = "mcaii";
  } else {
    const TypeProfile p = to_flat(s);
    out = caii::allocate(p);
    decision = caii_decision(p);
    porm = verify::porm_ratio(verify::caii_mechanism(), p, Rational(3));
    efficient = welfare::max_welfare(p).winners;
    r["mechanism"] = "caii";
  }
  r["k"] = s.k;
  r["bidders"] = bidder_rows(s, out);
  r["expected_revenue"] = number_json(out.expected_revenue);
  r["expected_welfare"] = number_json(out.expected_welfare);
  r["expected_items_sold"] = number_json(out.expected_items_sold);
  r["max_welfare"] = number_json(porm.max_welfare);
  if (r["mechanism"] == "caii") r["efficient_winners"] = efficient;
  r["porm_ratio"] = optional_number_json(porm.ratio);
  r["porm_bound"] = number_json(porm.bound);
  r["decision"] = std::move(decision);
  return r;
}

Json sample_report(const Scenario& s, MechanismChoice choice,
                   std::uint64_t seed, std::size_t trials, std::size_t show) {
  Json outcomes = Json::array();
  auto observe = [&](std::size_t t, const SampledOutcome& o) {
    if (t >= show) return;
    Json row;
    row["trial"] = t;
    row["branch"] = o.branch == Branch::kHigh  ? "high"
                    : o.branch == Branch::kLow ? "low"
                                               : "none";
    row["winners"] = Json(std::vector<std::string>(o.winners.begin(), o.winners.end()));
    Json charges = Json::object();
    for (const auto& [id, x] : o.charge) charges[id] = number_json(x);
    row["charges"] = std::move(charges);
    row["items_sold"] = o.items_sold;
    row["revenue"] = number_json(o.revenue());
    outcomes.push_back(std::move(row));
  };
  Rng rng(seed);
  verify::MonteCarloReport mc;
  const bool grouped = uses_mcaii(s, choice);
  if (grouped) {
    mc = verify::monte_carlo_revenue(verify::mcaii_mechanism(), to_grouped(s),
                                     trials, rng, observe);
  } else {
    mc = verify::monte_carlo_revenue(verify::caii_mechanism(), to_flat(s),
                                     trials, rng, observe);
  }
  Json r;
  r["mechanism"] = grouped ? "mcaii" : "caii";
  r["rng"] = std::string(Rng::kName);
  r["seed"] = seed;
  r["trials"] = trials;
  r["outcomes"] = std::move(outcomes);
  Json sum;
  sum["analytic_revenue"] = number_json(mc.analytic_revenue);
  sum["mean_revenue"] = number_json(mc.mean_revenue);
  sum["revenue_variance"] = number_json(mc.var_revenue);
  sum["revenue_stderr"] = approx(mc.stderr_revenue);
  sum["revenue_z"] = approx(mc.z_revenue);
  sum["low_branch_trials"] = mc.low_branch_trials;
  sum["mean_low_items"] = number_json(mc.mean_low_items);
  sum["low_items_variance"] = number_json(mc.var_low_items);
  sum["low_items_stderr"] = approx(mc.stderr_low_items);
  if (!grouped) sum["low_items_target"] = half_up(s.k);
  sum["max_items_sold"] = mc.max_items_sold;
  sum["oversold"] = mc.max_items_sold > s.k;
  r["summary"] = std::move(sum);
  return r;
}

Json campaign_report(const CampaignResult& res, std::size_t max_violations) {
  const CampaignOptions& o = res.options;
  Json r;
  r["mechanism"] = std::string(to_string(o.mechanism));
  r["instances"] = o.instances;
  r["seed"] = o.seed;
  r["rng"] = std::string(Rng::kName);
  r["k_max"] = o.k_max;
  r["n_max"] = o.n_max;
  Json checks;
  checks["ic"] = res.stats.ic_checks;
  checks["rm"] = res.stats.rm_checks;
  checks["porm"] = res.stats.porm_checks;
  checks["revenue"] = res.stats.revenue_checks;
  checks["bounds"] = res.stats.bounds_checks;
  r["checks"] = std::move(checks);
  if (res.stats.worst_porm_instance) {
    r["worst_porm_ratio"] = number_json(res.stats.worst_porm_ratio);
    r["worst_porm_instance"] = *res.stats.worst_porm_instance;
  } else {
    r["worst_porm_ratio"] = nullptr;
    r["worst_porm_instance"] = nullptr;
  }
  r["violation_count"] = res.violations.size();
  Json list = Json::array();
  for (std::size_t i = 0; i < res.violations.size() && i < max_violations; ++i) {
    const Violation& v = res.violations[i];
    Json row;
    row["instance"] = v.instance ? Json(*v.instance) : Json(nullptr);
    row["check"] = v.check;
    row["detail"] = v.detail;
    if (v.augmentation) row["augmentation"] = *v.augmentation;
    row["scenario"] = scenario_json(from_instance(v.scenario));
    if (v.augmented) {
      row["augmented_scenario"] = scenario_json(from_instance(*v.augmented));
    }
    list.push_back(std::move(row));
  }
  r["violations"] = std::move(list);
  return r;
}

Json vcg_demo_report() {
  const TypeProfile before = vcg_demo_profile();
  const TypeProfile after = verify::apply(before, vcg_demo_augmentation());
  Json r;
  r["mechanism"] = "vcg";
  r["k"] = before.k;
  r["before"] = vcg_json(before);
  r["after"] = vcg_json(after);
  r["revenue_before"] = r["before"]["revenue"];
  r["revenue_after"] = r["after"]["revenue"];
  r["revenue_monotone"] = !(welfare::vcg(after).revenue < welfare::vcg(before).revenue);
  return r;
}

void print_run_table(const Json& r, std::ostream& os) {
  os << "mechanism: " << r["mechanism"].get<std::string>()
     << "  k: " << r["k"].get<int>() << "\n\n";
  const bool grouped = !r["bidders"].empty() && r["bidders"][0].contains("group");
  os << std::left << std::setw(10) << "bidder";
  if (grouped) os << std::setw(8) << "group";
  os << std::setw(8) << "demand" << std::setw(14) << "valuation" << std::setw(30)
     << "win_prob" << "expected_payment\n";
  for (const auto& b : r["bidders"]) {
    os << std::setw(10) << b["id"].get<std::string>();
    if (grouped) os << std::setw(8) << b["group"].get<std::string>();
    os << std::setw(8) << b["demand"].get<int>() << std::setw(14)
       << b["valuation"]["exact"].get<std::string>() << std::setw(30)
       << text(b["win_prob"]) << text(b["expected_payment"]) << "\n";
  }
  os << "\n";
  print_fields(r, os, "", {"mechanism", "k", "bidders"});
}

void print_sample_table(const Json& r, std::ostream& os) {
  os << "mechanism: " << r["mechanism"].get<std::string>()
     << "  rng: " << r["rng"].get<std::string>()
     << "  seed: " << r["seed"].get<std::uint64_t>()
     << "  trials: " << r["trials"].get<std::size_t>() << "\n";
  for (const auto& o : r["outcomes"]) {
    os << "trial " << o["trial"].get<std::size_t>() << " ["
       << o["branch"].get<std::string>() << "]";
    if (o["winners"].empty()) os << " no winners";
    for (const auto& [id, c] : o["charges"].items()) {
      os << " " << id << " pays " << text(c) << ";";
    }
    os << " items " << o["items_sold"].get<int>() << ", revenue "
       << text(o["revenue"]) << "\n";
  }
  os << "summary:\n";
  print_fields(r["summary"], os, "  ");
}

void print_campaign_table(const Json& r, std::ostream& os) {
  os << "mechanism: " << r["mechanism"].get<std::string>()
     << "  instances: " << r["instances"].get<std::size_t>()
     << "  seed: " << r["seed"].get<std::uint64_t>() << "\n";
  os << "checks:";
  for (const auto& [k, v] : r["checks"].items()) os << " " << k << "=" << v.dump();
  os << "\n";
  os << "worst welfare ratio: " << text(r["worst_porm_ratio"]);
  if (!r["worst_porm_instance"].is_null()) {
    os << " (instance " << r["worst_porm_instance"].dump() << ")";
  }
  os << "\nviolations: " << r["violation_count"].get<std::size_t>() << "\n";
  for (const auto& v : r["violations"]) {
    os << "\n[" << v["check"].get<std::string>() << "] instance "
       << (v["instance"].is_null() ? std::string("demo") : v["instance"].dump())
       << ": " << v["detail"].get<std::string>() << "\n";
    if (v.contains("augmentation")) {
      os << "augmentation: " << v["augmentation"].get<std::string>() << "\n";
    }
    os << v["scenario"].dump() << "\n";
  }
}

void print_vcg_demo_table(const Json& r, std::ostream& os) {
  auto show = [&](const char* title, const Json& side) {
    os << title << ":\n";
    for (const auto& b : side["scenario"]["bidders"]) {
      os << "  " << b["id"].get<std::string>() << ": demand "
         << b["demand"].get<int>() << ", value "
         << b["valuation"].get<std::string>() << "\n";
    }
    os << "  VCG winners:";
    for (const auto& w : side["winners"]) os << " " << w.get<std::string>();
    os << "\n";
    for (const auto& [id, p] : side["payments"].items()) {
      os << "  " << id << " pays " << text(p) << "\n";
    }
  };
  os << "VCG with k = " << r["k"].get<int>() << " identical items\n\n";
  show("before", r["before"]);
  os << "revenue_before=" << r["revenue_before"]["exact"].get<std::string>()
     << "\n\n";
  show("after adding a third bidder", r["after"]);
  os << "revenue_after=" << r["revenue_after"]["exact"].get<std::string>()
     << "\n\n";
  os << (r["revenue_monotone"].get<bool>()
             ? "revenue did not decrease\n"
             : "adding a bidder lowered the revenue: VCG is not revenue "
               "monotone\n");
}

}  // namespace rmauction::cli
