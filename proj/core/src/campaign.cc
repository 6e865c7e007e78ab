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


#include "rmauction/campaign.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "rmauction/caii.h"
#include "rmauction/generator.h"
#include "rmauction/mcaii.h"
#include "rmauction/rng.h"

namespace rmauction {
namespace {

struct InstanceResult {
  CampaignStats stats;
  std::vector<Violation> violations;
  std::optional<Rational> porm_ratio;
};

std::string ratio_text(const verify::PormReport& r) {
  std::ostringstream os;
  os << "max welfare " << r.max_welfare << " vs mechanism welfare "
     << r.mech_welfare << ", ratio "
     << (r.ratio ? r.ratio->str() : std::string("inf")) << " > bound "
     << r.bound;
  return os.str();
}

template <class P>
void common_checks(const verify::Mechanism<P>& mech, const P& profile,
                   const Rational& porm_bound, std::size_t index,
                   const CampaignOptions& opt, const InstanceGenerator& gen,
                   InstanceResult& out) {
  if (!opt.ic_instances || index < *opt.ic_instances) {
    Rng rng(derive_seed(opt.seed ^ 0x1c1c1c1c1c1c1c1cULL, index));
    const verify::IcReport ic =
        verify::check_ic(mech, profile, opt.probes_per_bidder, rng);
    ++out.stats.ic_checks;
    for (const auto& v : ic.bidders) {
      if (v.ok()) continue;
      out.violations.push_back(
          {index, "ic", v.id + ": " + v.detail, profile, {}, {}});
    }
  }
  for (const auto& aug : gen.augmentations(profile, index, opt.augmentations)) {
    const verify::RmReport rm = verify::check_rm(mech, profile, aug);
    ++out.stats.rm_checks;
    if (rm.violated) {
      out.violations.push_back(
          {index, "rm",
           "revenue " + rm.revenue_before.str() + " -> " +
               rm.revenue_after.str(),
           profile, rm.augmentation, rm.augmented});
    }
  }
  const verify::PormReport porm = verify::porm_ratio(mech, profile, porm_bound);
  ++out.stats.porm_checks;
  out.porm_ratio = porm.ratio;
  if (!porm.within_bound) {
    out.violations.push_back({index, "porm", ratio_text(porm), profile, {}, {}});
  }
}

InstanceResult check_caii(std::size_t index, const CampaignOptions& opt,
                          const InstanceGenerator& gen) {
  InstanceResult out;
  const TypeProfile p = gen.flat(index);
  const caii::Analysis a = caii::analyze(p);
  const OutcomeDistribution dist = caii::allocate(p, a);

  ++out.stats.revenue_checks;
  const Rational closed = caii::expected_revenue(a);
  if (dist.expected_revenue != closed) {
    out.violations.push_back({index, "revenue",
                              "sum of payments " + dist.expected_revenue.str() +
                                  " != closed form " + closed.str(),
                              p, {}, {}});
  }

  ++out.stats.bounds_checks;
  const bool bounds_ok = p.k == 1 ? a.prefix_demand == 0
                                  : half_up(p.k) <= a.prefix_demand &&
                                        a.prefix_demand < p.k;
  if (!bounds_ok) {
    out.violations.push_back(
        {index, "bounds",
         "A = " + std::to_string(a.prefix_demand) + " for k = " +
             std::to_string(p.k),
         p, {}, {}});
  }

  common_checks(verify::caii_mechanism(), p, Rational(3), index, opt, gen, out);
  return out;
}

InstanceResult check_mcaii(std::size_t index, const CampaignOptions& opt,
                           const InstanceGenerator& gen) {
  InstanceResult out;
  const GroupedProfile p = gen.grouped(index);
  const mcaii::Allocation alloc = mcaii::allocate(p);
  const mcaii::Decision& d = alloc.decision;
  const Rational& revenue = alloc.outcome.expected_revenue;

  const Rational closed = mcaii::expected_revenue(d, p.k);
  ++out.stats.revenue_checks;
  if (revenue != closed) {
    out.violations.push_back({index, "revenue",
                              "sum of payments " + revenue.str() +
                                  " != closed form " + closed.str(),
                              p, {}, {}});
  }
  ++out.stats.bounds_checks;
  const Rational& top = d.winner().mprg;
  if (revenue < d.reserve || top < revenue) {
    out.violations.push_back({index, "bounds",
                              "revenue " + revenue.str() + " outside [" +
                                  d.reserve.str() + ", " + top.str() + "]",
                              p, {}, {}});
  }

  common_checks(verify::mcaii_mechanism(), p, verify::mcaii_porm_bound(p.k),
                index, opt, gen, out);
  return out;
}

InstanceResult check_vcg(std::size_t index, const CampaignOptions& opt,
                         const InstanceGenerator& gen) {
  InstanceResult out;
  const TypeProfile p = gen.flat(index);
  const verify::FlatMechanism vcg = verify::vcg_mechanism();
  for (const auto& aug : gen.augmentations(p, index, opt.augmentations)) {
    const verify::RmReport rm = verify::check_rm(vcg, p, aug);
    ++out.stats.rm_checks;
    if (rm.violated) {
      out.violations.push_back(
          {index, "rm",
           "revenue " + rm.revenue_before.str() + " -> " +
               rm.revenue_after.str(),
           p, rm.augmentation, rm.augmented});
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(CampaignMechanism m) {
  switch (m) {
    case CampaignMechanism::kCaii:
      return "caii";
    case CampaignMechanism::kMcaii:
      return "mcaii";
    case CampaignMechanism::kVcgDemo:
      return "vcg-demo";
  }
  return "?";
}

TypeProfile vcg_demo_profile() {
  return TypeProfile{2,
                     {Bidder{"b1", 1, Rational(2)}, Bidder{"b2", 2, Rational(2)}}};
}

verify::AddBidder vcg_demo_augmentation() {
  return verify::AddBidder{Bidder{"b3", 1, Rational(2)}, ""};
}

CampaignResult run_campaign(const CampaignOptions& options) {
  if (options.instances < 1) {
    throw std::invalid_argument("instances must be at least 1");
  }
  if (options.augmentations < 0) {
    throw std::invalid_argument("augmentations must be nonnegative");
  }
  if (options.probes_per_bidder < 4) {
    throw std::invalid_argument("probes_per_bidder must be at least 4");
  }
  GeneratorParams params;
  params.n_max = options.n_max;
  params.k_max = options.k_max;
  params.value_max = options.value_max;
  params.max_groups = options.max_groups;
  params.grouped = options.mechanism == CampaignMechanism::kMcaii;
  params.count = options.instances;
  params.seed = options.seed;
  const InstanceGenerator gen(params);

  auto run_one = [&](std::size_t i) {
    switch (options.mechanism) {
      case CampaignMechanism::kCaii:
        return check_caii(i, options, gen);
      case CampaignMechanism::kMcaii:
        return check_mcaii(i, options, gen);
      case CampaignMechanism::kVcgDemo:
        return check_vcg(i, options, gen);
    }
    return InstanceResult{};
  };

  std::vector<InstanceResult> results(options.instances);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < options.instances && !failed; i = next++) {
      try {
        results[i] = run_one(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  CampaignResult out;
  out.options = options;
  if (options.mechanism == CampaignMechanism::kVcgDemo) {
    const TypeProfile demo = vcg_demo_profile();
    const verify::RmReport rm =
        verify::check_rm(verify::vcg_mechanism(), demo, vcg_demo_augmentation());
    ++out.stats.rm_checks;
    if (rm.violated) {
      out.violations.push_back({std::nullopt, "rm",
                                "revenue " + rm.revenue_before.str() + " -> " +
                                    rm.revenue_after.str(),
                                demo, rm.augmentation, rm.augmented});
    }
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    InstanceResult& r = results[i];
    out.stats.ic_checks += r.stats.ic_checks;
    out.stats.rm_checks += r.stats.rm_checks;
    out.stats.porm_checks += r.stats.porm_checks;
    out.stats.revenue_checks += r.stats.revenue_checks;
    out.stats.bounds_checks += r.stats.bounds_checks;
    if (r.porm_ratio && (!out.stats.worst_porm_instance ||
                         out.stats.worst_porm_ratio < *r.porm_ratio)) {
      out.stats.worst_porm_ratio = *r.porm_ratio;
      out.stats.worst_porm_instance = i;
    }
    for (auto& v : r.violations) out.violations.push_back(std::move(v));
  }
  return out;
}

}  // namespace rmauction
