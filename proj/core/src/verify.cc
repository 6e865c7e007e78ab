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


#include "rmauction/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "rmauction/caii.h"
#include "rmauction/mcaii.h"
#include "rmauction/welfare.h"

namespace rmauction::verify {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Rational kProbeOffset(1, 1000);
constexpr long kRandomProbeGrid = 1000000;

void recompute_revenue(OutcomeDistribution& out) {
  out.expected_revenue = Rational();
  for (const auto& [id, p] : out.expected_payment) out.expected_revenue += p;
}

Rational lookup(const std::map<std::string, Rational>& m,
                const std::string& id) {
  auto it = m.find(id);
  return it == m.end() ? Rational() : it->second;
}

Rational random_point(Rng& rng, const Rational& upper) {
  const long step = static_cast<long>(rng.below(kRandomProbeGrid + 1));
  return upper * Rational(step, kRandomProbeGrid);
}

std::string curve_text(const std::vector<ProbePoint>& points) {
  std::ostringstream os;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) os << ", ";
    os << "w(" << points[i].bid << ")=" << points[i].win_prob;
  }
  return os.str();
}

bool has_bidder(const TypeProfile& p, const std::string& id) {
  return std::any_of(p.bidders.begin(), p.bidders.end(),
                     [&](const Bidder& b) { return b.id == id; });
}

bool has_bidder(const GroupedProfile& p, const std::string& id) {
  for (const auto& g : p.groups) {
    for (const auto& b : g.bidders) {
      if (b.id == id) return true;
    }
  }
  return false;
}

template <class P>
P raise_bid(const P& profile, const RaiseBid& r) {
  if (r.delta.sign() <= 0) {
    throw std::invalid_argument("raise delta must be positive");
  }
  if (!has_bidder(profile, r.id)) {
    throw std::invalid_argument("unknown bidder '" + r.id + "'");
  }
  for (const auto& b : bidders_of(profile)) {
    if (b.id == r.id) return with_valuation(profile, r.id, b.valuation + r.delta);
  }
  return profile;
}

}  // namespace

FlatMechanism caii_mechanism() {
  FlatMechanism m;
  m.name = "caii";
  m.allocate = [](const TypeProfile& p) { return caii::allocate(p); };
  m.sample = [](const TypeProfile& p, Rng& rng) { return caii::sample(p, rng); };
  m.critical_bids = [](const TypeProfile& p) { return caii::critical_bids(p); };
  m.sampler = [](const TypeProfile& p) {
    return [s = caii::Sampler(p)](Rng& rng) { return s.draw(rng); };
  };
  return m;
}

GroupedMechanism mcaii_mechanism() {
  GroupedMechanism m;
  m.name = "mcaii";
  m.allocate = [](const GroupedProfile& p) {
    return mcaii::allocate(p).outcome;
  };
  m.sample = [](const GroupedProfile& p, Rng& rng) {
    return mcaii::sample(p, rng);
  };
  m.critical_bids = [](const GroupedProfile& p) {
    return mcaii::critical_bids(p);
  };
  m.sampler = [](const GroupedProfile& p) {
    return [s = mcaii::Sampler(p)](Rng& rng) { return s.draw(rng); };
  };
  return m;
}

namespace {

OutcomeDistribution vcg_outcome(const TypeProfile& p) {
  const welfare::VcgResult r = welfare::vcg(p);
  OutcomeDistribution out;
  for (const auto& b : p.bidders) {
    out.win_prob[b.id] = Rational();
    out.expected_payment[b.id] = Rational();
  }
  for (const auto& id : r.winners) {
    out.win_prob[id] = Rational(1);
    out.expected_payment[id] = r.payment.at(id);
  }
  fill_totals(p.bidders, out);
  return out;
}

}  // namespace

FlatMechanism vcg_mechanism() {
  FlatMechanism m;
  m.name = "vcg";
  m.allocate = vcg_outcome;
  m.sample = [](const TypeProfile& p, Rng&) {
    const welfare::VcgResult r = welfare::vcg(p);
    SampledOutcome out;
    for (const auto& id : r.winners) {
      out.winners.insert(id);
      out.charge[id] = r.payment.at(id);
    }
    for (const auto& b : p.bidders) {
      if (out.winners.count(b.id)) out.items_sold += b.demand;
    }
    return out;
  };
  m.critical_bids = [](const TypeProfile& p) {
    // A VCG winner's Clarke payment is its threshold bid.
    return welfare::vcg(p).payment;
  };
  return m;
}

template <class P>
Mechanism<P> first_price(Mechanism<P> base) {
  Mechanism<P> m = base;
  m.name = base.name + "+first-price";
  m.allocate = [alloc = base.allocate](const P& p) {
    OutcomeDistribution out = alloc(p);
    for (const auto& b : bidders_of(p)) {
      out.expected_payment[b.id] = out.win_prob.at(b.id) * b.valuation;
    }
    recompute_revenue(out);
    return out;
  };
  m.sampler = nullptr;
  m.sample = [s = base.sample](const P& p, Rng& rng) {
    SampledOutcome out = s(p, rng);
    for (const auto& b : bidders_of(p)) {
      if (out.winners.count(b.id)) out.charge[b.id] = b.valuation;
    }
    return out;
  };
  return m;
}

template <class P>
Mechanism<P> overcharge(Mechanism<P> base, Rational eps) {
  Mechanism<P> m = base;
  m.name = base.name + "+overcharge";
  m.allocate = [alloc = base.allocate, eps](const P& p) {
    OutcomeDistribution out = alloc(p);
    for (auto& [id, pay] : out.expected_payment) {
      const Rational& w = out.win_prob.at(id);
      if (w.sign() > 0) pay += eps * w;
    }
    recompute_revenue(out);
    return out;
  };
  m.sampler = nullptr;
  m.sample = [s = base.sample, eps](const P& p, Rng& rng) {
    SampledOutcome out = s(p, rng);
    for (auto& [id, c] : out.charge) c += eps;
    return out;
  };
  return m;
}

std::vector<Bidder> bidders_of(const TypeProfile& profile) {
  return profile.bidders;
}

std::vector<Bidder> bidders_of(const GroupedProfile& profile) {
  return flatten(profile).bidders;
}

TypeProfile with_valuation(const TypeProfile& profile, const std::string& id,
                           const Rational& bid) {
  TypeProfile out = profile;
  for (auto& b : out.bidders) {
    if (b.id == id) b.valuation = bid;
  }
  return out;
}

GroupedProfile with_valuation(const GroupedProfile& profile,
                              const std::string& id, const Rational& bid) {
  GroupedProfile out = profile;
  for (auto& g : out.groups) {
    for (auto& b : g.bidders) {
      if (b.id == id) b.valuation = bid;
    }
  }
  return out;
}

template <class P>
IcReport check_ic(const Mechanism<P>& mech, const P& profile,
                  int probes_per_bidder, Rng& rng) {
  if (probes_per_bidder < 4) {
    throw std::invalid_argument("probes_per_bidder must be at least 4");
  }
  const OutcomeDistribution base = mech.allocate(profile);
  if (!(mech.allocate(profile) == base)) {
    throw std::logic_error(mech.name + ": allocation is not deterministic");
  }
  const auto critical = mech.critical_bids(profile);

  IcReport report;
  for (const Bidder& bidder : bidders_of(profile)) {
    BidderVerdict v;
    v.id = bidder.id;
    v.win_prob = lookup(base.win_prob, bidder.id);
    v.reported_payment = lookup(base.expected_payment, bidder.id);
    const bool winner = v.win_prob.sign() > 0;
    auto cit = critical.find(bidder.id);
    if (cit != critical.end()) v.critical_bid = cit->second;

    std::vector<Rational> bids{Rational(), bidder.valuation};
    Rational upper;
    if (winner && v.critical_bid) {
      const Rational& c = *v.critical_bid;
      const Rational off = c.is_zero() ? kProbeOffset : c * kProbeOffset;
      if (c.sign() > 0) bids.push_back(c - off);
      bids.push_back(c);
      bids.push_back(c + off);
      bids.push_back(c * Rational(2) + Rational(1));
      upper = c * Rational(2) + Rational(2);
    } else {
      const Rational& x = bidder.valuation;
      bids.push_back(x / Rational(2));
      bids.push_back(x * Rational(2) + Rational(1));
      upper = x * Rational(2) + Rational(2);
    }
    for (int i = 0; i < probes_per_bidder; ++i) {
      bids.push_back(random_point(rng, upper));
    }
    std::sort(bids.begin(), bids.end());
    bids.erase(std::unique(bids.begin(), bids.end()), bids.end());

    for (const Rational& t : bids) {
      Rational w = t == bidder.valuation
                       ? v.win_prob
                       : lookup(mech.allocate(with_valuation(profile, bidder.id,
                                                             t))
                                    .win_prob,
                                bidder.id);
      v.probed_points.push_back({t, std::move(w)});
    }

    std::ostringstream why;
    for (std::size_t i = 1; i < v.probed_points.size(); ++i) {
      if (v.probed_points[i].win_prob < v.probed_points[i - 1].win_prob) {
        v.monotone = false;
      }
    }
    if (!v.monotone) why << "allocation curve decreases; ";

    if (winner) {
      if (!v.critical_bid) {
        v.single_step = false;
        v.payment_identity_holds = false;
        why << "winner without a critical bid; ";
      } else {
        const Rational& c = *v.critical_bid;
        for (const auto& pt : v.probed_points) {
          const bool ok = pt.bid < c    ? pt.win_prob.is_zero()
                          : pt.bid > c ? pt.win_prob == v.win_prob
                                       : (pt.win_prob.is_zero() ||
                                          pt.win_prob == v.win_prob);
          if (!ok) v.single_step = false;
        }
        if (!v.single_step) why << "curve is not a single step at " << c << "; ";
        v.identity_payment = v.win_prob * c;
        v.payment_identity_holds = v.reported_payment == v.identity_payment;
      }
    } else {
      // Zero at the true bid, so zero everywhere below it; above it the
      // curve may rise but only to a single level.
      std::optional<Rational> level;
      for (const auto& pt : v.probed_points) {
        if (pt.win_prob.is_zero()) {
          if (level) v.single_step = false;
          continue;
        }
        if (pt.bid <= bidder.valuation) v.single_step = false;
        if (level && *level != pt.win_prob) v.single_step = false;
        level = pt.win_prob;
      }
      if (!v.single_step) why << "losing bidder's curve is not a single step; ";
      v.identity_payment = Rational();
      v.payment_identity_holds = v.reported_payment.is_zero();
    }
    if (!v.payment_identity_holds) {
      why << "payment " << v.reported_payment << " != w*c "
          << v.identity_payment << "; ";
    }
    if (!v.ok()) {
      why << "probes: " << curve_text(v.probed_points);
      v.detail = why.str();
      report.overall = false;
    }
    report.bidders.push_back(std::move(v));
  }
  return report;
}

std::string describe(const Augmentation& aug) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const AddBidder& a) {
                   os << "add bidder " << a.bidder.id << " (d="
                      << a.bidder.demand << ", v=" << a.bidder.valuation << ")";
                   if (!a.group.empty()) os << " to group " << a.group;
                 },
                 [&](const RaiseBid& r) {
                   os << "raise " << r.id << " by " << r.delta;
                 },
                 [&](const AddGroup& g) {
                   os << "add group " << g.group.id << " with "
                      << g.group.bidders.size() << " bidder(s)";
                 },
             },
             aug);
  return os.str();
}

TypeProfile apply(const TypeProfile& profile, const Augmentation& aug) {
  return std::visit(
      Overloaded{
          [&](const AddBidder& a) {
            if (has_bidder(profile, a.bidder.id)) {
              throw std::invalid_argument("duplicate bidder '" + a.bidder.id +
                                          "'");
            }
            TypeProfile out = profile;
            out.bidders.push_back(a.bidder);
            validate(out);
            return out;
          },
          [&](const RaiseBid& r) { return raise_bid(profile, r); },
          [&](const AddGroup&) -> TypeProfile {
            throw std::invalid_argument("cannot add a group to a flat profile");
          },
      },
      aug);
}

GroupedProfile apply(const GroupedProfile& profile, const Augmentation& aug) {
  return std::visit(
      Overloaded{
          [&](const AddBidder& a) {
            if (has_bidder(profile, a.bidder.id)) {
              throw std::invalid_argument("duplicate bidder '" + a.bidder.id +
                                          "'");
            }
            GroupedProfile out = profile;
            auto it = std::find_if(out.groups.begin(), out.groups.end(),
                                   [&](const Group& g) { return g.id == a.group; });
            if (it == out.groups.end()) {
              out.groups.push_back(Group{a.group, {a.bidder}});
            } else {
              it->bidders.push_back(a.bidder);
            }
            validate(out);
            return out;
          },
          [&](const RaiseBid& r) { return raise_bid(profile, r); },
          [&](const AddGroup& g) {
            for (const auto& b : g.group.bidders) {
              if (has_bidder(profile, b.id)) {
                throw std::invalid_argument("duplicate bidder '" + b.id + "'");
              }
            }
            GroupedProfile out = profile;
            out.groups.push_back(g.group);
            validate(out);
            return out;
          },
      },
      aug);
}

template <class P>
RmReport check_rm(const Mechanism<P>& mech, const P& profile,
                  const Augmentation& aug) {
  P augmented = apply(profile, aug);
  RmReport r;
  r.augmentation = describe(aug);
  r.revenue_before = mech.allocate(profile).expected_revenue;
  r.revenue_after = mech.allocate(augmented).expected_revenue;
  r.violated = r.revenue_after < r.revenue_before;
  r.base = profile;
  r.augmented = std::move(augmented);
  return r;
}

template <class P>
PormReport porm_ratio(const Mechanism<P>& mech, const P& profile,
                      const Rational& bound) {
  PormReport r;
  r.bound = bound;
  r.mech_welfare = mech.allocate(profile).expected_welfare;
  if constexpr (std::is_same_v<P, GroupedProfile>) {
    r.max_welfare = welfare::group_max_welfare(profile);
  } else {
    r.max_welfare = welfare::max_welfare(profile).value;
  }
  if (r.mech_welfare.is_zero()) {
    if (r.max_welfare.is_zero()) {
      r.ratio = Rational(1);
    } else {
      r.ratio.reset();
    }
  } else {
    r.ratio = r.max_welfare / r.mech_welfare;
  }
  r.within_bound = r.ratio && *r.ratio <= bound;
  return r;
}

namespace {

// Upper bound on 2 atanh(x) for rational 0 <= x <= 1/3: the partial sum of
// 2 x^m / m over odd m with powers and terms rounded up to multiples of
// 2^-96, plus a geometric bound on the tail.
Rational atanh2_upper(const Rational& x) {
  if (x.is_zero()) return Rational();
  const mpz_class scale = mpz_class(1) << 96;
  auto round_up = [&](const mpq_class& q) {
    mpz_class n = q.get_num() * scale;
    mpz_class quo;
    mpz_cdiv_q(quo.get_mpz_t(), n.get_mpz_t(), q.get_den().get_mpz_t());
    return mpq_class(quo, scale);
  };
  const mpq_class x2 = x.raw() * x.raw();
  const mpq_class tail_factor = mpq_class(1) / (mpq_class(1) - x2);
  const mpq_class tolerance(1L, 100000000000L);  // 1e-11
  mpq_class power = round_up(x.raw());           // >= x^m
  mpq_class sum;
  for (long m = 1;; m += 2) {
    sum += round_up(power / m);
    power = round_up(power * x2);  // >= x^(m+2)
    // Remaining terms: sum over odd j > m of x^j / j <= power/(m+2) /(1-x^2).
    mpq_class tail = power / (m + 2) * tail_factor;
    if (tail < tolerance) {
      sum += tail;
      break;
    }
  }
  mpq_class out = sum * 2;
  out.canonicalize();
  return Rational(out);
}

}  // namespace

Rational ln_upper_bound(int k) {
  if (k < 1) throw std::invalid_argument("ln_upper_bound needs k >= 1");
  int e = 0;
  while ((1L << (e + 1)) <= k) ++e;
  const long p = 1L << e;
  // ln 2 = 2 atanh(1/3); ln(k / 2^e) = 2 atanh((k - 2^e) / (k + 2^e)).
  const Rational ln2 = atanh2_upper(Rational(1, 3));
  const Rational rest = atanh2_upper(Rational(k - p, k + p));
  // Round up once more to a short denominator; still within 1e-9.
  const mpq_class sum = (ln2 * Rational(static_cast<long>(e)) + rest).raw();
  const mpz_class scale(1000000000000L);
  mpz_class n = sum.get_num() * scale;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), sum.get_den().get_mpz_t());
  mpq_class out(q, scale);
  out.canonicalize();
  return Rational(out);
}

Rational mcaii_porm_bound(int k) { return Rational(2) + ln_upper_bound(k); }

template <class P>
MonteCarloReport monte_carlo_revenue(const Mechanism<P>& mech,
                                     const P& profile, std::size_t trials,
                                     Rng& rng, const SampleObserver& observe) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  MonteCarloReport r;
  r.trials = trials;
  r.analytic_revenue = mech.allocate(profile).expected_revenue;

  std::function<SampledOutcome(Rng&)> draw;
  if (mech.sampler) {
    draw = mech.sampler(profile);
  } else {
    draw = [&](Rng& g) { return mech.sample(profile, g); };
  }

  // Realized revenues take few distinct values; tally them exactly.
  std::map<Rational, std::size_t> revenue_counts;
  std::map<int, std::size_t> low_items;
  for (std::size_t t = 0; t < trials; ++t) {
    const SampledOutcome s = draw(rng);
    if (observe) observe(t, s);
    ++revenue_counts[s.revenue()];
    r.max_items_sold = std::max(r.max_items_sold, s.items_sold);
    if (s.branch == Branch::kLow) {
      ++low_items[s.items_sold];
      ++r.low_branch_trials;
    }
  }

  auto summarize = [](const auto& counts, std::size_t n, Rational& mean,
                      Rational& var, double& stderr_out) {
    mean = Rational();
    var = Rational();
    stderr_out = 0.0;
    if (n == 0) return;
    for (const auto& [value, count] : counts) {
      mean += Rational(value) * Rational(static_cast<long>(count));
    }
    mean /= Rational(static_cast<long>(n));
    if (n < 2) return;
    for (const auto& [value, count] : counts) {
      const Rational d = Rational(value) - mean;
      var += d * d * Rational(static_cast<long>(count));
    }
    var /= Rational(static_cast<long>(n - 1));
    stderr_out = std::sqrt(var.to_double() / static_cast<double>(n));
  };
  summarize(revenue_counts, trials, r.mean_revenue, r.var_revenue,
            r.stderr_revenue);
  summarize(low_items, r.low_branch_trials, r.mean_low_items,
            r.var_low_items, r.stderr_low_items);

  const double gap = abs(r.mean_revenue - r.analytic_revenue).to_double();
  if (r.stderr_revenue > 0.0) {
    r.z_revenue = gap / r.stderr_revenue;
  } else {
    r.z_revenue = gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return r;
}

template FlatMechanism first_price(FlatMechanism);
template GroupedMechanism first_price(GroupedMechanism);
template FlatMechanism overcharge(FlatMechanism, Rational);
template GroupedMechanism overcharge(GroupedMechanism, Rational);
template IcReport check_ic(const FlatMechanism&, const TypeProfile&, int,
                           Rng&);
template IcReport check_ic(const GroupedMechanism&, const GroupedProfile&, int,
                           Rng&);
template RmReport check_rm(const FlatMechanism&, const TypeProfile&,
                           const Augmentation&);
template RmReport check_rm(const GroupedMechanism&, const GroupedProfile&,
                          const Augmentation&);
template PormReport porm_ratio(const FlatMechanism&, const TypeProfile&,
                               const Rational&);
template PormReport porm_ratio(const GroupedMechanism&, const GroupedProfile&,
                               const Rational&);
template MonteCarloReport monte_carlo_revenue(const FlatMechanism&,
                                              const TypeProfile&, std::size_t,
                                              Rng&, const SampleObserver&);
template MonteCarloReport monte_carlo_revenue(const GroupedMechanism&,
                                              const GroupedProfile&,
                                              std::size_t, Rng&,
                                              const SampleObserver&);

}  // namespace rmauction::verify
