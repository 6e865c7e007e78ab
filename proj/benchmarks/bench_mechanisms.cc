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

#include <benchmark/benchmark.h>

#include "rmauction/caii.h"
#include "rmauction/generator.h"
#include "rmauction/mcaii.h"
#include "rmauction/rng.h"
#include "rmauction/verify.h"
#include "rmauction/welfare.h"

namespace rmauction {
namespace {

constexpr std::size_t kPool = 64;

// Fixed-size instances: n bidders, k items.
std::vector<TypeProfile> flat_pool(int n, int k) {
  GeneratorParams p;
  p.n_max = n;
  p.k_max = k;
  p.count = kPool;
  p.seed = 1;
  const InstanceGenerator gen(p);
  std::vector<TypeProfile> out;
  for (std::size_t i = 0; out.size() < kPool; ++i) {
    TypeProfile t = gen.flat(i);
    if (static_cast<int>(t.bidders.size()) >= n / 2) out.push_back(std::move(t));
  }
  return out;
}

std::vector<GroupedProfile> grouped_pool(int n, int k) {
  GeneratorParams p;
  p.n_max = n;
  p.k_max = k;
  p.grouped = true;
  p.count = kPool;
  p.seed = 2;
  const InstanceGenerator gen(p);
  std::vector<GroupedProfile> out;
  for (std::size_t i = 0; i < kPool; ++i) out.push_back(gen.grouped(i));
  return out;
}

void BM_CaiiAllocate(benchmark::State& state) {
  const auto pool = flat_pool(static_cast<int>(state.range(0)),
                              static_cast<int>(state.range(1)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(caii::allocate(pool[i++ % kPool]));
  }
}
BENCHMARK(BM_CaiiAllocate)->Args({20, 64})->Args({200, 1024});

void BM_CaiiSample(benchmark::State& state) {
  const auto pool = flat_pool(20, 64);
  std::vector<caii::Sampler> samplers;
  for (const auto& p : pool) samplers.emplace_back(p);
  Rng rng(3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(samplers[i++ % kPool].draw(rng));
  }
}
BENCHMARK(BM_CaiiSample);

void BM_McaiiAllocate(benchmark::State& state) {
  const auto pool = grouped_pool(static_cast<int>(state.range(0)),
                                 static_cast<int>(state.range(1)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcaii::allocate(pool[i++ % kPool]));
  }
}
BENCHMARK(BM_McaiiAllocate)->Args({20, 64})->Args({200, 1024});

void BM_MaxWelfare(benchmark::State& state) {
  const auto pool = flat_pool(static_cast<int>(state.range(0)),
                              static_cast<int>(state.range(1)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(welfare::max_welfare(pool[i++ % kPool]));
  }
}
BENCHMARK(BM_MaxWelfare)->Args({20, 64})->Args({200, 1024});

void BM_CheckIc(benchmark::State& state) {
  const auto pool = flat_pool(20, 64);
  const verify::FlatMechanism mech = verify::caii_mechanism();
  Rng rng(4);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify::check_ic(mech, pool[i++ % kPool], 4, rng));
  }
}
BENCHMARK(BM_CheckIc)->Unit(benchmark::kMillisecond);

void BM_LnUpperBound(benchmark::State& state) {
  int k = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify::ln_upper_bound(k));
    k = k % 4096 + 1;
  }
}
BENCHMARK(BM_LnUpperBound);

}  // namespace
}  // namespace rmauction

BENCHMARK_MAIN();
