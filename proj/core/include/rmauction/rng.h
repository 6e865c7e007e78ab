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

#ifndef RMAUCTION_RNG_H_
#define RMAUCTION_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

#include "rmauction/rational.h"

namespace rmauction {

// Seedable random source with a fixed, documented draw format so sampled
// outcomes are reproducible across platforms and implementations:
//
//   * the engine is std::mt19937_64 seeded with the 64-bit seed;
//   * one draw = engine() >> 11, an integer m in [0, 2^53);
//   * the uniform value of a draw is m / 2^53;
//   * an event of probability p happens iff m < ceil(p * 2^53).
//
// Only draws are consumed; no std:: distribution is used, since their output
// is implementation-defined.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64/53bit-v1";
  static constexpr std::uint64_t kDrawRange = std::uint64_t{1} << 53;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t draw() { return engine_() >> 11; }
  double uniform() { return static_cast<double>(draw()) / kDrawRange; }
  // `threshold` from bernoulli_threshold().
  bool bernoulli(std::uint64_t threshold) { return draw() < threshold; }
  bool bernoulli(const Rational& p);
  // Uniform integer in [0, n) by rejection on draws; 1 <= n <= 2^53.
  std::uint64_t below(std::uint64_t n);
  // Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

// ceil(p * 2^53) for p in [0, 1]; throws std::out_of_range otherwise.
std::uint64_t bernoulli_threshold(const Rational& p);

// SplitMix64 mix of (seed, stream); used to give every generated instance or
// trial batch its own independent, order-free stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace rmauction

#endif  // RMAUCTION_RNG_H_
