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

#include "rmauction/rng.h"

#include <stdexcept>

namespace rmauction {

bool Rng::bernoulli(const Rational& p) {
  return bernoulli(bernoulli_threshold(p));
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0 || n > kDrawRange) {
    throw std::invalid_argument("Rng::below: n must be in [1, 2^53]");
  }
  const std::uint64_t limit = kDrawRange - kDrawRange % n;
  for (;;) {
    const std::uint64_t m = draw();
    if (m < limit) return m % n;
  }
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::between: empty range");
  return lo + static_cast<std::int64_t>(
                  below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::uint64_t bernoulli_threshold(const Rational& p) {
  if (p.sign() < 0 || p > Rational(1)) {
    throw std::out_of_range("probability outside [0, 1]: " + p.str());
  }
  mpz_class scaled = p.numerator() * (mpz_class(1) << 53);
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), p.denominator().get_mpz_t());
  return static_cast<std::uint64_t>(q.get_ui());
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace rmauction
