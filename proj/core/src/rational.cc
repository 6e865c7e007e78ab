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

#include "rmauction/rational.h"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace rmauction {
namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : body.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den)) {
    throw std::invalid_argument("not a rational number: \"" +
                                std::string(text) + "\"");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw std::invalid_argument("zero denominator in \"" + std::string(text) +
                                "\"");
  }
  if (negative) n = -n;
  mpq_class q(n, d);
  return Rational(std::move(q));
}

std::string Rational::str() const { return value_.get_str(10); }

std::string Rational::decimal(int significant) const {
  if (is_zero()) return "0";
  // 512 bits is far beyond what 12-20 significant digits need.
  mpf_class f(value_, 512);
  const int len = gmp_snprintf(nullptr, 0, "%.*Fg", significant, f.get_mpf_t());
  std::vector<char> buf(static_cast<std::size_t>(len) + 1);
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", significant, f.get_mpf_t());
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= o.value_;
  return *this;
}

Rational operator-(const Rational& a) {
  Rational r = a;
  r.value_ = -r.value_;
  return r;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

const Rational& max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

const Rational& min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) {
  return os << x.str();
}

}  // namespace rmauction
