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

#ifndef RMAUCTION_RATIONAL_H_
#define RMAUCTION_RATIONAL_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace rmauction {

// Exact rational number in canonical form (denominator > 0, numerator and
// denominator coprime). Every valuation, price, probability and revenue in
// the mechanisms is a Rational; doubles only appear when rendering.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT
  // Throws std::domain_error when `den` is zero.
  Rational(long num, long den);
  explicit Rational(mpq_class value);

  // Accepts "7", "-3", "21/4" (non-canonical input such as "4/2" is
  // reduced). Throws std::invalid_argument on anything else, including a
  // zero denominator.
  static Rational parse(std::string_view text);

  // "6", "-3", "83/9".
  std::string str() const;
  // Rounded to `significant` significant digits, derived from the exact
  // value ("9.22222222222" for 83/9 at 12 digits).
  std::string decimal(int significant = 12) const;
  double to_double() const { return value_.get_d(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  // Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  mpq_class value_;
};

Rational abs(const Rational& x);
const Rational& max(const Rational& a, const Rational& b);
const Rational& min(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& x);

}  // namespace rmauction

#endif  // RMAUCTION_RATIONAL_H_
