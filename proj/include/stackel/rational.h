// Copyright 2026 The Stackel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STACKEL_RATIONAL_H_
#define STACKEL_RATIONAL_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

namespace stackel {

// Exact rational number, always in lowest terms with a positive denominator.
//
// Values whose numerator and denominator fit in int64 are stored inline and
// combined with 128-bit intermediates; anything larger is promoted to a
// shared immutable GMP rational and demoted again once it fits.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by design
  Rational(int value) : num_(value) {}           // NOLINT
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& value);

  // Accepts "n", "-n", "p/q" (q != 0). Throws std::invalid_argument.
  static Rational Parse(std::string_view text);

  // Canonical text: "n" for integers, "p/q" otherwise.
  std::string ToString() const;
  double ToDouble() const;
  mpq_class ToMpq() const;

  bool is_small() const { return big_ == nullptr; }
  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  // Floor/ceil as int64; throws std::overflow_error if out of range.
  std::int64_t Floor() const;
  std::int64_t Ceil() const;

  std::string NumeratorString() const;
  std::string DenominatorString() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

  std::size_t Hash() const;

 private:
  static Rational FromWide(__int128 num, __int128 den);
  static Rational FromMpq(mpq_class value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational Abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// Rational extended with -inf and +inf. Ordering is the natural one.
class ExtRational {
 public:
  ExtRational() = default;  // 0
  ExtRational(Rational value)  // NOLINT: implicit by design
      : kind_(Kind::kFinite), value_(std::move(value)) {}

  static ExtRational NegInf() { return ExtRational(Kind::kNegInf); }
  static ExtRational PosInf() { return ExtRational(Kind::kPosInf); }

  bool is_finite() const { return kind_ == Kind::kFinite; }
  bool is_neg_inf() const { return kind_ == Kind::kNegInf; }
  bool is_pos_inf() const { return kind_ == Kind::kPosInf; }

  // Precondition: is_finite().
  const Rational& value() const;

  // "-inf", "inf" or the rational's canonical text.
  std::string ToString() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a,
                                          const ExtRational& b);

 private:
  enum class Kind { kNegInf, kFinite, kPosInf };
  explicit ExtRational(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::kFinite;
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const ExtRational& r);

}  // namespace stackel

template <>
struct std::hash<stackel::Rational> {
  std::size_t operator()(const stackel::Rational& r) const { return r.Hash(); }
};

#endif  // STACKEL_RATIONAL_H_
