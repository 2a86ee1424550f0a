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

#include "stackel/rational.h"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace stackel {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();
constexpr u128 kMaxU64 = std::numeric_limits<std::uint64_t>::max();

u128 AbsWide(i128 v) { return v < 0 ? -static_cast<u128>(v) : u128(v); }

u128 Gcd128(u128 a, u128 b) {
  while (true) {
    if (a <= kMaxU64 && b <= kMaxU64) {
      return std::gcd(static_cast<std::uint64_t>(a),
                      static_cast<std::uint64_t>(b));
    }
    if (b == 0) return a;
    u128 t = a % b;
    a = b;
    b = t;
  }
}

mpz_class MpzFromWide(i128 v) {
  u128 u = AbsWide(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  hi <<= 64;
  hi += static_cast<unsigned long>(u & kMaxU64);
  if (v < 0) hi = -hi;
  return hi;
}

bool FitsInt64(const mpz_class& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) != 0 &&
         z != std::numeric_limits<long>::min();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = FromWide(num, den);
}

Rational::Rational(const mpq_class& value) { *this = FromMpq(value); }

Rational Rational::FromWide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  u128 g = Gcd128(AbsWide(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  Rational r;
  if (num <= kMax64 && num >= -kMax64 && den <= kMax64) {
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  mpq_class q(MpzFromWide(num), MpzFromWide(den));
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::FromMpq(mpq_class value) {
  value.canonicalize();
  Rational r;
  if (FitsInt64(value.get_num()) && FitsInt64(value.get_den())) {
    r.num_ = value.get_num().get_si();
    r.den_ = value.get_den().get_si();
    return r;
  }
  r.big_ = std::make_shared<const mpq_class>(std::move(value));
  return r;
}

Rational Rational::Parse(std::string_view text) {
  auto fail = [&](const char* why) {
    throw std::invalid_argument("invalid rational \"" + std::string(text) +
                                "\": " + why);
  };
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  std::string_view num = body;
  std::string_view den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!digits(num)) fail("numerator is not a digit string");
  if (!digits(den)) fail("denominator is not a digit string");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) fail("zero denominator");
  if (negative) n = -n;
  return FromMpq(mpq_class(n, d));
}

std::string Rational::ToString() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::ToDouble() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

mpq_class Rational::ToMpq() const {
  if (big_) return *big_;
  mpq_class q;
  mpz_set_si(mpq_numref(q.get_mpq_t()), num_);
  mpz_set_si(mpq_denref(q.get_mpq_t()), den_);
  return q;
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const {
  if (big_) return big_->get_den() == 1;
  return den_ == 1;
}

std::int64_t Rational::Floor() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  if (!FitsInt64(q)) throw std::overflow_error("floor out of int64 range");
  return q.get_si();
}

std::int64_t Rational::Ceil() const {
  if (!big_) {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  if (!FitsInt64(q)) throw std::overflow_error("ceil out of int64 range");
  return q.get_si();
}

std::string Rational::NumeratorString() const {
  return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::DenominatorString() const {
  return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

Rational Rational::operator-() const {
  if (big_) return FromMpq(-*big_);
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational::FromMpq(a.ToMpq() + b.ToMpq());
  if (b.num_ == 0) return a;
  if (a.num_ == 0) return b;
  if (a.den_ == b.den_) {
    return Rational::FromWide(i128(a.num_) + b.num_, a.den_);
  }
  std::int64_t g = std::gcd(a.den_, b.den_);
  i128 num = i128(a.num_) * (b.den_ / g) + i128(b.num_) * (a.den_ / g);
  return Rational::FromWide(num, i128(a.den_ / g) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational::FromMpq(a.ToMpq() * b.ToMpq());
  if (a.num_ == 0 || b.num_ == 0) return Rational();
  std::int64_t g1 = std::gcd(a.num_, b.den_);
  std::int64_t g2 = std::gcd(b.num_, a.den_);
  i128 num = i128(a.num_ / g1) * (b.num_ / g2);
  i128 den = i128(a.den_ / g2) * (b.den_ / g1);
  if (num <= kMax64 && num >= -kMax64 && den <= kMax64) {
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  return Rational::FromWide(num, den);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  if (a.big_ || b.big_) return Rational::FromMpq(a.ToMpq() / b.ToMpq());
  Rational inv;
  inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
  inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
  return a * inv;
}

bool operator==(const Rational& a, const Rational& b) {
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  if (a.big_ || b.big_) return false;  // canonical demotion
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) {
    int c = cmp(a.ToMpq(), b.ToMpq());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  i128 lhs = i128(a.num_) * b.den_;
  i128 rhs = i128(b.num_) * a.den_;
  return lhs <=> rhs;
}

std::size_t Rational::Hash() const {
  if (big_) return std::hash<std::string>()(big_->get_str());
  std::size_t h = std::hash<std::int64_t>()(num_);
  return h ^ (std::hash<std::int64_t>()(den_) + 0x9e3779b97f4a7c15ULL +
              (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.ToString();
}

const Rational& ExtRational::value() const {
  if (kind_ != Kind::kFinite) {
    throw std::logic_error("value() of an infinite ExtRational");
  }
  return value_;
}

std::string ExtRational::ToString() const {
  switch (kind_) {
    case Kind::kNegInf:
      return "-inf";
    case Kind::kPosInf:
      return "inf";
    case Kind::kFinite:
      break;
  }
  return value_.ToString();
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != ExtRational::Kind::kFinite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) {
    return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  }
  if (a.kind_ != ExtRational::Kind::kFinite) {
    return std::strong_ordering::equal;
  }
  return a.value_ <=> b.value_;
}

std::ostream& operator<<(std::ostream& os, const ExtRational& r) {
  return os << r.ToString();
}

}  // namespace stackel
