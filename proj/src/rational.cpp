#include "nilgrowth/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace nilgrowth {
namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

BigInt to_mpz(u128 magnitude, bool negative) {
  BigInt hi = static_cast<unsigned long>(magnitude >> 64);
  BigInt lo = static_cast<unsigned long>(magnitude & 0xffffffffffffffffULL);
  BigInt r = (hi << 64) + lo;
  return negative ? BigInt(-r) : r;
}

bool fits_inline(const BigInt& v) {
  // INT64_MIN is excluded so that negation never overflows.
  return mpz_fits_slong_p(v.get_mpz_t()) && v.get_si() != std::numeric_limits<long>::min();
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  *this = from_wide(num, den);
}

Rational::Rational(const BigInt& value) { *this = from_mpq(mpq_class(value)); }

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  *this = from_mpq(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("bad integer");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer: " + std::string(s));
    std::string buf(s[0] == '+' ? s.substr(1) : s);
    return BigInt(buf);
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

Rational Rational::from_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  u128 g = gcd128(uabs(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  Rational r;
  if (num <= kMax && num >= -kMax && den <= kMax) {
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  mpq_class q(to_mpz(uabs(num), num < 0), to_mpz(static_cast<u128>(den), false));
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  r.num_ = 0;
  r.den_ = 1;
  return r;
}

Rational Rational::from_mpq(mpq_class q) {
  Rational r;
  if (fits_inline(q.get_num()) && fits_inline(q.get_den())) {
    r.num_ = q.get_num().get_si();
    r.den_ = q.get_den().get_si();
  } else {
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
  }
  return r;
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(BigInt(static_cast<long>(num_)), BigInt(static_cast<long>(den_)));
  return q;
}

BigInt Rational::numerator() const {
  return big_ ? BigInt(big_->get_num()) : BigInt(static_cast<long>(num_));
}

BigInt Rational::denominator() const {
  return big_ ? BigInt(big_->get_den()) : BigInt(static_cast<long>(den_));
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return from_mpq(-*big_);
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      return *this = from_wide(static_cast<i128>(num_) + o.num_, 1);
    }
    return *this = from_wide(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                             static_cast<i128>(den_) * o.den_);
  }
  return *this = from_mpq(to_mpq() + o.to_mpq());
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    return *this = from_wide(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
  }
  return *this = from_mpq(to_mpq() * o.to_mpq());
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!big_ && !o.big_) {
    return *this = from_wide(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
  }
  return *this = from_mpq(to_mpq() / o.to_mpq());
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 lhs = static_cast<i128>(a.num_) * b.den_;
    i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::string Rational::str() const {
  if (big_) {
    if (big_->get_den() == 1) return big_->get_num().get_str();
    return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  }
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace nilgrowth
