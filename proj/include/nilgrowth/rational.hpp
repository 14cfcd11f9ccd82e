#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nilgrowth {

using BigInt = mpz_class;

/// Exact rational number, always reduced with a positive denominator.
///
/// Values whose reduced numerator and denominator both fit in a signed 64-bit
/// word are stored inline; anything larger falls back to a shared GMP
/// rational. The representation is canonical, so equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den);
  explicit Rational(const BigInt& value);
  Rational(const BigInt& num, const BigInt& den);

  /// Parses "p", "-p" or "p/q".
  static Rational parse(std::string_view text);

  BigInt numerator() const;
  BigInt denominator() const;

  bool is_small() const noexcept { return big_ == nullptr; }
  /// Inline numerator/denominator; only meaningful when is_small().
  std::int64_t small_num() const noexcept { return num_; }
  std::int64_t small_den() const noexcept { return den_; }

  bool is_zero() const noexcept { return big_ == nullptr && num_ == 0; }
  bool is_integer() const;
  int sign() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;

 private:
  static Rational from_mpq(mpq_class q);
  static Rational from_wide(__int128 num, __int128 den);
  mpq_class to_mpq() const;

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);

}  // namespace nilgrowth
