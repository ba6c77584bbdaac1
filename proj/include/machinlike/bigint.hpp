#pragma once

// Exact integers and rationals on top of GMP.
//
// BigInt is a thin value wrapper over mpz_class that adds decimal
// serialization with error reporting. BigRational keeps its numerator and
// denominator in lowest terms with a positive denominator at all times, so
// equality is structural.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

namespace machinlike {

class BigInt {
 public:
  BigInt() = default;
  BigInt(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit BigInt(mpz_class v) : v_(std::move(v)) {}

  // Accepts an optional leading '-' or '+' followed by decimal digits.
  static BigInt parse(std::string_view text);

  std::string to_string() const { return v_.get_str(10); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  BigInt abs() const { return BigInt(mpz_class(::abs(v_))); }

  // Number of decimal digits of |*this|; 1 for zero.
  std::size_t decimal_digits() const;
  std::size_t bit_length() const;

  bool fits_long() const { return v_.fits_slong_p(); }
  long to_long() const { return v_.get_si(); }

  const mpz_class& raw() const { return v_; }
  mpz_class& raw() { return v_; }

  BigInt& operator+=(const BigInt& o) { v_ += o.v_; return *this; }
  BigInt& operator-=(const BigInt& o) { v_ -= o.v_; return *this; }
  BigInt& operator*=(const BigInt& o) { v_ *= o.v_; return *this; }

  friend BigInt operator+(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ + b.v_)); }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ - b.v_)); }
  friend BigInt operator*(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ * b.v_)); }
  // Truncating division, like the built-in integer types.
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a) { return BigInt(mpz_class(-a.v_)); }
  friend BigInt operator<<(const BigInt& a, std::size_t s) { return BigInt(mpz_class(a.v_ << s)); }
  friend BigInt operator>>(const BigInt& a, std::size_t s) { return BigInt(mpz_class(a.v_ >> s)); }

  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpz_class v_;
};

BigInt pow(const BigInt& base, unsigned long exponent);
BigInt gcd(const BigInt& a, const BigInt& b);

// floor(sqrt(n)) by Newton iteration; throws DomainError for n < 0.
BigInt isqrt(const BigInt& n);

class BigRational {
 public:
  BigRational() = default;
  BigRational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& v) : v_(v.raw()) {}  // NOLINT(google-explicit-constructor)
  // Throws DomainError when den is zero.
  BigRational(const BigInt& num, const BigInt& den);

  // Skips canonicalization; the caller guarantees gcd(num, den) = 1 and den > 0.
  static BigRational from_coprime(const BigInt& num, const BigInt& den);

  // "[-]num/den" or "[-]num"; no surrounding whitespace.
  static BigRational parse(std::string_view text);
  // Also accepts decimal and scientific notation such as "-1e-6" or "0.125".
  static BigRational parse_decimal(std::string_view text);

  // "[-]num/den", or "[-]num" when the denominator is 1.
  std::string to_string() const;

  BigInt numerator() const { return BigInt(mpz_class(v_.get_num())); }
  BigInt denominator() const { return BigInt(mpz_class(v_.get_den())); }
  bool is_integer() const { return v_.get_den() == 1; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  BigRational abs() const;
  // Throws DomainError for zero.
  BigRational reciprocal() const;

  const mpq_class& raw() const { return v_; }

  BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
  BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
  BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend BigRational operator-(const BigRational& a);

  friend bool operator==(const BigRational& a, const BigRational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit BigRational(mpq_class v) : v_(std::move(v)) {}

  mpq_class v_;
};

BigRational pow(const BigRational& base, unsigned long exponent);

}  // namespace machinlike
