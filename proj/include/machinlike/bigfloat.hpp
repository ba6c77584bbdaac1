#pragma once

// Explicit-precision binary floating point: value = mantissa * 2^exponent.
//
// Every value carries a precision in significant decimal digits. The
// mantissa is held to ceil(precision * log2(10)) + 4 bits with round to
// nearest, so any single operation is correct to the stated number of
// digits. Binary operations produce the smaller of the operands'
// precisions.

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

#include "machinlike/bigint.hpp"

namespace machinlike {

// Extra decimal digits composite computations carry beyond what they
// report. Defaults to 10; MACHINLIKE_GUARD_DIGITS overrides.
long guard_digits();

class BigFloat {
 public:
  BigFloat() = default;
  BigFloat(const BigInt& value, long precision);
  BigFloat(long value, long precision) : BigFloat(BigInt(value), precision) {}

  // Nearest representable value to q at the given precision.
  static BigFloat from_rational(const BigRational& q, long precision);
  // Decimal/scientific text ("3.14159", "-2.7026e-127") rounded to precision.
  static BigFloat parse(std::string_view text, long precision);

  long precision() const { return precision_; }
  int sign() const { return mantissa_.sign(); }
  bool is_zero() const { return mantissa_.is_zero(); }
  const BigInt& mantissa() const { return mantissa_; }
  std::int64_t exponent2() const { return exponent_; }

  // Same value re-rounded to (or relabelled with) a new precision.
  BigFloat with_precision(long precision) const;

  // The exact binary value represented.
  BigRational to_rational() const;
  BigInt floor() const;
  double to_double() const;

  // floor(log10|x|); throws DomainError for zero.
  long decimal_exponent() const;

  // Scientific form with `digits` significant digits, round to nearest:
  // "-2.70260e-127". Zero prints as "0".
  std::string to_scientific(int digits) const;
  // Fixed form truncated (toward zero) after `fraction_digits` decimals.
  std::string to_fixed(long fraction_digits) const;

  BigFloat operator-() const;
  BigFloat abs() const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigInt& b);
  friend BigFloat operator/(const BigFloat& a, const BigInt& b);

  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  // Multiplication by 2^n is exact.
  BigFloat scaled_by_power_of_two(std::int64_t n) const;

  // Compares exact represented values, ignoring precision.
  friend bool operator==(const BigFloat& a, const BigFloat& b);
  friend std::strong_ordering operator<=>(const BigFloat& a, const BigFloat& b);

 private:
  BigFloat(BigInt mantissa, std::int64_t exponent, long precision);
  void normalize();

  BigInt mantissa_;
  std::int64_t exponent_ = 0;
  long precision_ = 1;
};

// Mantissa width in bits used for a decimal precision.
std::size_t precision_bits(long precision);

// Square root correct to `precision` digits; DomainError for x < 0.
BigFloat sqrt(const BigFloat& x, long precision);
// Natural and base-10 logarithms; DomainError for x <= 0.
BigFloat log(const BigFloat& x, long precision);
BigFloat log10(const BigFloat& x, long precision);
// log10 of a positive rational without first rounding it to a float;
// handles rationals with millions of digits.
BigFloat log10(const BigRational& q, long precision);

// Digit-agreement metric: the number d with |reference - approx| in
// (10^-(d+1), 10^-d], the difference first rounded to 15 significant digits.
// Equal inputs return the smaller of the two precisions.
long coinciding_digits(const BigFloat& reference, const BigFloat& approx);

}  // namespace machinlike
