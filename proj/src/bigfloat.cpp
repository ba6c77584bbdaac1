#include "machinlike/bigfloat.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "machinlike/errors.hpp"

namespace machinlike {

namespace {

constexpr double kLog2Of10 = 3.321928094887362;
constexpr double kLog10Of2 = 0.30102999566398120;

std::int64_t top_bit(const BigInt& m, std::int64_t e) { return e + static_cast<std::int64_t>(m.bit_length()); }

mpz_class pow10(unsigned long n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, n);
  return r;
}

// Sign of |m| * 2^e - 10^E.
int compare_abs_to_pow10(const BigInt& m, std::int64_t e, long E) {
  mpz_class lhs = ::abs(m.raw());
  mpz_class rhs = 1;
  if (e >= 0) lhs <<= static_cast<mp_bitcnt_t>(e);
  else rhs <<= static_cast<mp_bitcnt_t>(-e);
  if (E >= 0) rhs *= pow10(static_cast<unsigned long>(E));
  else lhs *= pow10(static_cast<unsigned long>(-E));
  return cmp(lhs, rhs);
}

// |value| rounded to `digits` significant decimals: returns D in
// [10^(digits-1), 10^digits) and E with |value| ~= D * 10^(E - digits + 1).
std::pair<mpz_class, long> decimal_parts(const BigFloat& x, int digits) {
  long E = x.decimal_exponent();
  // |m| * 2^e * 10^(digits-1-E) as num/den
  const long shift10 = digits - 1 - E;
  mpz_class num = ::abs(x.mantissa().raw());
  mpz_class den = 1;
  if (x.exponent2() >= 0) num <<= static_cast<mp_bitcnt_t>(x.exponent2());
  else den <<= static_cast<mp_bitcnt_t>(-x.exponent2());
  if (shift10 >= 0) num *= pow10(static_cast<unsigned long>(shift10));
  else den *= pow10(static_cast<unsigned long>(-shift10));
  mpz_class D;
  mpz_class twice = 2 * num + den;
  mpz_class twice_den = 2 * den;
  mpz_fdiv_q(D.get_mpz_t(), twice.get_mpz_t(), twice_den.get_mpz_t());
  if (D == pow10(static_cast<unsigned long>(digits))) {
    D = pow10(static_cast<unsigned long>(digits - 1));
    ++E;
  }
  return {D, E};
}

// atanh(z) for |z| well below 1, at the precision z carries.
BigFloat atanh_series(const BigFloat& z) {
  if (z.is_zero()) return z;
  const std::int64_t bits = static_cast<std::int64_t>(precision_bits(z.precision()));
  const BigFloat z2 = z * z;
  BigFloat term = z;
  BigFloat sum = z;
  for (long j = 1;; ++j) {
    term = term * z2;
    if (term.is_zero()) break;
    const BigFloat contribution = term / BigInt(2 * j + 1);
    if (top_bit(contribution.mantissa(), contribution.exponent2()) <
        top_bit(sum.mantissa(), sum.exponent2()) - bits - 2)
      break;
    sum += contribution;
  }
  return sum;
}

BigFloat ln2(long precision) {
  const BigFloat third = BigFloat::from_rational(BigRational(1, 3), precision);
  return atanh_series(third).scaled_by_power_of_two(1);
}

}  // namespace

long guard_digits() {
  static const long value = [] {
    const char* env = std::getenv("MACHINLIKE_GUARD_DIGITS");
    long v = 10;
    if (env != nullptr) {
      long parsed = 0;
      const char* end = env + std::strlen(env);
      auto [ptr, ec] = std::from_chars(env, end, parsed);
      if (ec == std::errc() && ptr == end && parsed >= 0) v = parsed;
    }
    return v;
  }();
  return value;
}

std::size_t precision_bits(long precision) {
  if (precision < 1) precision = 1;
  return static_cast<std::size_t>(std::ceil(static_cast<double>(precision) * kLog2Of10)) + 4;
}

BigFloat::BigFloat(const BigInt& value, long precision) : BigFloat(value, 0, precision) {}

BigFloat::BigFloat(BigInt mantissa, std::int64_t exponent, long precision)
    : mantissa_(std::move(mantissa)), exponent_(exponent), precision_(std::max(1L, precision)) {
  normalize();
}

void BigFloat::normalize() {
  if (mantissa_.is_zero()) {
    exponent_ = 0;
    return;
  }
  mpz_class& m = mantissa_.raw();
  const std::size_t bits = precision_bits(precision_);
  const std::size_t len = mantissa_.bit_length();
  if (len > bits) {
    const std::size_t shift = len - bits;
    const bool negative = m < 0;
    mpz_class a = ::abs(m);
    a += mpz_class(1) << (shift - 1);
    a >>= shift;
    m = negative ? mpz_class(-a) : a;
    exponent_ += static_cast<std::int64_t>(shift);
  }
  const mp_bitcnt_t tz = mpz_scan1(m.get_mpz_t(), 0);
  if (tz > 0) {
    m >>= tz;
    exponent_ += static_cast<std::int64_t>(tz);
  }
}

BigFloat BigFloat::from_rational(const BigRational& q, long precision) {
  if (q.is_zero()) return BigFloat(BigInt(0), precision);
  const BigInt num = q.numerator();
  const BigInt den = q.denominator();
  const std::int64_t shift = static_cast<std::int64_t>(precision_bits(precision)) + 2 +
                             static_cast<std::int64_t>(den.bit_length()) -
                             static_cast<std::int64_t>(num.bit_length());
  if (shift >= 0) return BigFloat((num << static_cast<std::size_t>(shift)) / den, -shift, precision);
  return BigFloat(num / (den << static_cast<std::size_t>(-shift)), -shift, precision);
}

BigFloat BigFloat::parse(std::string_view text, long precision) {
  return from_rational(BigRational::parse_decimal(text), precision);
}

BigFloat BigFloat::with_precision(long precision) const { return BigFloat(mantissa_, exponent_, precision); }

BigRational BigFloat::to_rational() const {
  if (exponent_ >= 0) return BigRational(mantissa_ << static_cast<std::size_t>(exponent_));
  return BigRational(mantissa_, BigInt(1) << static_cast<std::size_t>(-exponent_));
}

BigInt BigFloat::floor() const {
  if (exponent_ >= 0) return mantissa_ << static_cast<std::size_t>(exponent_);
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), mantissa_.raw().get_mpz_t(), static_cast<mp_bitcnt_t>(-exponent_));
  return BigInt(std::move(r));
}

double BigFloat::to_double() const {
  if (is_zero()) return 0.0;
  long e = 0;
  const double d = mpz_get_d_2exp(&e, mantissa_.raw().get_mpz_t());
  const std::int64_t total = static_cast<std::int64_t>(e) + exponent_;
  if (total > 4096) return d > 0 ? HUGE_VAL : -HUGE_VAL;
  if (total < -4096) return 0.0;
  return std::ldexp(d, static_cast<int>(total));
}

long BigFloat::decimal_exponent() const {
  if (is_zero()) throw DomainError("decimal exponent of zero");
  long E = static_cast<long>(std::floor(static_cast<double>(top_bit(mantissa_, exponent_) - 1) * kLog10Of2));
  while (compare_abs_to_pow10(mantissa_, exponent_, E) < 0) --E;
  while (compare_abs_to_pow10(mantissa_, exponent_, E + 1) >= 0) ++E;
  return E;
}

std::string BigFloat::to_scientific(int digits) const {
  if (is_zero()) return "0";
  digits = std::max(1, digits);
  auto [D, E] = decimal_parts(*this, digits);
  const std::string s = D.get_str(10);
  std::string out = sign() < 0 ? "-" : "";
  out += s.substr(0, 1);
  if (s.size() > 1) out += "." + s.substr(1);
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%c%02ld", E < 0 ? '-' : '+', E < 0 ? -E : E);
  return out + buf;
}

std::string BigFloat::to_fixed(long fraction_digits) const {
  fraction_digits = std::max(0L, fraction_digits);
  mpz_class num = ::abs(mantissa_.raw()) * pow10(static_cast<unsigned long>(fraction_digits));
  if (exponent_ >= 0) num <<= static_cast<mp_bitcnt_t>(exponent_);
  else mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(-exponent_));
  std::string s = num.get_str(10);
  if (static_cast<long>(s.size()) <= fraction_digits) s.insert(0, static_cast<std::size_t>(fraction_digits) + 1 - s.size(), '0');
  std::string out = (sign() < 0 && num != 0) ? "-" : "";
  const std::size_t int_len = s.size() - static_cast<std::size_t>(fraction_digits);
  out += s.substr(0, int_len);
  if (fraction_digits > 0) out += "." + s.substr(int_len);
  return out;
}

BigFloat BigFloat::operator-() const { return BigFloat(-mantissa_, exponent_, precision_); }

BigFloat BigFloat::abs() const { return BigFloat(mantissa_.abs(), exponent_, precision_); }

BigFloat BigFloat::scaled_by_power_of_two(std::int64_t n) const {
  if (is_zero()) return *this;
  return BigFloat(mantissa_, exponent_ + n, precision_);
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  const long p = std::min(a.precision_, b.precision_);
  if (a.is_zero()) return b.with_precision(p);
  if (b.is_zero()) return a.with_precision(p);
  const std::int64_t bits = static_cast<std::int64_t>(precision_bits(p));
  const std::int64_t ta = top_bit(a.mantissa_, a.exponent_);
  const std::int64_t tb = top_bit(b.mantissa_, b.exponent_);
  // The smaller operand lies entirely below the result's rounding bit.
  if (ta > tb + bits + 2) return a.with_precision(p);
  if (tb > ta + bits + 2) return b.with_precision(p);
  const std::int64_t e = std::min(a.exponent_, b.exponent_);
  BigInt m = (a.mantissa_ << static_cast<std::size_t>(a.exponent_ - e)) +
             (b.mantissa_ << static_cast<std::size_t>(b.exponent_ - e));
  return BigFloat(std::move(m), e, p);
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) { return a + (-b); }

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  return BigFloat(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_, std::min(a.precision_, b.precision_));
}

BigFloat operator*(const BigFloat& a, const BigInt& b) { return BigFloat(a.mantissa_ * b, a.exponent_, a.precision_); }

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  if (b.is_zero()) throw DomainError("BigFloat division by zero");
  const long p = std::min(a.precision_, b.precision_);
  if (a.is_zero()) return BigFloat(BigInt(0), p);
  const std::int64_t shift = std::max<std::int64_t>(
      0, static_cast<std::int64_t>(precision_bits(p)) + 2 + static_cast<std::int64_t>(b.mantissa_.bit_length()) -
             static_cast<std::int64_t>(a.mantissa_.bit_length()));
  BigInt q = (a.mantissa_ << static_cast<std::size_t>(shift)) / b.mantissa_;
  return BigFloat(std::move(q), a.exponent_ - b.exponent_ - shift, p);
}

BigFloat operator/(const BigFloat& a, const BigInt& b) { return a / BigFloat(b, a.precision_ + 0); }

bool operator==(const BigFloat& a, const BigFloat& b) {
  return a.mantissa_ == b.mantissa_ && (a.is_zero() || a.exponent_ == b.exponent_);
}

std::strong_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (a == b) return std::strong_ordering::equal;
  return a.to_rational() <=> b.to_rational();
}

BigFloat sqrt(const BigFloat& x, long precision) {
  if (x.sign() < 0) throw DomainError("square root of negative value");
  if (x.is_zero()) return BigFloat(BigInt(0), precision);
  const std::int64_t bits = static_cast<std::int64_t>(precision_bits(precision)) + 2;
  const std::int64_t len = static_cast<std::int64_t>(x.mantissa().bit_length());
  std::int64_t s = std::max<std::int64_t>(0, 2 * bits - len);
  if (((x.exponent2() - s) % 2) != 0) ++s;
  const BigInt root = isqrt(x.mantissa() << static_cast<std::size_t>(s));
  return BigFloat(root, precision).scaled_by_power_of_two((x.exponent2() - s) / 2);
}

BigFloat log(const BigFloat& x, long precision) {
  if (x.sign() <= 0) throw DomainError("logarithm of non-positive value");
  const long w = precision + guard_digits();
  // x = f * 2^n with f in [1/sqrt2, sqrt2)
  std::int64_t n = top_bit(x.mantissa(), x.exponent2()) - 1;
  BigFloat f = x.with_precision(w).scaled_by_power_of_two(-n);
  // f^2 >= 2 <=> f >= sqrt2
  if (f * f >= BigFloat(2, w)) {
    f = f.scaled_by_power_of_two(-1);
    ++n;
  }
  const BigFloat one(1, w);
  BigFloat result = atanh_series((f - one) / (f + one)).scaled_by_power_of_two(1);
  if (n != 0) result += ln2(w) * BigInt(static_cast<long>(n));
  return result.with_precision(precision);
}

BigFloat log10(const BigFloat& x, long precision) {
  const long w = precision + guard_digits();
  return (log(x, w) / log(BigFloat(10, w), w)).with_precision(precision);
}

BigFloat log10(const BigRational& q, long precision) {
  if (q.sign() <= 0) throw DomainError("logarithm of non-positive value");
  const long w = precision + guard_digits();
  return log10(BigFloat::from_rational(q, w), precision);
}

long coinciding_digits(const BigFloat& reference, const BigFloat& approx) {
  const BigFloat diff = reference - approx;
  if (diff.is_zero()) return std::min(reference.precision(), approx.precision());
  auto [D, E] = decimal_parts(diff, 15);
  const long d = (D == pow10(14)) ? -E : -E - 1;
  return std::max(0L, d);
}

}  // namespace machinlike
