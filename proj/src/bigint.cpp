#include "machinlike/bigint.hpp"

#include <cctype>

#include "machinlike/errors.hpp"

namespace machinlike {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Newton iteration from above converges monotonically to floor(sqrt(n)).
mpz_class newton_isqrt(const mpz_class& n, mpz_class x) {
  for (;;) {
    mpz_class y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = std::move(y);
  }
}

mpz_class isqrt_impl(const mpz_class& n) {
  if (n < 2) return n;
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (bits <= 64) {
    // 2^ceil(bits/2) >= sqrt(n)
    mpz_class start = mpz_class(1) << ((bits + 1) / 2);
    return newton_isqrt(n, start);
  }
  // sqrt(n) < (isqrt(n >> 2s) + 1) * 2^s, so this seed is an upper bound
  // already correct in roughly half of its bits.
  const std::size_t s = bits / 4;
  mpz_class seed = (isqrt_impl(n >> (2 * s)) + 1) << s;
  return newton_isqrt(n, std::move(seed));
}

}  // namespace

BigInt BigInt::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (!all_digits(body)) throw ParseError("not a decimal integer: '" + std::string(text) + "'");
  mpz_class v(std::string(body), 10);
  if (negative) v = -v;
  return BigInt(std::move(v));
}

std::size_t BigInt::decimal_digits() const {
  if (is_zero()) return 1;
  // mpz_sizeinbase may overshoot by one for base 10.
  std::size_t d = mpz_sizeinbase(v_.get_mpz_t(), 10);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, d - 1);
  if (mpz_cmpabs(v_.get_mpz_t(), p.get_mpz_t()) < 0) --d;
  return d;
}

std::size_t BigInt::bit_length() const {
  return is_zero() ? 0 : mpz_sizeinbase(v_.get_mpz_t(), 2);
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw DomainError("integer division by zero");
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return BigInt(std::move(q));
}

BigInt operator%(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw DomainError("integer division by zero");
  mpz_class r;
  mpz_tdiv_r(r.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return BigInt(std::move(r));
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.raw().get_mpz_t(), exponent);
  return BigInt(std::move(r));
}

BigInt gcd(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(::gcd(a.raw(), b.raw()))); }

BigInt isqrt(const BigInt& n) {
  if (n.sign() < 0) throw DomainError("isqrt of negative integer " + n.to_string());
  return BigInt(isqrt_impl(n.raw()));
}

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den.is_zero()) throw DomainError("rational with zero denominator");
  v_.get_num() = num.raw();
  v_.get_den() = den.raw();
  v_.canonicalize();
}

BigRational BigRational::from_coprime(const BigInt& num, const BigInt& den) {
  BigRational r;
  r.v_.get_num() = num.raw();
  r.v_.get_den() = den.raw();
  return r;
}

BigRational BigRational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(BigInt::parse(text));
  const BigInt num = BigInt::parse(text.substr(0, slash));
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
    throw ParseError("signed denominator in '" + std::string(text) + "'");
  const BigInt den = BigInt::parse(den_text);
  if (den.is_zero()) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return BigRational(num, den);
}

BigRational BigRational::parse_decimal(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return parse(text);
  const std::string original(text);
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    const BigInt ex = BigInt::parse(body.substr(e + 1));
    if (!ex.fits_long() || ex.abs() > BigInt(1000000)) throw ParseError("exponent out of range in '" + original + "'");
    exponent = ex.to_long();
    body = body.substr(0, e);
  }
  std::string digits;
  if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = body.substr(0, dot);
    const std::string_view frac_part = body.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty()))
      throw ParseError("not a decimal number: '" + original + "'");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(body)) throw ParseError("not a decimal number: '" + original + "'");
    digits = std::string(body);
  }
  BigRational value(BigInt(mpz_class(digits, 10)));
  const BigRational scale(pow(BigInt(10), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent)));
  value = exponent < 0 ? value / scale : value * scale;
  return negative ? -value : value;
}

std::string BigRational::to_string() const {
  if (is_integer()) return v_.get_num().get_str(10);
  return v_.get_num().get_str(10) + "/" + v_.get_den().get_str(10);
}

BigRational BigRational::abs() const { return BigRational(mpq_class(::abs(v_))); }

BigRational BigRational::reciprocal() const {
  if (is_zero()) throw DomainError("reciprocal of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
  return BigRational(std::move(r));
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw DomainError("rational division by zero");
  v_ /= o.v_;
  return *this;
}

BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.v_)); }

BigRational pow(const BigRational& base, unsigned long exponent) {
  return BigRational(pow(base.numerator(), exponent), pow(base.denominator(), exponent));
}

}  // namespace machinlike
