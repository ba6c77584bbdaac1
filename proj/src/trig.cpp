#include "machinlike/trig.hpp"

#include <json.hpp>

#include "machinlike/errors.hpp"
#include "machinlike/pi_engine.hpp"
#include "machinlike/u2.hpp"

namespace machinlike {

namespace {

std::int64_t top_bit(const BigFloat& v) {
  return v.exponent2() + static_cast<std::int64_t>(v.mantissa().bit_length());
}

// sin r and cos r by Taylor series; |r| <= pi/4.
std::pair<BigFloat, BigFloat> taylor_sin_cos(const BigFloat& r) {
  const long w = r.precision();
  const std::int64_t bits = static_cast<std::int64_t>(precision_bits(w));
  const BigFloat r2 = r * r;
  BigFloat s = r;
  BigFloat term = r;
  for (long n = 1; !term.is_zero(); ++n) {
    term = -(term * r2) / BigInt(2 * n * (2 * n + 1));
    if (term.is_zero() || top_bit(term) < top_bit(s) - bits - 2) break;
    s += term;
  }
  BigFloat c(1, w);
  term = BigFloat(1, w);
  for (long n = 1;; ++n) {
    term = -(term * r2) / BigInt((2 * n - 1) * (2 * n));
    if (term.is_zero() || top_bit(term) < top_bit(c) - bits - 2) break;
    c += term;
  }
  return {s, c};
}

std::string abbreviated(const BigRational& q) {
  const std::string s = q.to_string();
  if (s.size() <= 200) return s;
  return "<" + std::to_string(q.numerator().decimal_digits()) + "-digit numerator / " +
         std::to_string(q.denominator().decimal_digits()) + "-digit denominator>";
}

}  // namespace

TrigValues sin_cos(const BigFloat& angle, long precision) {
  const long w = precision + guard_digits();
  if (angle.is_zero()) return {BigFloat(0, precision), BigFloat(1, precision), BigFloat(1, precision)};
  const long size = std::max(0L, angle.decimal_exponent() + 1);
  const long pi_precision = w + 2 * size + 5;
  const BigFloat half_pi = reference_pi(pi_precision).scaled_by_power_of_two(-1);
  const BigFloat a = angle.with_precision(pi_precision);
  // nearest multiple of pi/2 leaves |r| <= pi/4
  const BigFloat ratio = a / half_pi + BigFloat::from_rational(BigRational(1, 2), pi_precision);
  const BigInt q = ratio.floor();
  const BigFloat r = (a - half_pi * q).with_precision(w);
  const auto [s, c] = taylor_sin_cos(r);
  // 1 - cos r = 2 sin^2(r/2)
  auto one_minus_cos = [&] {
    const BigFloat h = taylor_sin_cos(r.scaled_by_power_of_two(-1)).first;
    return (h * h).scaled_by_power_of_two(1);
  };
  const BigFloat one(1, w);
  mpz_class quadrant;
  mpz_fdiv_r_ui(quadrant.get_mpz_t(), q.raw().get_mpz_t(), 4);
  TrigValues out;
  switch (quadrant.get_ui()) {
    case 0: out = {s, c, one - s}; break;
    case 1: out = {c, -s, one_minus_cos()}; break;
    case 2: out = {-s, -c, one + s}; break;
    default: out = {-c, s, one + c}; break;
  }
  return {out.sin.with_precision(precision), out.cos.with_precision(precision),
          out.one_minus_sin.with_precision(precision)};
}

BigFloat atan(const BigFloat& x, long precision) {
  if (x.is_zero()) return BigFloat(0, precision);
  if (x.sign() < 0) return -atan(-x, precision);
  const long w = precision + guard_digits();
  const BigFloat one(1, w);
  BigFloat v = x.with_precision(w);
  if (v > one) {
    const BigFloat half_pi = reference_pi(w).scaled_by_power_of_two(-1);
    return (half_pi - atan(one / v, w)).with_precision(precision);
  }
  // atan(v) = 2 atan(v / (1 + sqrt(1 + v^2)))
  const BigFloat eighth = BigFloat::from_rational(BigRational(1, 8), w);
  int doublings = 0;
  while (v > eighth) {
    v = v / (one + sqrt(one + v * v, w));
    ++doublings;
  }
  return arctan_maclaurin(v, w).scaled_by_power_of_two(doublings).with_precision(precision);
}

namespace {

void require_u1_above_one(const BigRational& u1) {
  if (u1 <= BigRational(1)) throw DomainError("u1 must exceed 1, got " + u1.to_string());
}

// 2^(k-1) arctan(2 u1/(u1^2 - 1)) at the given precision.
BigFloat doubled_angle(const BigRational& u1, int k, long precision) {
  const BigRational slope = BigRational(2) * u1 / (u1 * u1 - BigRational(1));
  return atan(BigFloat::from_rational(slope, precision), precision).scaled_by_power_of_two(k - 1);
}

}  // namespace

BigFloat reduced_angle(const BigRational& u1, int k, long precision) {
  require_u1_above_one(u1);
  if (k < 1) throw DomainError("k must be >= 1");
  const long w = precision + guard_digits() + k;
  const BigFloat theta = doubled_angle(u1, k, w);
  const BigFloat two_pi = reference_pi(w + k).scaled_by_power_of_two(1);
  const BigInt turns = (theta / two_pi).floor();
  return (theta - two_pi * turns).with_precision(precision);
}

BigFloat u2_trig(const BigRational& u1, int k, long precision) {
  require_u1_above_one(u1);
  if (k < 1) throw DomainError("k must be >= 1");
  // 2^(k-1) amplifies the angle's absolute error by about 0.3k digits.
  long w = precision + guard_digits() + k;
  for (int attempt = 0;; ++attempt) {
    const TrigValues tv = sin_cos(doubled_angle(u1, k, w), w);
    if (tv.one_minus_sin.is_zero() || tv.one_minus_sin.decimal_exponent() < -precision)
      throw PrecisionError("1 - sin(t) below 10^-" + std::to_string(precision) + "; raise the precision");
    // cos(t) ~ 2/u2 carries absolute, not relative, error.
    const long lost = tv.cos.is_zero() ? w : std::max(0L, -tv.cos.decimal_exponent());
    if (lost + precision + guard_digits() <= w || attempt == 2)
      return (tv.cos / tv.one_minus_sin).with_precision(precision);
    w = precision + guard_digits() + k + lost;
  }
}

RationalSinCos rational_sin_cos(const BigRational& u1, int k) {
  if (k == 1) {
    const ComplexRationalState s = init_state(u1);
    return {s.y, s.x};
  }
  const ComplexRationalState s = iterate_states(u1, k);
  return {s.y, s.x};
}

std::string TrigCheckResult::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["u1"] = u1.to_string();
  j["u2_iterative"] = abbreviated(u2_iterative);
  j["u2_trig"] = u2_trig.to_scientific(25);
  j["agreement_digits"] = agreement_digits;
  j["sin_rational"] = abbreviated(sin_rational);
  j["cos_rational"] = abbreviated(cos_rational);
  j["sin_cos_digits"] = sin_cos_digits;
  j["assembly_digits"] = assembly_digits;
  j["unit_circle"] = unit_circle;
  j["signs_match"] = signs_match;
  return j.dump(2);
}

TrigCheckResult trig_check(const BigRational& u1, int k, long precision) {
  TrigCheckResult r;
  r.k = k;
  r.u1 = u1;
  const RationalSinCos rational = rational_sin_cos(u1, k);
  r.sin_rational = rational.sin;
  r.cos_rational = rational.cos;
  r.unit_circle = rational.sin * rational.sin + rational.cos * rational.cos == BigRational(1);
  r.u2_iterative = u2_of(u1, k);
  r.u2_trig = u2_trig(u1, k, precision);
  const long w = precision + guard_digits();
  r.agreement_digits = coinciding_digits(BigFloat::from_rational(r.u2_iterative, w + k), r.u2_trig);

  const TrigValues tv = sin_cos(reduced_angle(u1, k, w + k), w);
  r.sin_cos_digits = std::min(coinciding_digits(BigFloat::from_rational(rational.sin, w), tv.sin),
                              coinciding_digits(BigFloat::from_rational(rational.cos, w), tv.cos));
  r.signs_match = tv.sin.sign() == rational.sin.sign() && tv.cos.sign() == rational.cos.sign();

  // (1 - sin)/cos is 1/u2 exactly.
  const BigRational second = (BigRational(1) - rational.sin) / rational.cos;
  const BigRational first = u1.reciprocal();
  const BigFloat sum =
      arctan_fast(first, fast_terms_for(first, w), w).scaled_by_power_of_two(k - 1) +
      arctan_fast(second, fast_terms_for(second, w), w);
  r.assembly_digits = coinciding_digits(reference_pi(w).scaled_by_power_of_two(-2), sum);
  return r;
}

}  // namespace machinlike
