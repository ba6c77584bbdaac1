#include "machinlike/pi_engine.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include <json.hpp>

#include "machinlike/errors.hpp"
#include "machinlike/formula.hpp"

namespace machinlike {

namespace {

std::int64_t top_bit(const BigFloat& v) {
  return v.exponent2() + static_cast<std::int64_t>(v.mantissa().bit_length());
}

// Rough log10|q| for term-count planning.
double approx_log10(const BigRational& q) {
  auto lg = [](const BigInt& v) {
    long e = 0;
    const double d = mpz_get_d_2exp(&e, v.raw().get_mpz_t());
    return std::log10(std::fabs(d)) + static_cast<double>(e) * 0.30102999566398120;
  };
  return lg(q.numerator()) - lg(q.denominator());
}

long digits_of(long n) { return static_cast<long>(std::to_string(n).size()); }

struct ComplexFloat {
  BigFloat re;
  BigFloat im;

  friend ComplexFloat operator*(const ComplexFloat& a, const ComplexFloat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexFloat operator-(const ComplexFloat& a, const ComplexFloat& b) { return {a.re - b.re, a.im - b.im}; }
  friend ComplexFloat operator+(const ComplexFloat& a, const ComplexFloat& b) { return {a.re + b.re, a.im + b.im}; }
  ComplexFloat reciprocal() const {
    const BigFloat norm = re * re + im * im;
    return {re / norm, -im / norm};
  }
};

// 2 a_m / ((2m-1)(a_m^2 + b_m^2)) for m = 1..terms, in floating recurrences.
std::vector<BigFloat> fast_terms_floating(const BigRational& x, int terms, long working) {
  const BigFloat inv = BigFloat::from_rational(x.reciprocal(), working);
  const BigFloat one(1, working);
  const BigFloat r1 = one - (inv * inv).scaled_by_power_of_two(2);
  const BigFloat r2 = inv.scaled_by_power_of_two(2);
  BigFloat a = inv.scaled_by_power_of_two(1);
  BigFloat b(1, working);
  std::vector<BigFloat> out;
  out.reserve(static_cast<std::size_t>(terms));
  for (int m = 1; m <= terms; ++m) {
    out.push_back(a / ((a * a + b * b) * BigInt(2L * m - 1)));
    BigFloat next_a = a * r1 + b * r2;
    b = b * r1 - a * r2;
    a = std::move(next_a);
  }
  return out;
}

// Same recurrences in exact rationals; 2/x, 1 - 4/x^2 and 4/x.
std::vector<BigFloat> fast_terms_exact(const BigRational& x, int terms, long working) {
  const BigRational inv = x.reciprocal();
  const BigRational two_over_x = BigRational(2) * inv;
  const BigRational one_minus = BigRational(1) - BigRational(4) * inv * inv;
  const BigRational four_over_x = BigRational(4) * inv;
  BigRational a = two_over_x;
  BigRational b(1);
  std::vector<BigFloat> out;
  out.reserve(static_cast<std::size_t>(terms));
  for (int m = 1; m <= terms; ++m) {
    out.push_back(BigFloat::from_rational(a / ((a * a + b * b) * BigRational(2L * m - 1)), working));
    BigRational next_a = a * one_minus + b * four_over_x;
    b = b * one_minus - a * four_over_x;
    a = std::move(next_a);
  }
  return out;
}

std::vector<BigFloat> fast_terms(const BigRational& x, int terms, long working, CoefficientMode mode) {
  return mode == CoefficientMode::exact ? fast_terms_exact(x, terms, working) : fast_terms_floating(x, terms, working);
}

// Alternating series sum_{n>=0} (-1)^n t_n / (2n+1) with t_{n+1} = t_n * ratio(t_n).
template <typename NextPower>
BigFloat maclaurin_sum(BigFloat power, NextPower next_power) {
  const std::int64_t bits = static_cast<std::int64_t>(precision_bits(power.precision()));
  BigFloat sum = power;
  for (long n = 1;; ++n) {
    power = next_power(power);
    if (power.is_zero()) break;
    const BigFloat contribution = power / BigInt(2 * n + 1);
    // Alternating and decreasing: the first omitted term bounds the tail.
    if (top_bit(contribution) < top_bit(sum) - bits - 1) break;
    sum = (n % 2 == 1) ? sum - contribution : sum + contribution;
  }
  return sum;
}

void require_terms(int terms) {
  if (terms < 1) throw DomainError("number of series terms must be >= 1, got " + std::to_string(terms));
}

}  // namespace

ArctanCoeffState arctan_coeff_init(const BigRational& x) {
  if (x.is_zero()) throw DomainError("arctangent coefficients undefined at x = 0");
  return {1, BigRational(2) / x, BigRational(1), x};
}

ArctanCoeffState arctan_coeff_step(const ArctanCoeffState& s) {
  const BigRational inv = s.x.reciprocal();
  const BigRational one_minus = BigRational(1) - BigRational(4) * inv * inv;
  const BigRational four_over_x = BigRational(4) * inv;
  return {s.m + 1, s.a * one_minus + s.b * four_over_x, s.b * one_minus - s.a * four_over_x, s.x};
}

BigFloat arctan_fast(const BigRational& x, int terms, long precision, CoefficientMode mode) {
  require_terms(terms);
  if (x.is_zero()) return BigFloat(0, precision);
  const long working = precision + guard_digits() + digits_of(terms);
  const std::vector<BigFloat> t = fast_terms(x, terms, working, mode);
  BigFloat sum(0, working);
  for (const BigFloat& v : t) sum += v;
  return sum.scaled_by_power_of_two(1).with_precision(precision);
}

int fast_terms_for(const BigRational& x, long precision) {
  if (x.is_zero()) return 1;
  // Summand m shrinks like (1 + 4/x^2)^-(m - 1/2).
  const double t = std::log10(4.0) - 2.0 * approx_log10(x);
  const double per_term = t > 15.0 ? t : std::log10(1.0 + std::pow(10.0, t));
  const double m = (static_cast<double>(precision) + 2.0) / per_term + 1.5;
  return std::max(1, static_cast<int>(std::ceil(m)));
}

BigFloat arctan_euler(const BigRational& x, int terms, long precision) {
  require_terms(terms);
  if (x.is_zero()) return BigFloat(0, precision);
  const BigRational one_plus = BigRational(1) + x * x;
  const BigRational q = x * x / one_plus;
  BigRational term = x / one_plus;
  BigRational sum = term;
  for (long m = 1; m < terms; ++m) {
    term *= q * BigRational(BigInt(2 * m), BigInt(2 * m + 1));
    sum += term;
  }
  return BigFloat::from_rational(sum, precision);
}

ComplexSeriesValue arctan_complex_parts(const BigRational& x, int terms, long precision) {
  require_terms(terms);
  if (x.is_zero()) return {BigFloat(0, precision), BigFloat(0, precision)};
  const long working = precision + guard_digits() + digits_of(terms);
  const BigFloat one(1, working);
  const BigFloat two_over_x = BigFloat::from_rational(BigRational(2) / x, working);
  // (1 + 2i/x)^-1 and (1 - 2i/x)^-1, each formed on its own.
  const ComplexFloat plus = ComplexFloat{one, two_over_x}.reciprocal();
  const ComplexFloat minus = ComplexFloat{one, -two_over_x}.reciprocal();
  const ComplexFloat plus_sq = plus * plus;
  const ComplexFloat minus_sq = minus * minus;
  ComplexFloat p = plus;
  ComplexFloat q = minus;
  ComplexFloat sum{BigFloat(0, working), BigFloat(0, working)};
  for (int m = 1; m <= terms; ++m) {
    const ComplexFloat diff = p - q;
    const BigInt odd(2L * m - 1);
    sum = sum + ComplexFloat{diff.re / odd, diff.im / odd};
    p = p * plus_sq;
    q = q * minus_sq;
  }
  // i * (re + i im) = -im + i re
  return {(-sum.im).with_precision(precision), sum.re.with_precision(precision)};
}

BigFloat arctan_complex(const BigRational& x, int terms, long precision) {
  return arctan_complex_parts(x, terms, precision).real;
}

BigFloat arctan_maclaurin(const BigRational& x, long precision) {
  if (x.abs() >= BigRational(1)) throw DomainError("Maclaurin arctangent needs |x| < 1");
  if (x.is_zero()) return BigFloat(0, precision);
  const long working = precision + guard_digits();
  const BigInt num2 = x.numerator() * x.numerator();
  const BigInt den2 = x.denominator() * x.denominator();
  return maclaurin_sum(BigFloat::from_rational(x, working),
                       [&](const BigFloat& p) { return p * num2 / den2; })
      .with_precision(precision);
}

BigFloat arctan_maclaurin(const BigFloat& x, long precision) {
  if (x.abs() >= BigFloat(1, precision)) throw DomainError("Maclaurin arctangent needs |x| < 1");
  if (x.is_zero()) return BigFloat(0, precision);
  const long working = precision + guard_digits();
  const BigFloat xw = x.with_precision(working);
  const BigFloat x2 = xw * xw;
  return maclaurin_sum(xw, [&](const BigFloat& p) { return p * x2; }).with_precision(precision);
}

BigFloat reference_pi(long precision) {
  if (precision < 1) throw DomainError("precision must be >= 1");
  const long working = precision + guard_digits();
  const BigFloat a = arctan_maclaurin(BigRational(1, 5), working);
  const BigFloat b = arctan_maclaurin(BigRational(1, 239), working);
  return (a * BigInt(16) - b * BigInt(4)).with_precision(precision);
}

std::vector<BigFloat> pi_two_term_partials(int k, const BigRational& u1, const BigRational& u2, int terms,
                                           long precision, CoefficientMode mode) {
  require_terms(terms);
  if (k < 2) throw DomainError("k must be >= 2");
  if (u1.is_zero() || u2.is_zero()) throw DomainError("cotangents must be nonzero");
  // 2^(k-1) scales the first branch's rounding error.
  const long working = precision + guard_digits() + digits_of(terms) + (k * 302 + 999) / 1000 + 1;

  // alpha_1 = 2u1, beta_1 = 1; alpha_m = alpha(1 - 4u1^2) + 4 beta u1, beta_m = beta(1 - 4u1^2) - 4 alpha u1.
  // gamma_m, theta_m follow the same recurrence in u2 (theta's last factor is u2, not u1).
  auto branch = [&](const BigRational& u) {
    return fast_terms(u.reciprocal(), terms, working, mode);
  };
  auto second = std::async(std::launch::async, [&] { return branch(u2); });
  const std::vector<BigFloat> first = branch(u1);
  const std::vector<BigFloat> rest = second.get();

  std::vector<BigFloat> partials;
  partials.reserve(static_cast<std::size_t>(terms));
  BigFloat sum(0, working);
  for (int m = 0; m < terms; ++m) {
    sum += first[static_cast<std::size_t>(m)].scaled_by_power_of_two(k - 1) + rest[static_cast<std::size_t>(m)];
    partials.push_back(sum.scaled_by_power_of_two(3).with_precision(precision));
  }
  return partials;
}

BigFloat pi_two_term(int k, const BigRational& u1, const BigRational& u2, int terms, long precision,
                     CoefficientMode mode) {
  return pi_two_term_partials(k, u1, u2, terms, precision, mode).back();
}

std::string ConvergenceReport::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["u1"] = u1.to_string();
  j["orders"] = orders;
  j["digits"] = digits;
  j["digits_per_term"] = std::round(digits_per_term * 100.0) / 100.0;
  j["measure"] = std::round(measure * 1e6) / 1e6;
  j["predicted_rate"] = std::round(predicted_rate * 100.0) / 100.0;
  return j.dump(2);
}

std::string ConvergenceReport::to_csv() const {
  std::ostringstream out;
  out << "M,digits,delta\n";
  long previous = 0;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    out << orders[i] << ',' << digits[i] << ',' << (digits[i] - previous) << '\n';
    previous = digits[i];
  }
  return out.str();
}

ConvergenceReport convergence_scan(int k, const BigRational& u1, const BigRational& u2, int max_terms,
                                   long precision) {
  if (max_terms < 3) throw DomainError("convergence scan needs at least 3 truncation orders");
  MachinFormula mf;
  mf.id = "two-term";
  mf.terms.push_back({pow(BigInt(2), static_cast<unsigned long>(k - 1)), u1});
  mf.terms.push_back({BigInt(1), u2});
  const double e = lehmer_measure(mf).value();
  const double predicted = 4.1 / e;
  if (static_cast<double>(precision) <= max_terms * predicted + 20.0)
    throw PrecisionError("precision " + std::to_string(precision) + " too small for " +
                         std::to_string(max_terms) + " terms at ~" + std::to_string(predicted) + " digits/term");

  const BigFloat pi = reference_pi(precision + guard_digits());
  const std::vector<BigFloat> partials = pi_two_term_partials(k, u1, u2, max_terms, precision);

  ConvergenceReport report;
  report.k = k;
  report.u1 = u1;
  report.measure = e;
  report.predicted_rate = predicted;
  for (int m = 1; m <= max_terms; ++m) {
    report.orders.push_back(m);
    report.digits.push_back(coinciding_digits(pi, partials[static_cast<std::size_t>(m - 1)]));
  }
  const std::size_t tail = static_cast<std::size_t>((max_terms + 1) / 2);
  const long first = report.digits[report.digits.size() - tail];
  const long last = report.digits.back();
  report.digits_per_term = static_cast<double>(last - first) / static_cast<double>(tail - 1);
  return report;
}

}  // namespace machinlike
