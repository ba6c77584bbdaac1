#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "machinlike/errors.hpp"
#include "machinlike/pi_engine.hpp"
#include "machinlike/u2.hpp"

using namespace machinlike;

namespace {

BigRational q(long n, long d = 1) { return BigRational(BigInt(n), BigInt(d)); }

const char* const kPi120 =
    "3.141592653589793238462643383279502884197169399375105820974944592307816406286208998628034825342117067982148086513282306647";

BigRational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 2000000);
  std::uniform_int_distribution<long> den(1, 2000000);
  const long n = num(rng);
  return q(rng() % 2 ? n : -n, den(rng));
}

// Coinciding digits as computed by an independent 600-digit mpmath run of the
// same series, M = 1..20.
const std::vector<long> kDigitsK3 = {2, 4, 6, 8, 10, 13, 15, 17, 19, 21, 23, 25, 27, 29, 31, 33, 35, 37, 39, 41};
const std::vector<long> kDigitsK6 = {3, 7, 11, 15, 19, 23, 27, 31, 35, 38, 42, 46, 50, 54, 58, 61, 65, 69, 73, 77};

}  // namespace

TEST_CASE("reference pi") {
  CHECK(reference_pi(120).to_fixed(118) == std::string(kPi120).substr(0, 120));
  CHECK(reference_pi(30).to_fixed(30) == "3.141592653589793238462643383279");
  CHECK(reference_pi(2).to_fixed(1) == "3.1");
  CHECK(reference_pi(1).to_scientific(2) == "3.1e+00");
  CHECK(coinciding_digits(reference_pi(1000), reference_pi(1200)) >= 1000);
  CHECK_THROWS_AS(reference_pi(0), DomainError);
}

TEST_CASE("Maclaurin arctangent") {
  CHECK(coinciding_digits(arctan_maclaurin(q(1, 2), 60), arctan_maclaurin(BigFloat::from_rational(q(1, 2), 60), 60)) >=
        59);
  CHECK(arctan_maclaurin(q(0), 30).is_zero());
  CHECK_THROWS_AS(arctan_maclaurin(q(1), 30), DomainError);
  CHECK_THROWS_AS(arctan_maclaurin(q(-3, 2), 30), DomainError);
  // more terms never disturb the agreed digits
  const BigFloat lo = arctan_maclaurin(q(1, 7), 80);
  const BigFloat hi = arctan_maclaurin(q(1, 7), 200);
  CHECK(coinciding_digits(hi, lo) >= 80);
}

TEST_CASE("fast series examples") {
  const BigFloat quarter_pi = reference_pi(80).scaled_by_power_of_two(-2);
  // independent mpmath value: error 1.3854e-23 at M = 30
  const BigFloat at1 = arctan_fast(q(1), 30, 60);
  CHECK(coinciding_digits(quarter_pi, at1) == 22);
  CHECK((at1 - quarter_pi).to_scientific(5) == "1.3854e-23");
  CHECK(arctan_fast(q(0), 10, 50).is_zero());
  const BigRational x = q(1, 1000000);
  CHECK(arctan_fast(-x, 10, 200) == -arctan_fast(x, 10, 200));
  CHECK_THROWS_AS(arctan_fast(q(1), 0, 50), DomainError);
  CHECK(coinciding_digits(arctan_maclaurin(q(1, 5), 50), arctan_fast(q(1, 5), fast_terms_for(q(1, 5), 50), 50)) >= 49);
}

TEST_CASE("error terms at x = 1e-6, M = 10") {
  const BigRational x = q(1, 1000000);
  const BigFloat truth = arctan_maclaurin(x, 220);
  const BigFloat euler = (truth - arctan_euler(x, 10, 220)).abs();
  const BigFloat fast = (truth - arctan_fast(x, 10, 220)).abs();
  CHECK(euler.to_scientific(5) == "2.7026e-127");
  CHECK(fast.to_scientific(6) == "4.54131e-134");
  // independent mpmath values 2.702601836e-127 and 4.541306268e-134
  CHECK(euler.to_scientific(10) == "2.702601836e-127");
  CHECK(fast.to_scientific(10) == "4.541306268e-134");
  CHECK(fast < euler);
}

TEST_CASE("Euler series examples") {
  CHECK(arctan_euler(q(0), 10, 30).is_zero());
  CHECK(arctan_euler(q(1), 1, 30) == BigFloat::from_rational(q(1, 2), 30));
  CHECK(arctan_euler(-q(1, 3), 7, 50) == -arctan_euler(q(1, 3), 7, 50));
  CHECK(coinciding_digits(arctan_maclaurin(q(1, 3), 50), arctan_euler(q(1, 3), 120, 50)) >= 49);
}

TEST_CASE("coefficient magnitude law") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const BigRational x = random_rational(rng);
    const BigRational grow = BigRational(1) + BigRational(4) / (x * x);
    ArctanCoeffState s = arctan_coeff_init(x);
    CHECK(s.a == BigRational(2) / x);
    CHECK(s.b == BigRational(1));
    for (int m = 1; m <= 30; ++m) {
      CAPTURE(m);
      CHECK(s.m == m);
      CHECK(s.a * s.a + s.b * s.b == pow(grow, static_cast<unsigned long>(2 * m - 1)));
      s = arctan_coeff_step(s);
    }
  }
  CHECK_THROWS_AS(arctan_coeff_init(q(0)), DomainError);
}

TEST_CASE("exact and floating coefficients agree") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const BigRational x = random_rational(rng);
    const BigFloat f = arctan_fast(x, 15, 80, CoefficientMode::floating);
    const BigFloat e = arctan_fast(x, 15, 80, CoefficientMode::exact);
    CHECK(coinciding_digits(e, f) >= 78);
  }
}

TEST_CASE("complex form matches the real recurrences") {
  CHECK(coinciding_digits(arctan_fast(q(1, 5), 10, 50), arctan_complex(q(1, 5), 10, 50)) >= 45);
  CHECK(coinciding_digits(arctan_fast(q(1), 1, 40), arctan_complex(q(1), 1, 40)) >= 39);
  CHECK(arctan_fast(q(1), 1, 40) == BigFloat::from_rational(q(4, 5), 40));
  std::mt19937_64 rng(10);
  for (int i = 0; i < 30; ++i) {
    const BigRational x = random_rational(rng);
    const long p = 60;
    const ComplexSeriesValue c = arctan_complex_parts(x, 20, p);
    CHECK(coinciding_digits(arctan_fast(x, 20, p), c.real) >= p - 10);
    CHECK((c.imaginary_residue.is_zero() || c.imaginary_residue.decimal_exponent() < -(p - 10)));
  }
  CHECK(arctan_complex(q(0), 5, 30).is_zero());
}

TEST_CASE("fast term count") {
  for (const BigRational& x : {q(1), q(1, 5), q(-1, 239), q(1, 1000000), q(7, 3)}) {
    const int m = fast_terms_for(x, 100);
    const BigFloat truth = std::abs(x.sign()) ? arctan_fast(x, 2 * m + 10, 130) : BigFloat(0, 130);
    CHECK(coinciding_digits(truth, arctan_fast(x, m, 110)) >= 100);
  }
}

TEST_CASE("two-term pi series") {
  const BigRational u2 = u2_of(q(40), 6);
  const BigFloat pi = pi_two_term(6, q(40), u2, 25, 100);
  CHECK(coinciding_digits(reference_pi(1000), pi) >= 85);
  CHECK(coinciding_digits(reference_pi(1000), pi) == 96);
  // M = 1 structural identity
  const BigFloat one_term = pi_two_term(3, q(5), q(-239), 1, 60);
  const BigFloat assembled =
      (arctan_fast(q(1, 5), 1, 70) * BigInt(4) + arctan_fast(q(-1, 239), 1, 70)) * BigInt(4);
  CHECK(coinciding_digits(assembled, one_term) >= 58);
  CHECK(coinciding_digits(reference_pi(1000), pi_two_term(6, q(40), u2, 1, 1000)) >= 1);
  // second route: 4 (2^(k-1) arctan(1/u1) + arctan(1/u2)) with the fast series
  const long p = 200;
  const int m = 80;
  const BigFloat route2 =
      (arctan_fast(q(1, 40), m, p + 10) * BigInt(32) + arctan_fast(u2.reciprocal(), m, p + 10)) * BigInt(4);
  CHECK(coinciding_digits(route2, pi_two_term(6, q(40), u2, m, p)) >= p - 10);
  CHECK(coinciding_digits(pi_two_term(6, q(40), u2, 25, 100, CoefficientMode::exact), pi) >= 98);
  CHECK_THROWS_AS(pi_two_term(1, q(5), q(-239), 5, 50), DomainError);
  CHECK_THROWS_AS(pi_two_term(3, q(5), q(0), 5, 50), DomainError);
}

TEST_CASE("partials track the truncation order") {
  const std::vector<BigFloat> partials = pi_two_term_partials(3, q(5), q(-239), 20, 200);
  REQUIRE(partials.size() == 20);
  const BigFloat ref = reference_pi(250);
  for (std::size_t i = 0; i < partials.size(); ++i) {
    CAPTURE(i);
    CHECK(coinciding_digits(ref, partials[i]) == kDigitsK3[i]);
  }
}

TEST_CASE("convergence scan") {
  const ConvergenceReport r3 = convergence_scan(3, q(5), q(-239), 20, 200);
  CHECK(r3.digits == kDigitsK3);
  CHECK(std::abs(r3.measure - 1.8511276523) < 1e-9);
  CHECK(std::abs(r3.digits_per_term - 2.0) < 1e-12);
  CHECK(std::abs(r3.digits_per_term - r3.predicted_rate) <= 0.7);
  const ConvergenceReport r6 = convergence_scan(6, q(40), u2_of(q(40), 6), 20, 200);
  CHECK(r6.digits == kDigitsK6);
  CHECK(std::abs(r6.predicted_rate - 4.1 / 1.1675133725) < 1e-8);
  CHECK(std::abs(r6.digits_per_term - r6.predicted_rate) <= 0.7);
  CHECK(r6.to_csv().rfind("M,digits,delta\n1,3,", 0) == 0);
  CHECK(r6.to_json().find("\"digits_per_term\"") != std::string::npos);
  CHECK_THROWS_AS(convergence_scan(3, q(5), q(-239), 2, 200), DomainError);
  CHECK_THROWS_AS(convergence_scan(3, q(5), q(-239), 20, 40), PrecisionError);
}
