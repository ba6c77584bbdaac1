#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "machinlike/errors.hpp"
#include "machinlike/radical.hpp"
#include "machinlike/u2.hpp"

using namespace machinlike;

namespace {

BigRational q(long n, long d = 1) { return BigRational(BigInt(n), BigInt(d)); }

const char* const kU2k6 =
    "-2634699316100146880926635665506082395762836079845121/38035138859000075702655846657186322249216830232319";

// Plain rational squaring with full canonicalization at every step.
ComplexRationalState reference_iterate(const BigRational& u1, int k) {
  const BigRational d = u1 * u1 + BigRational(1);
  ComplexRationalState s{1, (u1 * u1 - BigRational(1)) / d, BigRational(2) * u1 / d};
  while (s.n < k) s = {s.n + 1, s.x * s.x - s.y * s.y, BigRational(2) * s.x * s.y};
  return s;
}

std::filesystem::path temp_path(const char* name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("initial state") {
  const ComplexRationalState s5 = init_state(q(5));
  CHECK(s5.n == 1);
  CHECK(s5.x == q(12, 13));
  CHECK(s5.y == q(5, 13));
  const ComplexRationalState s40 = init_state(q(40));
  CHECK(s40.x == q(1599, 1601));
  CHECK(s40.y == q(80, 1601));
  CHECK_THROWS_AS(init_state(q(1)), DomainError);
  CHECK_THROWS_AS(init_state(q(1, 2)), DomainError);
  CHECK_THROWS_AS(init_state(q(-5)), DomainError);
}

TEST_CASE("squaring step") {
  const ComplexRationalState a = square_step({1, q(12, 13), q(5, 13)});
  CHECK(a.n == 2);
  CHECK(a.x == q(119, 169));
  CHECK(a.y == q(120, 169));
  const ComplexRationalState one = square_step({1, q(1), q(0)});
  CHECK(one.x == q(1));
  CHECK(one.y == q(0));
  const ComplexRationalState i = square_step({1, q(0), q(1)});
  CHECK(i.x == q(-1));
  CHECK(i.y == q(0));
  // off the unit circle
  const ComplexRationalState off = square_step({1, q(1, 2), q(1, 3)});
  CHECK(off.x == q(5, 36));
  CHECK(off.y == q(1, 3));
}

TEST_CASE("iteration matches plain rational squaring") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(2, 100000);
  for (int i = 0; i < 60; ++i) {
    const long d = num(rng);
    const long n = d + num(rng);
    const BigRational u1 = i % 4 == 0 ? q(n) : q(n, d);
    const int k = 2 + i % 7;
    CAPTURE(u1.to_string());
    CAPTURE(k);
    const ComplexRationalState fast = iterate_states(u1, k);
    const ComplexRationalState ref = reference_iterate(u1, k);
    CHECK(fast.x == ref.x);
    CHECK(fast.y == ref.y);
    // canonical form: equal values imply equal parts
    CHECK(fast.x.numerator() == ref.x.numerator());
    CHECK(fast.y.denominator() == ref.y.denominator());
    CHECK(u2_of(u1, k) == ref.x / (BigRational(1) - ref.y));
  }
}

TEST_CASE("u2 values") {
  CHECK(u2_of(q(5), 3) == q(-239));
  CHECK(u2_of(q(40), 6) == BigRational::parse(kU2k6));
  CHECK(u2_of(q(2), 2) == q(-7));
  CHECK(u2_of(q(3), 2) == q(7));
  CHECK(u2_of(q(2), 3) == q(-17, 31));
  CHECK(u2_of(q(163, 7), 3) == q(204785039, 144266399));
  CHECK(u2_of(q(10), 4) == q(-147153121, 1758719));
  const BigRational u651 = u2_of(q(651), 10);
  CHECK(u651.numerator().decimal_digits() == 1364);
  CHECK(u651.denominator().decimal_digits() == 1361);
  CHECK_THROWS_AS(u2_of(q(5), 1), DomainError);
}

TEST_CASE("every state lies on the unit circle") {
  for (int k = 2; k <= 16; ++k) {
    CAPTURE(k);
    const BigRational u1(u1_of_k(k));
    int visited = 0;
    bool all_on_circle = true;
    iterate_states(u1, k, [&](const ComplexRationalState& s) {
      ++visited;
      if (!on_unit_circle(s)) all_on_circle = false;
      // independent check through plain rational arithmetic while the numbers are small
      if (s.n <= 12 && s.x * s.x + s.y * s.y != BigRational(1)) all_on_circle = false;
    });
    CHECK(visited == k);
    CHECK(all_on_circle);
  }
  CHECK_FALSE(on_unit_circle({1, q(1, 2), q(1, 3)}));
  CHECK(on_unit_circle({1, q(3, 5), q(-4, 5)}));
  CHECK(on_unit_circle({1, q(0), q(-1)}));
}

TEST_CASE("direct complex oracle agrees with the iteration") {
  CHECK(u2_direct_oracle(q(5), 3) == q(-239));
  CHECK(u2_direct_oracle(q(40), 6) == BigRational::parse(kU2k6));
  CHECK(u2_direct_oracle(q(3), 2) == u2_of(q(3), 2));
  for (const BigRational& u1 : {q(2), q(3), q(5), q(40), q(163, 7)}) {
    for (int k = 2; k <= kDirectOracleMaxK; ++k) {
      CAPTURE(u1.to_string());
      CAPTURE(k);
      CHECK(u2_direct_oracle(u1, k) == u2_of(u1, k));
    }
  }
  CHECK_THROWS_AS(u2_direct_oracle(q(5), kDirectOracleMaxK + 1), DomainError);
}

TEST_CASE("shared denominator route") {
  for (long u1 : {2L, 3L, 5L, 40L, 651L}) {
    for (int k = 2; k <= 14; ++k) {
      CAPTURE(u1);
      CAPTURE(k);
      CHECK(u2_shared_denominator(BigInt(u1), k) == u2_of(q(u1), k));
    }
  }
  // denominators of x_k and y_k divide (u1^2 + 1)^(2^(k-1))
  for (long u1 : {2L, 3L, 5L, 40L}) {
    for (int k = 2; k <= 10; ++k) {
      const ComplexRationalState s = iterate_states(q(u1), k);
      const BigInt shared = pow(BigInt(u1 * u1 + 1), 1UL << (k - 1));
      CHECK((shared % s.x.denominator()).is_zero());
      CHECK((shared % s.y.denominator()).is_zero());
    }
  }
  CHECK_THROWS_AS(u2_shared_denominator(BigInt(1), 3), DomainError);
}

TEST_CASE("half-step route agrees with the full iteration") {
  CHECK(u2_half_step(q(5), 3) == q(-239));
  CHECK(u2_half_step(q(40), 6) == BigRational::parse(kU2k6));
  for (int k = 2; k <= 16; ++k) {
    CAPTURE(k);
    const BigRational u1(u1_of_k(k));
    CHECK(u2_half_step(u1, k) == u2_of(u1, k));
  }
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long> num(2, 100000);
  for (int i = 0; i < 60; ++i) {
    const long d = num(rng);
    const BigRational u1 = i % 3 == 0 ? q(d) : q(d + num(rng), d);
    const int k = 2 + i % 8;
    CAPTURE(u1.to_string());
    CAPTURE(k);
    const BigRational half = u2_half_step(u1, k);
    CHECK(half == u2_of(u1, k));
    CHECK(half.denominator().sign() > 0);
    CHECK(gcd(half.numerator(), half.denominator()).abs() == BigInt(1));
  }
  CHECK_THROWS_AS(u2_half_step(q(5), 1), DomainError);
}

TEST_CASE("generated formulas") {
  const TwoTermFormula f3 = generate_two_term(3);
  CHECK(f3.u1 == BigInt(5));
  CHECK(f3.u2 == q(-239));
  const TwoTermFormula f6 = generate_two_term(6);
  CHECK(f6.u1 == BigInt(40));
  CHECK(format_fraction(f6.u2) == kU2k6);
}

TEST_CASE("fraction text") {
  CHECK(format_fraction(q(-239)) == "-239/1");
  CHECK(parse_fraction("-239/1\n") == q(-239));
  CHECK(parse_fraction("# u2 for k = 3\n\n-239\n") == q(-239));
  CHECK(parse_fraction("6/4\r\n") == q(3, 2));
  CHECK_THROWS_AS(parse_fraction(""), ParseError);
  CHECK_THROWS_AS(parse_fraction("# only a comment\n"), ParseError);
  CHECK_THROWS_AS(parse_fraction("1/2\n3/4\n"), ParseError);
  try {
    parse_fraction("# header\nnot-a-number\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("fraction file round trip") {
  const auto path = temp_path("machinlike_u2_roundtrip.txt");
  const BigRational u2 = u2_of(q(651), 10);
  write_fraction_file(path, u2);
  CHECK(read_fraction_file(path) == u2);
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == format_fraction(u2) + "\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_fraction_file(path), IoError);
  CHECK_THROWS_AS(write_fraction_file(temp_path("no-such-dir/x/y.txt"), u2), IoError);
}
