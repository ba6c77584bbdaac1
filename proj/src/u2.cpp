#include "machinlike/u2.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "machinlike/errors.hpp"
#include "machinlike/radical.hpp"

namespace machinlike {

namespace {

void require_u1_above_one(const BigRational& u1) {
  if (u1 <= BigRational(1))
    throw DomainError("u1 must exceed 1 (Re[(u1+i)/(u1-i)] > 0), got " + u1.to_string());
}

void require_k(int k) {
  if (k < 2) throw DomainError("k must be >= 2, got " + std::to_string(k));
}

struct ComplexRational {
  BigRational re;
  BigRational im;

  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
    const BigRational norm = b.re * b.re + b.im * b.im;
    if (norm.is_zero()) throw DegenerateError("complex division by zero");
    return {(a.re * b.re + a.im * b.im) / norm, (a.im * b.re - a.re * b.im) / norm};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
};

}  // namespace

ComplexRationalState init_state(const BigRational& u1) {
  require_u1_above_one(u1);
  const BigRational sq = u1 * u1;
  const BigRational den = sq + BigRational(1);
  return {1, (sq - BigRational(1)) / den, BigRational(2) * u1 / den};
}

namespace {

std::size_t trailing_zero_bits(const BigInt& v) { return mpz_scan1(v.raw().get_mpz_t(), 0); }

// x = a/d, y = b/d.
struct CommonForm {
  BigInt a;
  BigInt b;
  BigInt d;
};

// Common denominator when the two denominators differ only in powers of two,
// which is what the squaring iteration produces.
std::optional<CommonForm> common_form(const ComplexRationalState& s) {
  const BigInt dx = s.x.denominator();
  const BigInt dy = s.y.denominator();
  const std::size_t tx = trailing_zero_bits(dx);
  const std::size_t ty = trailing_zero_bits(dy);
  if ((dx >> tx) != (dy >> ty)) return std::nullopt;
  const std::size_t t = std::max(tx, ty);
  return CommonForm{s.x.numerator() << (t - tx), s.y.numerator() << (t - ty), dx << (t - tx)};
}

BigRational strip_common_twos(const BigInt& num, const BigInt& den) {
  if (num.is_zero()) return BigRational(0);
  const std::size_t t = std::min(trailing_zero_bits(num), trailing_zero_bits(den));
  return BigRational::from_coprime(num >> t, den >> t);
}

}  // namespace

bool on_unit_circle(const ComplexRationalState& s) {
  if (const auto c = common_form(s)) return c->a * c->a + c->b * c->b == c->d * c->d;
  return s.x * s.x + s.y * s.y == BigRational(1);
}

ComplexRationalState square_step(const ComplexRationalState& s) {
  if (const auto c = common_form(s)) {
    const BigInt aa = c->a * c->a;
    const BigInt bb = c->b * c->b;
    const BigInt dd = c->d * c->d;
    // With a^2 + b^2 = d^2 and gcd(a, b, d) = 1, no odd prime of d divides
    // a^2 - b^2 or 2ab, so only powers of two can cancel.
    if (aa + bb == dd)
      return {s.n + 1, strip_common_twos(aa - bb, dd), strip_common_twos(BigInt(2) * c->a * c->b, dd)};
  }
  return {s.n + 1, s.x * s.x - s.y * s.y, BigRational(2) * s.x * s.y};
}

ComplexRationalState iterate_states(const BigRational& u1, int k,
                                    const std::function<void(const ComplexRationalState&)>& visit) {
  require_k(k);
  ComplexRationalState s = init_state(u1);
  if (visit) visit(s);
  while (s.n < k) {
    s = square_step(s);
    if (visit) visit(s);
  }
  return s;
}

BigRational u2_of(const BigRational& u1, int k) {
  const ComplexRationalState s = iterate_states(u1, k);
  if (!on_unit_circle(s)) throw ConsistencyError("x_k^2 + y_k^2 != 1 after the squaring iteration");
  if (s.y == BigRational(1)) throw DegenerateError("y_k = 1: the first term alone equals pi/4");
  if (const auto c = common_form(s)) return BigRational(c->a, c->d - c->b);
  return s.x / (BigRational(1) - s.y);
}

BigRational u2_shared_denominator(const BigInt& u1, int k) {
  require_u1_above_one(BigRational(u1));
  require_k(k);
  const BigInt sq = u1 * u1;
  BigInt x = sq - BigInt(1);
  BigInt y = BigInt(2) * u1;
  BigInt d = sq + BigInt(1);
  for (int n = 1; n < k; ++n) {
    BigInt next_x = x * x - y * y;
    y = BigInt(2) * x * y;
    x = std::move(next_x);
    d = d * d;
  }
  const BigInt gap = d - y;
  if (gap.is_zero()) throw DegenerateError("y_k = 1: the first term alone equals pi/4");
  return BigRational(x, gap);
}

BigRational u2_direct_oracle(const BigRational& u1, int k) {
  require_u1_above_one(u1);
  require_k(k);
  if (k > kDirectOracleMaxK)
    throw DomainError("direct oracle limited to k <= " + std::to_string(kDirectOracleMaxK));
  const ComplexRational i{BigRational(0), BigRational(1)};
  ComplexRational z = ComplexRational{u1, BigRational(1)} / ComplexRational{u1, BigRational(-1)};
  // z^(2^(k-1))
  for (int j = 1; j < k; ++j) z = z * z;
  const ComplexRational u2 = ComplexRational{BigRational(2), BigRational(0)} / (z - i) - i;
  if (!u2.im.is_zero()) throw ConsistencyError("imaginary part of u2 did not cancel: " + u2.im.to_string());
  return u2.re;
}

BigRational u2_half_step(const BigRational& u1, int k) {
  require_k(k);
  const ComplexRationalState s = k == 2 ? init_state(u1) : iterate_states(u1, k - 1);
  if (!on_unit_circle(s)) throw ConsistencyError("x^2 + y^2 != 1 before the last squaring");
  if (s.x == s.y) throw DegenerateError("y_k = 1: the first term alone equals pi/4");
  if (const auto c = common_form(s)) {
    // gcd(a, b) = 1 on the circle, so gcd(a + b, a - b) divides 2.
    BigInt num = c->a + c->b;
    BigInt den = c->a - c->b;
    if (trailing_zero_bits(num) > 0 && trailing_zero_bits(den) > 0) {
      num = num >> 1;
      den = den >> 1;
    }
    if (den.sign() < 0) {
      num = -num;
      den = -den;
    }
    return BigRational::from_coprime(num, den);
  }
  return (s.x + s.y) / (s.x - s.y);
}

TwoTermFormula generate_two_term(int k) {
  BigInt u1 = u1_of_k(k);
  BigRational u2 = k <= kDeskScaleMaxK ? u2_of(BigRational(u1), k) : u2_half_step(BigRational(u1), k);
  return {k, std::move(u1), std::move(u2)};
}

std::string format_fraction(const BigRational& q) {
  return q.numerator().to_string() + "/" + q.denominator().to_string();
}

BigRational parse_fraction(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::optional<BigRational> value;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (value) throw ParseError("more than one fraction line", line_no);
    try {
      value = BigRational::parse(line);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!value) throw ParseError("no fraction found");
  return *value;
}

void write_fraction_file(const std::filesystem::path& path, const BigRational& q) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << format_fraction(q) << '\n';
  if (!out) throw IoError("write to " + path.string() + " failed");
}

BigRational read_fraction_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_fraction(buffer.str());
}

}  // namespace machinlike
