#include "machinlike/formula.hpp"

#include <cmath>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "machinlike/errors.hpp"
#include "machinlike/pi_engine.hpp"

namespace machinlike {

namespace {

MachinFormula make(std::string id, std::initializer_list<std::pair<long, BigRational>> terms) {
  MachinFormula f{std::move(id), {}};
  for (const auto& [c, b] : terms) f.terms.push_back({BigInt(c), b});
  return f;
}

std::vector<MachinFormula> build_fixtures() {
  return {
      make("machin-1706", {{4, 5}, {-1, 239}}),
      make("kanada-a", {{44, 57}, {7, 239}, {-12, 682}, {24, 12943}}),
      make("kanada-b", {{12, 49}, {32, 57}, {-5, 239}, {12, 110443}}),
      // Usually written -5 arctan(38479/3240647); the cotangent is the reciprocal.
      make("lehmer-3term", {{22, 26}, {-2, 2057}, {-5, BigRational(BigInt(3240647), BigInt(38479))}}),
      make("chienlih-6term",
           {{183, 239}, {32, 1023}, {-68, 5832}, {12, 110443}, {-12, 4841182}, {-100, 6826318}}),
  };
}

// log10|beta| at the given precision.
BigFloat log10_magnitude(const Cotangent& c, long precision) {
  if (const auto* q = std::get_if<BigRational>(&c)) {
    if (q->is_zero()) throw DomainError("zero cotangent");
    return log10(q->abs(), precision);
  }
  const auto& m = std::get<CotangentMagnitude>(c);
  return log10(m.leading, precision) + BigFloat(m.exponent, precision);
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

CotangentMagnitude CotangentMagnitude::from_fraction_digits(std::string_view numerator_leading, long numerator_digits,
                                                            std::string_view denominator_leading,
                                                            long denominator_digits, bool negative) {
  const BigInt num = BigInt::parse(numerator_leading);
  const BigInt den = BigInt::parse(denominator_leading);
  if (num.sign() <= 0 || den.sign() <= 0) throw DomainError("leading digits must be positive");
  const long num_scale = numerator_digits - static_cast<long>(num.decimal_digits());
  const long den_scale = denominator_digits - static_cast<long>(den.decimal_digits());
  if (num_scale < 0 || den_scale < 0) throw DomainError("digit count shorter than the leading digits");
  return {negative, BigRational(num, den), num_scale - den_scale};
}

CotangentMagnitude CotangentMagnitude::from_scientific(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    const BigInt ex = BigInt::parse(body.substr(e + 1));
    if (!ex.fits_long()) throw ParseError("exponent out of range in '" + std::string(text) + "'");
    exponent = ex.to_long();
    body = body.substr(0, e);
  }
  const BigRational leading = BigRational::parse_decimal(body);
  if (leading.sign() <= 0) throw DomainError("magnitude must be positive");
  return {negative, leading, exponent};
}

MachinFormula to_machin_formula(const TwoTermFormula& f) {
  MachinFormula out;
  out.id = "two-term-k" + std::to_string(f.k);
  out.terms.push_back({pow(BigInt(2), static_cast<unsigned long>(f.k - 1)), BigRational(f.u1)});
  out.terms.push_back({BigInt(1), f.u2});
  return out;
}

std::string MeasureReport::to_json() const {
  nlohmann::json j;
  j["formula"] = formula_id;
  j["e"] = std::round(value() * 1e6) / 1e6;
  j["e_text"] = fixed6(value());
  nlohmann::json terms = nlohmann::json::array();
  for (const BigFloat& c : contributions) terms.push_back(std::round(c.to_double() * 1e6) / 1e6);
  j["contributions"] = terms;
  return j.dump(2);
}

MeasureReport lehmer_measure(const MachinFormula& f) {
  const long working = kMeasurePrecision + guard_digits();
  MeasureReport report;
  report.formula_id = f.id;
  report.e = BigFloat(0, kMeasurePrecision);
  for (std::size_t j = 0; j < f.terms.size(); ++j) {
    const Cotangent& c = f.terms[j].cotangent;
    if (const auto* q = std::get_if<BigRational>(&c); q != nullptr && q->abs() <= BigRational(1))
      throw DomainError("term " + std::to_string(j + 1) + ": |cotangent| = " + q->abs().to_string() + " <= 1");
    const BigFloat lg = log10_magnitude(c, working);
    if (lg.sign() <= 0) throw DomainError("term " + std::to_string(j + 1) + ": |cotangent| <= 1");
    const BigFloat contribution = (BigFloat(1, working) / lg).with_precision(kMeasurePrecision);
    report.contributions.push_back(contribution);
    report.e += contribution;
  }
  return report;
}

ValidationResult validate_formula(const MachinFormula& f, long precision) {
  if (precision < 20) throw DomainError("validation precision must be >= 20");
  BigInt largest(1);
  for (const MachinTerm& t : f.terms)
    if (t.coefficient.abs() > largest) largest = t.coefficient.abs();
  const long working = precision + guard_digits() + static_cast<long>(largest.decimal_digits());

  BigFloat sum(0, working);
  for (std::size_t j = 0; j < f.terms.size(); ++j) {
    const auto* beta = std::get_if<BigRational>(&f.terms[j].cotangent);
    if (beta == nullptr) throw DomainError("term " + std::to_string(j + 1) + " has no exact cotangent");
    const BigRational x = beta->reciprocal();
    sum += arctan_fast(x, fast_terms_for(x, working), working) * f.terms[j].coefficient;
  }
  const BigFloat quarter_pi = reference_pi(working).scaled_by_power_of_two(-2);
  ValidationResult result;
  result.residual = (sum - quarter_pi).with_precision(precision);
  result.valid = result.residual.is_zero() || result.residual.decimal_exponent() < 5 - precision;
  result.agreement_digits = coinciding_digits(quarter_pi, sum);
  return result;
}

const std::vector<MachinFormula>& fixtures() {
  static const std::vector<MachinFormula> catalog = build_fixtures();
  return catalog;
}

const MachinFormula& fixture(std::string_view name) {
  for (const MachinFormula& f : fixtures())
    if (f.id == name) return f;
  throw DomainError("unknown fixture '" + std::string(name) + "'");
}

std::string format_formula(const MachinFormula& f) {
  std::ostringstream out;
  for (std::size_t j = 0; j < f.terms.size(); ++j) {
    const auto* beta = std::get_if<BigRational>(&f.terms[j].cotangent);
    if (beta == nullptr) throw DomainError("term " + std::to_string(j + 1) + " has no exact cotangent");
    const BigRational x = beta->reciprocal();
    out << f.terms[j].coefficient.to_string() << " * atan(" << x.numerator().to_string() << '/'
        << x.denominator().to_string() << ")\n";
  }
  return out.str();
}

MachinFormula parse_formula(std::string_view text, std::string id) {
  static const std::regex term_re(R"(^\s*([+-]?\d+)\s*\*\s*atan\(\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?\)\s*$)");
  MachinFormula f{std::move(id), {}};
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::smatch m;
    if (!std::regex_match(line, m, term_re))
      throw ParseError("expected 'coefficient * atan(num/den)', got '" + line + "'", line_no);
    const BigInt coefficient = BigInt::parse(m[1].str());
    const BigInt num = BigInt::parse(m[2].str());
    const BigInt den = m[3].matched ? BigInt::parse(m[3].str()) : BigInt(1);
    if (coefficient.is_zero()) throw ParseError("zero coefficient", line_no);
    if (num.is_zero() || den.is_zero()) throw ParseError("arctangent argument must be a nonzero fraction", line_no);
    f.terms.push_back({coefficient, BigRational(num, den).reciprocal()});
  }
  if (f.terms.empty()) throw ParseError("formula has no terms");
  return f;
}

}  // namespace machinlike
