#pragma once

// Machin-like formulas  pi/4 = sum_j coefficient_j * arctan(1/cotangent_j)
// and Lehmer's measure e = sum_j 1/log10|cotangent_j|.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "machinlike/bigfloat.hpp"
#include "machinlike/bigint.hpp"
#include "machinlike/u2.hpp"

namespace machinlike {

// A cotangent known only by magnitude: |beta| = leading * 10^exponent.
// Enough for the measure when the exact rational is out of reach.
struct CotangentMagnitude {
  bool negative = false;
  BigRational leading;
  long exponent = 0;

  // From the leading digits and total digit counts of numerator and
  // denominator, e.g. ("2368557598", 522185816, "9732933578", 522185807).
  static CotangentMagnitude from_fraction_digits(std::string_view numerator_leading, long numerator_digits,
                                                 std::string_view denominator_leading, long denominator_digits,
                                                 bool negative);
  // From scientific text such as "-2.43354953523904089818e8".
  static CotangentMagnitude from_scientific(std::string_view text);
};

using Cotangent = std::variant<BigRational, CotangentMagnitude>;

struct MachinTerm {
  BigInt coefficient;
  Cotangent cotangent;
};

struct MachinFormula {
  std::string id;
  std::vector<MachinTerm> terms;
};

MachinFormula to_machin_formula(const TwoTermFormula& f);

struct MeasureReport {
  std::string formula_id;
  BigFloat e;
  std::vector<BigFloat> contributions;  // 1/log10|beta_j|, term order

  double value() const { return e.to_double(); }
  // e and contributions printed with 6 decimals.
  std::string to_json() const;
};

// Logs are evaluated at kMeasurePrecision digits. DomainError naming the
// term index if some |cotangent| <= 1.
inline constexpr long kMeasurePrecision = 30;
MeasureReport lehmer_measure(const MachinFormula& f);

struct ValidationResult {
  bool valid = false;
  // sum_j coefficient_j arctan(1/beta_j) - pi/4
  BigFloat residual;
  // Digits of agreement between the sum and pi/4.
  long agreement_digits = 0;
};

// Valid iff |residual| < 10^-(precision - 5). Requires precision >= 20 and
// exact cotangents (DomainError for magnitude-only terms).
ValidationResult validate_formula(const MachinFormula& f, long precision);

// Named catalog: machin-1706, kanada-a, kanada-b, lehmer-3term, chienlih-6term.
const std::vector<MachinFormula>& fixtures();
// Throws DomainError for unknown names.
const MachinFormula& fixture(std::string_view name);

// One term per line: "coefficient * atan(num/den)" where num/den = 1/beta.
// Blank lines and '#' comments are ignored when parsing.
std::string format_formula(const MachinFormula& f);
MachinFormula parse_formula(std::string_view text, std::string id = "custom");

}  // namespace machinlike
