#pragma once

// Arctangent series and pi evaluation.
//
// The production route expands arctan(x) over the powers
// c_m = (1 + 2i/x)^(2m-1), keeping only the real recurrences
//
//   a_1 = 2/x,  b_1 = 1
//   a_m = a_{m-1} (1 - 4/x^2) + 4 b_{m-1}/x
//   b_m = b_{m-1} (1 - 4/x^2) - 4 a_{m-1}/x
//
//   arctan(x) = 2 sum_{m>=1} a_m / ((2m - 1)(a_m^2 + b_m^2))
//
// with a_m = Im c_m and b_m = Re c_m. Substituting x = 1/u1 and x = 1/u2
// gives the complex-free pi series used by pi_two_term.

#include <string>
#include <vector>

#include "machinlike/bigfloat.hpp"
#include "machinlike/bigint.hpp"

namespace machinlike {

enum class CoefficientMode {
  // Recurrences run in BigFloat at working precision.
  floating,
  // Recurrences run in exact rationals; only the final quotient is rounded.
  // Coefficient size grows linearly with m times the size of x.
  exact,
};

struct ArctanCoeffState {
  int m = 1;
  BigRational a;  // Im c_m
  BigRational b;  // Re c_m
  BigRational x;
};

ArctanCoeffState arctan_coeff_init(const BigRational& x);
ArctanCoeffState arctan_coeff_step(const ArctanCoeffState& s);

// Truncation at `terms` summands (m = 1..terms). x = 0 yields 0.
BigFloat arctan_fast(const BigRational& x, int terms, long precision,
                     CoefficientMode mode = CoefficientMode::floating);

// Number of fast-series terms that brings the tail below 10^-precision.
int fast_terms_for(const BigRational& x, long precision);

// Euler's series, summands m = 0..terms-1.
BigFloat arctan_euler(const BigRational& x, int terms, long precision);

struct ComplexSeriesValue {
  BigFloat real;
  // Imaginary part of the assembled sum; zero up to rounding.
  BigFloat imaginary_residue;
};

// Direct complex evaluation of
//   i sum 1/(2m-1) ((1 + 2i/x)^-(2m-1) - (1 - 2i/x)^-(2m-1)).
ComplexSeriesValue arctan_complex_parts(const BigRational& x, int terms, long precision);
BigFloat arctan_complex(const BigRational& x, int terms, long precision);

// Alternating Maclaurin series summed until the tail bound
// |x|^(2n+1)/(2n+1) drops below 10^-precision. Requires |x| < 1.
BigFloat arctan_maclaurin(const BigRational& x, long precision);
BigFloat arctan_maclaurin(const BigFloat& x, long precision);

// pi from 16 arctan(1/5) - 4 arctan(1/239) with Maclaurin series; shares no
// code path with the fast series.
BigFloat reference_pi(long precision);

// pi = 8 sum 1/(2m-1) (2^(k-1) alpha_m/(alpha_m^2 + beta_m^2)
//                      + gamma_m/(gamma_m^2 + theta_m^2))
// truncated after `terms` summands. Returns every partial sum, index M-1
// holding the truncation at M terms.
std::vector<BigFloat> pi_two_term_partials(int k, const BigRational& u1, const BigRational& u2, int terms,
                                           long precision, CoefficientMode mode = CoefficientMode::floating);
BigFloat pi_two_term(int k, const BigRational& u1, const BigRational& u2, int terms, long precision,
                     CoefficientMode mode = CoefficientMode::floating);

struct ConvergenceReport {
  int k = 0;
  BigRational u1;
  std::vector<int> orders;
  std::vector<long> digits;
  // Mean forward difference of digits over the last ceil(M_max/2) orders.
  double digits_per_term = 0.0;
  double measure = 0.0;
  double predicted_rate = 0.0;  // 4.1 / measure

  std::string to_json() const;
  // Columns M,digits,delta.
  std::string to_csv() const;
};

// Coinciding digits with reference_pi for M = 1..max_terms. Throws
// PrecisionError unless precision > max_terms * 4.1/e + 20.
ConvergenceReport convergence_scan(int k, const BigRational& u1, const BigRational& u2, int max_terms,
                                   long precision);

}  // namespace machinlike
