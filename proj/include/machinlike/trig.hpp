#pragma once

// Cross-check of the iterated u2 against its closed trigonometric form
//
//   u2 = cos(t) / (1 - sin(t)),   t = 2^(k-1) arctan(2 u1 / (u1^2 - 1)),
//
// together with the identification sin(t) = y_k, cos(t) = x_k.

#include <string>

#include "machinlike/bigfloat.hpp"
#include "machinlike/bigint.hpp"

namespace machinlike {

struct TrigValues {
  BigFloat sin;
  BigFloat cos;
  // 1 - sin, evaluated without cancellation near sin = 1.
  BigFloat one_minus_sin;
};

// sin and cos of `angle` (any size) at `precision` digits, reducing
// against a reference pi carried at precision + 2 * (decimal size of angle).
TrigValues sin_cos(const BigFloat& angle, long precision);

// arctan for arbitrary real x.
BigFloat atan(const BigFloat& x, long precision);

// 2^(k-1) arctan(2 u1/(u1^2 - 1)), reduced into [0, 2 pi).
BigFloat reduced_angle(const BigRational& u1, int k, long precision);

// PrecisionError when 1 - sin(t) falls below 10^-precision.
BigFloat u2_trig(const BigRational& u1, int k, long precision);

struct RationalSinCos {
  BigRational sin;  // y_k
  BigRational cos;  // x_k
};

RationalSinCos rational_sin_cos(const BigRational& u1, int k);

struct TrigCheckResult {
  int k = 0;
  BigRational u1;
  BigRational u2_iterative;
  BigFloat u2_trig;
  long agreement_digits = 0;
  BigRational sin_rational;
  BigRational cos_rational;
  // Digits to which floating sin(t), cos(t) reproduce y_k, x_k.
  long sin_cos_digits = 0;
  // 2^(k-1) arctan(1/u1) + arctan((1 - sin)/cos) vs pi/4.
  long assembly_digits = 0;
  bool unit_circle = false;
  bool signs_match = false;

  std::string to_json() const;
};

TrigCheckResult trig_check(const BigRational& u1, int k, long precision);

}  // namespace machinlike
