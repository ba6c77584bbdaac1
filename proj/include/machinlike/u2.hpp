#pragma once

// Exact second cotangent u2 of the two-term formula
//
//   pi/4 = 2^(k-1) arctan(1/u1) + arctan(1/u2)
//
// computed by k-1 exact squarings of x_1 + i y_1 = (u1 + i)/(u1 - i).

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

#include "machinlike/bigint.hpp"

namespace machinlike {

// Cap on k for routine use; beyond it the numerator of u2 passes ~2 million
// digits and doubles with every further step.
inline constexpr int kDeskScaleMaxK = 20;

struct ComplexRationalState {
  int n = 1;
  BigRational x;
  BigRational y;
};

// x_1 = (u1^2 - 1)/(u1^2 + 1), y_1 = 2 u1/(u1^2 + 1). DomainError unless u1 > 1.
ComplexRationalState init_state(const BigRational& u1);

// (x, y) -> (x^2 - y^2, 2xy), n -> n + 1.
ComplexRationalState square_step(const ComplexRationalState& s);

// x^2 + y^2 == 1, exactly.
bool on_unit_circle(const ComplexRationalState& s);

// Runs init_state and k-1 square_steps, handing every state (n = 1..k) to
// `visit`. Returns the final state.
ComplexRationalState iterate_states(const BigRational& u1, int k,
                                    const std::function<void(const ComplexRationalState&)>& visit = {});

// u2 = x_k / (1 - y_k). Throws DegenerateError if y_k == 1 and
// ConsistencyError if the final state leaves the unit circle.
BigRational u2_of(const BigRational& u1, int k);

// Same value through the un-reduced shared denominator (u1^2+1)^(2^(k-1)):
// u2 = num(x_k) / (den(y_k) - num(y_k)). Integer u1 only.
BigRational u2_shared_denominator(const BigInt& u1, int k);

// Same value from the state one squaring earlier: on the unit circle
// x_k = (x - y)(x + y) and 1 - y_k = (x - y)^2, so u2 = (x + y)/(x - y) with
// (x, y) = (x_{k-1}, y_{k-1}). Needs half the digits and no large gcd.
BigRational u2_half_step(const BigRational& u1, int k);

// Independent route: ((u1+i)/(u1-i))^(2^(k-1)) by complex rational squaring,
// then u2 = 2/(z - i) - i. Restricted to k <= 12; throws ConsistencyError if
// the imaginary part fails to cancel.
inline constexpr int kDirectOracleMaxK = 12;
BigRational u2_direct_oracle(const BigRational& u1, int k);

struct TwoTermFormula {
  int k = 0;
  BigInt u1;
  BigRational u2;
};

// u1 from the radical ladder, u2 from the squaring iteration (u2_half_step
// above kDeskScaleMaxK).
TwoTermFormula generate_two_term(int k);

// Fraction text: optional '#' comment lines, then one "[-]num/den" line.
std::string format_fraction(const BigRational& q);
BigRational parse_fraction(std::string_view text);

void write_fraction_file(const std::filesystem::path& path, const BigRational& q);
BigRational read_fraction_file(const std::filesystem::path& path);

}  // namespace machinlike
