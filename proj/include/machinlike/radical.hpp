#pragma once

// Nested-radical ladder a_1 = sqrt(2), a_k = sqrt(2 + a_{k-1}) and the
// integer cotangent u1 = floor(a_k / sqrt(2 - a_{k-1})).

#include "machinlike/bigfloat.hpp"
#include "machinlike/bigint.hpp"

namespace machinlike {

inline constexpr int kMaxLadderK = 64;

struct RadicalPoint {
  int k = 0;
  BigFloat a_k;
  BigFloat a_k_minus_1;
  // a_k / sqrt(2 - a_{k-1}), roughly 2^(k+1) / pi
  BigFloat ratio;
  long precision = 0;
};

// Requires k >= 2 and precision >= k + 20 (PrecisionError otherwise).
RadicalPoint ladder_eval(int k, long precision);

// floor of the ladder ratio, recomputed at doubling precision until two
// successive levels agree. Supported range 2 <= k <= kMaxLadderK.
BigInt u1_of_k(int k);

}  // namespace machinlike
