#include "machinlike/radical.hpp"

#include <string>

#include "machinlike/errors.hpp"

namespace machinlike {

RadicalPoint ladder_eval(int k, long precision) {
  if (k < 2) throw DomainError("ladder index k must be >= 2, got " + std::to_string(k));
  if (precision < k + 20)
    throw PrecisionError("ladder at k=" + std::to_string(k) + " needs at least " + std::to_string(k + 20) +
                         " digits, got " + std::to_string(precision));
  // 2 - a_{k-1} ~ (pi / 2^k)^2 cancels about 0.6k leading digits.
  const long working = precision + guard_digits() + k;
  const BigFloat two(2, working);
  BigFloat previous = sqrt(two, working);  // a_1
  BigFloat current = previous;
  for (int j = 2; j <= k; ++j) {
    previous = current;
    current = sqrt(two + previous, working);
  }
  const BigFloat ratio = current / sqrt(two - previous, working);
  return RadicalPoint{k, current.with_precision(precision), previous.with_precision(precision),
                      ratio.with_precision(precision), precision};
}

BigInt u1_of_k(int k) {
  if (k < 2 || k > kMaxLadderK)
    throw DomainError("k must lie in [2, " + std::to_string(kMaxLadderK) + "], got " + std::to_string(k));
  long precision = k + 40;
  BigInt last = ladder_eval(k, precision).ratio.floor();
  for (int level = 0; level < 12; ++level) {
    precision *= 2;
    BigInt next = ladder_eval(k, precision).ratio.floor();
    if (next == last) return next;
    last = std::move(next);
  }
  throw PrecisionError("floor of the ladder ratio did not stabilise for k=" + std::to_string(k));
}

}  // namespace machinlike
