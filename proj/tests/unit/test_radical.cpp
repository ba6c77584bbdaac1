#include <doctest.h>

#include <vector>

#include "machinlike/errors.hpp"
#include "machinlike/radical.hpp"

using namespace machinlike;

namespace {

// floor(a_k / sqrt(2 - a_{k-1})) for k = 2..27, from an independent 80-digit run
const std::vector<long> kU1 = {2,      5,      10,      20,      40,       81,       162,      325,      651,
                               1303,   2607,   5215,    10430,   20860,    41721,    83443,    166886,   333772,
                               667544, 1335088, 2670176, 5340353, 10680707, 21361414, 42722829, 85445659};

}  // namespace

TEST_CASE("ladder ratios") {
  CHECK(ladder_eval(3, 40).ratio.to_fixed(20) == "5.02733949212584810451");
  CHECK(ladder_eval(6, 40).ratio.to_fixed(20) == "40.73548387208330180074");
  // reference digits are truncated, not rounded
  CHECK(ladder_eval(27, 60).ratio.to_scientific(25).substr(0, 22) == "8.54456594470539448216");
  CHECK(ladder_eval(27, 60).ratio.decimal_exponent() == 7);
  CHECK(ladder_eval(2, 40).ratio.to_fixed(20) == "2.41421356237309504880");
  CHECK(ladder_eval(10, 40).ratio.to_fixed(20) == "651.89813557739378661810");
}

TEST_CASE("ladder argument checks") {
  CHECK_THROWS_AS(ladder_eval(1, 50), DomainError);
  CHECK_THROWS_AS(ladder_eval(30, 40), PrecisionError);
  CHECK_THROWS_AS(u1_of_k(1), DomainError);
  CHECK_THROWS_AS(u1_of_k(kMaxLadderK + 1), DomainError);
}

TEST_CASE("u1 values") {
  CHECK(u1_of_k(3) == BigInt(5));
  CHECK(u1_of_k(6) == BigInt(40));
  CHECK(u1_of_k(27) == BigInt(85445659));
  for (int k = 2; k <= 27; ++k) {
    CAPTURE(k);
    CHECK(u1_of_k(k) == BigInt(kU1[static_cast<std::size_t>(k - 2)]));
  }
}

TEST_CASE("u1 roughly doubles with k") {
  BigInt prev = u1_of_k(2);
  for (int k = 3; k <= 27; ++k) {
    CAPTURE(k);
    const BigInt next = u1_of_k(k);
    const BigInt base = BigInt(2) * prev;
    CHECK(next >= base);
    CHECK(next <= base + BigInt(2));
    prev = next;
  }
}

TEST_CASE("a_k increases toward 2") {
  const long p = 120;
  BigFloat prev_a = ladder_eval(2, p).a_k_minus_1;
  BigFloat prev_gap = BigFloat(2, p) - prev_a;
  for (int k = 2; k <= 40; ++k) {
    CAPTURE(k);
    const RadicalPoint pt = ladder_eval(k, p);
    CHECK(pt.a_k > prev_a);
    CHECK(pt.a_k < BigFloat(2, p));
    const BigFloat gap = BigFloat(2, p) - pt.a_k;
    CHECK(gap < prev_gap);
    CHECK(gap.sign() > 0);
    prev_a = pt.a_k;
    prev_gap = gap;
  }
}

TEST_CASE("floor is stable under doubled precision") {
  for (int k = 2; k <= kMaxLadderK; k += 3) {
    CAPTURE(k);
    const BigInt u = u1_of_k(k);
    const long p = k + 40;
    CHECK(ladder_eval(k, 2 * p).ratio.floor() == u);
    CHECK(ladder_eval(k, 4 * p).ratio.floor() == u);
  }
}
