#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "treesieve/gf64.hpp"
#include "treesieve/rng.hpp"

using namespace treesieve;

TEST_CASE("addition is xor with the expected identities") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    Gf64 a = Gf64::sample(rng);
    CHECK(a + a == Gf64::zero());
    CHECK(a + Gf64::zero() == a);
  }
  CHECK(Gf64(0x3) + Gf64(0x5) == Gf64(0x6));
}

TEST_CASE("multiplication identities and the hand-reduced overflow case") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    Gf64 a = Gf64::sample(rng);
    CHECK(a * Gf64::one() == a);
    CHECK(a * Gf64::zero() == Gf64::zero());
  }
  // x^63 * x = x^64 = x^4 + x^3 + x + 1
  CHECK(Gf64(0x8000000000000000ull) * Gf64(0x2) == Gf64(0x1B));
}

TEST_CASE("distributivity on random triples") {
  Rng rng(13);
  for (int i = 0; i < 100000; ++i) {
    Gf64 a = Gf64::sample(rng), b = Gf64::sample(rng), c = Gf64::sample(rng);
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("multiplication is commutative and associative") {
  Rng rng(17);
  for (int i = 0; i < 20000; ++i) {
    Gf64 a = Gf64::sample(rng), b = Gf64::sample(rng), c = Gf64::sample(rng);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("frobenius: squaring is additive") {
  Rng rng(19);
  for (int i = 0; i < 20000; ++i) {
    Gf64 a = Gf64::sample(rng), b = Gf64::sample(rng);
    CHECK((a + b).squared() == a.squared() + b.squared());
  }
}

TEST_CASE("multiplication by a nonzero constant is injective") {
  Rng rng(23);
  Gf64 gmul = Gf64::sample(rng);
  while (gmul.is_zero()) gmul = Gf64::sample(rng);
  std::set<uint64_t> inputs, outputs;
  for (int i = 0; i < 5000; ++i) {
    Gf64 t = Gf64::sample(rng);
    if (!inputs.insert(t.bits()).second) continue;
    outputs.insert((gmul * t).bits());
  }
  CHECK(inputs.size() == outputs.size());
}

TEST_CASE("inverse: identity, involution and the exponentiation oracle") {
  CHECK(Gf64::one().inverse() == Gf64::one());
  CHECK_THROWS_AS(Gf64::zero().inverse(), std::invalid_argument);
  Rng rng(29);
  for (int i = 0; i < 10000; ++i) {
    Gf64 a = Gf64::sample(rng);
    if (a.is_zero()) continue;
    CHECK(a * a.inverse() == Gf64::one());
    CHECK(a.inverse().inverse() == a);
  }
}

#if defined(__PCLMUL__)
TEST_CASE("hardware and portable multiply agree bit-exactly") {
  Rng rng(31);
  for (int i = 0; i < 50000; ++i) {
    uint64_t a = rng.next_u64(), b = rng.next_u64();
    CHECK(Gf64::mul_clmul(a, b) == Gf64::mul_portable(a, b));
  }
  CHECK(Gf64::mul_clmul(0x8000000000000000ull, 2) == 0x1Bull);
}
#endif

TEST_CASE("sampling is seed-deterministic and distinct across seeds") {
  Rng a1(42), a2(42), b(43);
  bool all_equal = true, clash = true;
  for (int i = 0; i < 1000; ++i) {
    Gf64 x = Gf64::sample(a1), y = Gf64::sample(a2), z = Gf64::sample(b);
    all_equal = all_equal && (x == y);
    clash = clash && (x == z);
  }
  CHECK(all_equal);
  CHECK_FALSE(clash);
}

TEST_CASE("per-bit bias of sampled elements stays within 3 sigma") {
  Rng rng(37);
  const int n = 1000000;
  std::vector<int> ones(64, 0);
  for (int i = 0; i < n; ++i) {
    uint64_t v = Gf64::sample(rng).bits();
    for (int bt = 0; bt < 64; ++bt) ones[bt] += (v >> bt) & 1;
  }
  const double sigma = std::sqrt(0.25 * n);
  for (int bt = 0; bt < 64; ++bt) CHECK(std::abs(ones[bt] - n / 2.0) <= 3.0 * sigma);
}
