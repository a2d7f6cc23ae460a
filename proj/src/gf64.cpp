#include "treesieve/gf64.hpp"

#include <stdexcept>

#if defined(__PCLMUL__)
#include <immintrin.h>
#include <wmmintrin.h>
#endif

namespace treesieve {

namespace {

// Reduce a 128-bit carryless product (hi:lo) modulo x^64 + x^4 + x^3 + x + 1.
inline uint64_t reduce128(uint64_t hi, uint64_t lo) {
  // x^64 == x^4 + x^3 + x + 1, folded twice: the first fold spills at most
  // 4 bits above the word, the second is final.
  uint64_t spill = (hi >> 60) ^ (hi >> 61) ^ (hi >> 63);
  lo ^= (hi << 4) ^ (hi << 3) ^ (hi << 1) ^ hi;
  lo ^= (spill << 4) ^ (spill << 3) ^ (spill << 1) ^ spill;
  return lo;
}

}  // namespace

uint64_t Gf64::mul_portable(uint64_t a, uint64_t b) {
  uint64_t lo = 0, hi = 0;
  for (int i = 0; i < 64; ++i) {
    if ((b >> i) & 1u) {
      lo ^= a << i;
      if (i) hi ^= a >> (64 - i);
    }
  }
  return reduce128(hi, lo);
}

#if defined(__PCLMUL__)
uint64_t Gf64::mul_clmul(uint64_t a, uint64_t b) {
  __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
  __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
  __m128i prod = _mm_clmulepi64_si128(va, vb, 0x00);
  uint64_t lo = static_cast<uint64_t>(_mm_cvtsi128_si64(prod));
  uint64_t hi = static_cast<uint64_t>(_mm_extract_epi64(prod, 1));
  // fold hi with two more carryless multiplies by the low modulus bits
  __m128i vmod = _mm_set_epi64x(0, static_cast<long long>(kModulusLow));
  __m128i f1 = _mm_clmulepi64_si128(_mm_set_epi64x(0, static_cast<long long>(hi)), vmod, 0x00);
  uint64_t f1lo = static_cast<uint64_t>(_mm_cvtsi128_si64(f1));
  uint64_t f1hi = static_cast<uint64_t>(_mm_extract_epi64(f1, 1));
  __m128i f2 = _mm_clmulepi64_si128(_mm_set_epi64x(0, static_cast<long long>(f1hi)), vmod, 0x00);
  return lo ^ f1lo ^ static_cast<uint64_t>(_mm_cvtsi128_si64(f2));
}
#endif

uint64_t Gf64::mul(uint64_t a, uint64_t b) {
#if defined(__PCLMUL__)
  return mul_clmul(a, b);
#else
  return mul_portable(a, b);
#endif
}

Gf64 Gf64::pow(uint64_t e) const {
  Gf64 base = *this;
  Gf64 acc = Gf64::one();
  while (e) {
    if (e & 1u) acc *= base;
    base = base.squared();
    e >>= 1;
  }
  return acc;
}

Gf64 Gf64::inverse() const {
  if (is_zero()) throw std::invalid_argument("Gf64::inverse: zero has no inverse");
  // a^(2^64 - 2) by square-and-multiply; exponent is 0xFFFF...FE.
  return pow(~0ull - 1ull);
}

std::string Gf64::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s = "0x";
  bool started = false;
  for (int shift = 60; shift >= 0; shift -= 4) {
    unsigned d = (bits_ >> shift) & 0xfu;
    if (d != 0 || started || shift == 0) {
      s.push_back(digits[d]);
      started = true;
    }
  }
  return s;
}

}  // namespace treesieve
