#ifndef TREESIEVE_GF64_HPP_
#define TREESIEVE_GF64_HPP_

#include <cstdint>
#include <string>

#include "treesieve/rng.hpp"

namespace treesieve {

/* Element of GF(2^64) = GF(2)[x] / (x^64 + x^4 + x^3 + x + 1).
   Addition is XOR; multiplication is a carryless product reduced by the
   modulus. All operations are pure value functions. */
class Gf64 {
 public:
  // low bits of the modulus (x^4 + x^3 + x + 1)
  static constexpr uint64_t kModulusLow = 0b11011u;

  constexpr Gf64() = default;
  constexpr explicit Gf64(uint64_t bits) : bits_(bits) {}

  static constexpr Gf64 zero() { return Gf64(0); }
  static constexpr Gf64 one() { return Gf64(1); }

  constexpr uint64_t bits() const { return bits_; }
  constexpr bool is_zero() const { return bits_ == 0; }

  friend constexpr Gf64 operator+(Gf64 a, Gf64 b) { return Gf64(a.bits_ ^ b.bits_); }
  friend constexpr Gf64 operator-(Gf64 a, Gf64 b) { return a + b; }
  Gf64& operator+=(Gf64 b) { bits_ ^= b.bits_; return *this; }

  friend Gf64 operator*(Gf64 a, Gf64 b) { return Gf64(mul(a.bits_, b.bits_)); }
  Gf64& operator*=(Gf64 b) { bits_ = mul(bits_, b.bits_); return *this; }

  friend constexpr bool operator==(Gf64 a, Gf64 b) { return a.bits_ == b.bits_; }
  friend constexpr bool operator!=(Gf64 a, Gf64 b) { return a.bits_ != b.bits_; }

  Gf64 squared() const { return *this * *this; }
  Gf64 pow(uint64_t e) const;

  // Multiplicative inverse via a^(2^64 - 2); rejects zero.
  Gf64 inverse() const;

  // Uniform over all 2^64 elements.
  static Gf64 sample(Rng& rng) { return Gf64(rng.next_u64()); }

  std::string to_hex() const;

  // Reduced carryless product. Both routes are exposed so tests can pin
  // them against each other bit-exactly.
  static uint64_t mul(uint64_t a, uint64_t b);
  static uint64_t mul_portable(uint64_t a, uint64_t b);
#if defined(__PCLMUL__)
  static uint64_t mul_clmul(uint64_t a, uint64_t b);
  static constexpr bool has_clmul = true;
#else
  static constexpr bool has_clmul = false;
#endif

 private:
  uint64_t bits_ = 0;
};

}  // namespace treesieve

#endif  // TREESIEVE_GF64_HPP_
