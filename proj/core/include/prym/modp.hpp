#pragma once

#include <cstdint>
#include <vector>

#include "prym/numth.hpp"

namespace prym {

// Montgomery arithmetic modulo an odd prime p < 2^62.
struct Mont {
  u64 p = 0, pinv = 0, r1 = 0, r2 = 0;  // r1 = 2^64 mod p, r2 = 2^128 mod p
  void init(u64 prime);
  u64 redc(u128 t) const {
    u64 m = static_cast<u64>(t) * pinv;
    u64 r = static_cast<u64>((t + (u128)m * p) >> 64);
    return r >= p ? r - p : r;
  }
  u64 mul(u64 a, u64 b) const { return redc((u128)a * b); }
  u64 add(u64 a, u64 b) const {
    u64 r = a + b;
    return r >= p ? r - p : r;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 to(u64 x) const { return mul(x % p, r2); }
  u64 from(u64 x) const { return redc(x); }
  u64 one() const { return r1; }
  u64 pow(u64 a, u64 e) const {
    u64 r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

// F_{p^k} with a monic modulus x^k - c when available (binomial = true), or a
// generic monic irreducible modulus. Elements are length-k coefficient vectors
// in Montgomery form. Carries a table of the powers of a fixed element omega
// of multiplicative order N, so that zeta_N -> omega defines a ring embedding
// of Z[zeta_N] whose kernel misses every rational prime except p.
struct FpkField {
  Mont mont;
  int k = 1;
  long N = 1;
  bool binomial = true;
  u64 binc = 0;                 // c (Montgomery) when binomial
  std::vector<u64> mod_tail;    // f = x^k - sum tail[i] x^i when not binomial
  std::vector<u64> omega_pow;   // N*k entries, omega^j at row j

  void mul_full(const u64* a, const u64* b, u64* out) const;   // out length k
  // Single coordinate (coord < k) of a*b without forming the product.
  u64 mul_coord(const u64* a, const u64* b, int coord) const;
  bool is_zero(const u64* a) const;
  const u64* omega(long j) const { return omega_pow.data() + static_cast<size_t>(j) * k; }
};

// Builds F_{p^k} with an order-N element; deterministic for a given seed slot.
// Guarantees p does not divide 2N. Returns false if no suitable prime found.
bool build_fpk_for_conductor(long N, int slot, FpkField* out);

// Fast necessary test for the existence of a rational point (beta, gamma) on
// the resultant variety of (a x^2 + b x + c, x^2 + beta x + gamma) for the
// torsion-equation coefficients at (e_XY, e_U). Never rejects a pair that has
// a real quadratic solution (denominator support of true solutions divides
// 2N, and the fields avoid those primes). May accept spurious pairs.
class PairFilter {
 public:
  // stratum_tag: 0 = Prym(2,1,1), 1 = Prym(2,2).
  PairFilter(long N, int stratum_tag);
  bool pass(long eXY, long eU) const;
  long conductor() const { return N_; }

 private:
  bool pass_one(const FpkField& F, long eXY, long eU) const;
  long N_;
  int stratum_;
  FpkField f1_, f2_;
  bool have2_ = false;
};

}  // namespace prym
