#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "prym/rational.hpp"

namespace prym {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod_u64(u64 a, u64 b, u64 m);
u64 powmod_u64(u64 a, u64 e, u64 m);
bool is_prime_u64(u64 n);

// Prime factorization (trial division + Pollard rho), pairs (p, exponent), p ascending.
std::vector<std::pair<u64, int>> factor_u64(u64 n);

u64 euler_phi(u64 n);
std::vector<u64> divisors(u64 n);
u64 gcd_u64(u64 a, u64 b);

// Multiplicative order of a modulo n; requires gcd(a, n) = 1.
u64 mult_order(u64 a, u64 n);

// x = s * f^2 with s squarefree; returns (s, f). Sign of s follows x.
std::pair<Int, Int> squarefree_decompose(const Int& x);

// Squarefree part of a rational: q = s * (f)^2 with s a squarefree integer.
// Returns (s, f) with f rational; q must be nonzero.
std::pair<Int, Rational> squarefree_decompose(const Rational& q);

// Kronecker symbol (a|n).
int kronecker(const Int& a, const Int& n);
int kronecker(long a, long n);

// Conductor of Q(sqrt(d)) for squarefree d != 0,1: |d| if d = 1 mod 4, else 4|d|.
u64 quad_field_conductor(long d);

}  // namespace prym
