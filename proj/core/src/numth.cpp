#include "prym/numth.hpp"

#include <algorithm>
#include <stdexcept>

namespace prym {

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // Deterministic Miller-Rabin bases for n < 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

namespace {

u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (mulmod_u64(x, x, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      d = gcd_u64(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
  std::vector<u64> primes;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factor_rec(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, int>> out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.push_back({p, 1});
  }
  return out;
}

u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto [p, e] : factor_u64(n)) r = r / p * (p - 1);
  return r;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out{1};
  for (auto [p, e] : factor_u64(n)) {
    size_t m = out.size();
    u64 pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < m; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 mult_order(u64 a, u64 n) {
  if (n == 1) return 1;
  if (gcd_u64(a % n, n) != 1) throw std::invalid_argument("mult_order: not coprime");
  u64 ord = euler_phi(n);
  for (auto [p, e] : factor_u64(ord)) {
    for (int i = 0; i < e && powmod_u64(a, ord / p, n) == 1; ++i) ord /= p;
  }
  return ord;
}

std::pair<Int, Int> squarefree_decompose(const Int& x) {
  if (x.is_zero()) return {Int(0), Int(1)};
  Int ax = x.abs();
  if (!ax.fits_long() && ax > Int("18446744073709551615"))
    throw std::invalid_argument("squarefree_decompose: operand too large");
  u64 n = 0;
  {
    // |x| fits in u64 here.
    std::string s = ax.str();
    for (char ch : s) n = n * 10 + static_cast<u64>(ch - '0');
  }
  u64 s = 1, f = 1;
  for (auto [p, e] : factor_u64(n)) {
    for (int i = 0; i + 1 < e; i += 2) f *= p;
    if (e & 1) s *= p;
  }
  Int fs(static_cast<long>(f));
  Int ss(static_cast<long>(s));
  if (x.sign() < 0) ss = -ss;
  return {ss, fs};
}

std::pair<Int, Rational> squarefree_decompose(const Rational& q) {
  if (q.is_zero()) throw std::invalid_argument("squarefree_decompose: zero");
  // q = num/den = (num*den) / den^2.
  auto [s, f] = squarefree_decompose(q.num() * q.den());
  return {s, Rational(f, q.den())};
}

int kronecker(const Int& a, const Int& n) { return mpz_kronecker(a.raw(), n.raw()); }

int kronecker(long a, long n) { return kronecker(Int(a), Int(n)); }

u64 quad_field_conductor(long d) {
  long ad = d < 0 ? -d : d;
  long rem = ((d % 4) + 4) % 4;
  return rem == 1 ? static_cast<u64>(ad) : static_cast<u64>(4 * ad);
}

}  // namespace prym
