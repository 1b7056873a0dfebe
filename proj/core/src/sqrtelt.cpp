#include "prym/sqrtelt.hpp"

#include <stdexcept>

#include "prym/numth.hpp"

namespace prym {

CycloElt sqrt_in_cyclo(long d, long N) {
  if (d <= 1) throw std::invalid_argument("sqrt_in_cyclo: d > 1 squarefree required");
  auto [s, f] = squarefree_decompose(Int(d));
  if (!f.is_one()) throw std::invalid_argument("sqrt_in_cyclo: d must be squarefree");
  long cond = static_cast<long>(quad_field_conductor(d));
  if (N % cond != 0) throw std::invalid_argument("sqrt_in_cyclo: Q(sqrt(d)) not in Q(zeta_N)");

  CycloElt acc = CycloElt::from_rational(N, Rational(1));
  int three_mod_four = 0;
  long m = d;
  if (m % 2 == 0) {
    // sqrt(2) = zeta_8 + zeta_8^-1.
    acc = acc * (CycloElt::zeta(N, N / 8) + CycloElt::zeta(N, -(N / 8)));
    m /= 2;
  }
  for (auto [p64, e] : factor_u64(static_cast<u64>(m))) {
    long p = static_cast<long>(p64);
    // Quadratic Gauss sum: sqrt(p) for p=1 mod 4, i*sqrt(p) for p=3 mod 4.
    CycloElt g = CycloElt::zero(N);
    for (long a = 1; a < p; ++a) {
      int chi = kronecker(a, p);
      if (chi == 1)
        g = g + CycloElt::zeta(N, a * (N / p));
      else
        g = g - CycloElt::zeta(N, a * (N / p));
    }
    acc = acc * g;
    if (p % 4 == 3) ++three_mod_four;
  }
  // Each p = 3 mod 4 contributed a factor i; divide by i^t.
  int t = three_mod_four;
  if ((t / 2) % 2 == 1) acc = -acc;            // i^-2 = -1 per pair
  if (t % 2 == 1) acc = acc * CycloElt::zeta(N, -(N / 4));  // one leftover 1/i
  return acc;
}

int sqrt_galois_character(long d, long j) {
  long rem = ((d % 4) + 4) % 4;
  long disc = (rem == 1) ? d : 4 * d;
  return kronecker(disc, j);
}

std::vector<long> real_quadratic_subfields(long N) {
  std::vector<long> out;
  // Any squarefree product of primes dividing N (2 allowed only if 8 | N for
  // even d; odd d = 3 mod 4 needs 4 | N).
  auto fac = factor_u64(static_cast<u64>(N));
  std::vector<long> primes;
  for (auto [p, e] : fac) primes.push_back(static_cast<long>(p));
  size_t m = primes.size();
  for (size_t mask = 1; mask < (size_t(1) << m); ++mask) {
    long d = 1;
    for (size_t i = 0; i < m; ++i)
      if (mask & (size_t(1) << i)) d *= primes[i];
    if (d <= 1) continue;
    if (N % static_cast<long>(quad_field_conductor(d)) == 0) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace prym
