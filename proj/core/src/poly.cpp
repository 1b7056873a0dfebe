#include "prym/poly.hpp"

#include <algorithm>

#include "prym/numth.hpp"

namespace prym {

std::vector<Rational> rational_roots(const UniPoly<Rational>& f) {
  if (f.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  std::vector<Rational> roots;
  UniPoly<Rational> g = f;

  // Strip roots at zero.
  while (!g.is_zero() && g[0].is_zero()) {
    roots.push_back(Rational(0));
    std::vector<Rational> v(g.coeffs().begin() + 1, g.coeffs().end());
    g = UniPoly<Rational>(std::move(v));
  }
  if (g.degree() < 1) return roots;

  // Clear denominators to an integer polynomial.
  Int den(1);
  for (const auto& c : g.coeffs()) den = Int::lcm(den, c.den());
  std::vector<Int> ic;
  ic.reserve(g.coeffs().size());
  for (const auto& c : g.coeffs()) ic.push_back(Int::divexact(c.num() * den, c.den()));

  auto to_u64 = [](const Int& v) -> u64 {
    Int av = v.abs();
    u64 n = 0;
    for (char ch : av.str()) n = n * 10 + static_cast<u64>(ch - '0');
    return n;
  };
  std::vector<u64> ps = divisors(to_u64(ic.front()));
  std::vector<u64> qs = divisors(to_u64(ic.back()));

  std::vector<Rational> candidates;
  for (u64 p : ps)
    for (u64 q : qs) {
      if (gcd_u64(p, q) != 1) continue;
      candidates.push_back(Rational(static_cast<long>(p), static_cast<long>(q)));
      candidates.push_back(Rational(-static_cast<long>(p), static_cast<long>(q)));
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const Rational& r : candidates) {
    // Deflate repeatedly for multiplicity.
    while (g.degree() >= 1 && g.eval(r).is_zero()) {
      roots.push_back(r);
      auto [q2, rem] = UniPoly<Rational>::divmod(
          g, UniPoly<Rational>(std::vector<Rational>{-r, Rational(1)}));
      g = q2;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace prym
