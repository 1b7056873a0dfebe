#include <algorithm>
#include <cstdio>
#include <iostream>

#include "prym/cyclo.hpp"
#include "prym/modp.hpp"
#include "prym/solver.hpp"
#include "prym/sparse.hpp"
#include "prym/sqrtelt.hpp"

using namespace prym;

int main() {
  std::cout << "Phi_1 deg " << cyclotomic_polynomial(1).degree() << "\n";
  auto phi12 = cyclotomic_polynomial(12);
  std::cout << "Phi_12: ";
  for (auto& c : phi12.coeffs()) std::cout << c << " ";
  std::cout << "\n";

  CycloElt z6 = CycloElt::zeta(6);
  std::cout << "z6^2 = " << (z6 * z6).str() << "\n";

  CycloElt t = CycloElt::zeta(12, 1) + CycloElt::zeta(12, -1);
  auto mp = t.min_poly();
  std::cout << "minpoly(2cos(pi/6)): ";
  for (auto& c : mp.coeffs()) std::cout << c << " ";
  std::cout << "\n";
  auto q = t.as_quadratic();
  std::cout << "as_quadratic: " << (q ? q->str() : "none") << "\n";

  CycloElt w33 = sqrt_in_cyclo(33, 33);
  std::cout << "sqrt33^2 = " << (w33 * w33).str() << "\n";

  SparseQ s5 = sparse_from(5, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}});
  std::cout << "sum zeta5 zero? " << sparse_is_zero(s5) << "\n";

  SparseQ ss = sparse_sqrt(33, 33);
  SparseQ sq33 = sparse_mul(ss, ss);
  SparseQ m33 = sparse_from(33, {{0, Rational(33)}});
  std::cout << "sparse sqrt33^2 == 33? " << sparse_is_zero(sparse_sub(sq33, m33)) << "\n";

  auto abc = quadratic_coefficients(Stratum::Prym211, 6, 3, 2);
  auto roots = solve_relation_instance(abc[0], abc[1], abc[2]);
  std::cout << "(6,3,2) dense roots:";
  for (auto& r : roots) std::cout << " " << r.str();
  std::cout << "\n";

  auto roots2 = solve_pair_exact(Stratum::Prym211, 6, 3, 2);
  std::cout << "(6,3,2) sparse roots:";
  for (auto& r : roots2) std::cout << " " << r.r.str();
  std::cout << "\n";

  auto r611 = solve_pair_exact(Stratum::Prym211, 6, 1, 1);
  std::cout << "(6,1,1) sparse roots:";
  for (auto& r : r611) std::cout << " " << r.r.str();
  std::cout << "\n";

  auto r1223 = solve_pair_exact(Stratum::Prym22, 12, 2, 3);
  std::cout << "22 (12,2,3) roots:";
  for (auto& r : r1223) std::cout << " " << r.r.str();
  std::cout << "\n";

  auto n8 = admissible_orders(8, 2);
  std::cout << "N(8) size " << n8.size() << " max " << n8.back() << "\n";
  for (long w : {408L, 1560L, 1848L, 1320L, 840L}) {
    bool in = std::find(n8.begin(), n8.end(), w) != n8.end();
    std::cout << "  contains " << w << "? " << in << "\n";
  }
  auto n4 = admissible_orders(4, 2);
  std::cout << "N(4) size " << n4.size() << " max " << n4.back() << "\n";

  std::cout << "identity 211: " << verify_resultant_identity(Stratum::Prym211) << "\n";
  std::cout << "identity 22: " << verify_resultant_identity(Stratum::Prym22) << "\n";

  try {
    PairFilter f(168, 0);
    int pass = 0, total = 0;
    for (long e1 = 1; e1 < 168; ++e1)
      for (long e2 = 1; e2 < 168; ++e2) {
        if (gcd_u64(gcd_u64(e1, e2), 168) != 1) continue;
        if ((2 * e2) % 168 == 0) continue;
        ++total;
        if (f.pass(e1, e2)) ++pass;
      }
    std::cout << "filter N=168: " << pass << "/" << total << " pass\n";
  } catch (const std::exception& e) {
    std::cout << "filter construction failed: " << e.what() << "\n";
  }
  return 0;
}
