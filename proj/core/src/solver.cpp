#include "prym/solver.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <thread>

#include "prym/modp.hpp"
#include "prym/sparse.hpp"
#include "prym/sqrtelt.hpp"

namespace prym {

std::string stratum_name(Stratum s) { return s == Stratum::Prym211 ? "2-1-1" : "2-2"; }

std::optional<Stratum> stratum_parse(const std::string& s) {
  if (s == "2-1-1" || s == "211" || s == "Prym211") return Stratum::Prym211;
  if (s == "2-2" || s == "22" || s == "Prym22") return Stratum::Prym22;
  return std::nullopt;
}

const std::vector<EqTerm>& equation_terms(Stratum s) {
  // Term order follows the sources' labeling 1..8.
  static const std::vector<EqTerm> t211 = {
      {1, 3, 1, 0, 0},    // r^2 zXY zU^3
      {1, 0, -1, 0, 0},   // -r^2 zXY
      {1, 1, -1, 0, 4},   // (4 - r^2) zXY zU
      {1, 2, 1, 0, -4},   // (r^2 - 4) zXY zU^2
      {2, 2, 0, -1, 2},   // (2 - r) zXY^2 zU^2
      {0, 2, 0, 1, 2},    // (r + 2) zU^2
      {2, 1, 0, -1, -2},  // -(r + 2) zXY^2 zU
      {0, 1, 0, 1, -2},   // (r - 2) zU
  };
  static const std::vector<EqTerm> t22 = {
      {1, 0, 1, -1, 0},   // r(r-1) zXY
      {2, 4, 1, -1, 0},   // r(r-1) zXY^2 zU^4
      {1, 2, -2, 0, 2},   // -2(r^2-1) zXY zU^2
      {2, 2, -2, 0, 2},   // -2(r^2-1) zXY^2 zU^2
      {2, 0, 1, 1, 0},    // r(r+1) zXY^2
      {1, 4, 1, 1, 0},    // r(r+1) zXY zU^4
      {3, 2, 0, 0, -2},   // -2 zXY^3 zU^2
      {0, 2, 0, 0, -2},   // -2 zU^2
  };
  return s == Stratum::Prym211 ? t211 : t22;
}

int solution_cmp(const RelationSolution& x, const RelationSolution& y) {
  if (x.N != y.N) return x.N < y.N ? -1 : 1;
  if (x.eXY != y.eXY) return x.eXY < y.eXY ? -1 : 1;
  if (x.eU != y.eU) return x.eU < y.eU ? -1 : 1;
  return QuadElt::lex_cmp(x.r, y.r);
}

// ---------------------------------------------------------------------------
// Admissible orders
// ---------------------------------------------------------------------------

namespace {

long dvza_weight(long p, long divisor_arg) {
  long g = static_cast<long>(gcd_u64(static_cast<u64>(p - 1), static_cast<u64>(divisor_arg)));
  return (p - 1) / g - 1;
}

bool dvza_size_ok(const std::vector<std::pair<long, int>>& primes, int k, int d,
                  DvzaReading reading) {
  auto sum_for = [&](long arg) {
    long s = 0;
    for (auto [p, e] : primes) s += dvza_weight(p, arg);
    return s;
  };
  switch (reading) {
    case DvzaReading::Literal:
      return sum_for(d) <= k - 2;
    case DvzaReading::Doubled:
      return sum_for(2 * d) <= k - 2;
    case DvzaReading::Union:
      return sum_for(d) <= k - 2 || sum_for(2 * d) <= k - 2;
  }
  return false;
}

}  // namespace

std::vector<long> admissible_orders(int k, int d, DvzaReading reading) {
  if (k < 2 || d < 1) throw std::invalid_argument("admissible_orders: k >= 2, d >= 1");
  // Prime power cap: v_p(N) <= v_p(2d) + 1.
  // Candidate primes: weight under the widest reading must fit in k - 2.
  long want = 2 * d;
  std::vector<long> primes;
  for (long p = 2;; ++p) {
    if (!is_prime_u64(static_cast<u64>(p))) continue;
    long w = dvza_weight(p, reading == DvzaReading::Literal ? d : 2 * d);
    if (reading == DvzaReading::Union) w = std::min(w, dvza_weight(p, d));
    if (p > 2 && w > k - 2) {
      // Weights grow linearly with p; once even (p-1)/(2d)-1 exceeds the
      // budget no larger prime can fit.
      if ((p - 1) / (2 * d) - 1 > k - 2) break;
      continue;
    }
    primes.push_back(p);
  }
  std::vector<long> caps;
  for (long p : primes) {
    int v = 0;
    long q = want;
    while (q % p == 0) q /= p, ++v;
    caps.push_back(v + 1);
  }
  std::set<long> out;
  // DFS over exponent vectors.
  std::vector<int> expo(primes.size(), 0);
  std::function<void(size_t, long)> rec = [&](size_t i, long n) {
    if (i == primes.size()) {
      std::vector<std::pair<long, int>> pf;
      for (size_t j = 0; j < primes.size(); ++j)
        if (expo[j] > 0) pf.push_back({primes[j], expo[j]});
      if (dvza_size_ok(pf, k, d, reading)) out.insert(n);
      return;
    }
    long pk = 1;
    for (int e = 0; e <= caps[i]; ++e) {
      expo[i] = e;
      rec(i + 1, n * pk);
      if (e < caps[i]) {
        if (n > (1L << 40) / primes[i] / pk) break;
        pk *= primes[i];
      }
    }
    expo[i] = 0;
  };
  rec(0, 1);
  return std::vector<long>(out.begin(), out.end());
}

std::vector<long> stratum_order_set(Stratum s) {
  std::vector<long> n8 = admissible_orders(8, 2, DvzaReading::Union);
  if (s == Stratum::Prym211) return n8;
  std::set<long> out(n8.begin(), n8.end());
  for (long n : admissible_orders(4, 2, DvzaReading::Union)) {
    out.insert(2 * n);
    out.insert(4 * n);
  }
  return std::vector<long>(out.begin(), out.end());
}

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

std::array<CycloElt, 3> quadratic_coefficients(Stratum s, long N, long eXY, long eU) {
  CycloElt a = CycloElt::zero(N), b = CycloElt::zero(N), c = CycloElt::zero(N);
  for (const EqTerm& t : equation_terms(s)) {
    CycloElt m = CycloElt::zeta(N, t.ax * eXY + t.au * eU);
    if (t.cr2) a = a + m * Rational(t.cr2);
    if (t.cr1) b = b + m * Rational(t.cr1);
    if (t.cr0) c = c + m * Rational(t.cr0);
  }
  return {a, b, c};
}

namespace {

std::array<SparseQ, 3> sparse_coefficients(Stratum s, long N, long eXY, long eU) {
  std::vector<std::pair<long, Rational>> ta, tb, tc;
  for (const EqTerm& t : equation_terms(s)) {
    long e = t.ax * eXY + t.au * eU;
    if (t.cr2) ta.push_back({e, Rational(t.cr2)});
    if (t.cr1) tb.push_back({e, Rational(t.cr1)});
    if (t.cr0) tc.push_back({e, Rational(t.cr0)});
  }
  return {sparse_from(N, std::move(ta)), sparse_from(N, std::move(tb)),
          sparse_from(N, std::move(tc))};
}

// --- conic system solving (shared by dense and sparse paths) ---
// Row layout: [1, beta, gamma, beta^2, beta*gamma, gamma^2].

using ConicRow = std::array<Rational, 6>;

bool row_is_zero(const ConicRow& r) {
  for (const auto& x : r)
    if (!x.is_zero()) return false;
  return true;
}

Rational conic_eval(const ConicRow& r, const Rational& b, const Rational& g) {
  return r[0] + r[1] * b + r[2] * g + r[3] * b * b + r[4] * b * g + r[5] * g * g;
}

// Resultant in beta of two conics, as a polynomial in gamma (degree <= 4).
// Handles the degenerate linear-in-beta cases.
UniPoly<Rational> conic_resultant_beta(const ConicRow& A, const ConicRow& B) {
  auto quad = [](const ConicRow& r) {
    // r viewed as w*beta^2 + (v*gamma + y)*beta + (u*gamma^2 + x*gamma + z)
    return std::tuple<Rational, UniPoly<Rational>, UniPoly<Rational>>(
        r[3], UniPoly<Rational>(std::vector<Rational>{r[1], r[4]}),
        UniPoly<Rational>(std::vector<Rational>{r[0], r[2], r[5]}));
  };
  auto [wA, lA, qA] = quad(A);
  auto [wB, lB, qB] = quad(B);
  UniPoly<Rational> WA(wA), WB(wB);
  if (wA.is_zero() && wB.is_zero()) {
    // Two polynomials linear in beta: common root iff lA*qB - lB*qA = 0
    // (covers the doubly-degenerate rows via the specialization step).
    return lA * qB - lB * qA;
  }
  UniPoly<Rational> d2 = WA * qB - WB * qA;
  UniPoly<Rational> d1 = WA * lB - WB * lA;
  UniPoly<Rational> d3 = lA * qB - lB * qA;
  return d2 * d2 - d1 * d3;
}

// Common rational beta roots of all rows specialized at gamma0.
std::vector<Rational> betas_at(const std::vector<ConicRow>& rows, const Rational& g0) {
  // Each row becomes w*b^2 + (v g0 + y) b + (u g0^2 + x g0 + z).
  std::vector<UniPoly<Rational>> polys;
  for (const auto& r : rows) {
    UniPoly<Rational> p(std::vector<Rational>{r[0] + r[2] * g0 + r[5] * g0 * g0,
                                              r[1] + r[4] * g0, r[3]});
    if (!p.is_zero()) polys.push_back(p);
  }
  if (polys.empty()) return {};  // any beta works; caller flags underdetermined
  std::vector<Rational> cands = rational_roots(polys[0]);
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<Rational> out;
  for (const auto& b : cands) {
    bool ok = true;
    for (const auto& p : polys) ok = ok && p.eval(b).is_zero();
    if (ok) out.push_back(b);
  }
  return out;
}

BetaGammaResult solve_conic_system(std::vector<ConicRow> rows) {
  BetaGammaResult out;
  rows.erase(std::remove_if(rows.begin(), rows.end(), row_is_zero), rows.end());
  if (rows.empty()) {
    out.underdetermined = true;
    return out;
  }

  // Linear rows give the cheapest elimination when present.
  std::vector<ConicRow> linear;
  for (const auto& r : rows) {
    if (!r[3].is_zero() || !r[4].is_zero() || !r[5].is_zero()) continue;
    if (r[1].is_zero() && r[2].is_zero()) return out;  // nonzero constant: inconsistent
    linear.push_back(r);
  }
  if (!linear.empty()) {
    // Solve the linear subsystem for (beta, gamma).
    // rows: r0 + r1 b + r2 g = 0.
    const ConicRow* l1 = &linear[0];
    const ConicRow* l2 = nullptr;
    for (size_t i = 1; i < linear.size(); ++i) {
      Rational det = (*l1)[1] * linear[i][2] - (*l1)[2] * linear[i][1];
      if (!det.is_zero()) {
        l2 = &linear[i];
        break;
      }
    }
    if (l2) {
      Rational det = (*l1)[1] * (*l2)[2] - (*l1)[2] * (*l2)[1];
      Rational b = (-(*l1)[0] * (*l2)[2] + (*l2)[0] * (*l1)[2]) / det;
      Rational g = (-(*l1)[1] * (*l2)[0] + (*l2)[1] * (*l1)[0]) / det;
      bool ok = true;
      for (const auto& r : rows) ok = ok && conic_eval(r, b, g).is_zero();
      if (ok) out.pairs.push_back({b, g});
      return out;
    }
    // One independent linear row: parametrize and substitute into a conic.
    const ConicRow& l = *l1;
    bool solved_b = !l[1].is_zero();  // b = -(r0 + r2 g)/r1, else g = ...
    for (const auto& r : rows) {
      if (r[3].is_zero() && r[4].is_zero() && r[5].is_zero()) continue;
      // Substitute and collect a univariate polynomial in the free variable.
      UniPoly<Rational> t;  // parameter
      if (solved_b) {
        // beta(g) = alpha + mu g
        Rational alpha = -l[0] / l[1], mu = -l[2] / l[1];
        UniPoly<Rational> B(std::vector<Rational>{alpha, mu});
        UniPoly<Rational> G = UniPoly<Rational>::x();
        t = UniPoly<Rational>(r[0]) + B * r[1] + G * r[2] + B * B * r[3] + B * G * r[4] +
            G * G * r[5];
      } else {
        Rational alpha = -l[0] / l[2], mu = -l[1] / l[2];
        UniPoly<Rational> G(std::vector<Rational>{alpha, mu});
        UniPoly<Rational> B = UniPoly<Rational>::x();
        t = UniPoly<Rational>(r[0]) + B * r[1] + G * r[2] + B * B * r[3] + B * G * r[4] +
            G * G * r[5];
      }
      if (t.is_zero()) continue;
      for (const Rational& root : rational_roots(t)) {
        Rational b, g;
        if (solved_b) {
          g = root;
          b = (-l[0] - l[2] * g) / l[1];
        } else {
          b = root;
          g = (-l[0] - l[1] * b) / l[2];
        }
        bool ok = true;
        for (const auto& rr : rows) ok = ok && conic_eval(rr, b, g).is_zero();
        if (ok) out.pairs.push_back({b, g});
      }
      std::sort(out.pairs.begin(), out.pairs.end());
      out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end()), out.pairs.end());
      return out;
    }
    // Only the one line: every point on it solves the system.
    out.underdetermined = true;
    return out;
  }

  // Pairwise resultants in beta.
  size_t cap = std::min<size_t>(rows.size(), 8);
  for (size_t i = 0; i < cap; ++i) {
    for (size_t j = i + 1; j < cap; ++j) {
      UniPoly<Rational> res = conic_resultant_beta(rows[i], rows[j]);
      if (res.is_zero()) continue;
      std::set<std::pair<Rational, Rational>> found;
      if (res.degree() == 0) {
        // No common point over any extension.
        return out;
      }
      for (const Rational& g0 : rational_roots(res)) {
        for (const Rational& b0 : betas_at(rows, g0)) {
          bool ok = true;
          for (const auto& r : rows) ok = ok && conic_eval(r, b0, g0).is_zero();
          if (ok) found.insert({b0, g0});
        }
      }
      for (auto& p : found) out.pairs.push_back(p);
      return out;
    }
  }

  // Every pair of rows shares a component. Single conic (possibly repeated):
  // a degenerate line pair; its only rational point candidate is the singular
  // point unless the pair splits over Q.
  const ConicRow& C = rows[0];
  // grad C = 0: [r1 + 2 r3 b + r4 g, r2 + r4 b + 2 r5 g] = 0.
  Rational det = Rational(2) * C[3] * Rational(2) * C[5] - C[4] * C[4];
  Rational discq = C[4] * C[4] - Rational(4) * C[3] * C[5];
  bool split_over_q = false;
  if (!discq.is_zero()) {
    auto [s, f] = squarefree_decompose(discq);
    split_over_q = s.is_one();
  } else {
    split_over_q = true;  // perfect-square quadratic part: parallel/double lines
  }
  if (split_over_q || det.is_zero()) {
    out.underdetermined = true;
    return out;
  }
  Rational b = (-C[1] * Rational(2) * C[5] + C[2] * C[4]) / det;
  Rational g = (-Rational(2) * C[3] * C[2] + C[4] * C[1]) / det;
  bool ok = true;
  for (const auto& r : rows) ok = ok && conic_eval(r, b, g).is_zero();
  if (ok) out.pairs.push_back({b, g});
  return out;
}

// Conic rows from dense coefficients (power-basis coordinates).
std::vector<ConicRow> conic_rows_dense(const CycloElt& a, const CycloElt& b, const CycloElt& c) {
  CycloElt p1 = a * a, p2 = a * b, p3 = a * c, p4 = b * b, p5 = b * c, p6 = c * c;
  int phi = a.phi();
  std::vector<ConicRow> rows(phi);
  for (int t = 0; t < phi; ++t) {
    rows[t] = {p6.coeffs()[t],
               -p5.coeffs()[t],
               p4.coeffs()[t] - Rational(2) * p3.coeffs()[t],
               p3.coeffs()[t],
               -p2.coeffs()[t],
               p1.coeffs()[t]};
  }
  return rows;
}

std::vector<ConicRow> conic_rows_sparse(const SparseQ& a, const SparseQ& b, const SparseQ& c) {
  SparseQ p1 = sparse_mul(a, a);
  SparseQ p2 = sparse_neg(sparse_mul(a, b));
  SparseQ p3 = sparse_mul(a, c);
  SparseQ p4 = sparse_sub(sparse_mul(b, b), sparse_scale(p3, Rational(2)));
  SparseQ p5 = sparse_neg(sparse_mul(b, c));
  SparseQ p6 = sparse_mul(c, c);
  std::array<const SparseQ*, 6> parts = {&p6, &p5, &p4, &p3, &p2, &p1};
  auto raw = symbolic_zero_constraints<6>(a.N, parts);
  std::vector<ConicRow> rows(raw.begin(), raw.end());
  return rows;
}

std::optional<QuadElt> quad_from_minpoly(const Rational& beta, const Rational& gamma, int sign) {
  Rational disc = beta * beta - Rational(4) * gamma;
  if (disc.sign() <= 0) return std::nullopt;
  auto [s, f] = squarefree_decompose(disc);
  if (s.is_one()) return std::nullopt;  // rational roots
  Rational t = Rational(f.num(), f.den() * Int(2));
  if (sign < 0) t = -t;
  return QuadElt(-beta / Rational(2), t, s.to_long());
}

}  // namespace

BetaGammaResult beta_gamma_candidates(const CycloElt& a, const CycloElt& b, const CycloElt& c) {
  if (a.is_zero()) throw std::invalid_argument("beta_gamma_candidates: a must be nonzero");
  return solve_conic_system(conic_rows_dense(a, b, c));
}

// ---------------------------------------------------------------------------
// Dense reference solver (spec operation; also the test oracle path)
// ---------------------------------------------------------------------------

namespace {

// Roots r = s + t sqrt(d) in the real quadratic subfield Q(sqrt(d)).
std::vector<QuadElt> dense_subfield_roots(const CycloElt& a, const CycloElt& b, const CycloElt& c,
                                          long d) {
  long N = a.conductor();
  CycloElt w = sqrt_in_cyclo(d, N);
  CycloElt aw = a * w, bw = b * w;
  // a*X + aw*Y + b*s + bw*t + c = 0 with X = s^2 + d t^2, Y = 2 s t.
  int phi = a.phi();
  std::vector<std::vector<Rational>> rows(phi, std::vector<Rational>(5, Rational(0)));
  for (int i = 0; i < phi; ++i) {
    rows[i][0] = a.coeffs()[i];
    rows[i][1] = aw.coeffs()[i];
    rows[i][2] = b.coeffs()[i];
    rows[i][3] = bw.coeffs()[i];
    rows[i][4] = c.coeffs()[i];
  }
  // Solve rows * (X, Y, s, t, 1)^T = 0 with the last coordinate pinned to 1.
  std::vector<QuadElt> out;
  auto ker = kernel_basis(std::move(rows), 5);
  // Affine representative with last coord 1.
  std::vector<std::vector<Rational>> dir;
  std::vector<Rational> base;
  for (auto& v : ker) {
    if (!v[4].is_zero() && base.empty()) {
      Rational inv = v[4].inverse();
      base = v;
      for (auto& x : base) x *= inv;
    }
  }
  if (base.empty()) return out;
  for (auto& v : ker) {
    if (v[4].is_zero()) {
      dir.push_back(v);
      continue;
    }
    // Reduce against base to get a direction with last coord 0.
    std::vector<Rational> w2 = v;
    Rational f = v[4];
    for (int i = 0; i < 5; ++i) w2[i] -= f * base[i];
    bool zero = true;
    for (auto& x : w2) zero = zero && x.is_zero();
    if (!zero) dir.push_back(std::move(w2));
  }
  auto emit = [&](const Rational& s, const Rational& t) {
    if (t.is_zero()) return;
    out.push_back(QuadElt(s, t, d));
  };
  if (dir.empty()) {
    // Unique (X, Y, s, t); check compatibility.
    const Rational &X = base[0], &Y = base[1], &s = base[2], &t = base[3];
    if (X == s * s + Rational(d) * t * t && Y == Rational(2) * s * t) emit(s, t);
    return out;
  }
  if (dir.size() == 1) {
    // One-parameter family: compatibility gives quadratics in the parameter.
    auto line = [&](int i) {
      return UniPoly<Rational>(std::vector<Rational>{base[i], dir[0][i]});
    };
    UniPoly<Rational> X = line(0), Y = line(1), S = line(2), T = line(3);
    UniPoly<Rational> f1 = X - S * S - T * T * Rational(d);
    UniPoly<Rational> f2 = Y - S * T * Rational(2);
    std::vector<Rational> roots;
    if (!f1.is_zero())
      roots = rational_roots(f1);
    else if (!f2.is_zero())
      roots = rational_roots(f2);
    else
      return out;  // cannot happen for nonzero a; treated as no solutions
    for (const Rational& lam : roots) {
      if (!f1.eval(lam).is_zero() || !f2.eval(lam).is_zero()) continue;
      emit(S.eval(lam), T.eval(lam));
    }
    return out;
  }
  if (dir.size() == 2) {
    // (X, Y) are affine-linear in the free (s, t): two conics in (s, t).
    // Build them as MultiPoly in vars 0 (s), 1 (t).
    // Express the affine space: v = base + l1*dir0 + l2*dir1. The coordinates
    // s, t of v are affine in (l1, l2); invert to use (s, t) as parameters if
    // possible, otherwise fall back to the parameter form.
    MultiPoly L1 = MultiPoly::var(0), L2 = MultiPoly::var(1);
    auto coord = [&](int i) {
      return MultiPoly(base[i]) + L1 * MultiPoly(dir[0][i]) + L2 * MultiPoly(dir[1][i]);
    };
    MultiPoly X = coord(0), Y = coord(1), S = coord(2), T = coord(3);
    MultiPoly f1 = X - S * S - T * T * MultiPoly(Rational(d));
    MultiPoly f2 = Y - S * T * MultiPoly(Rational(2));
    // Eliminate var 1.
    auto to_uni = [&](const MultiPoly& m, int var) {
      std::vector<MultiPoly> cs = m.collect(var);
      return UniPoly<MultiPoly>(std::vector<MultiPoly>(cs.begin(), cs.end()));
    };
    UniPoly<MultiPoly> F1 = to_uni(f1, 1), F2 = to_uni(f2, 1);
    if (F1.is_zero() || F2.is_zero()) return out;
    MultiPoly res = resultant(F1, F2);
    if (res.is_zero()) return out;
    std::vector<MultiPoly> cs = res.collect(0);
    std::vector<Rational> rc;
    for (auto& m : cs) rc.push_back(m.constant_value());
    UniPoly<Rational> ru(std::move(rc));
    if (ru.is_zero()) return out;
    for (const Rational& l1 : rational_roots(ru)) {
      // Substitute l1 and solve for l2.
      MultiPoly g1 = f1.substitute(0, MultiPoly(l1));
      MultiPoly g2 = f2.substitute(0, MultiPoly(l1));
      std::vector<MultiPoly> g1c = g1.collect(1);
      std::vector<Rational> g1r;
      for (auto& m : g1c) g1r.push_back(m.constant_value());
      UniPoly<Rational> gu(std::move(g1r));
      std::vector<Rational> l2s;
      if (!gu.is_zero())
        l2s = rational_roots(gu);
      else {
        std::vector<MultiPoly> g2c = g2.collect(1);
        std::vector<Rational> g2r;
        for (auto& m : g2c) g2r.push_back(m.constant_value());
        UniPoly<Rational> gu2(std::move(g2r));
        if (gu2.is_zero()) continue;
        l2s = rational_roots(gu2);
      }
      for (const Rational& l2 : l2s) {
        std::vector<Rational> pt{l1, l2};
        if (!f1.eval(pt).is_zero() || !f2.eval(pt).is_zero()) continue;
        emit(S.eval(pt), T.eval(pt));
      }
    }
    return out;
  }
  throw std::logic_error("dense_subfield_roots: unexpected affine dimension");
}

}  // namespace

std::vector<QuadElt> solve_relation_instance(const CycloElt& a, const CycloElt& b,
                                             const CycloElt& c) {
  if (a.is_zero() && b.is_zero() && c.is_zero())
    throw std::invalid_argument("solve_relation_instance: all-zero input");
  long N = a.conductor();
  std::vector<QuadElt> out;

  if (a.is_zero()) {
    // Linear: b r + c = 0; keep only degree-2 results.
    if (b.is_zero()) return out;  // c != 0: no solution
    CycloElt r = -(c / b);
    if (r.min_poly().degree() == 2) {
      auto q = r.as_quadratic();
      if (q && !q->is_rational()) out.push_back(*q);
    }
    return out;
  }

  CycloElt ba = b / a, ca = c / a;
  if (ba.is_rational() && ca.is_rational()) {
    Rational q1 = ba.rational_value(), q2 = ca.rational_value();
    auto plus = quad_from_minpoly(q1, q2, +1);
    if (plus) {
      out.push_back(*plus);
      out.push_back(plus->conj());
    }
    return out;
  }

  // Case B: remaining solutions lie inside Q(zeta_N). Hunt their minimal
  // polynomials through the beta/gamma resultant system; if that system is
  // underdetermined, fall back to the direct quadratic-subfield test.
  BetaGammaResult bg = beta_gamma_candidates(a, b, c);
  if (!bg.underdetermined) {
    for (const auto& [beta, gamma] : bg.pairs) {
      CycloElt den = b - a * beta;
      if (den.is_zero()) continue;  // rational-coefficient case, handled above
      CycloElt r = (a * gamma - c) / den;
      UniPoly<Rational> mp = r.min_poly();
      if (mp.degree() != 2) continue;
      if (mp[1] != beta || mp[0] != gamma) continue;
      auto q = r.as_quadratic();
      if (q && !q->is_rational()) out.push_back(*q);
    }
  } else {
    for (long d : real_quadratic_subfields(N)) {
      for (const QuadElt& r : dense_subfield_roots(a, b, c, d)) {
        CycloElt rc = CycloElt::from_rational(N, r.a()) + sqrt_in_cyclo(d, N) * r.b();
        if (!(a * rc * rc + b * rc + c).is_zero()) continue;
        if (rc.min_poly().degree() != 2) continue;
        out.push_back(r);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const QuadElt& x, const QuadElt& y) { return QuadElt::lex_cmp(x, y) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Sparse production solver
// ---------------------------------------------------------------------------

namespace {

// Roots in Q(sqrt(d)) via the sparse symbolic system.
std::vector<QuadElt> sparse_subfield_roots(const std::array<SparseQ, 3>& abc, long d) {
  const SparseQ &a = abc[0], &b = abc[1], &c = abc[2];
  long N = a.N;
  SparseQ w = sparse_sqrt(d, N);
  SparseQ aw = sparse_mul(a, w), bw = sparse_mul(b, w);
  std::array<const SparseQ*, 5> parts = {&a, &aw, &b, &bw, &c};
  auto raw = symbolic_zero_constraints<5>(N, parts);
  std::vector<std::vector<Rational>> rows;
  rows.reserve(raw.size());
  for (auto& r : raw) rows.push_back(std::vector<Rational>(r.begin(), r.end()));

  // Identical affine analysis as the dense path, factored over the same
  // column layout (X, Y, s, t, 1).
  std::vector<QuadElt> out;
  auto ker = kernel_basis(std::move(rows), 5);
  std::vector<std::vector<Rational>> dir;
  std::vector<Rational> base;
  for (auto& v : ker) {
    if (!v[4].is_zero() && base.empty()) {
      Rational inv = v[4].inverse();
      base = v;
      for (auto& x : base) x *= inv;
    }
  }
  if (base.empty()) return out;
  for (auto& v : ker) {
    if (v[4].is_zero()) {
      dir.push_back(v);
      continue;
    }
    std::vector<Rational> w2 = v;
    Rational f = v[4];
    for (int i = 0; i < 5; ++i) w2[i] -= f * base[i];
    bool zero = true;
    for (auto& x : w2) zero = zero && x.is_zero();
    if (!zero) dir.push_back(std::move(w2));
  }
  auto emit = [&](const Rational& s, const Rational& t) {
    if (!t.is_zero()) out.push_back(QuadElt(s, t, d));
  };
  if (dir.empty()) {
    const Rational &X = base[0], &Y = base[1], &s = base[2], &t = base[3];
    if (X == s * s + Rational(d) * t * t && Y == Rational(2) * s * t) emit(s, t);
    return out;
  }
  if (dir.size() == 1) {
    auto line = [&](int i) {
      return UniPoly<Rational>(std::vector<Rational>{base[i], dir[0][i]});
    };
    UniPoly<Rational> X = line(0), Y = line(1), S = line(2), T = line(3);
    UniPoly<Rational> f1 = X - S * S - T * T * Rational(d);
    UniPoly<Rational> f2 = Y - S * T * Rational(2);
    std::vector<Rational> roots;
    if (!f1.is_zero())
      roots = rational_roots(f1);
    else if (!f2.is_zero())
      roots = rational_roots(f2);
    else
      return out;
    for (const Rational& lam : roots) {
      if (!f1.eval(lam).is_zero() || !f2.eval(lam).is_zero()) continue;
      emit(S.eval(lam), T.eval(lam));
    }
    return out;
  }
  if (dir.size() == 2) {
    MultiPoly L1 = MultiPoly::var(0), L2 = MultiPoly::var(1);
    auto coord = [&](int i) {
      return MultiPoly(base[i]) + L1 * MultiPoly(dir[0][i]) + L2 * MultiPoly(dir[1][i]);
    };
    MultiPoly X = coord(0), Y = coord(1), S = coord(2), T = coord(3);
    MultiPoly f1 = X - S * S - T * T * MultiPoly(Rational(d));
    MultiPoly f2 = Y - S * T * MultiPoly(Rational(2));
    auto to_uni = [&](const MultiPoly& m, int var) {
      std::vector<MultiPoly> cs = m.collect(var);
      return UniPoly<MultiPoly>(std::vector<MultiPoly>(cs.begin(), cs.end()));
    };
    UniPoly<MultiPoly> F1 = to_uni(f1, 1), F2 = to_uni(f2, 1);
    if (F1.is_zero() || F2.is_zero()) return out;
    MultiPoly res = resultant(F1, F2);
    if (res.is_zero()) return out;
    std::vector<MultiPoly> cs = res.collect(0);
    std::vector<Rational> rc;
    for (auto& m : cs) rc.push_back(m.constant_value());
    UniPoly<Rational> ru(std::move(rc));
    if (ru.is_zero()) return out;
    for (const Rational& l1 : rational_roots(ru)) {
      MultiPoly g1 = f1.substitute(0, MultiPoly(l1));
      std::vector<MultiPoly> g1c = g1.collect(1);
      std::vector<Rational> g1r;
      for (auto& m : g1c) g1r.push_back(m.constant_value());
      UniPoly<Rational> gu(std::move(g1r));
      std::vector<Rational> l2s;
      if (!gu.is_zero())
        l2s = rational_roots(gu);
      else {
        MultiPoly g2 = f2.substitute(0, MultiPoly(l1));
        std::vector<MultiPoly> g2c = g2.collect(1);
        std::vector<Rational> g2r;
        for (auto& m : g2c) g2r.push_back(m.constant_value());
        UniPoly<Rational> gu2(std::move(g2r));
        if (gu2.is_zero()) continue;
        l2s = rational_roots(gu2);
      }
      for (const Rational& l2 : l2s) {
        std::vector<Rational> pt{l1, l2};
        if (!f1.eval(pt).is_zero() || !f2.eval(pt).is_zero()) continue;
        emit(S.eval(pt), T.eval(pt));
      }
    }
    return out;
  }
  throw std::logic_error("sparse_subfield_roots: unexpected affine dimension");
}

std::vector<PairRoot> sparse_all_subfields(const std::array<SparseQ, 3>& abc) {
  std::vector<PairRoot> out;
  for (long d : real_quadratic_subfields(abc[0].N)) {
    SparseQ w = sparse_sqrt(d, abc[0].N);
    for (const QuadElt& r : sparse_subfield_roots(abc, d)) {
      // Verify a r^2 + b r + c = 0 exactly before accepting.
      SparseQ rs = sparse_add(sparse_from(abc[0].N, {{0, r.a()}}), sparse_scale(w, r.b()));
      SparseQ lhs = sparse_add(sparse_add(sparse_mul(abc[0], sparse_mul(rs, rs)),
                                          sparse_mul(abc[1], rs)),
                               abc[2]);
      if (!sparse_is_zero(lhs)) continue;
      out.push_back({r, false});
    }
  }
  return out;
}

// Rational roots of a x^2 + b x + c (cyclotomic coefficients), through the
// linear system on (1, theta, theta^2). Sets *definitive = false when the
// analysis could not bound the root set.
std::vector<Rational> sparse_rational_theta(const std::array<SparseQ, 3>& abc, bool* definitive) {
  *definitive = true;
  std::array<const SparseQ*, 3> parts = {&abc[2], &abc[1], &abc[0]};
  auto raw = symbolic_zero_constraints<3>(abc[0].N, parts);
  std::vector<std::vector<Rational>> rows;
  rows.reserve(raw.size());
  for (auto& r : raw) rows.push_back(std::vector<Rational>(r.begin(), r.end()));
  auto ker = kernel_basis(std::move(rows), 3);
  // Affine slice: coordinate 0 (the constant symbol) pinned to 1.
  std::vector<Rational> base;
  std::vector<std::vector<Rational>> dir;
  for (auto& v : ker) {
    if (!v[0].is_zero() && base.empty()) {
      Rational inv = v[0].inverse();
      base = v;
      for (auto& x : base) x *= inv;
    }
  }
  std::vector<Rational> thetas;
  if (base.empty()) return thetas;
  for (auto& v : ker) {
    if (v[0].is_zero()) {
      bool z = true;
      for (auto& x : v) z = z && x.is_zero();
      if (!z) dir.push_back(v);
      continue;
    }
    std::vector<Rational> w = v;
    Rational f = v[0];
    for (int i = 0; i < 3; ++i) w[i] -= f * base[i];
    bool z = true;
    for (auto& x : w) z = z && x.is_zero();
    if (!z) dir.push_back(std::move(w));
  }
  if (dir.empty()) {
    if (base[2] == base[1] * base[1]) thetas.push_back(base[1]);
    return thetas;
  }
  if (dir.size() == 1) {
    UniPoly<Rational> th(std::vector<Rational>{base[1], dir[0][1]});
    UniPoly<Rational> sq(std::vector<Rational>{base[2], dir[0][2]});
    UniPoly<Rational> f = sq - th * th;
    if (f.is_zero()) {
      *definitive = false;
      return thetas;
    }
    for (const Rational& lam : rational_roots(f)) thetas.push_back(th.eval(lam));
    std::sort(thetas.begin(), thetas.end());
    thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());
    return thetas;
  }
  *definitive = false;
  return thetas;
}

// The non-theta root of a x^2 + b x + c after deflating the rational root
// theta; kept only when it is a real quadratic irrationality.
std::vector<PairRoot> sparse_deflated_root(const std::array<SparseQ, 3>& abc, const Rational& theta) {
  std::vector<PairRoot> out;
  long N = abc[0].N;
  const SparseQ& a = abc[0];
  SparseQ num = sparse_add(abc[1], sparse_scale(a, theta));  // b + a*theta; root v = -num/a
  bool all_zero = false;
  if (rational_ratio(sparse_neg(num), a, &all_zero) || all_zero) return out;
  // Minimal polynomial of v: num^2 - beta*num*a + gamma*a^2 = 0.
  SparseQ P = sparse_mul(num, num);
  SparseQ Qn = sparse_neg(sparse_mul(num, a));
  SparseQ R = sparse_mul(a, a);
  std::array<const SparseQ*, 3> parts = {&P, &Qn, &R};
  auto raw = symbolic_zero_constraints<3>(N, parts);
  std::vector<std::vector<Rational>> rows;
  for (auto& r : raw) rows.push_back(std::vector<Rational>(r.begin(), r.end()));
  auto ker = kernel_basis(std::move(rows), 3);
  std::vector<Rational> base;
  int extra = 0;
  for (auto& v : ker) {
    if (!v[0].is_zero()) {
      if (base.empty()) {
        Rational inv = v[0].inverse();
        base = v;
        for (auto& x : base) x *= inv;
      } else {
        ++extra;
      }
    } else {
      bool z = true;
      for (auto& x : v) z = z && x.is_zero();
      if (!z) ++extra;
    }
  }
  if (base.empty() || extra > 0) return out;  // degree > 2 or degenerate
  Rational beta = base[1], gamma = base[2];
  Rational disc = beta * beta - Rational(4) * gamma;
  if (disc.sign() <= 0) return out;
  auto [sf, f] = squarefree_decompose(disc);
  if (sf.is_one()) return out;
  long d0 = sf.to_long();
  if (N % static_cast<long>(quad_field_conductor(d0)) != 0) return out;
  // Verify and pick the embedding sign: num + a*(s + t*sqrt(d0)) = 0.
  Rational shalf = -beta / Rational(2);
  Rational thalf = Rational(f.num(), f.den() * Int(2));
  SparseQ w = sparse_sqrt(d0, N);
  for (int sign = +1; sign >= -1; sign -= 2) {
    Rational t = sign > 0 ? thalf : -thalf;
    SparseQ rhs = sparse_mul(sparse_add(sparse_from(N, {{0, shalf}}), sparse_scale(w, t)), a);
    if (sparse_is_zero(sparse_add(num, rhs))) {
      out.push_back({QuadElt(shalf, t, d0), false});
      return out;
    }
  }
  return out;  // minimal polynomial did not certify: no quadratic root here
}

}  // namespace

std::vector<PairRoot> solve_pair_exact(Stratum s, long N, long eXY, long eU) {
  auto abc = sparse_coefficients(s, N, eXY, eU);
  const SparseQ &a = abc[0], &b = abc[1], &c = abc[2];
  std::vector<PairRoot> out;

  if (a.t.empty()) {
    if (b.t.empty()) return out;  // c = 0 would be the excluded degenerate family
    bool all_zero = false;
    auto q = rational_ratio(sparse_neg(c), b, &all_zero);
    if (q || all_zero) return out;  // rational (or zero) root only
    // -c/b irrational: it solves the torsion equation iff quadratic.
    return sparse_all_subfields(abc);
  }

  bool az = false;
  auto q1 = rational_ratio(b, a, &az);
  if (q1) {
    auto q2 = rational_ratio(c, a, &az);
    if (q2) {
      auto plus = quad_from_minpoly(*q1, *q2, +1);
      if (plus) {
        out.push_back({*plus, true});
        out.push_back({plus->conj(), true});
      }
      return out;
    }
  }

  // Quadratic-over-Q roots lie in Q(zeta_N); hunt their minimal polynomials
  // through the resultant conic system first.
  BetaGammaResult bg = solve_conic_system(conic_rows_sparse(a, b, c));
  if (bg.underdetermined) {
    // The usual cause is a rational root: the variety of (beta, gamma) pairs
    // then contains a full rational line. Deflate it and finish cheaply; the
    // quadratic-subfield sweep stays as the net for anything stranger.
    bool definitive = false;
    std::vector<Rational> thetas = sparse_rational_theta(abc, &definitive);
    if (definitive && thetas.size() >= 2) return out;  // both roots rational
    if (definitive && thetas.size() == 1) return sparse_deflated_root(abc, thetas[0]);
    return sparse_all_subfields(abc);
  }

  for (const auto& [beta, gamma] : bg.pairs) {
    Rational disc = beta * beta - Rational(4) * gamma;
    if (disc.sign() <= 0) continue;
    auto [sf, f] = squarefree_decompose(disc);
    if (sf.is_one()) continue;  // reducible min poly
    long d0 = sf.to_long();
    long cond = static_cast<long>(quad_field_conductor(d0));
    if (N % cond != 0) continue;  // cannot embed: spurious candidate
    // r = (a*gamma - c) / (b - a*beta); verify the minimal-polynomial relation
    // NUM^2 + beta NUM DEN + gamma DEN^2 = 0 without dividing.
    SparseQ num = sparse_sub(sparse_scale(a, gamma), c);
    SparseQ den = sparse_sub(b, sparse_scale(a, beta));
    if (den.t.empty()) continue;  // would be the rational case handled above
    SparseQ rel = sparse_add(
        sparse_add(sparse_mul(num, num), sparse_scale(sparse_mul(num, den), beta)),
        sparse_scale(sparse_mul(den, den), gamma));
    if (!sparse_is_zero(rel)) continue;
    // Embedding sign: num == (s + t sqrt(d0)) * den for exactly one sign.
    Rational shalf = -beta / Rational(2);
    Rational thalf = Rational(f.num(), f.den() * Int(2));
    SparseQ w = sparse_sqrt(d0, N);
    bool matched = false;
    for (int sign = +1; sign >= -1 && !matched; sign -= 2) {
      Rational t = sign > 0 ? thalf : -thalf;
      SparseQ rhs = sparse_mul(sparse_add(sparse_from(N, {{0, shalf}}), sparse_scale(w, t)), den);
      if (sparse_is_zero(sparse_sub(num, rhs))) {
        out.push_back({QuadElt(shalf, t, d0), false});
        matched = true;
      }
    }
    if (!matched) throw std::logic_error("solve_pair_exact: embedding sign not determined");
  }
  std::sort(out.begin(), out.end(), [](const PairRoot& x, const PairRoot& y) {
    return QuadElt::lex_cmp(x.r, y.r) < 0;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const PairRoot& x, const PairRoot& y) { return x.r == y.r; }),
            out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

bool excluded_pair(Stratum s, long N, long eXY, long eU) {
  // zeta_U in {+1, -1}.
  if ((2 * eU) % N == 0) return true;
  if (s == Stratum::Prym22) {
    bool zxy_minus1 = (2 * eXY) % N == 0;
    bool zu_pm_i = (4 * eU) % N == 0;  // with 2 eU != 0 mod N from above
    if (zxy_minus1 && zu_pm_i) return true;
  }
  return false;
}

void emit_solutions(Stratum s, long N, long eXY, long eU, const std::vector<PairRoot>& roots,
                    std::vector<RelationSolution>* out) {
  for (const PairRoot& pr : roots) {
    if (pr.r.is_rational()) continue;
    if (pr.r.sign() <= 0) continue;
    if (pr.r.norm().sign() >= 0) continue;
    out->push_back({N, eXY, eU, pr.r, s});
  }
}

}  // namespace

std::vector<RelationSolution> enumerate_solutions(Stratum s, const SolveOptions& opts) {
  std::vector<RelationSolution> all;
  auto log = [&](const std::string& m) {
    if (opts.log) opts.log(m);
  };

  for (long N : stratum_order_set(s)) {
    if (N < 3) continue;
    if (opts.max_conductor > 0 && N > opts.max_conductor) continue;
    std::unique_ptr<PairFilter> filter;
    if (opts.use_filter && N > 30) {
      try {
        filter = std::make_unique<PairFilter>(N, s == Stratum::Prym22 ? 1 : 0);
      } catch (const std::exception& e) {
        log("N=" + std::to_string(N) + ": prefilter unavailable (" + e.what() + ")");
      }
    }

    std::vector<RelationSolution> found;

    if (opts.galois_orbits) {
      // One exact solve per Galois orbit; translate solutions across the
      // orbit with the quadratic character bookkeeping.
      std::vector<bool> seen(static_cast<size_t>(N) * N, false);
      std::vector<long> units;
      for (long j = 1; j < N; ++j)
        if (gcd_u64(j, N) == 1) units.push_back(j);
      for (long e1 = 1; e1 < N; ++e1) {
        for (long e2 = 1; e2 < N; ++e2) {
          if (seen[e1 * N + e2]) continue;
          if (gcd_u64(gcd_u64(e1, e2), N) != 1) continue;
          std::vector<std::pair<long, long>> orbit;
          for (long j : units) {
            long f1 = (e1 * j) % N, f2 = (e2 * j) % N;
            if (!seen[f1 * N + f2]) {
              seen[f1 * N + f2] = true;
              orbit.push_back({f1, f2});
            }
          }
          if (excluded_pair(s, N, e1, e2)) continue;
          bool maybe = !filter || filter->pass(e1, e2);
          if (!maybe) continue;
          auto roots = solve_pair_exact(s, N, e1, e2);
          if (roots.empty()) continue;
          for (auto [f1, f2] : orbit) {
            if (excluded_pair(s, N, f1, f2)) continue;
            // j with (f1, f2) = j * (e1, e2).
            long j = 0;
            for (long u : units)
              if ((e1 * u) % N == f1 && (e2 * u) % N == f2) {
                j = u;
                break;
              }
            std::vector<PairRoot> mapped;
            for (const PairRoot& pr : roots) {
              if (pr.galois_invariant) {
                mapped.push_back(pr);
              } else {
                int chi = sqrt_galois_character(pr.r.d0(), j);
                QuadElt img(pr.r.a(), chi > 0 ? pr.r.b() : -pr.r.b(), pr.r.d0());
                mapped.push_back({img, false});
              }
            }
            emit_solutions(s, N, f1, f2, mapped, &found);
          }
        }
      }
    } else {
      // Direct scan over exponent pairs (optionally folded along complex
      // conjugation, which fixes r pointwise).
      long e1_max = opts.conjugation_fold ? N / 2 : N - 1;
      std::atomic<long> next_e1{1};
      int jobs = std::max(1, opts.jobs);
      std::vector<std::vector<RelationSolution>> per_thread(jobs);
      auto worker = [&](int tid) {
        for (;;) {
          long e1 = next_e1.fetch_add(1);
          if (e1 > e1_max) break;
          bool fold_diag = opts.conjugation_fold && (2 * e1) % N == 0;
          for (long e2 = 1; e2 < N; ++e2) {
            if (fold_diag && 2 * e2 > N) continue;
            if (gcd_u64(gcd_u64(e1, e2), N) != 1) continue;
            if (excluded_pair(s, N, e1, e2)) continue;
            if (filter && !filter->pass(e1, e2)) continue;
            auto roots = solve_pair_exact(s, N, e1, e2);
            emit_solutions(s, N, e1, e2, roots, &per_thread[tid]);
            if (opts.conjugation_fold) {
              long c1 = (N - e1) % N, c2 = (N - e2) % N;
              if (c1 != e1 || c2 != e2)
                emit_solutions(s, N, c1, c2, roots, &per_thread[tid]);
            }
          }
        }
      };
      if (jobs == 1) {
        worker(0);
      } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t) threads.emplace_back(worker, t);
        for (auto& t : threads) t.join();
      }
      for (auto& v : per_thread) found.insert(found.end(), v.begin(), v.end());
    }

    if (!found.empty())
      log("N=" + std::to_string(N) + ": " + std::to_string(found.size()) + " solutions");
    all.insert(all.end(), found.begin(), found.end());
  }

  std::sort(all.begin(), all.end(),
            [](const RelationSolution& x, const RelationSolution& y) {
              return solution_cmp(x, y) < 0;
            });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace prym
