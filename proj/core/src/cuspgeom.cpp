#include "prym/cuspgeom.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace prym {

std::string ReducedMatrix::str() const {
  std::ostringstream os;
  os << "[[" << m11p13 << "," << m12x2 << "],[" << m21 << "," << m22 << "]]";
  return os.str();
}

QuadElt height_from_width(const QuadElt& r2) {
  Rational n = r2.norm();
  if (n.sign() >= 0) throw std::invalid_argument("height_from_width: norm must be negative");
  return QuadElt(Rational(-2)) * r2 * QuadElt(n.inverse());
}

std::vector<CuspTuple> relative_periods(const RelationSolution& sol) {
  std::vector<CuspTuple> out;
  QuadElt r2 = sol.r;
  QuadElt h2 = height_from_width(r2);
  long N = sol.N;
  // Prym(2,1,1): |gamma| = -eX/N + r2 eU/N + k + ell r2.
  // Prym(2,2):   |gamma| = -2eX/N + 2 r2 eU/N + k + ell r2.
  long scale = sol.stratum == Stratum::Prym22 ? 2 : 1;
  Rational base_c(-scale * sol.eXY, N);
  Rational base_r(scale * sol.eU, N);
  QuadElt bound = std::max(QuadElt(Rational(1)), r2);
  for (int k = -2; k <= 2; ++k) {
    for (int ell = -1; ell <= 1; ++ell) {
      QuadElt g = QuadElt(base_c + Rational(k)) + r2 * QuadElt(base_r + Rational(ell));
      if (g.sign() <= 0) continue;
      if (!(g < bound)) continue;
      out.push_back({sol, k, ell, r2, h2, g});
    }
  }
  return out;
}

namespace {

// x must be a nonnegative rational integer fitting in long.
std::optional<long> as_nonneg_integer(const QuadElt& x) {
  if (!x.is_rational()) return std::nullopt;
  const Rational& q = x.a();
  if (!q.is_integer() || q.sign() < 0) return std::nullopt;
  Int n = q.num();
  if (!n.fits_long()) return std::nullopt;
  return n.to_long();
}

}  // namespace

MredResult reduced_matrix_from_pair(Stratum s, const CuspTuple& hor, const CuspTuple& vert,
                                    Crossing crossing) {
  MredResult res;
  if (!hor.r2.is_rational() && !vert.r2.is_rational() && hor.r2.d0() != vert.r2.d0()) {
    res.status = MredStatus::FieldMismatch;
    return res;
  }
  const QuadElt& h2 = hor.h2;
  QuadElt target;
  if (crossing == Crossing::C2) {
    target = h2;
  } else {
    target = QuadElt(Rational(s == Stratum::Prym22 ? 2 : 1));
  }
  QuadElt scale = target / vert.gamma;
  QuadElt wZ1 = scale;
  QuadElt wZ2 = scale * vert.r2;

  // (Mred)^T = W * H^{-1} with W = [[wZ1, wZ1~], [wZ2, wZ2~]],
  // H = [[1, 1], [h2, h2~]].
  QuadElt det = h2.conj() - h2;
  if (det.is_zero()) {
    res.status = MredStatus::SingularSystem;
    return res;
  }
  auto solve_row = [&](const QuadElt& w) {
    // row * H = (w, w~)  =>  row = (w, w~) * H^{-1}
    QuadElt m0 = (w * h2.conj() - w.conj() * h2) / det;
    QuadElt m1 = (w.conj() - w) / det;
    return std::pair<QuadElt, QuadElt>(m0, m1);
  };
  auto [t00, t01] = solve_row(wZ1);
  auto [t10, t11] = solve_row(wZ2);
  // Mred = transpose of [[t00, t01], [t10, t11]].
  auto e11 = as_nonneg_integer(t00);
  auto e12 = as_nonneg_integer(t10);
  auto e21 = as_nonneg_integer(t01);
  auto e22 = as_nonneg_integer(t11);
  if (!e11 || !e12 || !e21 || !e22) {
    res.status = MredStatus::NonIntegral;
    return res;
  }
  ReducedMatrix m{*e11, *e12, *e21, *e22};
  if (m.m12x2 % 2 != 0) {
    res.status = MredStatus::OddM12;
    return res;
  }

  // Heights of the vertical cylinders from w(C) = M h(Z):
  //   m11p13 * hZ1 + (m12x2/2) * hZ2 = 1
  //   2*m21  * hZ1 +  m22      * hZ2 = r2
  Rational sysdet = Rational(m.m11p13) * Rational(m.m22) - Rational(m.m12x2) * Rational(m.m21);
  if (sysdet.is_zero()) {
    res.status = MredStatus::HeightSolveFailed;
    return res;
  }
  QuadElt one(Rational(1));
  QuadElt hZ1 = (one * Rational(m.m22) - hor.r2 * Rational(m.m12x2 / 2)) * QuadElt(sysdet.inverse());
  QuadElt hZ2 = (hor.r2 * Rational(m.m11p13) - one * Rational(2 * m.m21)) * QuadElt(sysdet.inverse());
  // Proportionality to (1, h2') with h2' from the vertical width ratio.
  QuadElt h2v = height_from_width(vert.r2);
  if (hZ1.sign() <= 0 || hZ2.sign() <= 0 || !(hZ2 == hZ1 * h2v)) {
    res.status = MredStatus::RatioMismatch;
    return res;
  }

  res.pair.horizontal = hor;
  res.pair.vertical = vert;
  res.pair.crossing = crossing;
  res.pair.wZ1 = wZ1;
  res.pair.wZ2 = wZ2;
  res.pair.hZ1 = hZ1;
  res.pair.hZ2 = hZ2;
  res.pair.mred = m;
  auto splits = full_matrix_splits(m);
  res.pair.fullM = splits.front();
  res.pair.d0 = hor.r2.d0();
  return res;
}

std::vector<FullMatrix> full_matrix_splits(const ReducedMatrix& m) {
  std::vector<FullMatrix> out;
  long half12 = m.m12x2 / 2;
  for (long m11 = 0; m11 <= m.m11p13; ++m11) {
    long m13 = m.m11p13 - m11;
    FullMatrix f{};
    f[0] = {m11, half12, m13};
    f[1] = {m.m21, m.m22, m.m21};
    f[2] = {m13, half12, m11};
    out.push_back(f);
  }
  return out;
}

int geometry_cmp(const GeometryPair& x, const GeometryPair& y) {
  if (x.d0 != y.d0) return x.d0 < y.d0 ? -1 : 1;
  if (!(x.mred == y.mred)) return x.mred < y.mred ? -1 : 1;
  int c = QuadElt::lex_cmp(x.horizontal.r2, y.horizontal.r2);
  if (c) return c;
  c = QuadElt::lex_cmp(x.vertical.r2, y.vertical.r2);
  if (c) return c;
  if (x.crossing != y.crossing) return x.crossing == Crossing::C1 ? -1 : 1;
  c = QuadElt::lex_cmp(x.wZ1, y.wZ1);
  if (c) return c;
  return 0;
}

GeometryEnumeration enumerate_geometries(Stratum s, const std::vector<RelationSolution>& sols) {
  GeometryEnumeration out;
  Crossing wanted = (s == Stratum::Prym22) ? Crossing::C2 : Crossing::C1;

  // Horizontal data depends only on r2; vertical tuples on the full solution.
  std::vector<CuspTuple> horizontals;
  for (const auto& sol : sols) {
    CuspTuple h{sol, 0, 0, sol.r, height_from_width(sol.r), QuadElt()};
    bool dup = false;
    for (const auto& other : horizontals) dup = dup || other.r2 == h.r2;
    if (!dup) horizontals.push_back(h);
  }
  std::vector<CuspTuple> verticals;
  for (const auto& sol : sols)
    for (const auto& t : relative_periods(sol)) verticals.push_back(t);

  auto push_unique = [](std::vector<GeometryPair>& v, const GeometryPair& g) {
    for (const auto& other : v)
      if (geometry_cmp(other, g) == 0) return;
    v.push_back(g);
  };

  for (const auto& hor : horizontals) {
    for (const auto& vert : verticals) {
      if (hor.r2.d0() != vert.r2.d0()) continue;
      for (Crossing cr : {Crossing::C1, Crossing::C2}) {
        MredResult r = reduced_matrix_from_pair(s, hor, vert, cr);
        if (r.status != MredStatus::Ok) continue;
        if (cr == wanted)
          push_unique(out.kept, r.pair);
        else
          push_unique(out.discarded, r.pair);
      }
    }
  }
  auto sorter = [](const GeometryPair& a, const GeometryPair& b) {
    return geometry_cmp(a, b) < 0;
  };
  std::sort(out.kept.begin(), out.kept.end(), sorter);
  std::sort(out.discarded.begin(), out.discarded.end(), sorter);
  return out;
}

}  // namespace prym
