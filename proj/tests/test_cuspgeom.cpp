#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "paper_data.hpp"
#include "prym/cuspgeom.hpp"

using namespace prym;
using namespace testdata;

TEST_CASE("heights from widths") {
  CHECK(height_from_width(QuadElt(Rational(1, 2), Rational(1, 6), 33)) ==
        QuadElt(Rational(3, 2), Rational(1, 2), 33));
  CHECK(height_from_width(QuadElt(Rational(0), Rational(1, 2), 2)) ==
        QuadElt(Rational(0), Rational(2), 2));
  for (long d : {2L, 3L, 5L, 7L}) {
    QuadElt sqrt_d(Rational(0), Rational(1), d);
    CHECK(height_from_width(sqrt_d) == QuadElt(Rational(0), Rational(2, d), d));
  }
  CHECK_THROWS(height_from_width(QuadElt(Rational(3), Rational(1), 2)));  // norm > 0
}

TEST_CASE("flux identity on all cusp tuples") {
  for (Stratum st : {Stratum::Prym211, Stratum::Prym22}) {
    for (const auto& sol : table_solutions(st)) {
      for (const auto& t : relative_periods(sol)) {
        // 2 h1^sigma r1 + r2 h2^sigma = 0 with h1 = r1 = 1.
        QuadElt lhs = QuadElt(Rational(2)) + t.r2 * t.h2.conj();
        CHECK(lhs.is_zero());
        CHECK(t.gamma.sign() > 0);
        CHECK(t.gamma < std::max(QuadElt(Rational(1)), t.r2));
      }
    }
  }
}

TEST_CASE("relative periods") {
  RelationSolution sol{6, 1, 1, QuadElt(Rational(1, 2), Rational(1, 6), 33), Stratum::Prym211};
  auto tuples = relative_periods(sol);
  bool has = false;
  for (const auto& t : tuples)
    if (t.k == 0 && t.ell == 0)
      has = t.gamma == QuadElt(Rational(-1, 12), Rational(1, 36), 33);  // (-3+sqrt33)/36
  CHECK(has);

  // k = ell = 0 with eXY = eU gives (r2 - 1) * e/N.
  RelationSolution sym{6, 1, 1, QuadElt(Rational(1, 2), Rational(1, 6), 33), Stratum::Prym211};
  for (const auto& t : relative_periods(sym))
    if (t.k == 0 && t.ell == 0)
      CHECK(t.gamma == (sym.r - QuadElt(Rational(1))) * QuadElt(Rational(1, 6)));

  // Prym22 tuples all satisfy the stated window.
  RelationSolution s22{12, 2, 3, QuadElt(Rational(0), Rational(1, 2), 2), Stratum::Prym22};
  for (const auto& t : relative_periods(s22)) {
    CHECK(t.gamma.sign() > 0);
    CHECK(t.gamma < QuadElt(Rational(1)));
  }
}

TEST_CASE("reduced matrix: the Prym(2,1,1) D0=33 pair") {
  RelationSolution sol{6, 1, 1, QuadElt(Rational(1, 2), Rational(1, 6), 33), Stratum::Prym211};
  CuspTuple hor{sol, 0, 0, sol.r, height_from_width(sol.r), QuadElt()};
  CuspTuple vert;
  for (const auto& t : relative_periods(sol))
    if (t.k == 0 && t.ell == 0) vert = t;
  auto res = reduced_matrix_from_pair(Stratum::Prym211, hor, vert, Crossing::C1);
  REQUIRE(res.status == MredStatus::Ok);
  CHECK(res.pair.mred == ReducedMatrix{0, 6, 3, 3});
  // Derived w(Z1) = (9+3sqrt33)/2; the printed (9+sqrt33)/2 is inconsistent.
  CHECK(res.pair.wZ1 == QuadElt(Rational(9, 2), Rational(3, 2), 33));
  CHECK(res.pair.wZ2 == QuadElt(Rational(21, 2), Rational(3, 2), 33));
  CHECK(res.pair.hZ1 == QuadElt(Rational(-1, 12), Rational(1, 36), 33));
  CHECK(res.pair.hZ2 == QuadElt(Rational(1, 3)));

  // Consistency identities of the accepted geometry.
  const GeometryPair& g = res.pair;
  // (i) w(Z)^red = (M^red)^T h(C)^red together with the conjugate system.
  QuadElt h2 = hor.h2;
  CHECK(g.wZ1 == QuadElt(Rational(g.mred.m11p13)) + QuadElt(Rational(g.mred.m21)) * h2);
  CHECK(g.wZ2 == QuadElt(Rational(g.mred.m12x2)) + QuadElt(Rational(g.mred.m22)) * h2);
  // (ii) w(C) = M h(Z) for the stored split.
  CHECK(QuadElt(Rational(g.mred.m11p13)) * g.hZ1 + QuadElt(Rational(g.mred.m12x2 / 2)) * g.hZ2 ==
        QuadElt(Rational(1)));
  CHECK(QuadElt(Rational(2 * g.mred.m21)) * g.hZ1 + QuadElt(Rational(g.mred.m22)) * g.hZ2 ==
        hor.r2);
  // (iii) ratio consistency.
  CHECK(g.wZ2 == g.wZ1 * vert.r2);
  CHECK(g.hZ2 == g.hZ1 * height_from_width(vert.r2));

  // The printed value (9+sqrt33)/2 fails the same identities.
  QuadElt printed(Rational(9, 2), Rational(1, 2), 33);
  CHECK(!(printed * vert.r2 == g.wZ2));
  CHECK(!(printed == QuadElt(Rational(g.mred.m11p13)) + QuadElt(Rational(g.mred.m21)) * h2));
}

TEST_CASE("reduced matrix: Prym(2,2) D0=2 and the D0=6 exclusion") {
  RelationSolution sol{12, 2, 3, QuadElt(Rational(0), Rational(1, 2), 2), Stratum::Prym22};
  CuspTuple hor{sol, 0, 0, sol.r, height_from_width(sol.r), QuadElt()};
  bool found = false;
  for (const auto& t : relative_periods(sol)) {
    auto res = reduced_matrix_from_pair(Stratum::Prym22, hor, t, Crossing::C2);
    if (res.status != MredStatus::Ok) continue;
    if (res.pair.mred == ReducedMatrix{72, 48, 24, 18}) {
      found = true;
      CHECK(res.pair.wZ1 == QuadElt(Rational(72), Rational(48), 2));
      CHECK(res.pair.wZ2 == QuadElt(Rational(48), Rational(36), 2));
      CHECK(res.pair.hZ1 == QuadElt(Rational(1, 8), Rational(-1, 12), 2));
      CHECK(res.pair.hZ2 == QuadElt(Rational(-1, 3), Rational(1, 4), 2));
    }
  }
  CHECK(found);

  // No D0 = 6 geometry survives in either stratum.
  auto g22 = enumerate_geometries(Stratum::Prym22, table_solutions(Stratum::Prym22));
  for (const auto& g : g22.kept) CHECK(g.d0 != 6);
}

TEST_CASE("full matrix splits") {
  auto splits = full_matrix_splits(ReducedMatrix{0, 6, 3, 3});
  REQUIRE(splits.size() == 1);
  FullMatrix want{{{0, 3, 0}, {3, 3, 3}, {0, 3, 0}}};
  CHECK(splits[0] == want);
  CHECK(full_matrix_splits(ReducedMatrix{3, 0, 1, 1}).size() == 4);
  CHECK(full_matrix_splits(ReducedMatrix{0, 0, 1, 1}).size() == 1);
  // symmetry pattern on every split
  for (const auto& m : full_matrix_splits(ReducedMatrix{5, 4, 2, 7})) {
    CHECK(m[0][0] == m[2][2]);
    CHECK(m[0][2] == m[2][0]);
    CHECK(m[1][0] == m[1][2]);
    CHECK(m[0][1] == m[2][1]);
    for (auto& row : m)
      for (long v : row) CHECK(v >= 0);
  }
}

TEST_CASE("geometry enumeration matches the published matrices") {
  auto g211 = enumerate_geometries(Stratum::Prym211, table_solutions(Stratum::Prym211));
  REQUIRE(g211.kept.size() == 1);
  CHECK(g211.kept[0].d0 == 33);
  CHECK(g211.kept[0].mred == ReducedMatrix{0, 6, 3, 3});
  CHECK(g211.discarded.size() == 2);  // the two C2-crossing variants

  auto g22 = enumerate_geometries(Stratum::Prym22, table_solutions(Stratum::Prym22));
  REQUIRE(g22.kept.size() == 7);
  std::set<std::string> got;
  for (const auto& g : g22.kept) got.insert(g.mred.str() + "|" + std::to_string(g.d0));
  std::set<std::string> want;
  std::vector<long> fields = {2, 3, 3, 3, 33, 33, 33};
  auto mats = redint22_matrices();
  for (size_t i = 0; i < mats.size(); ++i) {
    long d0 = i == 0 ? 2 : (i <= 3 ? 3 : 33);
    want.insert(mats[i].str() + "|" + std::to_string(d0));
  }
  CHECK(got == want);

  // r2 per cell as published.
  for (const auto& g : g22.kept) {
    if (g.mred == ReducedMatrix{72, 48, 24, 18})
      CHECK(g.horizontal.r2 == QuadElt(Rational(0), Rational(1, 2), 2));
    if (g.mred == ReducedMatrix{72, 24, 12, 6})
      CHECK(g.horizontal.r2 == QuadElt(Rational(-1, 2), Rational(1, 2), 3));
    if (g.mred == ReducedMatrix{72, 24, 48, 18})
      CHECK(g.horizontal.r2 == QuadElt(Rational(1, 2), Rational(1, 2), 3));
    if (g.mred == ReducedMatrix{36, 12, 30, 12})
      CHECK(g.horizontal.r2 == QuadElt(Rational(0), Rational(1), 3));
    if (g.mred == ReducedMatrix{6, 24, 12, 54})
      CHECK(g.horizontal.r2 == QuadElt(Rational(3, 2), Rational(1, 2), 33));
    if (g.mred == ReducedMatrix{6, 24, 3, 18})
      CHECK(g.horizontal.r2 == QuadElt(Rational(-3, 2), Rational(1, 2), 33));
    if (g.mred == ReducedMatrix{3, 6, 3, 0})
      CHECK(g.horizontal.r2 == QuadElt(Rational(-3, 2), Rational(1, 2), 33));
  }

  // Every kept geometry: identities hold exactly.
  for (const auto& g : g22.kept) {
    CHECK(g.wZ2 == g.wZ1 * g.vertical.r2);
    CHECK(g.hZ2 == g.hZ1 * height_from_width(g.vertical.r2));
    CHECK(g.horizontal.r2.norm().sign() < 0);
  }

  // Prym(2,1,1) restricted to D0 in {2, 3, 6}: no geometry.
  std::vector<RelationSolution> small;
  for (const auto& s : table_solutions(Stratum::Prym211))
    if (s.r.d0() != 33) small.push_back(s);
  auto g_small = enumerate_geometries(Stratum::Prym211, small);
  CHECK(g_small.kept.empty());
}
