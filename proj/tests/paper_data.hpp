#pragma once

// Shared regression fixtures for the test suites: the published solution
// tables and reduced intersection matrices.

#include <algorithm>
#include <vector>

#include "prym/cuspgeom.hpp"
#include "prym/solver.hpp"

namespace testdata {

using namespace prym;

inline std::vector<RelationSolution> table_representatives(Stratum st) {
  auto mk = [&](long N, long e1, long e2, Rational a, Rational b, long d) {
    return RelationSolution{N, e1, e2, b.is_zero() ? QuadElt(a) : QuadElt(a, b, d), st};
  };
  if (st == Stratum::Prym211) {
    return {mk(6, 1, 1, Rational(1, 2), Rational(1, 6), 33),
            mk(6, 3, 1, Rational(0), Rational(2, 3), 6),
            mk(6, 3, 2, Rational(0), Rational(2), 2),
            mk(6, 5, 1, Rational(-1, 2), Rational(1, 6), 33),
            mk(12, 6, 1, Rational(-2), Rational(2), 3),
            mk(12, 6, 5, Rational(2), Rational(2), 3),
            mk(24, 3, 4, Rational(0), Rational(2, 3), 3),
            mk(24, 15, 4, Rational(0), Rational(2, 3), 3)};
  }
  return {mk(12, 2, 3, Rational(0), Rational(1, 2), 2),
          mk(12, 10, 3, Rational(0), Rational(1, 2), 2),
          mk(12, 1, 3, Rational(-1, 2), Rational(1, 2), 3),
          mk(12, 1, 9, Rational(-1, 2), Rational(1, 2), 3),
          mk(12, 5, 3, Rational(1, 2), Rational(1, 2), 3),
          mk(12, 7, 3, Rational(1, 2), Rational(1, 2), 3),
          mk(12, 4, 3, Rational(0), Rational(1, 2), 6),
          mk(12, 4, 9, Rational(0), Rational(1, 2), 6),
          mk(12, 4, 1, Rational(3, 2), Rational(1, 2), 33),
          mk(12, 4, 5, Rational(-3, 2), Rational(1, 2), 33),
          mk(12, 8, 1, Rational(-3, 2), Rational(1, 2), 33),
          mk(12, 8, 5, Rational(3, 2), Rational(1, 2), 33),
          mk(48, 16, 21, Rational(0), Rational(1), 3),
          mk(48, 16, 9, Rational(0), Rational(1), 3),
          mk(48, 32, 3, Rational(0), Rational(1), 3),
          mk(48, 32, 15, Rational(0), Rational(1), 3)};
}

inline std::vector<RelationSolution> table_solutions(Stratum st) {
  auto reps = table_representatives(st);
  std::vector<RelationSolution> all = reps;
  for (auto s : reps) {
    s.eXY = s.N - s.eXY;
    s.eU = ((s.N - s.eU) % s.N + s.N) % s.N;
    all.push_back(s);
  }
  std::sort(all.begin(), all.end(), [](const RelationSolution& x, const RelationSolution& y) {
    return solution_cmp(x, y) < 0;
  });
  return all;
}

inline std::vector<ReducedMatrix> redint22_matrices() {
  return {{72, 48, 24, 18}, {72, 24, 12, 6}, {72, 24, 48, 18}, {36, 12, 30, 12},
          {6, 24, 12, 54},  {6, 24, 3, 18},  {3, 6, 3, 0}};
}

}  // namespace testdata
