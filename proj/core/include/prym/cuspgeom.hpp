#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "prym/quad.hpp"
#include "prym/solver.hpp"

namespace prym {

// Geometry of a suitable direction derived from one relation solution:
// widths (1, r2), heights (1, h2), and one relative-period length |gamma|
// realized by the (k, ell) lattice shift.
struct CuspTuple {
  RelationSolution source;
  int k = 0;
  int ell = 0;
  QuadElt r2;
  QuadElt h2;
  QuadElt gamma;

  friend bool operator==(const CuspTuple& x, const CuspTuple& y) {
    return x.source == y.source && x.k == y.k && x.ell == y.ell && x.r2 == y.r2 &&
           x.h2 == y.h2 && x.gamma == y.gamma;
  }
};

// Reduced intersection matrix [[M11+M13, 2*M12], [M21, M22]].
struct ReducedMatrix {
  long m11p13 = 0, m12x2 = 0, m21 = 0, m22 = 0;
  friend bool operator==(const ReducedMatrix& x, const ReducedMatrix& y) {
    return x.m11p13 == y.m11p13 && x.m12x2 == y.m12x2 && x.m21 == y.m21 && x.m22 == y.m22;
  }
  friend bool operator<(const ReducedMatrix& x, const ReducedMatrix& y) {
    if (x.m11p13 != y.m11p13) return x.m11p13 < y.m11p13;
    if (x.m12x2 != y.m12x2) return x.m12x2 < y.m12x2;
    if (x.m21 != y.m21) return x.m21 < y.m21;
    return x.m22 < y.m22;
  }
  std::string str() const;
};

using FullMatrix = std::array<std::array<long, 3>, 3>;

enum class Crossing { C1, C2 };

// A horizontal/vertical pair of suitable directions with integral reduced
// intersection matrix and the exact cylinder data it determines.
struct GeometryPair {
  CuspTuple horizontal;
  CuspTuple vertical;
  Crossing crossing = Crossing::C1;
  QuadElt wZ1, wZ2, hZ1, hZ2;
  ReducedMatrix mred;
  FullMatrix fullM{};  // first split; all splits via full_matrix_splits
  long d0 = 1;
};

// h2 = -2 r2 / Norm(r2); requires Norm(r2) < 0.
QuadElt height_from_width(const QuadElt& r2);

// All (k, ell) in [-2..2] x [-1..1] whose |gamma| lands in (0, max(1, r2)).
std::vector<CuspTuple> relative_periods(const RelationSolution& sol);

enum class MredStatus {
  Ok,
  FieldMismatch,
  SingularSystem,   // conjugate width system not invertible
  NonIntegral,      // matrix entries not nonnegative integers
  OddM12,           // parity constraint violated
  HeightSolveFailed,
  RatioMismatch,    // h(Z) not proportional to (1, h2')
};

struct MredResult {
  MredStatus status = MredStatus::Ok;
  GeometryPair pair;
};

// Solve the Galois-conjugate system for the reduced matrix at the given
// crossing; |beta| = h1 (Prym211: 1) or 2*h1 (Prym22: 2) for a C1 crossing,
// h2 for a C2 crossing.
MredResult reduced_matrix_from_pair(Stratum s, const CuspTuple& hor, const CuspTuple& vert,
                                    Crossing crossing);

// All symmetric 3x3 splits of a reduced matrix.
std::vector<FullMatrix> full_matrix_splits(const ReducedMatrix& m);

struct GeometryEnumeration {
  std::vector<GeometryPair> kept;       // after the stratum's crossing filter
  std::vector<GeometryPair> discarded;  // integral matrices at the other crossing
};

// All geometries over ordered solution pairs with matching trace field,
// canonically sorted and deduplicated.
GeometryEnumeration enumerate_geometries(Stratum s, const std::vector<RelationSolution>& sols);

int geometry_cmp(const GeometryPair& x, const GeometryPair& y);

}  // namespace prym
