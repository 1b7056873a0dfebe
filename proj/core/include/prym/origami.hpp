#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "prym/cuspgeom.hpp"
#include "prym/diagram.hpp"

namespace prym {

// Square-tiled surface with a Prym involution: right/up neighbor permutations
// and the involution on squares.
struct Origami {
  int n = 0;
  std::vector<int> sh, sv, rho;

  std::vector<int> commutator_orders() const;  // zero orders, descending
  bool connected() const;
  std::string canonical_form() const;
};

struct CylinderData {
  long width = 0;   // squares along the core curve
  long height = 0;  // rows of squares
  std::vector<int> squares;
};

// Cylinder decomposition in the horizontal (sh) or vertical (sv) direction.
// The rho-fixed cylinder is placed second when the involution is supplied and
// the decomposition has the three-cylinder Prym shape.
std::vector<CylinderData> cylinder_decomposition(const Origami& o, bool vertical);

// Square counts (a1, a2, b1, b2) determined by a reduced matrix.
struct SquareCounts {
  long a1 = 0, a2 = 0, b1 = 0, b2 = 0;
};
SquareCounts square_counts(const ReducedMatrix& m);

// An arithmetic surface: the origami together with its provenance.
struct ArithmeticSurface {
  Origami origami;
  std::vector<long> lengths;          // saddle connection lengths, by edge id
  std::array<long, 3> twists{};       // top offsets per cylinder row
  std::array<long, 3> row_width{};    // a1, a2, a1
  std::vector<int> vcyl_of_square;    // vertical cylinder index (0,1,2; 1 = rho-fixed)
  FullMatrix inter{};                 // geometric intersection matrix
};

// All square-tiled surfaces with the diagram's combinatorics whose vertical
// direction realizes a split of the reduced matrix, Prym involution included.
// Surfaces are deduplicated up to translation equivalence.
std::vector<ArithmeticSurface> enumerate_arithmetic_surfaces(const SeparatrixDiagram& diagram,
                                                             const ReducedMatrix& mred);

// Vertical admissibility: an appropriate vertical saddle connection crossing
// only what it must (see the stratum conventions).
bool admissible_vertical(const ArithmeticSurface& as, Stratum s);

// Exact flat realization data of an arithmetic surface under a geometry.
struct FlatSurface {
  ArithmeticSurface surf;
  GeometryPair geometry;
  std::array<QuadElt, 3> cyl_heights;   // h(C1)=1, h(C2), h(C3)=1
  std::array<QuadElt, 3> vcyl_widths;   // h(Z1), h(Z2), h(Z3)
  std::array<QuadElt, 3> flat_twists;   // converted twists t_k
  QuadElt area;
};

FlatSurface realize_surface(const ArithmeticSurface& as, const GeometryPair& g);

}  // namespace prym
