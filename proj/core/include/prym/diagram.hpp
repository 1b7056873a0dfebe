#pragma once

#include <array>
#include <string>
#include <vector>

#include "prym/solver.hpp"

namespace prym {

// Combinatorial model of the horizontal foliation of a three-cylinder
// direction: each cylinder carries a cyclic word of saddle connections on its
// top and bottom boundary, every edge appearing once among the tops and once
// among the bottoms. Cylinder 1 is the rho-fixed one (C2 in the labeling of
// the geometry stage); cylinders 0 and 2 are exchanged.
struct SeparatrixDiagram {
  int n_edges = 0;
  std::array<std::vector<int>, 3> top;
  std::array<std::vector<int>, 3> bot;
  std::vector<int> rho_edge;  // involution induced on edges

  // Derived data.
  std::vector<std::vector<int>> vertex_cycles() const;  // zeros; length k = order k-1
  std::vector<int> zero_orders() const;                 // descending
  bool connected_leaf() const;
  std::string canonical_key() const;
  std::string str() const;
};

// Exhaustive enumeration of diagrams with the stratum's zero profile and a
// compatible Prym involution, up to relabeling (cylinders 0/2 swappable).
std::vector<SeparatrixDiagram> enumerate_separatrix_diagrams(Stratum s);

}  // namespace prym
