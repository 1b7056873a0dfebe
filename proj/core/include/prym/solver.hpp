#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prym/cyclo.hpp"
#include "prym/quad.hpp"

namespace prym {

enum class Stratum { Prym211, Prym22 };

std::string stratum_name(Stratum s);            // "2-1-1" / "2-2"
std::optional<Stratum> stratum_parse(const std::string& s);

// One monomial of a torsion equation: (cr2*r^2 + cr1*r + cr0) * zXY^ax * zU^au.
struct EqTerm {
  int ax, au;
  long cr2, cr1, cr0;
};

// The eight terms of the torsion equation for the stratum, in source order.
const std::vector<EqTerm>& equation_terms(Stratum s);

// A solution (zeta_N^eXY, zeta_N^eU, r) of the stratum's torsion equation with
// r real quadratic, r > 0 and negative norm.
struct RelationSolution {
  long N = 0;
  long eXY = 0;
  long eU = 0;
  QuadElt r;
  Stratum stratum = Stratum::Prym211;

  friend bool operator==(const RelationSolution& x, const RelationSolution& y) {
    return x.N == y.N && x.eXY == y.eXY && x.eU == y.eU && x.r == y.r && x.stratum == y.stratum;
  }
};

int solution_cmp(const RelationSolution& x, const RelationSolution& y);

enum class DvzaReading { Literal, Doubled, Union };

// Orders N admitted by the Dvornicich-Zannier bounds for an irreducible
// K-relation of length k over a degree-d field. Downward closed under
// divisibility. The Union reading drives the production loops.
std::vector<long> admissible_orders(int k, int d, DvzaReading reading = DvzaReading::Union);

// Conductor loop set for a stratum: N(8) for Prym(2,1,1) and
// N(8) u 2N(4) u 4N(4) for Prym(2,2).
std::vector<long> stratum_order_set(Stratum s);

// Coefficients (a, b, c) with a r^2 + b r + c = 0 equivalent to the torsion
// equation at (zeta_N^eXY, zeta_N^eU). Dense representation.
std::array<CycloElt, 3> quadratic_coefficients(Stratum s, long N, long eXY, long eU);

// All real r with [Q(r):Q] = 2 solving a r^2 + b r + c = 0 (dense inputs).
std::vector<QuadElt> solve_relation_instance(const CycloElt& a, const CycloElt& b,
                                             const CycloElt& c);

struct BetaGammaResult {
  std::vector<std::pair<Rational, Rational>> pairs;
  bool underdetermined = false;
};

// Rational (beta, gamma) with Res_x(a x^2 + b x + c, x^2 + beta x + gamma) = 0.
BetaGammaResult beta_gamma_candidates(const CycloElt& a, const CycloElt& b, const CycloElt& c);

// One root of the torsion equation at a specific exponent pair.
struct PairRoot {
  QuadElt r;
  // True when r lies outside Q(zeta_N) (rational quadratic coefficients case);
  // such roots are fixed by the extended Galois action on the exponent orbit.
  bool galois_invariant = false;
};

// Exact decision for one exponent pair (sparse machinery; any conductor in the
// order sets). Returns every real quadratic root, unfiltered by sign/norm.
std::vector<PairRoot> solve_pair_exact(Stratum s, long N, long eXY, long eU);

struct SolveOptions {
  int jobs = 1;
  bool galois_orbits = false;   // orbit-level enumeration (exact bookkeeping)
  bool conjugation_fold = true; // process one of (e, u) / (N-e, N-u), mirror the other
  bool use_filter = true;       // mod-p prefilter (results identical either way)
  long max_conductor = 0;       // 0 = the full order set (tests may restrict)
  std::function<void(const std::string&)> log;
};

// All RelationSolutions of the stratum, canonically sorted by (N, eXY, eU, r).
std::vector<RelationSolution> enumerate_solutions(Stratum s, const SolveOptions& opts = {});

// Torsion equation as a polynomial in vars (0: zXY, 1: zU, 2: r).
MultiPoly torsion_polynomial(Stratum s);

// Symbolic self-test: the resultant of the opposite-residue system reproduces
// the square of the torsion equation (unit factor 256*(zU+1)*zXY*r for
// Prym(2,1,1); the analogous derived unit for Prym(2,2)).
bool verify_resultant_identity(Stratum s);

// Same check against a caller-supplied torsion polynomial (testing hook).
bool verify_resultant_identity_against(Stratum s, const MultiPoly& torsion);

}  // namespace prym
