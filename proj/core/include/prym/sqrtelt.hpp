#pragma once

#include <vector>

#include "prym/cyclo.hpp"

namespace prym {

// The canonical square root of squarefree d > 1 inside Q(zeta_N), built from
// quadratic Gauss sums; positive under the embedding zeta_N = exp(2*pi*i/N).
// Requires quad_field_conductor(d) | N.
CycloElt sqrt_in_cyclo(long d, long N);

// chi(j) with galois_j(sqrt(d)) = chi(j) * sqrt(d); Kronecker character of the
// fundamental discriminant of Q(sqrt(d)).
int sqrt_galois_character(long d, long j);

// Squarefree d > 1 with Q(sqrt(d)) contained in Q(zeta_N), ascending.
std::vector<long> real_quadratic_subfields(long N);

}  // namespace prym
