#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prym/origami.hpp"

namespace prym {

// Thurston-Veech normal form data: integers (w, h, t, e) with
// D = e^2 + 8wh, lambda = (e + sqrt(D))/2, and the slit parameter s in (0,1).
// Where a diagram does not expose the torus normal form, a candidate is
// identified by its exact surface instead (surface_key) together with the
// slit; has_normal_form distinguishes the two.
struct Prototype {
  bool has_normal_form = true;
  long w = 0, h = 0, t = 0, e = 0;
  long D = 0;
  QuadElt s;
  long d0 = 1;           // trace field
  std::string surface_key;  // canonical origami form when !has_normal_form

  friend bool operator==(const Prototype& x, const Prototype& y) {
    if (x.has_normal_form != y.has_normal_form) return false;
    if (!x.has_normal_form) return x.surface_key == y.surface_key && x.s == y.s;
    return x.w == y.w && x.h == y.h && x.t == y.t && x.e == y.e && x.D == y.D && x.s == y.s;
  }
  friend bool operator<(const Prototype& x, const Prototype& y);
  std::string str() const;

  // Everything (P_D) requires except 0 < lambda < w, which the source tables
  // themselves violate on half their rows. That clause is reported separately.
  bool satisfies_pd_core() const;
  bool lambda_below_w() const;
};

enum class ProtoStatus {
  Ok,
  InconsistentSelfGluing,  // torus offsets disagree; no normal form here
  NonRationalShear,
  NoIntegerScaling,
  NoMarkedSlit,  // no invariant slit edge: not a candidate at all
};

struct ProtoResult {
  ProtoStatus status = ProtoStatus::Ok;
  // One prototype per marked invariant slit edge (distinct slit values); the
  // complementary pair {s, 1-s} of one surface is collapsed to its larger
  // member. Falls back to surface-identified candidates when the torus
  // normal form is unavailable (status still records why).
  std::vector<Prototype> candidates;
};

// Normal-form extraction from a realized flat surface.
ProtoResult compute_prototype(const FlatSurface& fs);

// Pairwise rationality of modulus ratios for a list of (width, circumference)
// cylinders with exact entries.
bool moduli_ratios_rational(const std::vector<std::pair<QuadElt, QuadElt>>& cyls);

// Vertical-direction moduli of the candidate eigenform built from the
// prototype data (three tori glued cyclically along a slit of length
// s*lambda). Decided for twist parameter t = 0, where the vertical direction
// is periodic with cylinders (s*lambda) x (lambda + 2h), ((1-s)*lambda) x
// lambda and two copies (w - s*lambda) x h. Returns false exactly when the
// ratios fail to be rational; prototypes with t != 0 are not decided (true).
bool moduli_commensurability_check(const Prototype& p);

// All twist-zero prototype candidates of the surface pass the check.
bool moduli_commensurability_check(const FlatSurface& fs);

}  // namespace prym
