#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prym/poly.hpp"
#include "prym/quad.hpp"
#include "prym/rational.hpp"

namespace prym {

// N-th cyclotomic polynomial, monic of degree phi(N).
UniPoly<Rational> cyclotomic_polynomial(long N);

// Shared per-conductor data: Phi_N and reduction tables.
struct CycloCtx {
  long N = 1;
  int phi = 1;
  UniPoly<Rational> phi_poly;
  // reduce[i] = x^(phi + i) reduced mod Phi_N, for i in [0, phi).
  std::vector<std::vector<Rational>> reduce;
  static std::shared_ptr<const CycloCtx> get(long N);
};

// Element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1).
class CycloElt {
 public:
  CycloElt() : ctx_(CycloCtx::get(1)), c_(1, Rational(0)) {}
  CycloElt(long N, std::vector<Rational> coeffs);
  static CycloElt zero(long N) { return from_rational(N, Rational(0)); }
  static CycloElt from_rational(long N, const Rational& q);
  // zeta_N^k (k may be any integer; reduced mod N).
  static CycloElt zeta(long N, long k = 1);

  long conductor() const { return ctx_->N; }
  int phi() const { return ctx_->phi; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  // Value if rational; throws otherwise.
  Rational rational_value() const;

  friend CycloElt operator+(const CycloElt& x, const CycloElt& y);
  friend CycloElt operator-(const CycloElt& x, const CycloElt& y);
  friend CycloElt operator*(const CycloElt& x, const CycloElt& y);
  friend CycloElt operator/(const CycloElt& x, const CycloElt& y);
  friend CycloElt operator-(const CycloElt& x);
  CycloElt operator*(const Rational& s) const;
  friend bool operator==(const CycloElt& x, const CycloElt& y);
  friend bool operator!=(const CycloElt& x, const CycloElt& y) { return !(x == y); }

  CycloElt inverse() const;
  CycloElt pow(long e) const;

  // Galois automorphism zeta -> zeta^j; requires gcd(j, N) = 1.
  CycloElt galois(long j) const;
  CycloElt complex_conj() const { return galois(conductor() - 1); }

  // Monic minimal polynomial over Q; degree divides phi(N).
  UniPoly<Rational> min_poly() const;

  // QuadElt representation iff degree <= 2 over Q and the field is real.
  // The sign convention follows the embedding zeta_N = exp(2*pi*i/N).
  std::optional<QuadElt> as_quadratic() const;

  std::string str() const;

 private:
  void reduce_in_place(std::vector<Rational>& full) const;
  std::shared_ptr<const CycloCtx> ctx_;
  std::vector<Rational> c_;
};

// Spec-level free functions.
inline CycloElt galois_apply(const CycloElt& x, long j) { return x.galois(j); }
inline UniPoly<Rational> min_poly_over_Q(const CycloElt& x) { return x.min_poly(); }
std::optional<QuadElt> as_quadratic(const CycloElt& x);

}  // namespace prym
