#pragma once

#include <iosfwd>
#include <string>

#include "prym/numth.hpp"
#include "prym/rational.hpp"

namespace prym {

// Element a + b*sqrt(D0) of the real quadratic field Q(sqrt(D0)), D0 squarefree > 1.
// Pure rationals are carried with b = 0; those may use D0 = 1 as a fieldless marker
// and combine with any field. All comparisons use the embedding with sqrt(D0) > 0.
class QuadElt {
 public:
  QuadElt() : a_(0), b_(0), d0_(1) {}
  QuadElt(Rational a) : a_(std::move(a)), b_(0), d0_(1) {}  // NOLINT(google-explicit-constructor)
  QuadElt(long v) : a_(v), b_(0), d0_(1) {}                 // NOLINT(google-explicit-constructor)
  QuadElt(Rational a, Rational b, long d0);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long d0() const { return d0_; }

  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  QuadElt conj() const { return QuadElt(a_, -b_, d0_); }
  Rational norm() const { return a_ * a_ - Rational(d0_) * b_ * b_; }
  Rational trace() const { return a_ + a_; }

  // Exact sign of a + b*sqrt(D0) under sqrt(D0) > 0.
  int sign() const;

  friend QuadElt operator+(const QuadElt& x, const QuadElt& y);
  friend QuadElt operator-(const QuadElt& x, const QuadElt& y);
  friend QuadElt operator*(const QuadElt& x, const QuadElt& y);
  friend QuadElt operator/(const QuadElt& x, const QuadElt& y);
  friend QuadElt operator-(const QuadElt& x) { return QuadElt(-x.a_, -x.b_, x.d0_); }

  QuadElt inverse() const;

  friend bool operator==(const QuadElt& x, const QuadElt& y);
  friend bool operator!=(const QuadElt& x, const QuadElt& y) { return !(x == y); }
  friend bool operator<(const QuadElt& x, const QuadElt& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadElt& x, const QuadElt& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const QuadElt& x, const QuadElt& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const QuadElt& x, const QuadElt& y) { return (x - y).sign() >= 0; }

  // Lexicographic key (d0, a, b) for canonical sorting, not numeric order.
  static int lex_cmp(const QuadElt& x, const QuadElt& y);

  double to_double() const;
  std::string str() const;
  size_t hash() const { return a_.hash() * 131 + b_.hash() * 31 + static_cast<size_t>(d0_); }

 private:
  static long common_field(const QuadElt& x, const QuadElt& y);
  Rational a_, b_;
  long d0_;
};

std::ostream& operator<<(std::ostream& os, const QuadElt& v);

Rational quad_norm_of(const QuadElt& x);
QuadElt quad_conj_of(const QuadElt& x);

}  // namespace prym
