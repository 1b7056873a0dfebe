#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "prym/rational.hpp"

namespace prym {

// Sparse multivariate polynomial over Q in at most kMaxVars variables.
// Terms are kept in a lex-ordered map keyed by exponent tuples.
class MultiPoly {
 public:
  static constexpr int kMaxVars = 4;
  using Expo = std::array<int, kMaxVars>;

  MultiPoly() = default;
  MultiPoly(Rational c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_[Expo{0, 0, 0, 0}] = std::move(c);
  }
  MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static MultiPoly var(int i, int power = 1);
  static MultiPoly monomial(Rational c, const Expo& e);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;
  int degree_in(int var) const;
  size_t term_count() const { return terms_.size(); }
  const std::map<Expo, Rational>& terms() const { return terms_; }

  friend MultiPoly operator+(const MultiPoly& x, const MultiPoly& y);
  friend MultiPoly operator-(const MultiPoly& x, const MultiPoly& y);
  friend MultiPoly operator*(const MultiPoly& x, const MultiPoly& y);
  friend MultiPoly operator-(const MultiPoly& x);
  MultiPoly& operator+=(const MultiPoly& y) { return *this = *this + y; }
  MultiPoly& operator-=(const MultiPoly& y) { return *this = *this - y; }
  MultiPoly& operator*=(const MultiPoly& y) { return *this = *this * y; }
  friend bool operator==(const MultiPoly& x, const MultiPoly& y) { return x.terms_ == y.terms_; }
  friend bool operator!=(const MultiPoly& x, const MultiPoly& y) { return !(x == y); }

  // Exact division; throws if the division leaves a remainder.
  static MultiPoly exact_div(const MultiPoly& num, const MultiPoly& den);
  // Division attempt; returns false if not exactly divisible.
  static bool try_div(const MultiPoly& num, const MultiPoly& den, MultiPoly* quot);

  // Substitute variable -> value polynomials (full evaluation of listed vars).
  MultiPoly substitute(int var, const MultiPoly& value) const;
  Rational eval(const std::vector<Rational>& point) const;

  // Collect as univariate in `var`: index d holds the coefficient of var^d.
  std::vector<MultiPoly> collect(int var) const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  void trim();
  std::map<Expo, Rational> terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

}  // namespace prym
