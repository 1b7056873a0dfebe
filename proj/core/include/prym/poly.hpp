#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "prym/multipoly.hpp"
#include "prym/rational.hpp"

namespace prym {

// Exact division customization point for resultants over rings.
inline Rational exact_divide(const Rational& a, const Rational& b) { return a / b; }
inline MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b) {
  return MultiPoly::exact_div(a, b);
}

// Dense univariate polynomial over an exact coefficient ring K.
template <class K>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(K constant) { c_.push_back(std::move(constant)); trim(); }  // NOLINT

  static UniPoly x() { return UniPoly(std::vector<K>{K(0), K(1)}); }
  static UniPoly monomial(K c, int d) {
    std::vector<K> v(d + 1, K(0));
    v[d] = std::move(c);
    return UniPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
  const K& operator[](int i) const { return c_[i]; }
  const std::vector<K>& coeffs() const { return c_; }
  const K& lc() const {
    if (c_.empty()) throw std::domain_error("UniPoly: leading coefficient of zero");
    return c_.back();
  }

  friend UniPoly operator+(const UniPoly& f, const UniPoly& g) {
    std::vector<K> v(std::max(f.c_.size(), g.c_.size()), K(0));
    for (size_t i = 0; i < f.c_.size(); ++i) v[i] = v[i] + f.c_[i];
    for (size_t i = 0; i < g.c_.size(); ++i) v[i] = v[i] + g.c_[i];
    return UniPoly(std::move(v));
  }
  friend UniPoly operator-(const UniPoly& f, const UniPoly& g) {
    std::vector<K> v(std::max(f.c_.size(), g.c_.size()), K(0));
    for (size_t i = 0; i < f.c_.size(); ++i) v[i] = v[i] + f.c_[i];
    for (size_t i = 0; i < g.c_.size(); ++i) v[i] = v[i] - g.c_[i];
    return UniPoly(std::move(v));
  }
  friend UniPoly operator-(const UniPoly& f) {
    std::vector<K> v = f.c_;
    for (auto& x : v) x = K(0) - x;
    return UniPoly(std::move(v));
  }
  friend UniPoly operator*(const UniPoly& f, const UniPoly& g) {
    if (f.is_zero() || g.is_zero()) return UniPoly();
    std::vector<K> v(f.c_.size() + g.c_.size() - 1, K(0));
    for (size_t i = 0; i < f.c_.size(); ++i)
      for (size_t j = 0; j < g.c_.size(); ++j) v[i + j] = v[i + j] + f.c_[i] * g.c_[j];
    return UniPoly(std::move(v));
  }
  UniPoly operator*(const K& s) const {
    std::vector<K> v = c_;
    for (auto& x : v) x = x * s;
    return UniPoly(std::move(v));
  }
  friend bool operator==(const UniPoly& f, const UniPoly& g) { return f.c_ == g.c_; }
  friend bool operator!=(const UniPoly& f, const UniPoly& g) { return !(f == g); }

  K eval(const K& x) const {
    K acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // Euclidean division; requires K to be a field (uses operator/).
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& f, const UniPoly& g) {
    if (g.is_zero()) throw std::domain_error("UniPoly: division by zero polynomial");
    UniPoly r = f;
    std::vector<K> q(std::max<int>(0, f.degree() - g.degree() + 1), K(0));
    while (!r.is_zero() && r.degree() >= g.degree()) {
      K s = r.lc() / g.lc();
      int d = r.degree() - g.degree();
      q[d] = s;
      // r -= s * x^d * g
      for (int i = 0; i <= g.degree(); ++i) r.c_[i + d] = r.c_[i + d] - s * g.c_[i];
      r.trim();
    }
    return {UniPoly(std::move(q)), r};
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    K inv = K(1) / lc();
    return *this * inv;
  }

  static UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
      auto [q, r] = divmod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
  }

  UniPoly derivative() const {
    if (degree() < 1) return UniPoly();
    std::vector<K> v(c_.size() - 1, K(0));
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * K(static_cast<long>(i));
    return UniPoly(std::move(v));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
  }
  std::vector<K> c_;
};

// Resultant of f and g via fraction-free Gaussian elimination (Bareiss) on the
// Sylvester matrix. Works over any integral domain with exact_divide.
template <class K>
K resultant(const UniPoly<K>& f, const UniPoly<K>& g) {
  if (f.is_zero() || g.is_zero()) throw std::domain_error("resultant: zero polynomial");
  int m = f.degree(), n = g.degree();
  if (m == 0) {
    K acc(1);
    for (int i = 0; i < n; ++i) acc = acc * f[0];
    return acc;
  }
  if (n == 0) {
    K acc(1);
    for (int i = 0; i < m; ++i) acc = acc * g[0];
    return acc;
  }
  int size = m + n;
  std::vector<std::vector<K>> a(size, std::vector<K>(size, K(0)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) a[r][r + (m - i)] = f[i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) a[n + r][r + (n - i)] = g[i];

  // Bareiss: determinant with exact intermediate divisions and sign tracking.
  K prev(1);
  int sign = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (a[k][k] == K(0)) {
      int piv = -1;
      for (int r = k + 1; r < size; ++r)
        if (!(a[r][k] == K(0))) {
          piv = r;
          break;
        }
      if (piv < 0) return K(0);
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        K num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = exact_divide(num, prev);
      }
      a[i][k] = K(0);
    }
    prev = a[k][k];
  }
  K det = a[size - 1][size - 1];
  return sign < 0 ? K(0) - det : det;
}

// All rational roots of f (with multiplicity), found by divisor search on the
// leading and constant coefficients of the primitive integer form.
std::vector<Rational> rational_roots(const UniPoly<Rational>& f);

// Resultant of two univariate-in-X polynomials whose coefficients are MultiPoly.
using MPoly1 = UniPoly<MultiPoly>;

}  // namespace prym
