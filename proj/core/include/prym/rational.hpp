#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

namespace prym {

// Arbitrary-precision integer, a value-semantic wrapper over GMP's mpz_t.
class Int {
 public:
  Int() { mpz_init(z_); }
  Int(long v) { mpz_init_set_si(z_, v); }  // NOLINT(google-explicit-constructor)
  Int(int v) : Int(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  explicit Int(const std::string& s) {
    if (mpz_init_set_str(z_, s.c_str(), 10) != 0) {
      mpz_set_ui(z_, 0);
    }
  }
  Int(const Int& o) { mpz_init_set(z_, o.z_); }
  Int(Int&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  Int& operator=(const Int& o) {
    if (this != &o) mpz_set(z_, o.z_);
    return *this;
  }
  Int& operator=(Int&& o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~Int() { mpz_clear(z_); }

  mpz_srcptr raw() const { return z_; }
  mpz_ptr raw() { return z_; }

  friend Int operator+(const Int& a, const Int& b) { Int r; mpz_add(r.z_, a.z_, b.z_); return r; }
  friend Int operator-(const Int& a, const Int& b) { Int r; mpz_sub(r.z_, a.z_, b.z_); return r; }
  friend Int operator*(const Int& a, const Int& b) { Int r; mpz_mul(r.z_, a.z_, b.z_); return r; }
  friend Int operator-(const Int& a) { Int r; mpz_neg(r.z_, a.z_); return r; }
  Int& operator+=(const Int& b) { mpz_add(z_, z_, b.z_); return *this; }
  Int& operator-=(const Int& b) { mpz_sub(z_, z_, b.z_); return *this; }
  Int& operator*=(const Int& b) { mpz_mul(z_, z_, b.z_); return *this; }

  // Truncated division and exact division.
  friend Int operator/(const Int& a, const Int& b) { Int r; mpz_tdiv_q(r.z_, a.z_, b.z_); return r; }
  friend Int operator%(const Int& a, const Int& b) { Int r; mpz_tdiv_r(r.z_, a.z_, b.z_); return r; }
  static Int divexact(const Int& a, const Int& b) { Int r; mpz_divexact(r.z_, a.z_, b.z_); return r; }

  friend bool operator==(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) == 0; }
  friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
  friend bool operator<(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) < 0; }
  friend bool operator<=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
  friend bool operator>(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) > 0; }
  friend bool operator>=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) >= 0; }

  int sign() const { return mpz_sgn(z_); }
  bool is_zero() const { return sign() == 0; }
  bool is_one() const { return mpz_cmp_si(z_, 1) == 0; }
  bool odd() const { return mpz_odd_p(z_) != 0; }
  Int abs() const { Int r; mpz_abs(r.z_, z_); return r; }

  static Int gcd(const Int& a, const Int& b) { Int r; mpz_gcd(r.z_, a.z_, b.z_); return r; }
  static Int lcm(const Int& a, const Int& b) { Int r; mpz_lcm(r.z_, a.z_, b.z_); return r; }
  static Int pow(const Int& a, unsigned long e) { Int r; mpz_pow_ui(r.z_, a.z_, e); return r; }

  bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
  long to_long() const { return mpz_get_si(z_); }
  double to_double() const { return mpz_get_d(z_); }
  std::string str() const {
    char* s = mpz_get_str(nullptr, 10, z_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
  }

  size_t hash() const {
    size_t h = 1469598103934665603ull;
    h = h * 1099511628211ull + static_cast<size_t>(sign() + 1);
    for (size_t i = 0; i < mpz_size(z_); ++i)
      h = h * 1099511628211ull + static_cast<size_t>(mpz_getlimbn(z_, i));
    return h;
  }

 private:
  mpz_t z_;
};

std::ostream& operator<<(std::ostream& os, const Int& v);

// Exact rational number, always reduced, denominator > 0.
class Rational {
 public:
  Rational() { mpq_init(q_); }
  Rational(long v) { mpq_init(q_); mpq_set_si(q_, v, 1); }  // NOLINT(google-explicit-constructor)
  Rational(int v) : Rational(static_cast<long>(v)) {}       // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(const Int& num, const Int& den);
  explicit Rational(const Int& num) {
    mpq_init(q_);
    mpz_set(mpq_numref(q_), num.raw());
  }
  Rational(const Rational& o) { mpq_init(q_); mpq_set(q_, o.q_); }
  Rational(Rational&& o) noexcept { mpq_init(q_); mpq_swap(q_, o.q_); }
  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    mpq_swap(q_, o.q_);
    return *this;
  }
  ~Rational() { mpq_clear(q_); }

  // Parses "a/b" or "a".
  static Rational parse(const std::string& s);

  Int num() const { Int r; mpz_set(r.raw(), mpq_numref(q_)); return r; }
  Int den() const { Int r; mpz_set(r.raw(), mpq_denref(q_)); return r; }
  mpq_srcptr raw() const { return q_; }

  friend Rational operator+(const Rational& a, const Rational& b) { Rational r; mpq_add(r.q_, a.q_, b.q_); return r; }
  friend Rational operator-(const Rational& a, const Rational& b) { Rational r; mpq_sub(r.q_, a.q_, b.q_); return r; }
  friend Rational operator*(const Rational& a, const Rational& b) { Rational r; mpq_mul(r.q_, a.q_, b.q_); return r; }
  friend Rational operator/(const Rational& a, const Rational& b) { Rational r; mpq_div(r.q_, a.q_, b.q_); return r; }
  friend Rational operator-(const Rational& a) { Rational r; mpq_neg(r.q_, a.q_); return r; }
  Rational& operator+=(const Rational& b) { mpq_add(q_, q_, b.q_); return *this; }
  Rational& operator-=(const Rational& b) { mpq_sub(q_, q_, b.q_); return *this; }
  Rational& operator*=(const Rational& b) { mpq_mul(q_, q_, b.q_); return *this; }
  Rational& operator/=(const Rational& b) { mpq_div(q_, q_, b.q_); return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

  int sign() const { return mpq_sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_one() const { return mpq_cmp_si(q_, 1, 1) == 0; }
  bool is_integer() const { return mpz_cmp_si(mpq_denref(q_), 1) == 0; }
  Rational abs() const { Rational r; mpq_abs(r.q_, q_); return r; }
  Rational inverse() const { Rational r; mpq_inv(r.q_, q_); return r; }
  Rational pow(long e) const;

  double to_double() const { return mpq_get_d(q_); }
  std::string str() const;

  size_t hash() const { return num().hash() * 31 + den().hash(); }

 private:
  mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& v);

}  // namespace prym
