#include "prym/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace prym {

std::ostream& operator<<(std::ostream& os, const Int& v) { return os << v.str(); }

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  mpq_init(q_);
  mpq_set_si(q_, num, 1);
  mpq_t d;
  mpq_init(d);
  mpq_set_si(d, den, 1);
  mpq_div(q_, q_, d);
  mpq_clear(d);
}

Rational::Rational(const Int& num, const Int& den) {
  if (den.is_zero()) throw std::invalid_argument("Rational: zero denominator");
  mpq_init(q_);
  mpz_set(mpq_numref(q_), num.raw());
  mpz_set(mpq_denref(q_), den.raw());
  mpq_canonicalize(q_);
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Int(s));
  return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  if (e < 0) return inverse().pow(-e);
  Rational base = *this, acc(1);
  long k = e;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

std::string Rational::str() const {
  if (is_integer()) return num().str();
  return num().str() + "/" + den().str();
}

std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.str(); }

}  // namespace prym
