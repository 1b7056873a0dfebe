#include "prym/quad.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace prym {

QuadElt::QuadElt(Rational a, Rational b, long d0) : a_(std::move(a)), b_(std::move(b)), d0_(d0) {
  if (b_.is_zero()) {
    d0_ = 1;
    return;
  }
  if (d0_ <= 1) throw std::invalid_argument("QuadElt: D0 must be > 1 for irrational elements");
  auto [s, f] = squarefree_decompose(Int(d0_));
  if (!f.is_one()) throw std::invalid_argument("QuadElt: D0 must be squarefree");
}

long QuadElt::common_field(const QuadElt& x, const QuadElt& y) {
  if (x.d0_ == y.d0_) return x.d0_;
  if (x.d0_ == 1) return y.d0_;
  if (y.d0_ == 1) return x.d0_;
  throw std::invalid_argument("QuadElt: mixing distinct quadratic fields");
}

int QuadElt::sign() const {
  int sa = a_.sign(), sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b*sqrt(D0) have opposite signs; compare magnitudes via a^2 vs D0*b^2.
  Rational lhs = a_ * a_, rhs = Rational(d0_) * b_ * b_;
  if (lhs == rhs) return 0;
  return (lhs > rhs) ? sa : sb;
}

QuadElt operator+(const QuadElt& x, const QuadElt& y) {
  long d = QuadElt::common_field(x, y);
  return QuadElt(x.a_ + y.a_, x.b_ + y.b_, d);
}

QuadElt operator-(const QuadElt& x, const QuadElt& y) {
  long d = QuadElt::common_field(x, y);
  return QuadElt(x.a_ - y.a_, x.b_ - y.b_, d);
}

QuadElt operator*(const QuadElt& x, const QuadElt& y) {
  long d = QuadElt::common_field(x, y);
  return QuadElt(x.a_ * y.a_ + Rational(d) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
}

QuadElt QuadElt::inverse() const {
  Rational n = norm();
  if (n.is_zero()) throw std::domain_error("QuadElt: inverse of zero");
  return QuadElt(a_ / n, -b_ / n, d0_);
}

QuadElt operator/(const QuadElt& x, const QuadElt& y) { return x * y.inverse(); }

bool operator==(const QuadElt& x, const QuadElt& y) {
  if (x.b_.is_zero() && y.b_.is_zero()) return x.a_ == y.a_;
  return x.d0_ == y.d0_ && x.a_ == y.a_ && x.b_ == y.b_;
}

int QuadElt::lex_cmp(const QuadElt& x, const QuadElt& y) {
  if (x.d0_ != y.d0_) return x.d0_ < y.d0_ ? -1 : 1;
  if (x.a_ != y.a_) return x.a_ < y.a_ ? -1 : 1;
  if (x.b_ != y.b_) return x.b_ < y.b_ ? -1 : 1;
  return 0;
}

double QuadElt::to_double() const {
  return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(d0_));
}

std::string QuadElt::str() const {
  if (is_rational()) return a_.str();
  std::string root = "sqrt(" + std::to_string(d0_) + ")";
  std::string out;
  if (!a_.is_zero()) out += a_.str();
  if (b_.is_one())
    out += out.empty() ? root : "+" + root;
  else if (b_ == Rational(-1))
    out += "-" + root;
  else {
    std::string bs = b_.str();
    if (!out.empty() && b_.sign() > 0) out += "+";
    out += bs + "*" + root;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const QuadElt& v) { return os << v.str(); }

Rational quad_norm_of(const QuadElt& x) { return x.norm(); }
QuadElt quad_conj_of(const QuadElt& x) { return x.conj(); }

}  // namespace prym
