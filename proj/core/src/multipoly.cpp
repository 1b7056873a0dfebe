#include "prym/multipoly.hpp"

#include <ostream>
#include <stdexcept>

namespace prym {

MultiPoly MultiPoly::var(int i, int power) {
  Expo e{0, 0, 0, 0};
  e[i] = power;
  return monomial(Rational(1), e);
}

MultiPoly MultiPoly::monomial(Rational c, const Expo& e) {
  MultiPoly p;
  if (!c.is_zero()) p.terms_[e] = std::move(c);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == Expo{0, 0, 0, 0};
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw std::domain_error("MultiPoly: not a constant");
  return terms_.begin()->second;
}

int MultiPoly::degree_in(int var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

void MultiPoly::trim() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
}

MultiPoly operator+(const MultiPoly& x, const MultiPoly& y) {
  MultiPoly r = x;
  for (const auto& [e, c] : y.terms_) {
    auto it = r.terms_.find(e);
    if (it == r.terms_.end())
      r.terms_[e] = c;
    else
      it->second += c;
  }
  r.trim();
  return r;
}

MultiPoly operator-(const MultiPoly& x) {
  MultiPoly r = x;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly operator-(const MultiPoly& x, const MultiPoly& y) { return x + (-y); }

MultiPoly operator*(const MultiPoly& x, const MultiPoly& y) {
  MultiPoly r;
  for (const auto& [ex, cx] : x.terms_)
    for (const auto& [ey, cy] : y.terms_) {
      MultiPoly::Expo e;
      for (int i = 0; i < MultiPoly::kMaxVars; ++i) e[i] = ex[i] + ey[i];
      auto it = r.terms_.find(e);
      if (it == r.terms_.end())
        r.terms_[e] = cx * cy;
      else
        it->second += cx * cy;
    }
  r.trim();
  return r;
}

bool MultiPoly::try_div(const MultiPoly& num, const MultiPoly& den, MultiPoly* quot) {
  if (den.is_zero()) throw std::domain_error("MultiPoly: division by zero");
  MultiPoly r = num, q;
  // Lead term of den in the map's lex order (largest key).
  const auto lead = std::prev(den.terms_.end());
  while (!r.is_zero()) {
    const auto rl = std::prev(r.terms_.end());
    Expo e;
    for (int i = 0; i < kMaxVars; ++i) {
      e[i] = rl->first[i] - lead->first[i];
      if (e[i] < 0) return false;
    }
    MultiPoly t = monomial(rl->second / lead->second, e);
    q += t;
    r -= t * den;
  }
  *quot = std::move(q);
  return true;
}

MultiPoly MultiPoly::exact_div(const MultiPoly& num, const MultiPoly& den) {
  MultiPoly q;
  if (!try_div(num, den, &q)) throw std::domain_error("MultiPoly: inexact division");
  return q;
}

MultiPoly MultiPoly::substitute(int var, const MultiPoly& value) const {
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    Expo rest = e;
    int d = e[var];
    rest[var] = 0;
    MultiPoly t = monomial(c, rest);
    for (int i = 0; i < d; ++i) t *= value;
    out += t;
  }
  return out;
}

Rational MultiPoly::eval(const std::vector<Rational>& point) const {
  Rational out(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < kMaxVars; ++i) {
      if (e[i] == 0) continue;
      if (i >= static_cast<int>(point.size()))
        throw std::invalid_argument("MultiPoly::eval: missing coordinate");
      t *= point[i].pow(e[i]);
    }
    out += t;
  }
  return out;
}

std::vector<MultiPoly> MultiPoly::collect(int var) const {
  std::vector<MultiPoly> out(degree_in(var) + 1);
  for (const auto& [e, c] : terms_) {
    Expo rest = e;
    int d = e[var];
    rest[var] = 0;
    out[d] += monomial(c, rest);
  }
  return out;
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  auto name = [&](int i) {
    if (i < static_cast<int>(names.size())) return names[i];
    return std::string(1, static_cast<char>('w' + i));
  };
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!out.empty()) out += c.sign() > 0 ? " + " : " - ";
    else if (c.sign() < 0) out += "-";
    Rational ac = c.abs();
    bool any_var = false;
    for (int i = 0; i < kMaxVars; ++i) any_var = any_var || e[i] > 0;
    if (!ac.is_one() || !any_var) out += ac.str();
    bool first = true;
    for (int i = 0; i < kMaxVars; ++i) {
      if (e[i] == 0) continue;
      if (!first) out += "*";
      out += name(i);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
      first = false;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

}  // namespace prym
