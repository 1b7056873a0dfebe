#include "prym/cyclo.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "prym/numth.hpp"
#include "prym/sqrtelt.hpp"

namespace prym {

UniPoly<Rational> cyclotomic_polynomial(long N) {
  if (N < 1) throw std::invalid_argument("cyclotomic_polynomial: N >= 1 required");
  // Phi_N = prod_{d | N} (x^d - 1)^{mu(N/d)}.
  UniPoly<Rational> num(Rational(1)), den(Rational(1));
  for (u64 d : divisors(static_cast<u64>(N))) {
    u64 m = static_cast<u64>(N) / d;
    auto fm = factor_u64(m);
    bool squarefree = true;
    for (auto [p, e] : fm) squarefree = squarefree && e == 1;
    if (!squarefree) continue;
    int mu = (fm.size() % 2 == 0) ? 1 : -1;
    std::vector<Rational> v(d + 1, Rational(0));
    v[0] = Rational(-1);
    v[d] = Rational(1);
    UniPoly<Rational> f(std::move(v));
    if (mu == 1)
      num = num * f;
    else
      den = den * f;
  }
  auto [q, r] = UniPoly<Rational>::divmod(num, den);
  if (!r.is_zero()) throw std::logic_error("cyclotomic_polynomial: inexact division");
  return q;
}

std::shared_ptr<const CycloCtx> CycloCtx::get(long N) {
  static std::mutex mu;
  static std::map<long, std::shared_ptr<const CycloCtx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;

  if (N > 5000)
    throw std::invalid_argument("CycloCtx: dense arithmetic capped at N <= 5000");
  auto ctx = std::make_shared<CycloCtx>();
  ctx->N = N;
  ctx->phi_poly = cyclotomic_polynomial(N);
  ctx->phi = ctx->phi_poly.degree();
  int phi = ctx->phi;
  // Rows x^(phi+i) mod Phi for all exponents that can show up in products
  // (up to 2*phi-2) or in raw zeta powers (up to N-1).
  int rows = std::max(phi, static_cast<int>(N) - phi);
  rows = std::max(rows, 1);
  ctx->reduce.assign(rows, std::vector<Rational>(phi, Rational(0)));
  std::vector<Rational> cur(phi, Rational(0));
  for (int j = 0; j < phi; ++j) cur[j] = -ctx->phi_poly[j];
  ctx->reduce[0] = cur;
  for (int i = 1; i < rows; ++i) {
    // cur = x * cur mod Phi.
    Rational top = cur[phi - 1];
    for (int j = phi - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = Rational(0);
    if (!top.is_zero())
      for (int j = 0; j < phi; ++j) cur[j] += top * ctx->reduce[0][j];
    ctx->reduce[i] = cur;
  }
  cache[N] = ctx;
  return ctx;
}

CycloElt::CycloElt(long N, std::vector<Rational> coeffs) : ctx_(CycloCtx::get(N)), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != ctx_->phi)
    throw std::invalid_argument("CycloElt: coefficient count must equal phi(N)");
}

CycloElt CycloElt::from_rational(long N, const Rational& q) {
  auto ctx = CycloCtx::get(N);
  std::vector<Rational> v(ctx->phi, Rational(0));
  v[0] = q;
  return CycloElt(N, std::move(v));
}

void CycloElt::reduce_in_place(std::vector<Rational>& full) const {
  int phi = ctx_->phi;
  for (int i = static_cast<int>(full.size()) - 1; i >= phi; --i) {
    if (full[i].is_zero()) continue;
    const auto& row = ctx_->reduce[i - phi];
    for (int j = 0; j < phi; ++j) full[j] += full[i] * row[j];
    full[i] = Rational(0);
  }
  full.resize(phi);
}

CycloElt CycloElt::zeta(long N, long k) {
  auto ctx = CycloCtx::get(N);
  long r = ((k % N) + N) % N;
  CycloElt out = from_rational(N, Rational(0));
  std::vector<Rational> full(std::max<size_t>(static_cast<size_t>(r) + 1, ctx->phi), Rational(0));
  full[r] = Rational(1);
  out.reduce_in_place(full);
  out.c_ = std::move(full);
  return out;
}

bool CycloElt::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

bool CycloElt::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

Rational CycloElt::rational_value() const {
  if (!is_rational()) throw std::domain_error("CycloElt: not rational");
  return c_[0];
}

static void check_same(const CycloElt& x, const CycloElt& y) {
  if (x.conductor() != y.conductor())
    throw std::invalid_argument("CycloElt: conductor mismatch");
}

CycloElt operator+(const CycloElt& x, const CycloElt& y) {
  check_same(x, y);
  std::vector<Rational> v = x.c_;
  for (size_t i = 0; i < v.size(); ++i) v[i] += y.c_[i];
  return CycloElt(x.conductor(), std::move(v));
}

CycloElt operator-(const CycloElt& x, const CycloElt& y) {
  check_same(x, y);
  std::vector<Rational> v = x.c_;
  for (size_t i = 0; i < v.size(); ++i) v[i] -= y.c_[i];
  return CycloElt(x.conductor(), std::move(v));
}

CycloElt operator-(const CycloElt& x) {
  std::vector<Rational> v = x.c_;
  for (auto& t : v) t = -t;
  return CycloElt(x.conductor(), std::move(v));
}

CycloElt operator*(const CycloElt& x, const CycloElt& y) {
  check_same(x, y);
  int phi = x.phi();
  std::vector<Rational> full(2 * phi, Rational(0));
  for (int i = 0; i < phi; ++i) {
    if (x.c_[i].is_zero()) continue;
    for (int j = 0; j < phi; ++j) {
      if (y.c_[j].is_zero()) continue;
      full[i + j] += x.c_[i] * y.c_[j];
    }
  }
  CycloElt out = x;
  out.reduce_in_place(full);
  out.c_ = std::move(full);
  return out;
}

CycloElt CycloElt::operator*(const Rational& s) const {
  std::vector<Rational> v = c_;
  for (auto& t : v) t *= s;
  return CycloElt(conductor(), std::move(v));
}

bool operator==(const CycloElt& x, const CycloElt& y) {
  return x.conductor() == y.conductor() && x.c_ == y.c_;
}

CycloElt CycloElt::inverse() const {
  if (is_zero()) throw std::domain_error("CycloElt: inverse of zero");
  // Extended gcd of the representative polynomial with Phi_N.
  UniPoly<Rational> a(c_), b = ctx_->phi_poly;
  UniPoly<Rational> s0(Rational(1)), s1;  // coefficients on a
  while (!b.is_zero()) {
    auto [q, r] = UniPoly<Rational>::divmod(a, b);
    UniPoly<Rational> s2 = s0 - q * s1;
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (a.degree() != 0) throw std::logic_error("CycloElt: gcd with Phi_N not constant");
  UniPoly<Rational> inv = s0 * (Rational(1) / a[0]);
  std::vector<Rational> v = inv.coeffs();
  v.resize(std::max<size_t>(v.size(), ctx_->phi), Rational(0));
  CycloElt out = *this;
  out.reduce_in_place(v);
  out.c_ = std::move(v);
  return out;
}

CycloElt operator/(const CycloElt& x, const CycloElt& y) { return x * y.inverse(); }

CycloElt CycloElt::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycloElt acc = from_rational(conductor(), Rational(1));
  CycloElt base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

CycloElt CycloElt::galois(long j) const {
  long N = conductor();
  long jr = ((j % N) + N) % N;
  if (gcd_u64(static_cast<u64>(jr), static_cast<u64>(N)) != 1)
    throw std::invalid_argument("CycloElt::galois: exponent not coprime to N");
  // zeta^i -> zeta^(i*j mod N); accumulate then reduce once.
  std::vector<Rational> full(std::max<size_t>(static_cast<size_t>(N), ctx_->phi), Rational(0));
  for (int i = 0; i < ctx_->phi; ++i) {
    if (c_[i].is_zero()) continue;
    full[(static_cast<long>(i) * jr) % N] += c_[i];
  }
  CycloElt out = *this;
  out.reduce_in_place(full);
  out.c_ = std::move(full);
  return out;
}

UniPoly<Rational> CycloElt::min_poly() const {
  int phi = ctx_->phi;
  // Row-reduce powers of x until a dependency appears.
  // rows: reduced echelon basis; each row paired with its expression in powers.
  std::vector<std::vector<Rational>> rows;        // echelon rows, length phi
  std::vector<std::vector<Rational>> combos;      // same length as rows: coords in power basis of x
  std::vector<int> pivots;
  CycloElt p = from_rational(conductor(), Rational(1));
  for (int d = 0;; ++d) {
    std::vector<Rational> v = p.c_;
    std::vector<Rational> combo(d + 1, Rational(0));
    combo[d] = Rational(1);
    // Reduce v against existing rows.
    for (size_t r = 0; r < rows.size(); ++r) {
      const Rational& lead = v[pivots[r]];
      if (lead.is_zero()) continue;
      Rational f = lead;
      for (int j = 0; j < phi; ++j) v[j] -= f * rows[r][j];
      for (size_t j = 0; j < combos[r].size() && j < combo.size(); ++j)
        combo[j] -= f * combos[r][j];
    }
    int piv = -1;
    for (int j = 0; j < phi; ++j)
      if (!v[j].is_zero()) {
        piv = j;
        break;
      }
    if (piv < 0) {
      // The tracked combination sum_j combo[j] x^j is zero; combo[d] = 1.
      std::vector<Rational> mp(d + 1, Rational(0));
      for (int j = 0; j <= d; ++j) mp[j] = combo[j];
      return UniPoly<Rational>(std::move(mp));
    }
    Rational inv = v[piv].inverse();
    for (int j = 0; j < phi; ++j) v[j] *= inv;
    for (auto& cj : combo) cj *= inv;
    rows.push_back(std::move(v));
    combos.push_back(std::move(combo));
    pivots.push_back(piv);
    p = p * *this;
  }
}

std::optional<QuadElt> CycloElt::as_quadratic() const {
  UniPoly<Rational> mp = min_poly();
  if (mp.degree() == 1) return QuadElt(-mp[0]);
  if (mp.degree() != 2) return std::nullopt;
  // x^2 + beta x + gamma, roots (-beta +- sqrt(disc)) / 2.
  Rational beta = mp[1], gamma = mp[0];
  Rational disc = beta * beta - Rational(4) * gamma;
  if (disc.sign() <= 0) return std::nullopt;  // complex quadratic: not representable
  auto [s, f] = squarefree_decompose(disc);
  if (s.is_one()) return std::nullopt;  // perfect square: would be rational (handled above)
  long d0 = s.to_long();
  Rational half_f = Rational(f.num(), f.den() * Int(2));
  QuadElt plus(-beta / Rational(2), half_f, d0);
  // Decide the embedding sign against the canonical sqrt(d0) in Q(zeta_N).
  long N = conductor();
  if (N % static_cast<long>(quad_field_conductor(d0)) != 0)
    throw std::logic_error("CycloElt::as_quadratic: quadratic subfield not inside Q(zeta_N)");
  CycloElt w = sqrt_in_cyclo(d0, N);
  if (from_rational(N, plus.a()) + w * plus.b() == *this) return plus;
  QuadElt minus = plus.conj();
  if (from_rational(N, minus.a()) + w * minus.b() == *this) return minus;
  throw std::logic_error("CycloElt::as_quadratic: embedding disambiguation failed");
}

std::optional<QuadElt> as_quadratic(const CycloElt& x) { return x.as_quadratic(); }

std::string CycloElt::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << c_[i].str();
  }
  os << ")@" << conductor();
  return os.str();
}

}  // namespace prym
