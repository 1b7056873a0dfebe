#include "prym/sparse.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "prym/numth.hpp"

namespace prym {

namespace {

long mod_inverse(long a, long m) {
  long t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::invalid_argument("mod_inverse: not invertible");
  return ((t % m) + m) % m;
}

template <class C>
void normalize_terms(std::vector<std::pair<long, C>>& t, long N) {
  for (auto& [e, c] : t) e = ((e % N) + N) % N;
  std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<long, C>> out;
  for (auto& [e, c] : t) {
    if (!out.empty() && out.back().first == e)
      out.back().second += c;
    else
      out.push_back({e, c});
  }
  t.clear();
  for (auto& [e, c] : out)
    if (!c.is_zero()) t.push_back({e, std::move(c)});
}

// One step of the vanishing-sum recursion over C-coefficients.
// Emits constraints (elements of C) that must all vanish.
template <class C>
void zero_constraints_rec(long N, std::vector<std::pair<long, C>> terms, std::vector<C>& out) {
  if (terms.empty()) return;
  auto fac = factor_u64(static_cast<u64>(N));
  long odd_p = 0;
  for (auto it = fac.rbegin(); it != fac.rend(); ++it) {
    if (it->first != 2) {
      if (it->second != 1)
        throw std::invalid_argument("zero_constraints: odd part of N must be squarefree");
      odd_p = static_cast<long>(it->first);
      break;
    }
  }
  if (odd_p == 0) {
    // N = 2^a: fold zeta^(N/2) = -1 and read off basis coordinates.
    long half = N / 2;
    std::map<long, C> folded;
    for (auto& [e, c] : terms) {
      if (N >= 2 && e >= half) {
        auto it = folded.find(e - half);
        if (it == folded.end()) {
          C neg;  // zero
          neg -= c;
          folded.emplace(e - half, std::move(neg));
        } else {
          it->second -= c;
        }
      } else {
        auto it = folded.find(e);
        if (it == folded.end())
          folded.emplace(e, c);
        else
          it->second += c;
      }
    }
    for (auto& [e, c] : folded)
      if (!c.is_zero()) out.push_back(std::move(c));
    return;
  }

  long M = N / odd_p;
  long minv = mod_inverse(M % odd_p, odd_p);
  long pinv = (M == 1) ? 0 : mod_inverse(odd_p % M, M);
  // Bucket by the zeta_p coordinate; sub-exponents live mod M.
  std::vector<std::vector<std::pair<long, C>>> buckets(odd_p);
  for (auto& [e, c] : terms) {
    long x = (e % odd_p) * minv % odd_p;
    long y = (M == 1) ? 0 : (e % M) * pinv % M;
    buckets[x].push_back({y, std::move(c)});
  }
  // zeta_p^0..zeta_p^(p-1) sum to zero and are otherwise independent over
  // Q(zeta_M): the element vanishes iff all buckets are equal. Chain the
  // equalities to keep term growth linear.
  for (long x = 0; x + 1 < odd_p; ++x) {
    if (buckets[x].empty() && buckets[x + 1].empty()) continue;
    std::vector<std::pair<long, C>> diff = buckets[x];
    for (auto& [e, c] : buckets[x + 1]) {
      C neg;
      neg -= c;
      diff.push_back({e, std::move(neg)});
    }
    normalize_terms(diff, M);
    zero_constraints_rec(M, std::move(diff), out);
  }
}

}  // namespace

void normalize(SparseQ& x) { normalize_terms(x.t, x.N); }

SparseQ sparse_from(long N, std::vector<std::pair<long, Rational>> terms) {
  SparseQ out;
  out.N = N;
  out.t = std::move(terms);
  normalize(out);
  return out;
}

SparseQ sparse_add(const SparseQ& x, const SparseQ& y) {
  SparseQ out;
  out.N = x.N;
  out.t = x.t;
  out.t.insert(out.t.end(), y.t.begin(), y.t.end());
  normalize(out);
  return out;
}

SparseQ sparse_sub(const SparseQ& x, const SparseQ& y) { return sparse_add(x, sparse_neg(y)); }

SparseQ sparse_neg(const SparseQ& x) {
  SparseQ out = x;
  for (auto& [e, c] : out.t) c = -c;
  return out;
}

SparseQ sparse_scale(const SparseQ& x, const Rational& s) {
  if (s.is_zero()) return SparseQ{x.N, {}};
  SparseQ out = x;
  for (auto& [e, c] : out.t) c *= s;
  return out;
}

SparseQ sparse_mul(const SparseQ& x, const SparseQ& y) {
  SparseQ out;
  out.N = x.N;
  out.t.reserve(x.t.size() * y.t.size());
  for (const auto& [ex, cx] : x.t)
    for (const auto& [ey, cy] : y.t) out.t.push_back({(ex + ey) % x.N, cx * cy});
  normalize(out);
  return out;
}

bool sparse_is_zero(const SparseQ& x) {
  if (x.t.empty()) return true;
  std::vector<Rational> cons;
  zero_constraints_rec(x.N, x.t, cons);
  for (const auto& c : cons)
    if (!c.is_zero()) return false;
  return true;
}

SparseQ sparse_sqrt(long d, long N) {
  if (d <= 1) throw std::invalid_argument("sparse_sqrt: d > 1 required");
  long cond = static_cast<long>(quad_field_conductor(d));
  if (N % cond != 0) throw std::invalid_argument("sparse_sqrt: field not inside Q(zeta_N)");
  SparseQ acc = sparse_from(N, {{0, Rational(1)}});
  long m = d;
  int three_mod_four = 0;
  if (m % 2 == 0) {
    acc = sparse_mul(acc, sparse_from(N, {{N / 8, Rational(1)}, {N - N / 8, Rational(1)}}));
    m /= 2;
  }
  for (auto [p64, e] : factor_u64(static_cast<u64>(m))) {
    long p = static_cast<long>(p64);
    std::vector<std::pair<long, Rational>> g;
    for (long a = 1; a < p; ++a) g.push_back({a * (N / p), Rational(kronecker(a, p))});
    acc = sparse_mul(acc, sparse_from(N, std::move(g)));
    if (p % 4 == 3) ++three_mod_four;
  }
  if ((three_mod_four / 2) % 2 == 1) acc = sparse_neg(acc);
  if (three_mod_four % 2 == 1)
    acc = sparse_mul(acc, sparse_from(N, {{N - N / 4, Rational(1)}}));
  return acc;
}

std::optional<Rational> rational_ratio(const SparseQ& b, const SparseQ& a, bool* all_zero) {
  if (all_zero) *all_zero = false;
  if (a.N != b.N) throw std::invalid_argument("rational_ratio: conductor mismatch");
  if (a.t.empty() && b.t.empty()) {
    if (all_zero) *all_zero = true;
    return std::nullopt;
  }
  // b - q*a = 0 as a linear condition on the symbols (1, q) applied to (b, -a).
  std::vector<std::pair<long, LinForm<2>>> terms;
  for (const auto& [e, c] : b.t) {
    LinForm<2> f;
    f.v[0] = c;
    terms.push_back({e, f});
  }
  for (const auto& [e, c] : a.t) {
    LinForm<2> f;
    f.v[1] = -c;
    terms.push_back({e, f});
  }
  normalize_terms(terms, a.N);
  std::vector<LinForm<2>> cons;
  zero_constraints_rec(a.N, std::move(terms), cons);
  bool determined = false;
  Rational q;
  for (const auto& c : cons) {
    if (c.v[1].is_zero()) {
      if (!c.v[0].is_zero()) return std::nullopt;  // s + 0*q = 0 with s != 0
      continue;
    }
    Rational qc = -c.v[0] / c.v[1];
    if (determined && qc != q) return std::nullopt;
    q = qc;
    determined = true;
  }
  if (!determined) {
    // No constraint pinned q: a reduced to zero; b must have too (else some
    // constraint had v[1] = 0, v[0] != 0 and we bailed above).
    if (all_zero) *all_zero = true;
    return std::nullopt;
  }
  return q;
}

template <int K>
std::vector<std::array<Rational, K>> symbolic_zero_constraints(
    long N, const std::array<const SparseQ*, K>& parts) {
  std::vector<std::pair<long, LinForm<K>>> terms;
  for (int s = 0; s < K; ++s) {
    if (!parts[s]) continue;
    for (const auto& [e, c] : parts[s]->t) {
      LinForm<K> f;
      f.v[s] = c;
      terms.push_back({e, f});
    }
  }
  normalize_terms(terms, N);
  std::vector<LinForm<K>> cons;
  zero_constraints_rec(N, std::move(terms), cons);
  std::vector<std::array<Rational, K>> rows;
  rows.reserve(cons.size());
  for (auto& c : cons) rows.push_back(c.v);
  return rows;
}

template std::vector<std::array<Rational, 3>> symbolic_zero_constraints<3>(
    long, const std::array<const SparseQ*, 3>&);
template std::vector<std::array<Rational, 5>> symbolic_zero_constraints<5>(
    long, const std::array<const SparseQ*, 5>&);
template std::vector<std::array<Rational, 6>> symbolic_zero_constraints<6>(
    long, const std::array<const SparseQ*, 6>&);

std::vector<std::vector<Rational>> kernel_basis(std::vector<std::vector<Rational>> rows, int ncols) {
  // Row reduce; then read off kernel from the RREF.
  std::vector<int> pivot_col;
  size_t r = 0;
  for (int c = 0; c < ncols && r < rows.size(); ++c) {
    size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Rational inv = rows[r][c].inverse();
    for (int j = 0; j < ncols; ++j) rows[r][j] *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Rational f = rows[i][c];
      for (int j = 0; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int c = 0; c < ncols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> v(ncols, Rational(0));
    v[c] = Rational(1);
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -rows[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace prym
