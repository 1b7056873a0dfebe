#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "prym/numth.hpp"
#include "prym/rational.hpp"

namespace prym {

// Linear form over K formal symbols with rational coefficients.
template <int K>
struct LinForm {
  std::array<Rational, K> v{};
  LinForm() = default;
  explicit LinForm(int) {}  // allows LinForm(0) in generic code
  bool is_zero() const {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }
  LinForm& operator+=(const LinForm& o) {
    for (int i = 0; i < K; ++i) v[i] += o.v[i];
    return *this;
  }
  LinForm& operator-=(const LinForm& o) {
    for (int i = 0; i < K; ++i) v[i] -= o.v[i];
    return *this;
  }
};

// Element of Q(zeta_N) kept as a sparse sum of monomials coeff * zeta_N^e.
// The coefficient type C is Rational or LinForm<K>. The representation is not
// reduced modulo Phi_N; zero tests go through the vanishing-sum recursion,
// which needs the odd part of N squarefree (true for every conductor the
// torsion equations can meet).
template <class C>
struct SparseCyc {
  long N = 1;
  std::vector<std::pair<long, C>> t;  // sorted by exponent, exponents in [0, N)
};

using SparseQ = SparseCyc<Rational>;

void normalize(SparseQ& x);
SparseQ sparse_from(long N, std::vector<std::pair<long, Rational>> terms);
SparseQ sparse_add(const SparseQ& x, const SparseQ& y);
SparseQ sparse_sub(const SparseQ& x, const SparseQ& y);
SparseQ sparse_neg(const SparseQ& x);
SparseQ sparse_scale(const SparseQ& x, const Rational& s);
SparseQ sparse_mul(const SparseQ& x, const SparseQ& y);
bool sparse_is_zero(const SparseQ& x);

// Canonical positive sqrt(d) as a sparse element (Gauss sums).
SparseQ sparse_sqrt(long d, long N);

// b == q * a for a rational q? Returns q; nullopt if no such q exists or if
// a = b = 0 (flagged via all_zero).
std::optional<Rational> rational_ratio(const SparseQ& b, const SparseQ& a, bool* all_zero = nullptr);

// The vanishing of sum_i x_i * S_i with S_i sparse elements and x_i formal
// symbols is equivalent to a rational linear system on the x_i; this returns
// its constraint rows (coefficient vectors of length K).
template <int K>
std::vector<std::array<Rational, K>> symbolic_zero_constraints(
    long N, const std::array<const SparseQ*, K>& parts);

// Exact rational linear algebra: rows * x = 0. Returns a basis of the kernel.
std::vector<std::vector<Rational>> kernel_basis(std::vector<std::vector<Rational>> rows, int ncols);

}  // namespace prym
