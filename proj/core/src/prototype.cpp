#include "prym/prototype.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace prym {

bool operator<(const Prototype& x, const Prototype& y) {
  if (x.has_normal_form != y.has_normal_form) return x.has_normal_form;
  if (!x.has_normal_form) {
    if (x.surface_key != y.surface_key) return x.surface_key < y.surface_key;
    return QuadElt::lex_cmp(x.s, y.s) < 0;
  }
  if (x.D != y.D) return x.D < y.D;
  if (x.w != y.w) return x.w < y.w;
  if (x.h != y.h) return x.h < y.h;
  if (x.t != y.t) return x.t < y.t;
  if (x.e != y.e) return x.e < y.e;
  return QuadElt::lex_cmp(x.s, y.s) < 0;
}

std::string Prototype::str() const {
  std::ostringstream os;
  if (has_normal_form)
    os << "(" << w << "," << h << "," << t << "," << e << ") D=" << D << " s=" << s.str();
  else
    os << "(surface-identified) s=" << s.str();
  return os.str();
}

namespace {

std::optional<QuadElt> lambda_of(long e, long D) {
  if (D <= 0) return std::nullopt;
  auto [sq, f] = squarefree_decompose(Int(D));
  if (sq.is_one() || !sq.fits_long()) return std::nullopt;  // square D: degenerate
  return QuadElt(Rational(e, 2)) + QuadElt(Rational(0), Rational(f, Int(2)), sq.to_long());
}

}  // namespace

bool Prototype::satisfies_pd_core() const {
  if (w <= 0 || h <= 0) return false;
  long g = std::gcd(w, h);
  if (t < 0 || t >= g) return false;
  if (std::gcd(std::gcd(w, h), std::gcd(t, std::abs(e))) != 1) return false;
  if (D != e * e + 8 * w * h) return false;
  auto lam = lambda_of(e, D);
  if (!lam || !(lam->sign() > 0)) return false;
  if (!(s.sign() > 0) || !(s < QuadElt(Rational(1)))) return false;
  return true;
}

bool Prototype::lambda_below_w() const {
  auto lam = lambda_of(e, D);
  return lam && *lam < QuadElt(Rational(w));
}

namespace {

struct FlatLayout {
  // Per square: exact width/height; per row: flat x of each arithmetic slot.
  std::vector<QuadElt> width, height;
  std::array<std::vector<QuadElt>, 3> xpos;  // xpos[c][i], i in [0, w_c]
  std::array<QuadElt, 3> row_w;              // flat circumference per row
  std::array<long, 3> base{};
  std::array<long, 3> aw{};                  // arithmetic widths

  int row_of(int sq) const { return sq < base[1] ? 0 : (sq < base[2] ? 1 : 2); }
};

FlatLayout make_layout(const FlatSurface& fs) {
  const ArithmeticSurface& as = fs.surf;
  FlatLayout L;
  int n = as.origami.n;
  L.width.resize(n);
  L.height.resize(n);
  L.aw = {as.row_width[0], as.row_width[1], as.row_width[2]};
  L.base = {0, as.row_width[0], as.row_width[0] + as.row_width[1]};
  for (int sq = 0; sq < n; ++sq) {
    int row = sq < L.base[1] ? 0 : (sq < L.base[2] ? 1 : 2);
    L.width[sq] = fs.vcyl_widths[as.vcyl_of_square[sq]];
    L.height[sq] = fs.cyl_heights[row];
  }
  for (int c = 0; c < 3; ++c) {
    L.xpos[c].resize(L.aw[c] + 1);
    L.xpos[c][0] = QuadElt(Rational(0));
    for (long i = 0; i < L.aw[c]; ++i)
      L.xpos[c][i + 1] = L.xpos[c][i] + L.width[L.base[c] + i];
    L.row_w[c] = L.xpos[c][L.aw[c]];
  }
  return L;
}

// Horizontal boundary edges of each row's top line: maximal runs between
// singular lattice points, with the self-gluing offsets they induce.
struct TopEdge {
  int row = 0;          // row whose top carries it
  long start = 0, len = 0;
  int dst_row = 0;      // row whose bottom receives it
  long dst_start = 0;
};

std::vector<TopEdge> top_edges(const ArithmeticSurface& as) {
  const Origami& o = as.origami;
  std::vector<int> ish(o.n), isv(o.n);
  for (int i = 0; i < o.n; ++i) ish[o.sh[i]] = i, isv[o.sv[i]] = i;
  std::vector<bool> singular(o.n, false);
  for (int s0 = 0; s0 < o.n; ++s0) {
    int len = 0, x = s0;
    do {
      x = o.sv[o.sh[isv[ish[x]]]];
      ++len;
    } while (x != s0);
    singular[s0] = len > 1;
  }
  std::array<long, 3> base = {0, as.row_width[0], as.row_width[0] + as.row_width[1]};
  auto row_of = [&](int sq) { return sq < base[1] ? 0 : (sq < base[2] ? 1 : 2); };
  std::vector<TopEdge> out;
  for (int c = 0; c < 3; ++c) {
    long w = as.row_width[c];
    // Break positions: lattice point left of slot x is singular.
    std::vector<bool> brk(w, false);
    bool any = false;
    for (long x = 0; x < w; ++x) {
      int above = o.sv[base[c] + x];
      if (singular[above]) {
        brk[x] = true;
        any = true;
      }
    }
    if (!any) throw std::logic_error("top_edges: unbroken cylinder boundary");
    long s0 = 0;
    while (!brk[s0]) ++s0;
    for (long k = 0, x = s0; k < w;) {
      long len = 1;
      while (!brk[(x + len) % w]) ++len;
      TopEdge e;
      e.row = c;
      e.start = x;
      e.len = len;
      int below0 = static_cast<int>(base[c] + x);
      int above0 = o.sv[below0];
      e.dst_row = row_of(above0);
      e.dst_start = above0 - base[e.dst_row];
      out.push_back(e);
      x = (x + len) % w;
      k += len;
    }
  }
  return out;
}

QuadElt flat_at(const FlatLayout& L, int row, long slot) {
  long w = L.aw[row];
  long m = ((slot % w) + w) % w;
  return L.xpos[row][m];
}

}  // namespace

ProtoResult compute_prototype(const FlatSurface& fs) {
  ProtoResult res;
  const ArithmeticSurface& as = fs.surf;
  const Origami& o = as.origami;
  FlatLayout L = make_layout(fs);
  std::vector<TopEdge> edges = top_edges(as);
  const QuadElt& lambda = fs.geometry.horizontal.h2;
  QuadElt kappa_q = lambda / fs.geometry.horizontal.r2;

  // Marked slit edges: rho-fixed horizontal edges. Two markings related by a
  // translation automorphism commuting with rho describe the same candidate;
  // each orbit is represented by its largest slit value.
  struct Marked {
    std::vector<int> below;  // squares under the edge, in order
    QuadElt s;
  };
  std::vector<Marked> marked;
  std::array<long, 3> base = {0, as.row_width[0], as.row_width[0] + as.row_width[1]};
  for (const TopEdge& ed : edges) {
    // rho-invariance of the edge as a segment: the square below the i-th unit
    // maps to the square above the reversed unit at slot dst_start+(len-1-i).
    bool inv = true;
    for (long i = 0; i < ed.len && inv; ++i) {
      int below = static_cast<int>(base[ed.row] + (ed.start + i) % as.row_width[ed.row]);
      int mirror_above = static_cast<int>(
          base[ed.dst_row] + ((ed.dst_start + (ed.len - 1 - i)) % as.row_width[ed.dst_row]));
      inv = o.rho[below] == mirror_above;
    }
    if (!inv) continue;
    Marked m;
    QuadElt len(Rational(0));
    for (long i = 0; i < ed.len; ++i) {
      int below = static_cast<int>(base[ed.row] + (ed.start + i) % as.row_width[ed.row]);
      m.below.push_back(below);
      len = len + L.width[below];
    }
    m.s = (len * kappa_q) / lambda;
    if (!(m.s.sign() > 0) || !(m.s < QuadElt(Rational(1)))) continue;
    marked.push_back(std::move(m));
  }
  if (marked.empty()) {
    res.status = ProtoStatus::NoMarkedSlit;
    return res;
  }
  // Translation automorphisms commuting with rho.
  std::vector<std::vector<int>> autos;
  {
    std::vector<int> ish(o.n), isv(o.n);
    for (int i = 0; i < o.n; ++i) ish[o.sh[i]] = i, isv[o.sv[i]] = i;
    for (int img0 = 0; img0 < o.n; ++img0) {
      std::vector<int> phi(o.n, -1);
      phi[0] = img0;
      std::vector<int> stack{0};
      bool ok = true;
      while (!stack.empty() && ok) {
        int x = stack.back();
        stack.pop_back();
        auto push = [&](int yfrom, int yto) {
          if (phi[yfrom] < 0) {
            phi[yfrom] = yto;
            stack.push_back(yfrom);
          } else if (phi[yfrom] != yto) {
            ok = false;
          }
        };
        push(o.sh[x], o.sh[phi[x]]);
        push(o.sv[x], o.sv[phi[x]]);
        push(ish[x], ish[phi[x]]);
        push(isv[x], isv[phi[x]]);
      }
      if (!ok) continue;
      for (int x = 0; x < o.n && ok; ++x) ok = phi[x] >= 0 && o.rho[phi[x]] == phi[o.rho[x]];
      if (ok) autos.push_back(std::move(phi));
    }
  }
  // Orbit collapse.
  std::vector<QuadElt> slits;
  {
    std::vector<bool> used(marked.size(), false);
    auto edge_index_of = [&](const std::vector<int>& below) -> int {
      for (size_t j = 0; j < marked.size(); ++j) {
        if (marked[j].below.size() != below.size()) continue;
        // same cyclic set of squares
        std::vector<int> a = marked[j].below, b = below;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a == b) return static_cast<int>(j);
      }
      return -1;
    };
    for (size_t i = 0; i < marked.size(); ++i) {
      if (used[i]) continue;
      QuadElt best = marked[i].s;
      used[i] = true;
      for (const auto& phi : autos) {
        std::vector<int> img;
        for (int sq : marked[i].below) img.push_back(phi[sq]);
        int j = edge_index_of(img);
        if (j >= 0 && !used[j]) {
          used[j] = true;
          if (best < marked[j].s) best = marked[j].s;
        } else if (j >= 0 && best < marked[j].s) {
          best = marked[j].s;
        }
      }
      slits.push_back(best);
    }
  }
  std::sort(slits.begin(), slits.end(),
            [](const QuadElt& a, const QuadElt& b) { return QuadElt::lex_cmp(a, b) < 0; });
  slits.erase(std::unique(slits.begin(), slits.end()), slits.end());

  // Torus normal form: self-gluing holonomy offsets of C1 and C2.
  std::array<std::optional<QuadElt>, 3> offset;
  bool gluing_ok = true;
  for (const TopEdge& e : edges) {
    if (e.dst_row != e.row) continue;
    QuadElt d = flat_at(L, e.row, e.dst_start) - flat_at(L, e.row, e.start);
    if (!offset[e.row]) {
      offset[e.row] = d;
    } else {
      QuadElt diff = *offset[e.row] - d;
      bool okmod = false;
      for (int k = -2; k <= 2 && !okmod; ++k)
        okmod = diff == L.row_w[e.row] * QuadElt(Rational(k));
      if (!okmod) gluing_ok = false;
    }
  }
  if (!gluing_ok || !offset[0] || !offset[1] || !kappa_q.is_rational()) {
    res.status = gluing_ok && offset[0] && offset[1] ? ProtoStatus::NonRationalShear
                                                     : ProtoStatus::InconsistentSelfGluing;
    for (const QuadElt& s : slits) {
      Prototype p;
      p.has_normal_form = false;
      p.s = s;
      p.d0 = lambda.d0();
      p.surface_key = o.canonical_form();
      res.candidates.push_back(p);
    }
    std::sort(res.candidates.begin(), res.candidates.end());
    return res;
  }

  Rational kappa = kappa_q.a();
  QuadElt mu = -(kappa_q * *offset[1]) / lambda;
  QuadElt t0_q = kappa_q * *offset[0] + mu;  // h(C1) = 1
  bool have_nf = t0_q.is_rational();
  long w = 0, h = 0, e = 0, t = 0, D = 0;
  if (have_nf) {
    Rational t0 = t0_q.a();
    Rational trl = lambda.trace();
    Int ulcm = Int::lcm(Int::lcm(kappa.den(), t0.den()), trl.den());
    if (!ulcm.fits_long()) {
      have_nf = false;
    } else {
      long u = ulcm.to_long();
      w = (Rational(u) * kappa).num().to_long();
      h = u;
      e = (Rational(u) * trl).num().to_long();
      long traw = (Rational(u) * t0).num().to_long();
      long g = std::gcd(w, h);
      t = ((traw % g) + g) % g;
      D = e * e + 8 * w * h;
      long gg = std::gcd(std::gcd(w, h), std::gcd(t, std::abs(e)));
      if (gg == 0) gg = std::gcd(w, h);
      QuadElt lamD = lambda * QuadElt(Rational(u));
      have_nf = gg == 1 && lamD.trace() == Rational(e) && lamD.norm() == Rational(-2 * w * h);
    }
  }
  if (!have_nf) {
    res.status = ProtoStatus::NonRationalShear;
    for (const QuadElt& s : slits) {
      Prototype p;
      p.has_normal_form = false;
      p.s = s;
      p.d0 = lambda.d0();
      p.surface_key = o.canonical_form();
      res.candidates.push_back(p);
    }
    std::sort(res.candidates.begin(), res.candidates.end());
    return res;
  }

  for (const QuadElt& s : slits) {
    Prototype p;
    p.w = w;
    p.h = h;
    p.t = t;
    p.e = e;
    p.D = D;
    p.s = s;
    p.d0 = lambda.d0();
    res.candidates.push_back(p);
  }
  std::sort(res.candidates.begin(), res.candidates.end());
  return res;
}

// ---------------------------------------------------------------------------
// Commensurability of the candidate's vertical direction
// ---------------------------------------------------------------------------

bool moduli_ratios_rational(const std::vector<std::pair<QuadElt, QuadElt>>& cyls) {
  for (size_t i = 1; i < cyls.size(); ++i) {
    QuadElt ratio = (cyls[i].first * cyls[0].second) / (cyls[i].second * cyls[0].first);
    if (!ratio.is_rational()) return false;
  }
  return true;
}

bool moduli_commensurability_check(const Prototype& p) {
  if (!p.has_normal_form) return true;  // nothing to build the candidate from
  if (p.t != 0) return true;            // decided only for twist-zero data
  auto lam = lambda_of(p.e, p.D);
  if (!lam) return true;
  QuadElt lambda = *lam;
  QuadElt one(Rational(1));
  QuadElt slit = p.s * lambda;
  std::vector<std::pair<QuadElt, QuadElt>> cyls;
  cyls.push_back({slit, lambda + QuadElt(Rational(2 * p.h))});            // through the slits
  cyls.push_back({(one - p.s) * lambda, lambda});                         // rest of the square torus
  cyls.push_back({QuadElt(Rational(p.w)) - slit, QuadElt(Rational(p.h))});  // rest of each slit torus
  return moduli_ratios_rational(cyls);
}

bool moduli_commensurability_check(const FlatSurface& fs) {
  ProtoResult pr = compute_prototype(fs);
  for (const Prototype& p : pr.candidates)
    if (!moduli_commensurability_check(p)) return false;
  return true;
}

}  // namespace prym
