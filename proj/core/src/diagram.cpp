#include "prym/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <functional>

namespace prym {

namespace {

// positions of each edge inside a word family.
struct Index {
  std::array<int, 32> cyl;  // which word
  std::array<int, 32> pos;  // position within it
};

Index index_words(const std::array<std::vector<int>, 3>& words) {
  Index ix{};
  for (int c = 0; c < 3; ++c)
    for (size_t p = 0; p < words[c].size(); ++p) {
      ix.cyl[words[c][p]] = c;
      ix.pos[words[c][p]] = static_cast<int>(p);
    }
  return ix;
}

int succ_in(const std::array<std::vector<int>, 3>& words, const Index& ix, int e) {
  const auto& w = words[ix.cyl[e]];
  return w[(ix.pos[e] + 1) % w.size()];
}

int pred_in(const std::array<std::vector<int>, 3>& words, const Index& ix, int e) {
  const auto& w = words[ix.cyl[e]];
  return w[(ix.pos[e] + w.size() - 1) % w.size()];
}

}  // namespace

std::vector<std::vector<int>> SeparatrixDiagram::vertex_cycles() const {
  Index ti = index_words(top), bi = index_words(bot);
  std::vector<int> nxt(n_edges);
  for (int e = 0; e < n_edges; ++e) nxt[e] = pred_in(bot, bi, succ_in(top, ti, e));
  std::vector<std::vector<int>> cycles;
  std::vector<bool> seen(n_edges, false);
  for (int e = 0; e < n_edges; ++e) {
    if (seen[e]) continue;
    std::vector<int> cyc;
    int x = e;
    while (!seen[x]) {
      seen[x] = true;
      cyc.push_back(x);
      x = nxt[x];
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

std::vector<int> SeparatrixDiagram::zero_orders() const {
  std::vector<int> orders;
  for (const auto& c : vertex_cycles()) orders.push_back(static_cast<int>(c.size()) - 1);
  std::sort(orders.rbegin(), orders.rend());
  return orders;
}

bool SeparatrixDiagram::connected_leaf() const {
  // Union zeros along edges: right end = cycle of e, left end = cycle of
  // pred_top(e).
  auto cycles = vertex_cycles();
  std::vector<int> zero_of(n_edges, -1);
  for (size_t i = 0; i < cycles.size(); ++i)
    for (int e : cycles[i]) zero_of[e] = static_cast<int>(i);
  Index ti = index_words(top);
  std::vector<int> parent(cycles.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int e = 0; e < n_edges; ++e) {
    int a = zero_of[e];
    int b = zero_of[pred_in(top, ti, e)];
    parent[find(a)] = find(b);
  }
  int root = find(0);
  for (size_t i = 0; i < cycles.size(); ++i)
    if (find(static_cast<int>(i)) != root) return false;
  return true;
}

std::string SeparatrixDiagram::str() const {
  std::ostringstream os;
  for (int c = 0; c < 3; ++c) {
    os << "T" << c << "(";
    for (size_t i = 0; i < top[c].size(); ++i) os << (i ? " " : "") << top[c][i];
    os << ") ";
  }
  for (int c = 0; c < 3; ++c) {
    os << "B" << c << "(";
    for (size_t i = 0; i < bot[c].size(); ++i) os << (i ? " " : "") << bot[c][i];
    os << ") ";
  }
  os << "rho[";
  for (int e = 0; e < n_edges; ++e) os << (e ? " " : "") << rho_edge[e];
  os << "]";
  return os.str();
}

namespace {

// Relabel the diagram scanning tops in order with given rotations; cylinders
// optionally swapped (0 <-> 2), words optionally reversed (the left-right
// mirror). Bottom words are rotated to start at their minimal relabeled edge.
// Returns an encoding string.
std::string encode_variant(const SeparatrixDiagram& d, bool swap02, bool mirror,
                           const std::array<int, 3>& rot) {
  auto cyl_map = [&](int c) { return swap02 ? (c == 0 ? 2 : (c == 2 ? 0 : 1)) : c; };
  std::array<std::vector<int>, 3> tops, bots;
  for (int c = 0; c < 3; ++c) {
    tops[c] = d.top[cyl_map(c)];
    bots[c] = d.bot[cyl_map(c)];
    if (mirror) {
      std::reverse(tops[c].begin(), tops[c].end());
      std::reverse(bots[c].begin(), bots[c].end());
    }
    std::rotate(tops[c].begin(), tops[c].begin() + (rot[c] % tops[c].size()), tops[c].end());
  }
  std::vector<int> relabel(d.n_edges, -1);
  int next = 0;
  for (int c = 0; c < 3; ++c)
    for (int e : tops[c])
      if (relabel[e] < 0) relabel[e] = next++;
  std::ostringstream os;
  for (int c = 0; c < 3; ++c) {
    os << "t";
    for (int e : tops[c]) os << relabel[e] << ",";
  }
  for (int c = 0; c < 3; ++c) {
    // rotate bottom word to start at its minimal relabeled letter
    std::vector<int> w;
    for (int e : bots[c]) w.push_back(relabel[e]);
    size_t mi = std::min_element(w.begin(), w.end()) - w.begin();
    std::rotate(w.begin(), w.begin() + mi, w.end());
    os << "b";
    for (int e : w) os << e << ",";
  }
  os << "r";
  std::vector<int> rho_new(d.n_edges);
  for (int e = 0; e < d.n_edges; ++e) rho_new[relabel[e]] = relabel[d.rho_edge[e]];
  for (int e = 0; e < d.n_edges; ++e) os << rho_new[e] << ",";
  return os.str();
}

}  // namespace

std::string SeparatrixDiagram::canonical_key() const {
  std::string best;
  for (int mirror = 0; mirror < 2; ++mirror) {
    for (int swap = 0; swap < 2; ++swap) {
      std::array<int, 3> rot{};
      for (rot[0] = 0; rot[0] < static_cast<int>(top[swap ? 2 : 0].size()); ++rot[0])
        for (rot[1] = 0; rot[1] < static_cast<int>(top[1].size()); ++rot[1])
          for (rot[2] = 0; rot[2] < static_cast<int>(top[swap ? 0 : 2].size()); ++rot[2]) {
            std::string enc = encode_variant(*this, swap == 1, mirror == 1, rot);
            if (best.empty() || enc < best) best = enc;
          }
    }
  }
  return best;
}

std::vector<SeparatrixDiagram> enumerate_separatrix_diagrams(Stratum s) {
  const int n = (s == Stratum::Prym22) ? 6 : 7;
  std::vector<int> want_orders = (s == Stratum::Prym22) ? std::vector<int>{2, 2}
                                                        : std::vector<int>{2, 1, 1};

  // All splittings of 0..n-1 into 3 nonempty cyclic words (each stored
  // starting at its minimal element), with precomputed successor/predecessor
  // tables for the hot pairing loop.
  struct WordSet {
    std::array<std::vector<int>, 3> words;
    std::array<signed char, 32> succ;
    std::array<signed char, 32> pred;
    std::array<signed char, 3> sizes;
  };
  std::vector<WordSet> arrangements;
  {
    std::vector<int> assign(n, 0);
    std::function<void(int)> rec_assign = [&](int i) {
      if (i == n) {
        std::array<std::vector<int>, 3> cells;
        for (int e = 0; e < n; ++e) cells[assign[e]].push_back(e);
        if (cells[0].empty() || cells[1].empty() || cells[2].empty()) return;
        std::array<std::vector<std::vector<int>>, 3> orders;
        for (int c = 0; c < 3; ++c) {
          std::vector<int> tail(cells[c].begin() + 1, cells[c].end());
          std::sort(tail.begin(), tail.end());
          do {
            std::vector<int> w{cells[c][0]};
            w.insert(w.end(), tail.begin(), tail.end());
            orders[c].push_back(w);
          } while (std::next_permutation(tail.begin(), tail.end()));
        }
        for (const auto& w0 : orders[0])
          for (const auto& w1 : orders[1])
            for (const auto& w2 : orders[2]) {
              WordSet ws;
              ws.words = {w0, w1, w2};
              for (int c = 0; c < 3; ++c) {
                const auto& w = ws.words[c];
                ws.sizes[c] = static_cast<signed char>(w.size());
                for (size_t p = 0; p < w.size(); ++p) {
                  ws.succ[w[p]] = static_cast<signed char>(w[(p + 1) % w.size()]);
                  ws.pred[w[p]] = static_cast<signed char>(w[(p + w.size() - 1) % w.size()]);
                }
              }
              arrangements.push_back(std::move(ws));
            }
        return;
      }
      for (int c = 0; c < 3; ++c) {
        assign[i] = c;
        rec_assign(i + 1);
      }
    };
    rec_assign(0);
  }

  std::map<std::string, SeparatrixDiagram> out;
  for (const auto& tops : arrangements) {
    for (const auto& bots : arrangements) {
      // Prym sizes: |top_i| must match |bot_{rho(i)}|.
      if (tops.sizes[0] != bots.sizes[2] || tops.sizes[1] != bots.sizes[1] ||
          tops.sizes[2] != bots.sizes[0])
        continue;
      // Vertex cycle type check without allocation.
      {
        bool seen[32] = {false};
        int counts[3] = {0, 0, 0};  // cycle lengths histogram: 2, 3, other
        bool bad = false;
        for (int e = 0; e < n && !bad; ++e) {
          if (seen[e]) continue;
          int len = 0, x = e;
          while (!seen[x]) {
            seen[x] = true;
            x = bots.pred[tops.succ[x]];
            ++len;
          }
          if (len == 2)
            ++counts[0];
          else if (len == 3)
            ++counts[1];
          else
            bad = true;
        }
        if (bad) continue;
        if (s == Stratum::Prym22) {
          if (!(counts[0] == 0 && counts[1] == 2)) continue;
        } else {
          if (!(counts[0] == 2 && counts[1] == 1)) continue;
        }
      }
      SeparatrixDiagram d;
      d.n_edges = n;
      d.top = tops.words;
      d.bot = bots.words;
      d.rho_edge.assign(n, -1);
      if (!d.connected_leaf()) continue;

      // Realizability with positive ring lengths: widths w0 = w2.
      {
        if (d.top[0].size() + d.top[1].size() + d.top[2].size() != static_cast<size_t>(n)) continue;
        // Quick feasibility: search small positive integer lengths with
        // matching top/bottom sums per cylinder.
        bool feasible = false;
        std::vector<int> len(n, 1);
        std::function<void(int)> rec = [&](int i) {
          if (feasible) return;
          if (i == n) {
            long s0t = 0, s1t = 0, s2t = 0, s0b = 0, s1b = 0, s2b = 0;
            for (int e : d.top[0]) s0t += len[e];
            for (int e : d.top[1]) s1t += len[e];
            for (int e : d.top[2]) s2t += len[e];
            for (int e : d.bot[0]) s0b += len[e];
            for (int e : d.bot[1]) s1b += len[e];
            for (int e : d.bot[2]) s2b += len[e];
            feasible = s0t == s0b && s1t == s1b && s2t == s2b && s0t == s2t;
            return;
          }
          for (int v = 1; v <= 4 && !feasible; ++v) {
            len[i] = v;
            rec(i + 1);
          }
        };
        rec(0);
        if (!feasible) continue;
      }

      // Prym involution candidates from boundary-word alignments.
      auto cyl_rho = [](int c) { return c == 1 ? 1 : 2 - c; };
      size_t m0 = d.top[0].size(), m1 = d.top[1].size(), m2 = d.top[2].size();
      if (d.bot[2].size() != m0 || d.bot[1].size() != m1 || d.bot[0].size() != m2) continue;
      for (size_t r0 = 0; r0 < m0; ++r0)
        for (size_t r1 = 0; r1 < m1; ++r1)
          for (size_t r2 = 0; r2 < m2; ++r2) {
            std::array<size_t, 3> rots = {r0, r1, r2};
            std::vector<int> pi(n, -1);
            bool ok = true;
            for (int c = 0; c < 3 && ok; ++c) {
              const auto& tw = d.top[c];
              const auto& bw = d.bot[cyl_rho(c)];
              size_t m = tw.size();
              // top word reversed aligns with the bottom word at rotation r.
              for (size_t i = 0; i < m && ok; ++i) {
                int e = tw[i];
                int f = bw[(rots[c] + (m - i)) % m];
                if (pi[e] >= 0 && pi[e] != f)
                  ok = false;
                else
                  pi[e] = f;
              }
            }
            if (!ok) continue;
            // Total involution check.
            for (int e = 0; e < n && ok; ++e) ok = pi[e] >= 0 && pi[pi[e]] == e;
            if (!ok) continue;
            // Induced action on zeros must fix/swap correctly.
            SeparatrixDiagram cand = d;
            cand.rho_edge = pi;
            auto cycles = cand.vertex_cycles();
            std::vector<int> zero_of(n);
            for (size_t i = 0; i < cycles.size(); ++i)
              for (int e : cycles[i]) zero_of[e] = static_cast<int>(i);
            // rho maps the zero at the right end of e to the zero at the left
            // end of pi(e) (orientation reversal).
            Index ti = index_words(cand.top);
            std::vector<int> zmap(cycles.size(), -1);
            bool zok = true;
            for (int e = 0; e < n && zok; ++e) {
              int from = zero_of[e];
              int to = zero_of[pred_in(cand.top, ti, pi[e])];
              if (zmap[from] >= 0 && zmap[from] != to)
                zok = false;
              else
                zmap[from] = to;
            }
            if (!zok) continue;
            // involution on zeros
            for (size_t i = 0; i < cycles.size() && zok; ++i)
              zok = zmap[i] >= 0 && zmap[zmap[i]] == static_cast<int>(i);
            if (!zok) continue;
            if (s == Stratum::Prym22) {
              // two order-2 zeros exchanged
              bool swapped = true;
              for (size_t i = 0; i < cycles.size(); ++i)
                swapped = swapped && zmap[i] != static_cast<int>(i);
              if (!swapped) continue;
            } else {
              // order-2 zero fixed, the two simple zeros exchanged
              bool good = true;
              for (size_t i = 0; i < cycles.size(); ++i) {
                bool is_double = cycles[i].size() == 3;
                if (is_double)
                  good = good && zmap[i] == static_cast<int>(i);
                else
                  good = good && zmap[i] != static_cast<int>(i);
              }
              if (!good) continue;
            }
            out.emplace(cand.canonical_key(), cand);
          }
    }
  }
  std::vector<SeparatrixDiagram> result;
  for (auto& [k, v] : out) result.push_back(std::move(v));
  return result;
}

}  // namespace prym
