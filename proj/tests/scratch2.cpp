#include <chrono>
#include <iostream>
#include <set>
#include "prym/pipeline.hpp"
using namespace prym;
using Clock = std::chrono::steady_clock;

std::vector<RelationSolution> table22_impl() {
  auto mk = [](long N, long e1, long e2, Rational a, Rational b, long d) {
    return RelationSolution{N, e1, e2, QuadElt(a, b, d), Stratum::Prym22};
  };
  std::vector<RelationSolution> v = {
    mk(12,2,3, Rational(0), Rational(1,2), 2), mk(12,10,3, Rational(0), Rational(1,2), 2),
    mk(12,1,3, Rational(-1,2), Rational(1,2), 3), mk(12,1,9, Rational(-1,2), Rational(1,2), 3),
    mk(12,5,3, Rational(1,2), Rational(1,2), 3), mk(12,7,3, Rational(1,2), Rational(1,2), 3),
    mk(12,4,3, Rational(0), Rational(1,2), 6), mk(12,4,9, Rational(0), Rational(1,2), 6),
    mk(12,4,1, Rational(3,2), Rational(1,2), 33), mk(12,4,5, Rational(-3,2), Rational(1,2), 33),
    mk(12,8,1, Rational(-3,2), Rational(1,2), 33), mk(12,8,5, Rational(3,2), Rational(1,2), 33),
    mk(48,16,21, Rational(0), Rational(1), 3), mk(48,16,9, Rational(0), Rational(1), 3),
    mk(48,32,3, Rational(0), Rational(1), 3), mk(48,32,15, Rational(0), Rational(1), 3),
  };
  std::vector<RelationSolution> all = v;
  for (auto s : v) { s.eXY = s.N - s.eXY; s.eU = s.N - s.eU; all.push_back(s); }
  std::sort(all.begin(), all.end(), [](auto& x, auto& y){ return solution_cmp(x, y) < 0; });
  return all;
}

int main() {
  PipelineOptions opts;
  opts.jobs = 1;
  opts.solutions = table22_impl();
  auto t0 = Clock::now();
  auto rep = run_pipeline(Stratum::Prym22, opts);
  std::cout << "pipeline " << std::chrono::duration_cast<std::chrono::seconds>(Clock::now()-t0).count() << " s\n";
  std::cout << "per-diagram (pre): ";
  for (long v : rep.per_diagram_candidates) std::cout << v << " ";
  std::cout << "\nper-diagram (post): ";
  for (long v : rep.per_diagram_candidates_post) std::cout << v << " ";
  std::cout << "\ntotals " << rep.total_candidates << " -> " << rep.total_candidates_post << "\n";
  // Global cross-cell dedup of value-candidates.
  std::set<Prototype> global_pre, global_post;
  long nonvalue_pre = 0, nonvalue_post = 0;
  for (auto& c : rep.cells) {
    std::set<Prototype> excl(c.excluded.begin(), c.excluded.end());
    for (auto& p : c.candidates) {
      if (p.has_normal_form) {
        global_pre.insert(p);
        if (!excl.count(p)) global_post.insert(p);
      } else {
        ++nonvalue_pre;
        if (!excl.count(p)) ++nonvalue_post;
      }
    }
  }
  std::cout << "global value-candidates: " << global_pre.size() << " -> " << global_post.size() << "\n";
  std::cout << "surface-identified: " << nonvalue_pre << " -> " << nonvalue_post << "\n";
  std::cout << "global total post: " << (global_post.size() + nonvalue_post) << "\n";
  std::cout << "fields:";
  for (long d : rep.trace_fields) std::cout << " " << d;
  std::cout << "\n";
  return 0;
}
