#include <chrono>
#include <iostream>
#include "prym/pipeline.hpp"
using namespace prym;
using Clock = std::chrono::steady_clock;

int main() {
  // Prym(2,1,1) end-to-end with the known solution table.
  auto mk = [](long N, long e1, long e2, Rational a, Rational b, long d) {
    return RelationSolution{N, e1, e2, QuadElt(a, b, d), Stratum::Prym211};
  };
  std::vector<RelationSolution> v = {
    mk(6,1,1, Rational(1,2), Rational(1,6), 33), mk(6,3,1, Rational(0), Rational(2,3), 6),
    mk(6,3,2, Rational(0), Rational(2), 2), mk(6,5,1, Rational(-1,2), Rational(1,6), 33),
    mk(12,6,1, Rational(-2), Rational(2), 3), mk(12,6,5, Rational(2), Rational(2), 3),
    mk(24,3,4, Rational(0), Rational(2,3), 3), mk(24,15,4, Rational(0), Rational(2,3), 3),
  };
  std::vector<RelationSolution> all = v;
  for (auto s : v) { s.eXY = s.N - s.eXY; s.eU = s.N - s.eU; all.push_back(s); }

  PipelineOptions opts;
  opts.jobs = 1;
  opts.solutions = all;
  opts.log = [](const std::string& m) { std::cout << "[log] " << m << std::endl; };
  auto t0 = Clock::now();
  auto rep = run_pipeline(Stratum::Prym211, opts);
  std::cout << "pipeline " << std::chrono::duration_cast<std::chrono::seconds>(Clock::now()-t0).count() << " s\n";
  std::cout << "diagrams: " << rep.diagrams.size() << "\n";
  std::cout << "admissible surfaces total: " << rep.total_admissible_surfaces << "\n";
  std::cout << "candidates: " << rep.total_candidates << " distinct " << rep.distinct_candidates << "\n";
  for (auto& c : rep.cells)
    if (c.n_surfaces)
      std::cout << "  d" << c.diagram_index << " " << c.mred.str() << ": surf " << c.n_surfaces
                << " adm " << c.n_admissible << "\n";
  return 0;
}
