#include "prym/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace prym {

std::vector<Prototype> surface_candidates(const ArithmeticSurface& as, const GeometryPair& g,
                                          long* proto_failure) {
  FlatSurface fs = realize_surface(as, g);
  ProtoResult pr = compute_prototype(fs);
  if (pr.status != ProtoStatus::Ok && proto_failure) ++*proto_failure;
  return pr.candidates;
}

CandidateReport run_pipeline(Stratum s, const PipelineOptions& opts) {
  CandidateReport rep;
  rep.stratum = s;
  auto log = [&](const std::string& m) {
    if (opts.log) opts.log(m);
  };

  if (opts.solutions) {
    rep.solutions = *opts.solutions;
  } else {
    SolveOptions so;
    so.jobs = opts.jobs;
    so.use_filter = opts.use_filter;
    so.log = opts.log;
    log("solving torsion equations");
    rep.solutions = enumerate_solutions(s, so);
  }
  log("solutions: " + std::to_string(rep.solutions.size()));

  if (opts.geometries) {
    rep.geometries = *opts.geometries;
  } else {
    rep.geometries = enumerate_geometries(s, rep.solutions);
  }
  log("geometries: " + std::to_string(rep.geometries.kept.size()) + " kept, " +
      std::to_string(rep.geometries.discarded.size()) + " discarded");

  rep.diagrams = enumerate_separatrix_diagrams(s);
  log("separatrix diagrams: " + std::to_string(rep.diagrams.size()));

  // Work units: (geometry, diagram).
  struct Job {
    int gi, di;
  };
  std::vector<Job> jobs_list;
  for (size_t gi = 0; gi < rep.geometries.kept.size(); ++gi)
    for (size_t di = 0; di < rep.diagrams.size(); ++di)
      jobs_list.push_back({static_cast<int>(gi), static_cast<int>(di)});

  std::vector<CellReport> cells(jobs_list.size());
  std::atomic<size_t> next{0};
  int nthreads = std::max(1, opts.jobs);
  auto worker = [&]() {
    for (;;) {
      size_t idx = next.fetch_add(1);
      if (idx >= jobs_list.size()) break;
      const Job& jb = jobs_list[idx];
      const GeometryPair& g = rep.geometries.kept[jb.gi];
      const SeparatrixDiagram& d = rep.diagrams[jb.di];
      CellReport cell;
      cell.diagram_index = jb.di;
      cell.mred = g.mred;
      cell.d0 = g.d0;
      cell.r2hor = g.horizontal.r2;
      auto surfs = enumerate_arithmetic_surfaces(d, g.mred);
      cell.n_surfaces = static_cast<long>(surfs.size());
      std::vector<Prototype> cands;
      for (const auto& as : surfs) {
        if (!admissible_vertical(as, s)) continue;
        ++cell.n_admissible;
        auto sc = surface_candidates(as, g, &cell.n_proto_failures);
        cands.insert(cands.end(), sc.begin(), sc.end());
      }
      std::sort(cands.begin(), cands.end());
      cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
      for (const Prototype& p : cands) {
        if (moduli_commensurability_check(p))
          cell.candidates.push_back(p);
        else
          cell.excluded.push_back(p);
      }
      // cell.candidates currently holds the post-filter ones; store pre-filter
      // set as candidates plus excluded for reporting.
      std::vector<Prototype> pre = cell.candidates;
      pre.insert(pre.end(), cell.excluded.begin(), cell.excluded.end());
      std::sort(pre.begin(), pre.end());
      cell.candidates = std::move(pre);
      cells[idx] = std::move(cell);
    }
  };
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  rep.cells = std::move(cells);

  rep.per_diagram_candidates.assign(rep.diagrams.size(), 0);
  rep.per_diagram_candidates_post.assign(rep.diagrams.size(), 0);
  std::set<Prototype> global_pre, global_post;
  std::set<std::string> surf_pre, surf_post;
  for (const CellReport& c : rep.cells) {
    rep.per_diagram_candidates[c.diagram_index] += static_cast<long>(c.candidates.size());
    rep.per_diagram_candidates_post[c.diagram_index] +=
        static_cast<long>(c.candidates.size() - c.excluded.size());
    rep.total_candidates += static_cast<long>(c.candidates.size());
    rep.total_candidates_post += static_cast<long>(c.candidates.size() - c.excluded.size());
    rep.total_admissible_surfaces += c.n_admissible;
    if (!c.candidates.empty()) rep.trace_fields.insert(c.d0);
    std::set<Prototype> excl(c.excluded.begin(), c.excluded.end());
    for (const Prototype& p : c.candidates) {
      if (p.has_normal_form) {
        global_pre.insert(p);
        if (!excl.count(p)) global_post.insert(p);
      } else {
        surf_pre.insert(p.surface_key);
        if (!excl.count(p)) surf_post.insert(p.surface_key);
      }
    }
  }
  rep.distinct_candidates = static_cast<long>(global_pre.size() + surf_pre.size());
  rep.distinct_candidates_post = static_cast<long>(global_post.size() + surf_post.size());
  log("candidates: " + std::to_string(rep.total_candidates) + " marking-level (" +
      std::to_string(rep.distinct_candidates) + " distinct), post-filter " +
      std::to_string(rep.total_candidates_post) + " (" +
      std::to_string(rep.distinct_candidates_post) + " distinct)");
  return rep;
}

}  // namespace prym
