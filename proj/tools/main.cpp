// Command line driver: solve / geometry / enumerate / pipeline / render.
//
// Exit codes: 0 success, 1 invalid input, 2 internal identity-check failure,
// 3 regression mismatch under --assert-paper.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "prym/json_io.hpp"

using namespace prym;
namespace fs = std::filesystem;

namespace {

int g_log_level = 1;  // 0 quiet, 1 info, 2 debug

void logmsg(int level, const std::string& m) {
  if (level <= g_log_level) std::cerr << m << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  if (path.empty()) return;
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

std::string cache_dir_or(const std::string& flag_value) {
  if (const char* env = std::getenv("PRYM_CACHE_DIR"); env && *env) return env;
  return flag_value;
}

// Content-addressed stage cache: returns the cached bytes or recomputes.
std::string cached_stage(const std::string& cache_dir, const std::string& stage,
                         const std::string& key_material,
                         const std::function<std::string()>& compute) {
  if (cache_dir.empty()) return compute();
  std::string key = content_hash(stage + "\x1f" + key_material);
  fs::path file = fs::path(cache_dir) / (stage + "-" + key + ".json");
  if (fs::exists(file)) {
    logmsg(2, "cache hit: " + file.string());
    return read_file(file.string());
  }
  std::string bytes = compute();
  fs::create_directories(file.parent_path());
  // Manifest next to the payload.
  json manifest{{"stage", stage},
                {"key", key},
                {"params", key_material},
                {"output", file.filename().string()},
                {"tool_version", "1.0.0"}};
  write_file((fs::path(cache_dir) / (stage + "-" + key + ".manifest.json")).string(),
             dump_canonical(manifest));
  write_file(file.string(), bytes);
  return bytes;
}

// Pretty-printer for field elements: (x + y*sqrt(D))/den.
std::string pretty(const QuadElt& v) {
  if (v.is_rational()) return v.a().str();
  Int den = Int::lcm(v.a().den(), v.b().den());
  Int x = Int::divexact(v.a().num() * den, v.a().den());
  Int y = Int::divexact(v.b().num() * den, v.b().den());
  std::string root = "sqrt(" + std::to_string(v.d0()) + ")";
  std::string num;
  if (!x.is_zero()) num += x.str();
  if (y.is_one())
    num += num.empty() ? root : "+" + root;
  else if (y == Int(-1))
    num += "-" + root;
  else
    num += (num.empty() || y.sign() < 0 ? "" : "+") + y.str() + "*" + root;
  if (den.is_one()) return num;
  return "(" + num + ")/" + den.str();
}

// Representatives of conjugation pairs, ordered as in the solution tables.
std::vector<RelationSolution> conjugation_representatives(
    const std::vector<RelationSolution>& sols) {
  std::vector<RelationSolution> reps;
  std::set<std::tuple<long, long, long>> seen;
  for (const auto& s : sols) {
    long ce = ((s.N - s.eXY) % s.N + s.N) % s.N;
    long cu = ((s.N - s.eU) % s.N + s.N) % s.N;
    if (seen.count({s.N, s.eXY, s.eU}) || seen.count({s.N, ce, cu})) continue;
    seen.insert({s.N, s.eXY, s.eU});
    reps.push_back(s);
  }
  return reps;
}

struct SolveFlags {
  std::string stratum = "2-1-1";
  int jobs = 1;
  bool galois = false;
  bool no_conj_fold = false;
  bool no_filter = false;
};

std::string run_solve_json(const SolveFlags& f) {
  Stratum s = *stratum_parse(f.stratum);
  SolveOptions opts;
  opts.jobs = f.jobs;
  opts.galois_orbits = f.galois;
  opts.conjugation_fold = !f.no_conj_fold;
  opts.use_filter = !f.no_filter;
  opts.log = [](const std::string& m) { logmsg(2, "[solve] " + m); };
  auto sols = enumerate_solutions(s, opts);
  json arr = json::array();
  for (const auto& x : sols) arr.push_back(to_json(x));
  return dump_canonical(json{{"stage", "solve"}, {"stratum", f.stratum}, {"items", arr}});
}

std::vector<RelationSolution> solutions_from_bytes(const std::string& bytes) {
  json j = json::parse(bytes);
  std::vector<RelationSolution> out;
  for (const auto& x : j.at("items")) out.push_back(solution_from_json(x));
  return out;
}

// Paper regression tables (verified against the source).
std::vector<RelationSolution> paper_solutions(Stratum st) {
  auto mk = [&](long N, long e1, long e2, Rational a, Rational b, long d) {
    return RelationSolution{N, e1, e2, b.is_zero() ? QuadElt(a) : QuadElt(a, b, d), st};
  };
  std::vector<RelationSolution> reps;
  if (st == Stratum::Prym211) {
    reps = {mk(6, 1, 1, Rational(1, 2), Rational(1, 6), 33),
            mk(6, 3, 1, Rational(0), Rational(2, 3), 6),
            mk(6, 3, 2, Rational(0), Rational(2), 2),
            mk(6, 5, 1, Rational(-1, 2), Rational(1, 6), 33),
            mk(12, 6, 1, Rational(-2), Rational(2), 3),
            mk(12, 6, 5, Rational(2), Rational(2), 3),
            mk(24, 3, 4, Rational(0), Rational(2, 3), 3),
            mk(24, 15, 4, Rational(0), Rational(2, 3), 3)};
  } else {
    reps = {mk(12, 2, 3, Rational(0), Rational(1, 2), 2),
            mk(12, 10, 3, Rational(0), Rational(1, 2), 2),
            mk(12, 1, 3, Rational(-1, 2), Rational(1, 2), 3),
            mk(12, 1, 9, Rational(-1, 2), Rational(1, 2), 3),
            mk(12, 5, 3, Rational(1, 2), Rational(1, 2), 3),
            mk(12, 7, 3, Rational(1, 2), Rational(1, 2), 3),
            mk(12, 4, 3, Rational(0), Rational(1, 2), 6),
            mk(12, 4, 9, Rational(0), Rational(1, 2), 6),
            mk(12, 4, 1, Rational(3, 2), Rational(1, 2), 33),
            mk(12, 4, 5, Rational(-3, 2), Rational(1, 2), 33),
            mk(12, 8, 1, Rational(-3, 2), Rational(1, 2), 33),
            mk(12, 8, 5, Rational(3, 2), Rational(1, 2), 33),
            mk(48, 16, 21, Rational(0), Rational(1), 3),
            mk(48, 16, 9, Rational(0), Rational(1), 3),
            mk(48, 32, 3, Rational(0), Rational(1), 3),
            mk(48, 32, 15, Rational(0), Rational(1), 3)};
  }
  std::vector<RelationSolution> all = reps;
  for (auto s : reps) {
    s.eXY = s.N - s.eXY;
    s.eU = ((s.N - s.eU) % s.N + s.N) % s.N;
    all.push_back(s);
  }
  std::sort(all.begin(), all.end(),
            [](const RelationSolution& x, const RelationSolution& y) {
              return solution_cmp(x, y) < 0;
            });
  return all;
}

int assert_solutions_match(Stratum st, const std::vector<RelationSolution>& sols) {
  auto expect = paper_solutions(st);
  if (sols.size() != expect.size()) {
    std::cerr << "regression mismatch: " << sols.size() << " solutions, expected "
              << expect.size() << "\n";
    return 3;
  }
  for (size_t i = 0; i < sols.size(); ++i) {
    if (!(sols[i] == expect[i])) {
      std::cerr << "regression mismatch at entry " << i << "\n";
      return 3;
    }
  }
  return 0;
}

std::string geometry_stage_json(Stratum st, const std::vector<RelationSolution>& sols) {
  auto g = enumerate_geometries(st, sols);
  return dump_canonical(
      json{{"stage", "geometry"}, {"stratum", stratum_name(st)}, {"items", to_json(g)}});
}

// --- render helpers ---

std::string render_solutions_md(Stratum st, const std::vector<RelationSolution>& sols) {
  std::ostringstream os;
  os << "| N | e_XY | e_U | r |\n|---|---|---|---|\n";
  for (const auto& s : conjugation_representatives(sols))
    os << "| " << s.N << " | " << s.eXY << " | " << s.eU << " | " << pretty(s.r) << " |\n";
  return os.str();
}

std::string render_solutions_csv(const std::vector<RelationSolution>& sols) {
  std::ostringstream os;
  os << "N,eXY,eU,r\n";
  for (const auto& s : conjugation_representatives(sols))
    os << s.N << "," << s.eXY << "," << s.eU << "," << pretty(s.r) << "\n";
  return os.str();
}

std::string render_redint_md(const GeometryEnumeration& g) {
  std::ostringstream os;
  os << "| K | M^red | r2 (horizontal) |\n|---|---|---|\n";
  for (const auto& p : g.kept)
    os << "| Q(sqrt(" << p.d0 << ")) | " << p.mred.str() << " | " << pretty(p.horizontal.r2)
       << " |\n";
  return os.str();
}

std::string render_sd4_md(const CandidateReport& rep) {
  // The SD4 analog is the diagram whose surface counts match the dedicated
  // table; identify it as the diagram with the maximal number of nonzero
  // candidate cells.
  std::map<int, int> live;
  for (const auto& c : rep.cells)
    if (!c.candidates.empty()) live[c.diagram_index]++;
  int sd4 = live.empty() ? 0 : std::max_element(live.begin(), live.end(), [](auto& a, auto& b) {
                                 return a.second < b.second;
                               })->first;
  std::ostringstream os;
  os << "| Reduced matrix | arithmetic surfaces | prototype (w,h,t,e) | slit | D |\n";
  os << "|---|---|---|---|---|\n";
  for (const auto& c : rep.cells) {
    if (c.diagram_index != sd4) continue;
    if (c.candidates.empty()) {
      os << "| " << c.mred.str() << " | " << c.n_surfaces << " | (none) | | |\n";
      continue;
    }
    for (const auto& p : c.candidates) {
      os << "| " << c.mred.str() << " | " << c.n_surfaces << " | ";
      if (p.has_normal_form)
        os << "(" << p.w << "," << p.h << "," << p.t << "," << p.e << ") | " << pretty(p.s)
           << " | " << p.D;
      else
        os << "surface " << p.surface_key.substr(0, 12) << "... | " << pretty(p.s) << " | ";
      os << " |\n";
    }
  }
  return os.str();
}

std::string render_algo_md(const CandidateReport& rep) {
  std::ostringstream os;
  os << "| M^red \\\\ diagram |";
  for (size_t d = 0; d < rep.diagrams.size(); ++d) os << " " << d << " |";
  os << "\n|---|";
  for (size_t d = 0; d < rep.diagrams.size(); ++d) os << "---|";
  os << "\n";
  // Collect cells by matrix.
  std::map<std::string, std::map<int, const CellReport*>> rows;
  for (const auto& c : rep.cells) rows[c.mred.str()][c.diagram_index] = &c;
  for (const auto& [mstr, cols] : rows) {
    os << "| " << mstr << " |";
    for (size_t d = 0; d < rep.diagrams.size(); ++d) {
      auto it = cols.find(static_cast<int>(d));
      if (it == cols.end() || it->second->n_surfaces == 0)
        os << " - |";
      else
        os << " " << it->second->n_surfaces << " / **" << it->second->candidates.size()
           << "** |";
    }
    os << "\n";
  }
  os << "| candidates |";
  for (size_t d = 0; d < rep.diagrams.size(); ++d)
    os << " **" << rep.per_diagram_candidates[d] << "** |";
  os << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finiteness computations for Teichmuller curves in the Prym loci "
               "Prym(2,1,1) and Prym(2,2)"};
  app.require_subcommand(1);

  std::string stratum = "2-1-1", out, solutions_file, geometries_file, cache_flag, format = "json",
              diagram = "ALL", table = "algo", report_file;
  int jobs = 1;
  bool assert_paper = false, with_identity = false, galois = false, no_conj_fold = false,
       no_filter = false;
  app.add_option("--log-level", g_log_level, "0 quiet, 1 info, 2 debug");

  auto add_common = [&](CLI::App* c) {
    c->add_option("--stratum", stratum, "2-1-1 or 2-2")->check(CLI::IsMember({"2-1-1", "2-2"}));
    c->add_option("--out", out, "output file (default stdout)");
    c->add_option("--jobs", jobs, "worker threads");
    c->add_flag("--assert-paper", assert_paper, "check outputs against the published tables");
    c->add_option("--cache-dir", cache_flag, "content-addressed stage cache directory");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the torsion equations in roots of unity");
  add_common(solve);
  solve->add_flag("--with-identity-check", with_identity,
                  "run the symbolic resultant identity self-test first");
  solve->add_flag("--galois", galois, "enumerate Galois orbits instead of all exponent pairs");
  solve->add_flag("--no-conj-fold", no_conj_fold, "disable the conjugation fold");
  solve->add_flag("--no-filter", no_filter, "disable the modular prefilter");

  CLI::App* geometry = app.add_subcommand("geometry", "derive cusp geometries from solutions");
  add_common(geometry);
  geometry->add_option("--solutions", solutions_file, "solve-stage output file")->required();

  CLI::App* enumerate = app.add_subcommand("enumerate", "enumerate square-tiled surfaces");
  add_common(enumerate);
  enumerate->add_option("--geometries", geometries_file, "geometry-stage output file")->required();
  enumerate->add_option("--diagram", diagram, "ALL or a diagram index");

  CLI::App* pipeline = app.add_subcommand("pipeline", "run all stages");
  add_common(pipeline);
  pipeline->add_option("--format", format, "json, csv or md")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  pipeline->add_flag("--galois", galois, "enumerate Galois orbits in the solver");
  pipeline->add_flag("--no-filter", no_filter, "disable the solver prefilter");

  CLI::App* render = app.add_subcommand("render", "render tables from stage outputs");
  render->add_option("--table", table, "solutions, redint22, sd4 or algo")
      ->check(CLI::IsMember({"solutions", "redint22", "sd4", "algo"}));
  render->add_option("--stratum", stratum, "2-1-1 or 2-2")
      ->check(CLI::IsMember({"2-1-1", "2-2"}));
  render->add_option("--format", format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
  render->add_option("--solutions", solutions_file, "solve-stage output");
  render->add_option("--geometries", geometries_file, "geometry-stage output");
  render->add_option("--report", report_file, "pipeline-stage output");
  render->add_option("--out", out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    Stratum st = *stratum_parse(stratum);
    std::string cache = cache_dir_or(cache_flag);

    auto emit = [&](const std::string& bytes) {
      if (out.empty())
        std::cout << bytes;
      else
        write_file(out, bytes);
    };

    if (solve->parsed()) {
      if (with_identity) {
        if (!verify_resultant_identity(st)) {
          std::cerr << "resultant identity check failed\n";
          return 2;
        }
        logmsg(1, "resultant identity verified");
      }
      SolveFlags f{stratum, jobs, galois, no_conj_fold, no_filter};
      std::string key = stratum;  // output independent of jobs/filter/fold
      std::string bytes = cached_stage(cache, "solve", key, [&] { return run_solve_json(f); });
      if (assert_paper) {
        int rc = assert_solutions_match(st, solutions_from_bytes(bytes));
        if (rc) return rc;
        logmsg(1, "solutions match the published tables");
      }
      emit(bytes);
      return 0;
    }

    if (geometry->parsed()) {
      auto sols = solutions_from_bytes(read_file(solutions_file));
      std::string bytes = cached_stage(cache, "geometry", stratum + content_hash(dump_canonical([&] {
                                         json a = json::array();
                                         for (auto& s : sols) a.push_back(to_json(s));
                                         return a;
                                       }())),
                                       [&] { return geometry_stage_json(st, sols); });
      if (assert_paper) {
        auto g = geometries_from_json(json::parse(bytes).at("items"));
        size_t want = st == Stratum::Prym22 ? 7 : 1;
        if (g.kept.size() != want) {
          std::cerr << "regression mismatch: " << g.kept.size() << " geometries, expected "
                    << want << "\n";
          return 3;
        }
        logmsg(1, "geometries match the published tables");
      }
      emit(bytes);
      return 0;
    }

    if (enumerate->parsed()) {
      auto g = geometries_from_json(json::parse(read_file(geometries_file)).at("items"));
      auto diagrams = enumerate_separatrix_diagrams(st);
      json cells = json::array();
      for (size_t di = 0; di < diagrams.size(); ++di) {
        if (diagram != "ALL" && std::stoul(diagram) != di) continue;
        for (const auto& geo : g.kept) {
          auto surfs = enumerate_arithmetic_surfaces(diagrams[di], geo.mred);
          json arr = json::array();
          for (const auto& s0 : surfs) {
            json one = to_json(s0.origami);
            one["admissible"] = admissible_vertical(s0, st);
            arr.push_back(one);
          }
          cells.push_back(json{{"diagram", di},
                               {"mred", to_json(geo.mred)},
                               {"surfaces", arr.size()},
                               {"origamis", arr}});
        }
      }
      emit(dump_canonical(
          json{{"stage", "enumerate"}, {"stratum", stratum}, {"items", cells}}));
      return 0;
    }

    if (pipeline->parsed()) {
      PipelineOptions opts;
      opts.jobs = jobs;
      opts.use_filter = !no_filter;
      opts.log = [](const std::string& m) { logmsg(1, "[pipeline] " + m); };
      // Solve through the cache so repeated runs are no-ops.
      SolveFlags f{stratum, jobs, galois, no_conj_fold, no_filter};
      std::string sol_bytes =
          cached_stage(cache, "solve", stratum, [&] { return run_solve_json(f); });
      opts.solutions = solutions_from_bytes(sol_bytes);
      auto rep = run_pipeline(st, opts);
      std::string bytes;
      if (format == "json")
        bytes = dump_canonical(to_json(rep));
      else if (format == "md")
        bytes = render_algo_md(rep);
      else {
        std::ostringstream os;
        os << "diagram,candidates_pre,candidates_post\n";
        for (size_t d = 0; d < rep.per_diagram_candidates.size(); ++d)
          os << d << "," << rep.per_diagram_candidates[d] << ","
             << rep.per_diagram_candidates_post[d] << "\n";
        bytes = os.str();
      }
      if (assert_paper) {
        int rc = assert_solutions_match(st, rep.solutions);
        if (rc) return rc;
        if (st == Stratum::Prym211 && rep.distinct_candidates_post != 0) {
          std::cerr << "regression mismatch: expected zero candidates in Prym(2,1,1)\n";
          return 3;
        }
        if (st == Stratum::Prym22) {
          if (rep.distinct_candidates_post > 92) {
            std::cerr << "regression mismatch: more than 92 candidates\n";
            return 3;
          }
          std::set<long> fields_ok{2, 3, 33};
          for (long d : rep.trace_fields)
            if (!fields_ok.count(d)) {
              std::cerr << "regression mismatch: unexpected trace field " << d << "\n";
              return 3;
            }
        }
        logmsg(1, "pipeline matches the published results");
      }
      emit(bytes);
      return 0;
    }

    if (render->parsed()) {
      std::string bytes;
      if (table == "solutions") {
        auto sols = solutions_from_bytes(read_file(solutions_file));
        bytes = format == "csv" ? render_solutions_csv(sols) : render_solutions_md(st, sols);
      } else if (table == "redint22") {
        auto g = geometries_from_json(json::parse(read_file(geometries_file)).at("items"));
        bytes = render_redint_md(g);
      } else {
        json j = json::parse(read_file(report_file));
        CandidateReport rep;
        rep.stratum = st;
        rep.per_diagram_candidates = j.at("per_diagram_candidates").get<std::vector<long>>();
        rep.per_diagram_candidates_post =
            j.at("per_diagram_candidates_post").get<std::vector<long>>();
        rep.diagrams.resize(rep.per_diagram_candidates.size());
        for (const auto& c : j.at("cells")) {
          CellReport cell;
          cell.diagram_index = c.at("diagram").get<int>();
          cell.mred = mred_from_json(c.at("mred"));
          cell.d0 = c.at("D0").get<long>();
          cell.n_surfaces = c.at("surfaces").get<long>();
          cell.n_admissible = c.at("admissible").get<long>();
          for (const auto& p : c.at("candidates")) {
            Prototype proto;
            proto.has_normal_form = p.at("normal_form").get<bool>();
            proto.s = quad_from_json(p.at("s"));
            proto.d0 = p.at("D0").get<long>();
            if (proto.has_normal_form) {
              proto.w = p.at("w").get<long>();
              proto.h = p.at("h").get<long>();
              proto.t = p.at("t").get<long>();
              proto.e = p.at("e").get<long>();
              proto.D = p.at("D").get<long>();
            } else {
              proto.surface_key = p.at("surface").get<std::string>();
            }
            cell.candidates.push_back(proto);
          }
          rep.cells.push_back(std::move(cell));
        }
        bytes = table == "sd4" ? render_sd4_md(rep) : render_algo_md(rep);
      }
      emit(bytes);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
