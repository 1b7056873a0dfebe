#include "prym/json_io.hpp"

#include <stdexcept>

namespace prym {

json to_json(const Rational& q) { return json{{"num", q.num().str()}, {"den", q.den().str()}}; }

json to_json(const QuadElt& x) {
  return json{{"a", to_json(x.a())}, {"b", to_json(x.b())}, {"D0", x.d0()}};
}

json to_json(const CycloElt& x) {
  json coeffs = json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(to_json(c));
  return json{{"N", x.conductor()}, {"coeffs", coeffs}};
}

json to_json(const RelationSolution& s) {
  return json{{"N", s.N},
              {"eXY", s.eXY},
              {"eU", s.eU},
              {"r", to_json(s.r)},
              {"stratum", stratum_name(s.stratum)}};
}

json to_json(const CuspTuple& t) {
  return json{{"source", to_json(t.source)}, {"k", t.k},       {"ell", t.ell},
              {"r2", to_json(t.r2)},         {"h2", to_json(t.h2)}, {"gamma", to_json(t.gamma)}};
}

json to_json(const ReducedMatrix& m) {
  return json{{"m11p13", m.m11p13}, {"m12x2", m.m12x2}, {"m21", m.m21}, {"m22", m.m22}};
}

json to_json(const GeometryPair& g) {
  json fm = json::array();
  for (const auto& row : g.fullM) fm.push_back(json{row[0], row[1], row[2]});
  return json{{"horizontal", to_json(g.horizontal)},
              {"vertical", to_json(g.vertical)},
              {"crossing", g.crossing == Crossing::C1 ? "C1" : "C2"},
              {"wZ1", to_json(g.wZ1)},
              {"wZ2", to_json(g.wZ2)},
              {"hZ1", to_json(g.hZ1)},
              {"hZ2", to_json(g.hZ2)},
              {"mred", to_json(g.mred)},
              {"fullM", fm},
              {"D0", g.d0}};
}

json to_json(const GeometryEnumeration& g) {
  json kept = json::array(), disc = json::array();
  for (const auto& x : g.kept) kept.push_back(to_json(x));
  for (const auto& x : g.discarded) disc.push_back(to_json(x));
  return json{{"kept", kept}, {"discarded", disc}};
}

json to_json(const SeparatrixDiagram& d) {
  json tops = json::array(), bots = json::array();
  for (int c = 0; c < 3; ++c) {
    tops.push_back(d.top[c]);
    bots.push_back(d.bot[c]);
  }
  return json{{"edges", d.n_edges}, {"top", tops}, {"bot", bots}, {"rho", d.rho_edge}};
}

json to_json(const Origami& o) {
  return json{{"n", o.n}, {"sigma_h", o.sh}, {"sigma_v", o.sv}, {"rho", o.rho}};
}

json to_json(const Prototype& p) {
  json j{{"normal_form", p.has_normal_form}, {"s", to_json(p.s)}, {"D0", p.d0}};
  if (p.has_normal_form) {
    j["w"] = p.w;
    j["h"] = p.h;
    j["t"] = p.t;
    j["e"] = p.e;
    j["D"] = p.D;
  } else {
    j["surface"] = p.surface_key;
  }
  return j;
}

json to_json(const CellReport& c) {
  json cand = json::array(), excl = json::array();
  for (const auto& p : c.candidates) cand.push_back(to_json(p));
  for (const auto& p : c.excluded) excl.push_back(to_json(p));
  return json{{"diagram", c.diagram_index},
              {"mred", to_json(c.mred)},
              {"D0", c.d0},
              {"r2hor", to_json(c.r2hor)},
              {"surfaces", c.n_surfaces},
              {"admissible", c.n_admissible},
              {"proto_failures", c.n_proto_failures},
              {"candidates", cand},
              {"excluded", excl}};
}

json to_json(const CandidateReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) cells.push_back(to_json(c));
  json diagrams = json::array();
  for (const auto& d : r.diagrams) diagrams.push_back(to_json(d));
  json sols = json::array();
  for (const auto& s : r.solutions) sols.push_back(to_json(s));
  return json{{"stratum", stratum_name(r.stratum)},
              {"solutions", sols},
              {"geometries", to_json(r.geometries)},
              {"diagrams", diagrams},
              {"cells", cells},
              {"per_diagram_candidates", r.per_diagram_candidates},
              {"per_diagram_candidates_post", r.per_diagram_candidates_post},
              {"total_candidates", r.total_candidates},
              {"total_candidates_post", r.total_candidates_post},
              {"distinct_candidates", r.distinct_candidates},
              {"distinct_candidates_post", r.distinct_candidates_post},
              {"total_admissible_surfaces", r.total_admissible_surfaces},
              {"trace_fields", std::vector<long>(r.trace_fields.begin(), r.trace_fields.end())}};
}

Rational rational_from_json(const json& j) {
  return Rational(Int(j.at("num").get<std::string>()), Int(j.at("den").get<std::string>()));
}

QuadElt quad_from_json(const json& j) {
  Rational a = rational_from_json(j.at("a"));
  Rational b = rational_from_json(j.at("b"));
  long d0 = j.at("D0").get<long>();
  if (b.is_zero()) return QuadElt(a);
  return QuadElt(a, b, d0);
}

RelationSolution solution_from_json(const json& j) {
  RelationSolution s;
  s.N = j.at("N").get<long>();
  s.eXY = j.at("eXY").get<long>();
  s.eU = j.at("eU").get<long>();
  s.r = quad_from_json(j.at("r"));
  auto st = stratum_parse(j.at("stratum").get<std::string>());
  if (!st) throw std::invalid_argument("solution_from_json: bad stratum");
  s.stratum = *st;
  return s;
}

CuspTuple cusp_from_json(const json& j) {
  CuspTuple t;
  t.source = solution_from_json(j.at("source"));
  t.k = j.at("k").get<int>();
  t.ell = j.at("ell").get<int>();
  t.r2 = quad_from_json(j.at("r2"));
  t.h2 = quad_from_json(j.at("h2"));
  t.gamma = quad_from_json(j.at("gamma"));
  return t;
}

ReducedMatrix mred_from_json(const json& j) {
  return ReducedMatrix{j.at("m11p13").get<long>(), j.at("m12x2").get<long>(),
                       j.at("m21").get<long>(), j.at("m22").get<long>()};
}

GeometryPair geometry_from_json(const json& j) {
  GeometryPair g;
  g.horizontal = cusp_from_json(j.at("horizontal"));
  g.vertical = cusp_from_json(j.at("vertical"));
  g.crossing = j.at("crossing").get<std::string>() == "C1" ? Crossing::C1 : Crossing::C2;
  g.wZ1 = quad_from_json(j.at("wZ1"));
  g.wZ2 = quad_from_json(j.at("wZ2"));
  g.hZ1 = quad_from_json(j.at("hZ1"));
  g.hZ2 = quad_from_json(j.at("hZ2"));
  g.mred = mred_from_json(j.at("mred"));
  auto fm = j.at("fullM");
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) g.fullM[i][k] = fm.at(i).at(k).get<long>();
  g.d0 = j.at("D0").get<long>();
  return g;
}

GeometryEnumeration geometries_from_json(const json& j) {
  GeometryEnumeration g;
  for (const auto& x : j.at("kept")) g.kept.push_back(geometry_from_json(x));
  for (const auto& x : j.at("discarded")) g.discarded.push_back(geometry_from_json(x));
  return g;
}

std::string dump_canonical(const json& j) { return j.dump(1); }

std::string content_hash(const std::string& bytes) {
  // 128-bit FNV-1a, hex encoded.
  u64 h1 = 1469598103934665603ull, h2 = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h1 = (h1 ^ c) * 1099511628211ull;
    h2 = (h2 ^ (c + 17)) * 1099511628211ull;
  }
  char buf[33];
  snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(h1),
           static_cast<unsigned long long>(h2));
  return std::string(buf);
}

}  // namespace prym
