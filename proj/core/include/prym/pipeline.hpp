#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prym/prototype.hpp"

namespace prym {

// Per (diagram, reduced matrix) enumeration summary.
struct CellReport {
  int diagram_index = 0;
  ReducedMatrix mred;
  long d0 = 1;
  QuadElt r2hor;
  long n_surfaces = 0;
  long n_admissible = 0;
  long n_proto_failures = 0;
  std::vector<Prototype> candidates;  // distinct values, before the moduli filter
  std::vector<Prototype> excluded;    // twist-zero candidates failing commensurability
};

struct CandidateReport {
  Stratum stratum = Stratum::Prym211;
  std::vector<RelationSolution> solutions;
  GeometryEnumeration geometries;
  std::vector<SeparatrixDiagram> diagrams;
  std::vector<CellReport> cells;

  // Marking-level counts: one entry per (prototype, slit) class per cell, the
  // analog of the source table's bold row.
  std::vector<long> per_diagram_candidates;       // pre-filter totals
  std::vector<long> per_diagram_candidates_post;  // after the moduli filter
  long total_candidates = 0;
  long total_candidates_post = 0;

  // Candidate-surface counts: distinct candidates after global value
  // deduplication (surface-identified cells count surfaces once).
  long distinct_candidates = 0;
  long distinct_candidates_post = 0;
  long total_admissible_surfaces = 0;

  std::set<long> trace_fields;
};

struct PipelineOptions {
  int jobs = 1;
  bool use_filter = true;   // solver prefilter
  std::function<void(const std::string&)> log;
  // Staged execution: reuse previously computed artifacts.
  std::optional<std::vector<RelationSolution>> solutions;
  std::optional<GeometryEnumeration> geometries;
};

// Candidate values of one admissible surface under one geometry, with the
// complementary-slit pair of a single surface collapsed to its larger slit.
std::vector<Prototype> surface_candidates(const ArithmeticSurface& as, const GeometryPair& g,
                                          long* proto_failure);

CandidateReport run_pipeline(Stratum s, const PipelineOptions& opts = {});

}  // namespace prym
