#pragma once

#include <string>

#include <json.hpp>

#include "prym/pipeline.hpp"

namespace prym {

using nlohmann::json;

json to_json(const Rational& q);
json to_json(const QuadElt& x);
json to_json(const CycloElt& x);
json to_json(const RelationSolution& s);
json to_json(const CuspTuple& t);
json to_json(const ReducedMatrix& m);
json to_json(const GeometryPair& g);
json to_json(const GeometryEnumeration& g);
json to_json(const SeparatrixDiagram& d);
json to_json(const Origami& o);
json to_json(const Prototype& p);
json to_json(const CellReport& c);
json to_json(const CandidateReport& r);

Rational rational_from_json(const json& j);
QuadElt quad_from_json(const json& j);
RelationSolution solution_from_json(const json& j);
CuspTuple cusp_from_json(const json& j);
ReducedMatrix mred_from_json(const json& j);
GeometryPair geometry_from_json(const json& j);
GeometryEnumeration geometries_from_json(const json& j);

// Canonical serialization (sorted keys, no float anywhere).
std::string dump_canonical(const json& j);

// FNV-1a content hash used by the stage cache.
std::string content_hash(const std::string& bytes);

}  // namespace prym
