#pragma once
/* Reading system files and serializing results.  A system file is a JSON
   object
     { "order": {"type": "product", "rank": 2}
                | {"type": "chain", "levels": [1, 2, 6]}
                | {"type": "lex", "rank": 1},
       "points": 3,
       "generators": [[1, 3, 3], [3, 2, 3]] }
   with every point index 1-based and chain generators listed coarsest level
   first.  Syntax trouble raises io_error; a well-formed file describing a bad
   system raises invalid_input.  All emitted JSON uses ordered keys and prints
   scalars as exact strings. */
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynsys.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "scalar.hpp"

namespace semicross {

using ordered_json = nlohmann::ordered_json;

inline Coord json_int(const ordered_json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw invalid_input(where + " must be an integer (floating point values are rejected)");
  return j.get<Coord>();
}

inline OrderSpec order_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw invalid_input("order must be an object with a \"type\" string");
  std::string type = j["type"].get<std::string>();
  if (type == "product" || type == "lex") {
    if (!j.contains("rank")) throw invalid_input(type + " orders need a \"rank\"");
    Coord rank = json_int(j["rank"], "order rank");
    if (rank < 1 || rank > 16) throw invalid_input("order rank must be between 1 and 16");
    return type == "product" ? OrderSpec::product(static_cast<int>(rank))
                             : OrderSpec::lex(static_cast<int>(rank));
  }
  if (type == "chain") {
    if (!j.contains("levels") || !j["levels"].is_array())
      throw invalid_input("chain orders need a \"levels\" array");
    std::vector<Coord> levels;
    for (const auto& v : j["levels"]) levels.push_back(json_int(v, "chain level"));
    return OrderSpec::chain(levels);
  }
  throw invalid_input("unknown order type '" + type + "'");
}

inline System system_from_json(const ordered_json& j) {
  if (!j.is_object()) throw invalid_input("system file must be a JSON object");
  for (const char* key : {"order", "points", "generators"})
    if (!j.contains(key)) throw invalid_input(std::string("system file is missing \"") + key + "\"");
  OrderSpec order = order_from_json(j["order"]);
  Coord points = json_int(j["points"], "points");
  if (points < 1 || points > 64) throw invalid_input("points must be between 1 and 64");
  if (!j["generators"].is_array()) throw invalid_input("generators must be an array of maps");
  std::vector<PointMap> gens;
  for (const auto& row : j["generators"]) {
    if (!row.is_array()) throw invalid_input("each generator must be an array of point indices");
    PointMap f;
    for (const auto& v : row) f.push_back(static_cast<int>(json_int(v, "generator entry")) - 1);
    gens.push_back(std::move(f));
  }
  return make_system(order, static_cast<int>(points), std::move(gens));
}

inline System load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error("cannot parse '" + path + "': " + e.what());
  }
  return system_from_json(j);
}

inline ordered_json order_to_json(const OrderSpec& spec) {
  ordered_json j;
  switch (spec.kind) {
    case OrderKind::product: j["type"] = "product"; j["rank"] = spec.rank; break;
    case OrderKind::lex: j["type"] = "lex"; j["rank"] = spec.rank; break;
    case OrderKind::chain: j["type"] = "chain"; j["levels"] = spec.levels; break;
  }
  return j;
}

inline ordered_json system_to_json(const System& sys) {
  ordered_json j;
  j["order"] = order_to_json(sys.order);
  j["points"] = sys.n_points;
  ordered_json gens = ordered_json::array();
  for (const PointMap& f : sys.raw_gens) {
    ordered_json row = ordered_json::array();
    for (int y : f) row.push_back(y + 1);
    gens.push_back(std::move(row));
  }
  j["generators"] = std::move(gens);
  return j;
}

/* "0,0;1,0" -> the join closure of {(0,0), (1,0)}. */
inline Grid parse_grid_literal(const std::string& text, const OrderSpec& spec) {
  std::vector<Pt> pts;
  std::stringstream points_in(text);
  std::string chunk;
  while (std::getline(points_in, chunk, ';')) {
    Pt g;
    std::stringstream coords_in(chunk);
    std::string coord;
    while (std::getline(coords_in, coord, ',')) {
      try {
        size_t used = 0;
        g.push_back(std::stoll(coord, &used));
        if (used != coord.size()) throw std::invalid_argument(coord);
      } catch (const std::exception&) {
        throw invalid_input("bad coordinate '" + coord + "' in grid literal");
      }
    }
    if (static_cast<int>(g.size()) != spec.rank)
      throw invalid_input("grid point '" + chunk + "' must have " + std::to_string(spec.rank) +
                          " coordinates");
    pts.push_back(std::move(g));
  }
  if (pts.empty()) throw invalid_input("grid literal is empty");
  return grid_closure(pts, spec);
}

inline ordered_json pt_to_json(const Pt& g) {
  ordered_json j = ordered_json::array();
  for (Coord c : g) j.push_back(c);
  return j;
}

inline ordered_json grid_to_json(const Grid& G) {
  ordered_json j = ordered_json::array();
  for (const Pt& g : G) j.push_back(pt_to_json(g));
  return j;
}

inline ordered_json func_to_json(const Func& a) {
  ordered_json j = ordered_json::array();
  for (const GaussRat& v : a) j.push_back(to_string(v));
  return j;
}

inline ordered_json row_to_json(const Row& r) {
  ordered_json j = ordered_json::array();
  for (const GaussRat& v : r) j.push_back(to_string(v));
  return j;
}

inline ordered_json matrix_to_json(const Matrix& M) {
  ordered_json j = ordered_json::array();
  for (const Row& r : M) j.push_back(row_to_json(r));
  return j;
}

/* 1-based, ascending list of the points in a mask. */
inline ordered_json mask_to_json(uint64_t mask, int n) {
  ordered_json j = ordered_json::array();
  for (int x = 0; x < n; ++x)
    if (mask >> x & 1) j.push_back(x + 1);
  return j;
}

inline ordered_json map_to_json(const PointMap& f) {
  ordered_json j = ordered_json::array();
  for (int y : f) j.push_back(y + 1);
  return j;
}

}  // namespace semicross
