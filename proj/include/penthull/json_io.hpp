#pragma once

// JSON layouts for patches, surface points, metric results, pointed patches,
// supertile chains, and ball-class censuses. Every writer emits lists in
// canonical order (ascending identifiers, fixed key order), so equal values
// always produce byte-identical documents.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "penthull/chart.hpp"
#include "penthull/geodesic.hpp"
#include "penthull/hull.hpp"
#include "penthull/tiling.hpp"

namespace penthull {

// Insertion-ordered documents keep the documented key order on disk.
using Json = nlohmann::ordered_json;

inline std::string to_text(const Json& j) { return j.dump(2) + "\n"; }

// ----------------------------------------------------------------- tiles ----

inline const char* tile_type_name(TileType t) {
  return t == TileType::kCenter ? "center" : "petal";
}

inline TileType tile_type_from_name(const std::string& name) {
  if (name == "center") return TileType::kCenter;
  if (name == "petal") return TileType::kPetal;
  throw validation_error("unknown tile type: " + name);
}

// ----------------------------------------------------------------- patch ----

// {"vertices":[...], "edges":[[u,v]...], "faces":[{"cycle","type","orient"}],
//  "boundary":[...], "central": id|null}; `central` marks a distinguished
// vertex (ball root / vertex origin) when the patch carries one.
inline Json patch_to_json(const Tiling& t,
                          std::optional<VertexId> central = std::nullopt) {
  Json j;
  auto vertices = Json::array();
  for (VertexId v = 0; v < t.vertex_count(); ++v) vertices.push_back(v);
  j["vertices"] = std::move(vertices);

  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(static_cast<size_t>(t.edge_count()));
  for (EdgeId e = 0; e < t.edge_count(); ++e)
    pairs.emplace_back(t.edge(e).u, t.edge(e).v);
  std::sort(pairs.begin(), pairs.end());
  auto edges = Json::array();
  for (const auto& [u, v] : pairs) edges.push_back(Json::array({u, v}));
  j["edges"] = std::move(edges);

  auto faces = Json::array();
  for (FaceId f = 0; f < t.face_count(); ++f) {
    const auto& fc = t.face(f);
    Json jf;
    jf["cycle"] = fc.cycle;
    jf["type"] = tile_type_name(fc.dec.type);
    jf["orient"] = fc.dec.orient;
    faces.push_back(std::move(jf));
  }
  j["faces"] = std::move(faces);

  std::vector<VertexId> rim;
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (t.on_boundary(v)) rim.push_back(v);
  j["boundary"] = rim;

  if (central)
    j["central"] = *central;
  else
    j["central"] = nullptr;
  return j;
}

inline std::optional<VertexId> central_from_json(const Json& j) {
  if (!j.contains("central") || j.at("central").is_null()) return std::nullopt;
  return j.at("central").get<VertexId>();
}

inline Tiling tiling_from_json(const Json& j) {
  if (!j.contains("vertices") || !j.contains("faces"))
    throw validation_error("patch document lacks vertices/faces");
  const auto& jv = j.at("vertices");
  const int vcount = static_cast<int>(jv.size());
  for (int i = 0; i < vcount; ++i)
    if (jv.at(static_cast<size_t>(i)).get<VertexId>() != i)
      throw validation_error("vertex list must be 0..V-1 ascending");

  std::vector<Tiling::FaceSpec> specs;
  for (const auto& jf : j.at("faces")) {
    Tiling::FaceSpec s;
    const auto& cyc = jf.at("cycle");
    if (cyc.size() != 5) throw validation_error("face cycle must have 5 vertices");
    for (size_t i = 0; i < 5; ++i) s.cycle[i] = cyc.at(i).get<VertexId>();
    s.dec.type = tile_type_from_name(jf.at("type").get<std::string>());
    const int orient = jf.at("orient").get<int>();
    if (orient < 0 || orient > 4)
      throw validation_error("face orient out of range 0..4");
    s.dec.orient = static_cast<std::uint8_t>(orient);
    specs.push_back(s);
  }
  Tiling t(specs, vcount);

  if (j.contains("edges")) {
    std::vector<std::pair<VertexId, VertexId>> stated, built;
    for (const auto& je : j.at("edges"))
      stated.emplace_back(je.at(0).get<VertexId>(), je.at(1).get<VertexId>());
    for (EdgeId e = 0; e < t.edge_count(); ++e)
      built.emplace_back(t.edge(e).u, t.edge(e).v);
    std::sort(stated.begin(), stated.end());
    std::sort(built.begin(), built.end());
    if (stated != built)
      throw validation_error("edge list does not match the facial structure");
  }
  if (j.contains("boundary")) {
    std::vector<VertexId> stated, built;
    for (const auto& jb : j.at("boundary")) stated.push_back(jb.get<VertexId>());
    for (VertexId v = 0; v < t.vertex_count(); ++v)
      if (t.on_boundary(v)) built.push_back(v);
    std::sort(stated.begin(), stated.end());
    if (stated != built)
      throw validation_error("boundary list does not match the facial structure");
  }
  return t;
}

// ---------------------------------------------------------------- points ----

inline Json surface_point_to_json(SurfacePoint p) {
  Json j;
  j["face"] = p.face;
  j["xy"] = Json::array({p.xy.x, p.xy.y});
  return j;
}

inline SurfacePoint surface_point_from_json(const Json& j) {
  SurfacePoint p;
  p.face = j.at("face").get<FaceId>();
  p.xy = {j.at("xy").at(0).get<double>(), j.at("xy").at(1).get<double>()};
  return p;
}

// --------------------------------------------------------------- metrics ----

inline Json geodesic_result_to_json(const GeodesicResult& r) {
  Json j;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["tol_met"] = r.tol_met;
  j["touches_boundary"] = r.touches_boundary;
  j["steiner_used"] = r.steiner_used;
  auto path = Json::array();
  for (const SurfacePoint& p : r.path) path.push_back(surface_point_to_json(p));
  j["path"] = std::move(path);
  return j;
}

inline Json hull_distance_to_json(const HullDistance& h) {
  Json j;
  j["lower"] = h.lower;
  j["upper"] = h.upper;
  j["cap_hit"] = h.cap_hit;
  if (h.witness) {
    Json w;
    w["radius"] = h.witness->radius;
    w["displacement_ab"] = h.witness->displacement_ab;
    w["displacement_ba"] = h.witness->displacement_ba;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline Json discrete_hull_distance_to_json(const DiscreteHullDistance& d) {
  Json j;
  j["value"] = d.value;
  j["lower"] = d.lower;
  j["iso_radius"] = d.iso_radius;
  j["fail_radius"] = d.fail_radius;
  j["truncation_limited"] = d.truncation_limited;
  return j;
}

// -------------------------------------------------------- pointed patches ----

inline Json pointed_patch_to_json(const PointedPatch& p) {
  std::optional<VertexId> central;
  if (p.tiling.face_count() > 0 && p.origin.face != kInvalidId) {
    const CanonicalPoint c = canonicalize(p.tiling, p.origin);
    if (c.kind == PointKind::kVertex) central = c.vertex;
  }
  Json j;
  j["patch"] = patch_to_json(p.tiling, central);
  j["origin"] = surface_point_to_json(p.origin);
  j["guaranteed_radius"] = p.guaranteed_radius;
  return j;
}

inline PointedPatch pointed_patch_from_json(const Json& j) {
  PointedPatch p;
  p.tiling = tiling_from_json(j.at("patch"));
  p.origin = surface_point_from_json(j.at("origin"));
  p.guaranteed_radius = j.at("guaranteed_radius").get<double>();
  if (p.origin.face != kInvalidId &&
      (p.origin.face < 0 || p.origin.face >= p.tiling.face_count()))
    throw validation_error("pointed patch origin face out of range");
  return p;
}

// ------------------------------------------------------ chains and censuses --

inline Json chain_to_json(const std::vector<ChainLink>& chain) {
  auto j = Json::array();
  for (const ChainLink& link : chain) {
    Json jl;
    jl["level"] = link.level;
    Json seed;
    seed["type"] = tile_type_name(link.seed.type);
    seed["orient"] = link.seed.orient;
    jl["seed"] = std::move(seed);
    jl["faces"] = link.supertile.face_count();
    jl["origin"] = surface_point_to_json(link.origin);
    jl["radius_bound"] = link.radius_bound;
    j.push_back(std::move(jl));
  }
  return j;
}

inline Json epsilon_net_to_json(const std::vector<BallClass>& net, int radius,
                                int level) {
  Json j;
  j["radius"] = radius;
  j["level"] = level;
  auto classes = Json::array();
  for (const BallClass& bc : net) {
    Json jc;
    jc["population"] = bc.population;
    jc["faces"] = bc.representative.tiling.face_count();
    jc["code"] = bc.code;
    classes.push_back(std::move(jc));
  }
  j["classes"] = std::move(classes);
  return j;
}

}  // namespace penthull
