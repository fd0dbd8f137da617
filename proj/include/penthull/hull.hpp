#pragma once

// Finite pointed patches as stand-ins for points of the tiling space: the
// metric estimator between pointed patterns (certified brackets under the
// 1/sqrt(2) cap), its purely combinatorial vertex-pointed variant, the
// subdivision action on pointed patches, increasing supertile chains above a
// point, the three-sector wheel complex around a degree-3 hub, epsilon-net
// censuses of ball classes, and the origin-forgetting equivalence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "penthull/chart.hpp"
#include "penthull/core.hpp"
#include "penthull/geodesic.hpp"
#include "penthull/iso.hpp"
#include "penthull/partition.hpp"
#include "penthull/submap.hpp"
#include "penthull/subdivision_data.hpp"
#include "penthull/tiling.hpp"

namespace penthull {

// Distances between pointed patterns saturate here: patterns that disagree
// immediately are exactly this far apart.
inline constexpr double kHullCap = 0.7071067811865476;  // 1/sqrt(2)

// A finite pattern with a marked point. `guaranteed_radius` is a certified
// lower bound on the geodesic distance from the origin to every rim vertex,
// so the metric ball of that radius around the origin lies inside the patch
// and is unaffected by anything outside it.
struct PointedPatch {
  Tiling tiling = Tiling::isolated_vertex();
  SurfacePoint origin{};  // face stays kInvalidId until pointed
  double guaranteed_radius = 0.0;
};

// Certified origin-to-rim radius: a third of the unit-edge distance bounds
// the geodesic below, anchored at the nearest corner of the origin's tile.
inline double certified_radius(const Tiling& t, SurfacePoint origin) {
  if (t.face_count() == 0) return 0.0;
  const CanonicalPoint c = canonicalize(t, origin);
  VertexId anchor = kInvalidId;
  double offset = 0.0;
  if (c.kind == PointKind::kVertex) {
    anchor = c.vertex;
  } else {
    const Face& fc = t.face(c.sp.face);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 5; ++i) {
      const double d = distance(c.sp.xy, chart_corner(i));
      if (d < best) {
        best = d;
        anchor = fc.cycle[static_cast<size_t>(i)];
      }
    }
    offset = best;
  }
  const auto dist = t.bfs_distances(anchor);
  double best = std::numeric_limits<double>::infinity();
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (t.on_boundary(v) && dist[static_cast<size_t>(v)] >= 0)
      best = std::min(best, dist[static_cast<size_t>(v)] / 3.0 - offset);
  if (!std::isfinite(best)) return 0.0;  // no rim reached
  return std::max(0.0, best);
}

// Pointed unit-edge ball: the radius-n combinatorial ball around a vertex of
// `host`, re-rooted at its local copy of that vertex.
inline PointedPatch pointed_ball(const Tiling& host, VertexId v, int n) {
  auto patch = host.ball(v, n);
  PointedPatch out;
  if (patch.tiling.face_count() == 0) {
    out.origin = {kInvalidId, Vec2{0.0, 0.0}};  // tile-free: just the point
  } else {
    out.origin = surface_point_at_vertex(patch.tiling, patch.local_vertex(v));
    out.guaranteed_radius = certified_radius(patch.tiling, out.origin);
  }
  out.tiling = std::move(patch.tiling);
  return out;
}

// ------------------------------------------------------------ hull metric ---

struct HullWitness {
  int radius = 0;  // ball radius backing the witness (unit lengths)
  double displacement_ab = 0.0;  // origin displacement bounds, per direction
  double displacement_ba = 0.0;
};

struct HullDistance {
  double lower = 0.0;
  double upper = kHullCap;
  bool cap_hit = false;  // no witness beat the saturation value
  std::optional<HullWitness> witness;
};

struct HullOptions {
  int max_radius = 12;  // densest ball radius probed
  GeodesicOptions geodesic{};
};

namespace detail {

// Image of a surface point under a cell map: the face maps across, the chart
// position turns with the corner relabeling.
inline SurfacePoint map_surface_point(const CellMap& m, SurfacePoint x) {
  const int rot = m.face_rot[static_cast<size_t>(x.face)];
  const Mat2 r = Mat2::rotation(2.0 * kPi / 5.0 * rot);
  return {m.face_map[static_cast<size_t>(x.face)], r * x.xy};
}

struct EmbeddingScan {
  bool found = false;
  double disp_upper = std::numeric_limits<double>::infinity();
  double disp_lower = std::numeric_limits<double>::infinity();
  bool complete = true;  // every embedding was enumerated (no early exit)
};

// Scans embeddings of `pattern` (carrying A's origin at `local_origin`) into
// B's pattern, tracking the least displacement upper bound (backs witnesses)
// and least displacement lower bound (backs impossibility claims).
// `good_enough` permits stopping early, which marks the scan incomplete.
inline EmbeddingScan scan_embeddings(const Tiling& pattern,
                                     SurfacePoint local_origin,
                                     const PointedPatch& B,
                                     GeodesicEngine& engine_b,
                                     const GeodesicOptions& gopt,
                                     double good_enough) {
  EmbeddingScan out;
  if (pattern.face_count() == 0) return out;
  for (const CellMap& m : find_occurrences(pattern, B.tiling)) {
    const SurfacePoint img = map_surface_point(m, local_origin);
    const GeodesicResult d = engine_b.distance(img, B.origin, gopt);
    out.found = true;
    out.disp_upper = std::min(out.disp_upper, d.upper);
    out.disp_lower = std::min(out.disp_lower, d.lower);
    if (out.disp_upper <= good_enough) {
      out.complete = false;
      break;
    }
  }
  return out;
}

}  // namespace detail

// Certified bracket on the distance between two pointed patterns. A witness
// at ball radius r with origin displacements (da, db) certifies
// upper <= max(1/r, da, db); a radius at which no embedding exists in some
// direction certifies lower >= 1/r. Radii are probed on the integer grid up
// to `max_radius` plus the exact guaranteed radius, and only while the
// metric balls are certifiably complete on both sides.
inline HullDistance hull_distance(const PointedPatch& A, const PointedPatch& B,
                                  HullOptions opt = {}) {
  HullDistance out;
  GeodesicEngine ea(A.tiling), eb(B.tiling);

  std::vector<double> radii;
  for (int r = 1; r <= opt.max_radius; ++r) radii.push_back(r);
  const double g = std::min(A.guaranteed_radius, B.guaranteed_radius);
  if (g > 0.0 && g > std::floor(g)) radii.push_back(g);
  std::sort(radii.begin(), radii.end());

  for (double r : radii) {
    auto ball_a = ea.ball_metric(A.origin, r);
    auto ball_b = eb.ball_metric(B.origin, r);
    if (ball_a.truncated || ball_b.truncated) break;  // larger radii too
    if (ball_a.tiling.face_count() == 0 || ball_b.tiling.face_count() == 0)
      continue;  // a tile-free ball witnesses nothing

    // Origins in the local coordinates of their balls.
    const auto localize = [](const Tiling::Patch& p, const Tiling& host,
                             SurfacePoint x) {
      const CanonicalPoint c = canonicalize(host, x);
      if (c.kind == PointKind::kVertex) {
        const VertexId lv = p.local_vertex(c.vertex);
        if (lv == kInvalidId || p.tiling.face_count() == 0)
          return SurfacePoint{kInvalidId, Vec2{0.0, 0.0}};
        return surface_point_at_vertex(p.tiling, lv);
      }
      return SurfacePoint{p.local_face(x.face), x.xy};
    };
    const SurfacePoint oa = localize(ball_a, A.tiling, A.origin);
    const SurfacePoint ob = localize(ball_b, B.tiling, B.origin);
    if (oa.face == kInvalidId || ob.face == kInvalidId)
      continue;  // the origin's own tile missed this radius

    // Keep the patterns dart-connected for the embedding search.
    if (!dart_connected(ball_a.tiling) || !dart_connected(ball_b.tiling))
      continue;

    const double floor_eps = 1.0 / r;
    const auto ab = detail::scan_embeddings(ball_a.tiling, oa, B, eb,
                                            opt.geodesic, floor_eps);
    const auto ba = detail::scan_embeddings(ball_b.tiling, ob, A, ea,
                                            opt.geodesic, floor_eps);

    // A lower-bound claim from direction X->Y inspects every embedding of
    // X's ball into Y's pattern, so it is only conclusive when Y's pattern
    // certifiably contains everything a witness image could touch: the image
    // ball sits within the cap of the origin and tiles stick out by at most
    // a diameter, hence the r + cap + 2*circumradius completeness margin.
    const double margin = r + kHullCap + 2.0 * kCircumradius;
    const bool ab_conclusive = B.guaranteed_radius >= margin && ab.complete;
    const bool ba_conclusive = A.guaranteed_radius >= margin && ba.complete;

    if (!ab.found || !ba.found) {
      const bool certified = (!ab.found && ab_conclusive) ||
                             (!ba.found && ba_conclusive);
      if (certified)  // no witness can use a ball this large or larger
        out.lower = std::max(out.lower, 1.0 / r);
      break;  // larger radii cannot recover an embedding
    }

    // Any witness of radius >= r restricts to one of the scanned embeddings,
    // so its displacement is at least the least displacement lower bound;
    // witnesses of radius < r cost more than 1/r outright.
    double disp_floor = 0.0;
    if (ab_conclusive) disp_floor = std::max(disp_floor, ab.disp_lower);
    if (ba_conclusive) disp_floor = std::max(disp_floor, ba.disp_lower);
    out.lower = std::max(out.lower, std::min(floor_eps, disp_floor));

    const double cand = std::max({floor_eps, ab.disp_upper, ba.disp_upper});
    if (cand < out.upper) {
      out.upper = cand;
      out.witness = HullWitness{static_cast<int>(std::floor(r)),
                                ab.disp_upper, ba.disp_upper};
    }
  }

  out.upper = std::min(out.upper, kHullCap);
  out.lower = std::min(out.lower, out.upper);
  out.cap_hit = out.upper >= kHullCap - 1e-15;
  return out;
}

// ------------------------------------------- combinatorial (vertex) metric ---

struct DiscreteHullDistance {
  double value = kHullCap;  // min(cap, 1/iso_radius); exact when a failing
                            // radius was found, an upper bound otherwise
  double lower = 0.0;       // 1/fail_radius when disagreement was certified
  int iso_radius = 0;       // largest radius with rooted-isomorphic balls
  int fail_radius = -1;     // smallest radius that disagrees, -1 if none seen
  bool truncation_limited = false;  // patches ran out before a disagreement
};

// Vertex-pointed distance: 1 over the largest radius at which the rooted
// unit-edge balls around the origins agree, saturated at the cap. Origins
// must be vertices.
inline DiscreteHullDistance discrete_hull_distance(const PointedPatch& A,
                                                   const PointedPatch& B,
                                                   int max_radius = 64) {
  const CanonicalPoint ca = canonicalize(A.tiling, A.origin);
  const CanonicalPoint cb = canonicalize(B.tiling, B.origin);
  if (ca.kind != PointKind::kVertex || cb.kind != PointKind::kVertex)
    throw domain_error("discrete_hull_distance: origins must be vertices");

  DiscreteHullDistance out;
  for (int n = 1; n <= max_radius; ++n) {
    const auto ball_a = A.tiling.ball(ca.vertex, n);
    const auto ball_b = B.tiling.ball(cb.vertex, n);
    if (ball_a.truncated || ball_b.truncated) {
      out.truncation_limited = true;
      break;
    }
    if (rooted_isomorphic(ball_a.tiling, ball_a.local_vertex(ca.vertex),
                          ball_b.tiling, ball_b.local_vertex(cb.vertex))) {
      out.iso_radius = n;
    } else {
      out.fail_radius = n;
      break;
    }
  }
  if (out.iso_radius > 0)
    out.value = std::min(kHullCap, 1.0 / out.iso_radius);
  else
    out.value = kHullCap;
  if (out.fail_radius > 0) out.lower = 1.0 / out.fail_radius;
  out.lower = std::min(out.lower, out.value);
  return out;
}

// ------------------------------------------------------ subdivision action ---

// One subdivision round applied to a pointed patch: the pattern refines, the
// origin follows the piecewise-affine point map, and the certified radius
// grows by the minimal expansion factor of the pieces.
inline constexpr double kMinExpansion = 1.0 / 0.54;

inline PointedPatch omega_pointed(const PointedPatch& A) {
  PointedPatch out;
  out.tiling = subdivide(A.tiling);
  out.origin = map_point(A.tiling, A.origin).sp;
  out.guaranteed_radius = A.guaranteed_radius * kMinExpansion;
  return out;
}

// ------------------------------------------------------- supertile chains ---

struct ChainLink {
  int level = 0;      // subdivision rounds the link's supertile carries
  Decoration seed;    // decorated prototile generating the supertile
  Tiling supertile = Tiling::isolated_vertex();  // that tile subdivided
                                                 // `level` times, standalone
  SurfacePoint origin;      // the chain's base point inside `supertile`
  double radius_bound = 0;  // parent-chart diameter bound of the supertile
};

// Increasing chain of supertiles around A's origin, read off the hierarchical
// face addresses: link k is the level-k ancestor tile of the origin's face,
// subdivided back down k times, with the origin relocated inside it. Each
// link is verified to contain the previous one as the expected sub-block.
inline std::vector<ChainLink> supertile_chain(const PointedPatch& A,
                                              int depth) {
  if (depth < 0) throw domain_error("supertile_chain: negative depth");
  if (A.origin.face < 0 || A.origin.face >= A.tiling.face_count())
    throw domain_error("supertile_chain: origin face out of range");

  // Slot path of the origin's face up the ancestry.
  std::vector<int> slots;
  std::vector<Decoration> seeds{A.tiling.face(A.origin.face).dec};
  {
    const Tiling* cur = &A.tiling;
    FaceId f = A.origin.face;
    for (int k = 1; k <= depth; ++k) {
      if (!cur->has_addresses() || !cur->parent())
        throw resource_limit_error(
            "supertile_chain: only depth " + std::to_string(k - 1) +
            " available above the origin");
      const FaceAddress addr = cur->address(f);
      slots.push_back(addr.slot);
      f = addr.parent;
      cur = cur->parent().get();
      seeds.push_back(cur->face(f).dec);
    }
  }

  const double expansion = std::max(
      {PartitionData::get().M0.spectral_norm(),
       PartitionData::get().M1.spectral_norm(),
       PartitionData::get().M2.spectral_norm()});

  std::vector<ChainLink> chain;
  for (int k = 0; k <= depth; ++k) {
    ChainLink link;
    link.level = k;
    link.seed = seeds[static_cast<size_t>(k)];
    link.supertile = make_supertile(k, link.seed);
    // Local face: fold the slot path back down from the link's root.
    FaceId lf = 0;
    for (int j = k - 1; j >= 0; --j)
      lf = 6 * lf + slots[static_cast<size_t>(j)];
    link.origin = {lf, A.origin.xy};
    link.radius_bound = 2.0 * kCircumradius * std::pow(expansion, k);
    chain.push_back(std::move(link));
  }

  // Verify each inclusion: the previous supertile is the slot sub-block of
  // the next one, cell for cell.
  for (int k = 1; k <= depth; ++k) {
    const ChainLink& prev = chain[static_cast<size_t>(k - 1)];
    const ChainLink& next = chain[static_cast<size_t>(k)];
    const int block = static_cast<int>(std::pow(6, k - 1) + 0.5);
    const int s = slots[static_cast<size_t>(k - 1)];
    std::vector<FaceId> sub;
    for (FaceId f = 0; f < next.supertile.face_count(); ++f)
      if (f / block == s) sub.push_back(f);
    const auto patch = next.supertile.subcomplex(sub);
    const auto m = embed_from(prev.supertile, make_dart(prev.origin.face, 0),
                              patch.tiling,
                              make_dart(patch.local_face(next.origin.face), 0));
    if (!m || static_cast<int>(m->face_map.size()) !=
                  patch.tiling.face_count())
      throw validation_error("supertile_chain: inclusion verification failed");
  }
  return chain;
}

// ------------------------------------------------------ three-sector wheel ---

// Three identically decorated tiles around a degree-3 hub vertex — the
// stable corona that interior degree-3 vertices acquire two generations
// after birth — subdivided `level` times. The result is a valid disk complex
// every ball of which also occurs inside large supertiles.
inline PointedPatch quadpent_tiling(int level) {
  if (level < 0) throw domain_error("quadpent_tiling: negative level");
  if (level > Tiling::max_level())
    throw resource_limit_error("quadpent_tiling: level beyond cap");

  const Decoration dec{TileType::kPetal, 2};
  std::vector<Tiling::FaceSpec> seed(3);
  seed[0].cycle = {0, 1, 2, 3, 4};
  seed[1].cycle = {0, 5, 6, 7, 1};
  seed[2].cycle = {0, 4, 8, 9, 5};
  for (auto& s : seed) s.dec = dec;

  Tiling t(seed);
  if (!t.valid())
    throw validation_error("quadpent_tiling: seed gluing is inconsistent");
  for (int i = 0; i < level; ++i) t = subdivide(t);

  PointedPatch out;
  out.origin = surface_point_at_vertex(t, 0);  // hub id survives subdivision
  out.guaranteed_radius = certified_radius(t, out.origin);
  out.tiling = std::move(t);
  return out;
}

// ------------------------------------------------------------ epsilon nets ---

struct BallClass {
  std::vector<std::int32_t> code;  // vertex-rooted canonical code
  PointedPatch representative;
  int population = 0;  // how many vertices of the census host carry it
};

// Census of rooted-isomorphism classes of complete radius-`radius` vertex
// balls in the generation-`level` supertile, keyed and sorted by canonical
// code (so equal censuses at consecutive levels certify a finite net).
// Sweeps with a reusable bounded breadth-first search, so the whole census
// costs the sum of the ball sizes rather than vertices times host size.
inline std::vector<BallClass> epsilon_net(int radius, int level) {
  if (radius < 0) throw domain_error("epsilon_net: negative radius");
  const Tiling host = make_supertile(level);

  std::vector<std::int32_t> dist(static_cast<size_t>(host.vertex_count()), -1);
  std::vector<VertexId> touched, frontier, next;
  std::vector<char> face_flag(static_cast<size_t>(host.face_count()), 0);
  std::vector<FaceId> face_cand;

  std::map<std::vector<std::int32_t>, BallClass> classes;
  for (VertexId v = 0; v < host.vertex_count(); ++v) {
    touched.assign(1, v);
    frontier.assign(1, v);
    dist[static_cast<size_t>(v)] = 0;
    bool truncated = host.on_boundary(v);
    for (int d = 1; d <= radius && !frontier.empty(); ++d) {
      next.clear();
      for (VertexId u : frontier)
        for (EdgeId e : host.incident_edges(u)) {
          const VertexId w = host.other_endpoint(e, u);
          if (dist[static_cast<size_t>(w)] >= 0) continue;
          dist[static_cast<size_t>(w)] = d;
          truncated = truncated || host.on_boundary(w);
          touched.push_back(w);
          next.push_back(w);
        }
      frontier.swap(next);
    }

    if (!truncated) {
      // Tiles whose five corners all lie inside the swept set.
      face_cand.clear();
      for (VertexId u : touched)
        for (const auto& [f, corner] : host.incident_corners(u)) {
          if (face_flag[static_cast<size_t>(f)]) continue;
          face_flag[static_cast<size_t>(f)] = 1;
          bool all = true;
          for (VertexId w : host.face(f).cycle)
            if (dist[static_cast<size_t>(w)] < 0) {
              all = false;
              break;
            }
          if (all) face_cand.push_back(f);
        }
      std::sort(face_cand.begin(), face_cand.end());
      for (VertexId u : touched)
        for (const auto& [f, corner] : host.incident_corners(u))
          face_flag[static_cast<size_t>(f)] = 0;

      Tiling ball = Tiling::isolated_vertex();
      VertexId local = 0;
      if (!face_cand.empty()) {
        auto patch = host.subcomplex(face_cand);
        local = patch.local_vertex(v);
        ball = std::move(patch.tiling);
      }
      if (face_cand.empty() || dart_connected(ball)) {
        auto code = canonical_code(ball, local);
        auto it = classes.find(code);
        if (it == classes.end()) {
          BallClass bc;
          bc.code = code;
          bc.population = 1;
          if (ball.face_count() > 0) {
            bc.representative.origin = surface_point_at_vertex(ball, local);
            bc.representative.guaranteed_radius =
                certified_radius(ball, bc.representative.origin);
          } else {
            bc.representative.origin = {kInvalidId, Vec2{0.0, 0.0}};
          }
          bc.representative.tiling = std::move(ball);
          classes.emplace(std::move(code), std::move(bc));
        } else {
          ++it->second.population;
        }
      }
    }

    for (VertexId u : touched) dist[static_cast<size_t>(u)] = -1;
  }

  std::vector<BallClass> out;
  out.reserve(classes.size());
  for (auto& [code, bc] : classes) out.push_back(std::move(bc));
  return out;  // map iteration order = sorted by code
}

// ------------------------------------------- origin-forgetting equivalence ---

struct REquivalence {
  std::optional<CellMap> witness;  // pattern isomorphism ignoring origins
  // For a vertex-pointed A: the vertex origins of A's pattern equivalent to
  // A's own under origin exchange — every vertex, since the relation forgets
  // the marked point within one pattern.
  std::vector<VertexId> equivalent_origins;
};

inline REquivalence r_equivalent(const PointedPatch& A,
                                 const PointedPatch& B) {
  REquivalence out;
  out.witness = isomorphism(A.tiling, B.tiling);
  const CanonicalPoint c = canonicalize(A.tiling, A.origin);
  if (c.kind == PointKind::kVertex) {
    out.equivalent_origins.resize(static_cast<size_t>(A.tiling.vertex_count()));
    for (VertexId v = 0; v < A.tiling.vertex_count(); ++v)
      out.equivalent_origins[static_cast<size_t>(v)] = v;
  }
  return out;
}

}  // namespace penthull
