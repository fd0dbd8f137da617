#pragma once

// Geometry of the flat structure: every face carries its own chart in which
// it is the canonical unit-edge regular pentagon (corner j on the
// circumcircle at angle 90 + 72 j degrees). Points on the surface are
// (face, chart coordinates) pairs; crossing an edge composes the rigid
// unfolding transform of the neighboring chart.

#include <array>
#include <cmath>
#include <optional>
#include <random>

#include "penthull/core.hpp"
#include "penthull/tiling.hpp"

namespace penthull {

// Circumradius of the unit-edge regular pentagon, 1 / (2 sin(pi/5)).
inline const double kCircumradius = 1.0 / (2.0 * std::sin(kPi / 5.0));
// Apothem (inradius), 1 / (2 tan(pi/5)).
inline const double kApothem = 1.0 / (2.0 * std::tan(kPi / 5.0));

// Default snapping tolerance for positional queries.
inline constexpr double kPosTol = 1e-9;

inline Vec2 chart_corner(int j) {
  const double a = kPi / 2.0 + 2.0 * kPi * j / 5.0;
  return {kCircumradius * std::cos(a), kCircumradius * std::sin(a)};
}

inline std::array<Vec2, 5> chart_corners() {
  std::array<Vec2, 5> c;
  for (int j = 0; j < 5; ++j) c[static_cast<size_t>(j)] = chart_corner(j);
  return c;
}

// Midpoint of chart edge j (between corners j and j+1).
inline Vec2 chart_edge_midpoint(int j) {
  return (chart_corner(j) + chart_corner((j + 1) % 5)) * 0.5;
}

// Signed distance from p to the pentagon boundary: positive inside, the
// minimum over the five edge half-planes.
inline double pentagon_inset(Vec2 p) {
  double best = 1e300;
  for (int i = 0; i < 5; ++i) {
    const Vec2 a = chart_corner(i), b = chart_corner((i + 1) % 5);
    best = std::min(best, tri_area2(a, b, p));  // edges have unit length
  }
  return best;
}

inline bool pentagon_contains(Vec2 p, double tol = kPosTol) {
  return pentagon_inset(p) >= -tol;
}

// Uniform sample inside the canonical pentagon (fan decomposition).
template <class Rng>
Vec2 sample_in_pentagon(Rng& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::uniform_int_distribution<int> tri(0, 4);
  const int i = tri(rng);
  const Vec2 a = chart_corner(i), b = chart_corner((i + 1) % 5);
  double u = uni(rng), v = uni(rng);
  if (u + v > 1.0) {
    u = 1.0 - u;
    v = 1.0 - v;
  }
  return a * u + b * v;  // third fan corner is the origin
}

// ------------------------------------------------------------ surface pts ---

struct SurfacePoint {
  FaceId face = kInvalidId;
  Vec2 xy;
};

enum class PointKind { kInterior, kEdge, kVertex };

// A surface point in canonical form: snapped to a vertex or edge when within
// tolerance and re-expressed in the smallest incident face's chart.
struct CanonicalPoint {
  SurfacePoint sp;
  PointKind kind = PointKind::kInterior;
  VertexId vertex = kInvalidId;  // host vertex when kind == kVertex
  EdgeId edge = kInvalidId;      // host edge when kind == kEdge
  double edge_param = 0.0;       // position from the smaller endpoint id
};

// Chart position of host vertex v inside face f.
inline Vec2 vertex_position_in(const Tiling& t, FaceId f, VertexId v) {
  const Face& fc = t.face(f);
  for (int i = 0; i < 5; ++i)
    if (fc.cycle[static_cast<size_t>(i)] == v) return chart_corner(i);
  throw domain_error("vertex_position_in: vertex not on face");
}

// Surface point at host vertex v, in its smallest incident face.
inline SurfacePoint surface_point_at_vertex(const Tiling& t, VertexId v) {
  const auto corners = t.incident_corners(v);
  if (corners.empty()) throw domain_error("vertex lies on no face");
  return {corners.front().face,
          chart_corner(corners.front().corner)};
}

// Surface point on host edge e at parameter s in [0,1] measured from the
// smaller endpoint id, expressed in the smaller incident face.
inline SurfacePoint surface_point_on_edge(const Tiling& t, EdgeId e, double s) {
  const Edge& ed = t.edge(e);
  const FaceId f = ed.face[1] == kInvalidId
                       ? ed.face[0]
                       : std::min(ed.face[0], ed.face[1]);
  const int k = ed.face[0] == f ? 0 : 1;
  const int i = ed.side[static_cast<size_t>(k)];
  const Face& fc = t.face(f);
  const bool forward = fc.cycle[static_cast<size_t>(i)] == ed.u;
  const double tf = forward ? s : 1.0 - s;
  const Vec2 a = chart_corner(i), b = chart_corner((i + 1) % 5);
  return {f, a + (b - a) * tf};
}

inline CanonicalPoint canonicalize(const Tiling& t, SurfacePoint sp,
                                   double tol = kPosTol) {
  if (sp.face < 0 || sp.face >= t.face_count())
    throw domain_error("canonicalize: face id out of range");
  if (!pentagon_contains(sp.xy, tol))
    throw domain_error("canonicalize: point outside its face chart");

  const Face& fc = t.face(sp.face);
  // Vertex snap.
  for (int i = 0; i < 5; ++i) {
    if (distance(sp.xy, chart_corner(i)) <= tol) {
      const VertexId v = fc.cycle[static_cast<size_t>(i)];
      CanonicalPoint cp;
      cp.kind = PointKind::kVertex;
      cp.vertex = v;
      cp.sp = surface_point_at_vertex(t, v);
      return cp;
    }
  }
  // Edge snap: distance to the supporting line, with the point known to be
  // inside the pentagon and away from corners.
  for (int i = 0; i < 5; ++i) {
    const Vec2 a = chart_corner(i), b = chart_corner((i + 1) % 5);
    if (std::abs(tri_area2(a, b, sp.xy)) <= tol) {
      const EdgeId e = fc.edges[static_cast<size_t>(i)];
      const Edge& ed = t.edge(e);
      const double tf = (sp.xy - a).dot(b - a);  // param along the chart edge
      const bool forward = fc.cycle[static_cast<size_t>(i)] == ed.u;
      CanonicalPoint cp;
      cp.kind = PointKind::kEdge;
      cp.edge = e;
      cp.edge_param = forward ? tf : 1.0 - tf;
      cp.sp = surface_point_on_edge(t, e, cp.edge_param);
      return cp;
    }
  }
  return {sp, PointKind::kInterior, kInvalidId, kInvalidId, 0.0};
}

// --------------------------------------------------------------- unfolding --

// Rigid motion expressing the chart of the face across edge slot i of f in
// f's own chart (the shared edge coincides pointwise). Throws on boundary.
inline Affine unfold_across(const Tiling& t, FaceId f, int i) {
  const Face& fc = t.face(f);
  const Edge& ed = t.edge(fc.edges[static_cast<size_t>(i)]);
  const int k = ed.face[0] == f && ed.side[0] == i ? 1 : 0;
  const FaceId g = ed.face[static_cast<size_t>(k)];
  if (g == kInvalidId) throw domain_error("unfold_across: boundary edge");
  const int j = ed.side[static_cast<size_t>(k)];
  // The twin traverses the shared edge backwards: g's corner j sits on f's
  // corner i+1 and g's corner j+1 on f's corner i.
  return Affine::segment_map(chart_corner(j), chart_corner((j + 1) % 5),
                             chart_corner((i + 1) % 5), chart_corner(i));
}

// Neighbor face across edge slot i of f, or kInvalidId.
inline FaceId neighbor_face(const Tiling& t, FaceId f, int i) {
  const Edge& ed = t.edge(t.face(f).edges[static_cast<size_t>(i)]);
  return ed.face[0] == f ? ed.face[1] : ed.face[0];
}

}  // namespace penthull
