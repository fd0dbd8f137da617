#pragma once

// The expansion self-map on surface points. A point of a face chart is
// classified into one of the 21 partition regions; the region's affine piece
// carries it into the chart of the corresponding child face of the
// subdivided complex (child ids are deterministic: face f yields children
// 6 f + slot). The inverse direction reads the child's address, classifies
// the point among the three target triangles of a petal chart (or the whole
// pentagon for a center child), and applies the inverse piece.

#include <cmath>

#include "penthull/chart.hpp"
#include "penthull/core.hpp"
#include "penthull/partition.hpp"
#include "penthull/tiling.hpp"

namespace penthull {

struct MappedPoint {
  SurfacePoint sp;
  RegionId region;  // the piece that acted
};

// Image of x under the expansion map, expressed in subdivide(parent). The
// parent tiling only provides the face-id space; the subdivided complex is
// not needed to compute raw image coordinates.
inline MappedPoint map_point(const Tiling& parent, SurfacePoint x,
                             double tol = kPosTol) {
  if (x.face < 0 || x.face >= parent.face_count())
    throw domain_error("map_point: face id out of range");
  if (!pentagon_contains(x.xy, tol))
    throw domain_error("map_point: point outside its face chart");
  const PartitionData& d = PartitionData::get();
  const RegionId r = classify(x.xy, tol);
  const AffinePiece piece = d.piece(r);
  return {{6 * x.face + piece.child_slot, piece.map(x.xy)}, r};
}

// Region of the piece that produced a point of a child chart: for petal
// children the chart splits into the orange target triangle (corners 2,3,0),
// the right yellow target (corners 3,4,0) and the left yellow target
// (corners 2,1,0); ties resolve in that order. `slot` is the child's address
// slot, `m` the petal index.
inline RegionId child_region_at(int slot, Vec2 y, double tol = kPosTol) {
  if (slot == 5) return {RegionKind::kBlue, 0};
  const int m = slot;
  const std::vector<Vec2> orange_t{chart_corner(2), chart_corner(3),
                                   chart_corner(0)};
  const std::vector<Vec2> yellow_rt{chart_corner(3), chart_corner(4),
                                    chart_corner(0)};
  const std::vector<Vec2> yellow_lt{chart_corner(2), chart_corner(1),
                                    chart_corner(0)};
  struct Cand {
    const std::vector<Vec2>* poly;
    RegionId region;
  };
  const Cand cands[3] = {
      {&orange_t, {RegionKind::kOrange, static_cast<std::uint8_t>(2 * m)}},
      {&yellow_rt, {RegionKind::kYellow, static_cast<std::uint8_t>(2 * m)}},
      {&yellow_lt, {RegionKind::kYellow, static_cast<std::uint8_t>(2 * m + 1)}},
  };
  RegionId best{};
  double best_inset = -1e300;
  for (const Cand& c : cands) {
    const double inset = polygon_inset(*c.poly, y);
    if (inset >= -tol) return c.region;
    if (inset > best_inset) {
      best_inset = inset;
      best = c.region;
    }
  }
  return best;  // floating-point dust between the triangles
}

// Preimage of y (a surface point of `child`, which must have been produced
// by subdivision) under the expansion map, expressed in the parent.
inline MappedPoint unmap_point(const Tiling& child, SurfacePoint y,
                               double tol = kPosTol) {
  if (y.face < 0 || y.face >= child.face_count())
    throw domain_error("unmap_point: face id out of range");
  if (!pentagon_contains(y.xy, tol))
    throw domain_error("unmap_point: point outside its face chart");
  const FaceAddress addr = child.address(y.face);
  const RegionId r = child_region_at(addr.slot, y.xy, tol);
  const Affine inv = PartitionData::get().piece(r).map.inverse();
  const Vec2 x = inv(y.xy);
  // The orange target triangle is shared by the two half-triangle regions
  // (one piece map); attribute the actual region from the preimage so the
  // label matches the forward classification, precedence included.
  return {{addr.parent, x}, classify(x, tol)};
}

// Equality of surface points up to tolerance, via canonical forms. Points
// are expected to snap to the same cell kind; callers choose inputs away
// from the snapping threshold.
inline bool surface_points_equal(const Tiling& t, SurfacePoint a,
                                 SurfacePoint b, double tol = kPosTol) {
  const CanonicalPoint ca = canonicalize(t, a, tol);
  const CanonicalPoint cb = canonicalize(t, b, tol);
  if (ca.kind != cb.kind) return false;
  switch (ca.kind) {
    case PointKind::kVertex:
      return ca.vertex == cb.vertex;
    case PointKind::kEdge:
      return ca.edge == cb.edge &&
             std::abs(ca.edge_param - cb.edge_param) <= tol;
    case PointKind::kInterior:
      return ca.sp.face == cb.sp.face && distance(ca.sp.xy, cb.sp.xy) <= tol;
  }
  return false;
}

}  // namespace penthull
