#pragma once

// The piecewise-affine structure of the expansion self-map on the canonical
// pentagon chart. The pentagon splits into 21 closed regions with pairwise
// disjoint interiors: one central "blue" pentagon, ten "orange" half
// triangles, and ten "yellow" triangles (images of the fundamental wedge
// under the rotation/mirror group of order ten). Each region carries an
// affine expansion onto a child-tile chart:
//
//   blue          -> the center child, by the conformal expansion M0;
//   orange pair m -> petal child m (both halves carry the same map, through
//                    the diagonal matrix M1);
//   yellow right/left of sector m -> petal child m, through M2 and its
//                    mirror conjugate.
//
// All data is derived from closed forms; derived matrix entries are checked
// against frozen decimals in the test suite.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "penthull/chart.hpp"
#include "penthull/core.hpp"

namespace penthull {

enum class RegionKind : std::uint8_t { kBlue = 0, kOrange = 1, kYellow = 2 };

struct RegionId {
  RegionKind kind = RegionKind::kBlue;
  std::uint8_t sym = 0;  // symmetry index 0..9 (0 for blue)

  friend constexpr bool operator==(RegionId a, RegionId b) {
    return a.kind == b.kind && a.sym == b.sym;
  }
};

inline std::string region_name(RegionId r) {
  switch (r.kind) {
    case RegionKind::kBlue:
      return "blue";
    case RegionKind::kOrange:
      return "orange[" + std::to_string(r.sym) + "]";
    case RegionKind::kYellow:
      return "yellow[" + std::to_string(r.sym) + "]";
  }
  return "?";
}

// An affine region-to-child-chart expansion.
struct AffinePiece {
  RegionId region;
  int child_slot = 5;  // 0..4 petal at that parent cycle position, 5 center
  Affine map;
};

struct PartitionData {
  // Fundamental constants (all closed forms).
  double s = 0.0;  // side length of the inner pentagon's circumradius scale
  Vec2 p1, q1, p1p, q1p, p2, q2p;
  Mat2 M0, M1, M2, M2L;
  std::array<Vec2, 5> blue;  // inner pentagon corners, blue[j] -> corner j

  // Symmetry j: even j = 2m rotates by 72 m degrees; odd j = 2m+1 first
  // mirrors across the y-axis, then rotates by 72 m degrees.
  static Mat2 symmetry(int j) {
    const Mat2 rot = Mat2::rotation(2.0 * kPi * (j / 2) / 5.0);
    return (j % 2 == 0) ? rot : rot * Mat2::mirror_y();
  }

  // Region outline, counterclockwise for even symmetry, clockwise for odd.
  std::vector<Vec2> region_polygon(RegionId r) const {
    const Mat2 g = symmetry(r.sym);
    switch (r.kind) {
      case RegionKind::kBlue:
        return {blue.begin(), blue.end()};
      case RegionKind::kOrange:
        return {g * q1, g * p1, g * p1p};
      case RegionKind::kYellow:
        return {g * p1, g * q1p, g * p1p};
    }
    return {};
  }

  AffinePiece piece(RegionId r) const {
    AffinePiece out;
    out.region = r;
    const int m = r.sym / 2;
    const Mat2 unrot = Mat2::rotation(-2.0 * kPi * m / 5.0);
    switch (r.kind) {
      case RegionKind::kBlue:
        out.child_slot = 5;
        out.map = {M0, Vec2{}};
        break;
      case RegionKind::kOrange:
        out.child_slot = m;
        out.map = Affine{M1, chart_corner(2) - M1 * p2}.after({unrot, Vec2{}});
        break;
      case RegionKind::kYellow:
        out.child_slot = m;
        if (r.sym % 2 == 0) {
          out.map = Affine{M2, chart_corner(3) - M2 * p1}.after({unrot, Vec2{}});
        } else {
          out.map = Affine{M2L, chart_corner(2) - M2L * p2}.after({unrot, Vec2{}});
        }
        break;
    }
    return out;
  }

  // All 21 regions in classification precedence order: blue, then orange by
  // symmetry index, then yellow by symmetry index.
  std::vector<RegionId> regions() const {
    std::vector<RegionId> out{{RegionKind::kBlue, 0}};
    for (int j = 0; j < 10; ++j)
      out.push_back({RegionKind::kOrange, static_cast<std::uint8_t>(j)});
    for (int j = 0; j < 10; ++j)
      out.push_back({RegionKind::kYellow, static_cast<std::uint8_t>(j)});
    return out;
  }

  static const PartitionData& get() {
    static const PartitionData data = make();
    return data;
  }

 private:
  static PartitionData make() {
    PartitionData d;
    const double r5 = std::sqrt(5.0);
    d.s = (r5 - std::sqrt(4.0 - r5)) / 2.0;
    d.p1 = {d.s / 2.0,
            (-std::sqrt(2.0 + 3.0 / r5) + std::sqrt(5.0 + 2.0 * r5)) / 4.0};
    d.q1 = {0.0, d.p1.y};
    d.p1p = {0.0, kCircumradius};  // equals chart corner 0
    d.q1p = {(1.0 + r5) / 8.0, std::sqrt(10.0 + 22.0 / r5) / 8.0};
    d.p2 = Mat2::mirror_y() * d.p1;
    d.q2p = Mat2::mirror_y() * d.q1p;

    // Inner pentagon corner j sits at angle 54 + 72 j degrees; the conformal
    // center-piece expansion takes it to chart corner j.
    for (int j = 0; j < 5; ++j)
      d.blue[static_cast<size_t>(j)] = Mat2::rotation(2.0 * kPi * j / 5.0) * d.p1;
    d.M0 = Mat2::rotation(kPi / 5.0) * (d.p1p.norm() / d.p1.norm());

    // M1 and M2 are pinned by where they send the region corners: the
    // sector-0 orange triangle (p2, p1, p1') lands on the child chart
    // triangle (corner 2, corner 3, corner 0), the right yellow triangle
    // (p1, q1', p1') on (corner 3, corner 4, corner 0).
    const auto solve = [](Vec2 a0, Vec2 a1, Vec2 a2, Vec2 b0, Vec2 b1,
                          Vec2 b2) -> Mat2 {
      const Vec2 u1 = a1 - a0, u2 = a2 - a0;
      const Vec2 w1 = b1 - b0, w2 = b2 - b0;
      const double det = u1.cross(u2);
      // [w1 w2] * inverse([u1 u2])
      const Mat2 w{w1.x, w2.x, w1.y, w2.y};
      const Mat2 uinv{u2.y / det, -u2.x / det, -u1.y / det, u1.x / det};
      return w * uinv;
    };
    d.M1 = solve(d.p2, d.p1, d.p1p, chart_corner(2), chart_corner(3),
                 chart_corner(0));
    d.M2 = solve(d.p1, d.q1p, d.p1p, chart_corner(3), chart_corner(4),
                 chart_corner(0));
    d.M2L = Mat2::mirror_y() * d.M2 * Mat2::mirror_y();
    return d;
  }
};

// ---------------------------------------------------------- classification --

// Signed containment margin of p in the (convex) polygon: smallest signed
// distance to an edge line, positive inside. Works for both orientations.
inline double polygon_inset(const std::vector<Vec2>& poly, Vec2 p) {
  const double orient =
      tri_area2(poly[0], poly[1], poly[2]) >= 0.0 ? 1.0 : -1.0;
  double best = 1e300;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i], b = poly[(i + 1) % n];
    const double len = distance(a, b);
    best = std::min(best, orient * tri_area2(a, b, p) / len);
  }
  return best;
}

// The region containing p (pentagon chart coordinates). Points within `tol`
// of a region boundary resolve by precedence: blue, then orange, then
// yellow, then smaller symmetry index. Points outside the pentagon throw.
inline RegionId classify(Vec2 p, double tol = kPosTol) {
  if (!pentagon_contains(p, tol))
    throw domain_error("classify: point outside the pentagon chart");
  const PartitionData& d = PartitionData::get();
  RegionId best{};
  double best_inset = -1e300;
  for (const RegionId r : d.regions()) {
    const double inset = polygon_inset(d.region_polygon(r), p);
    if (inset >= -tol) return r;
    if (inset > best_inset) {
      best_inset = inset;
      best = r;
    }
  }
  // The regions tile the pentagon; only floating-point dust lands here.
  return best;
}

}  // namespace penthull
