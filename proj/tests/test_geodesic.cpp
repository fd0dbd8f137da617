#include "penthull/geodesic.hpp"

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "penthull/chart.hpp"
#include "penthull/submap.hpp"
#include "penthull/tiling.hpp"

using namespace penthull;

namespace {

Tiling gen(int n) { return make_supertile(n); }

// Vertices sorted by unit-edge distance from the host boundary (farthest
// first), to pick deep interior basepoints.
VertexId deep_interior_vertex(const Tiling& t) {
  std::vector<int> to_boundary(static_cast<size_t>(t.vertex_count()), -1);
  std::vector<VertexId> frontier;
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (t.on_boundary(v)) {
      to_boundary[static_cast<size_t>(v)] = 0;
      frontier.push_back(v);
    }
  int depth = 0;
  while (!frontier.empty()) {
    ++depth;
    std::vector<VertexId> next;
    for (VertexId v : frontier)
      for (EdgeId e : t.incident_edges(v)) {
        const VertexId w = t.other_endpoint(e, v);
        if (to_boundary[static_cast<size_t>(w)] < 0) {
          to_boundary[static_cast<size_t>(w)] = depth;
          next.push_back(w);
        }
      }
    frontier = std::move(next);
  }
  VertexId best = 0;
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (to_boundary[static_cast<size_t>(v)] > to_boundary[static_cast<size_t>(best)])
      best = v;
  return best;
}

double path_is_anchored(const GeodesicResult& r, SurfacePoint a, SurfacePoint b,
                        const Tiling& t) {
  REQUIRE(r.path.size() >= 1);
  const auto same = [&](SurfacePoint x, SurfacePoint y) {
    return surface_points_equal(t, x, y, 1e-9);
  };
  CHECK(same(r.path.front(), a));
  CHECK(same(r.path.back(), b));
  return 0.0;
}

}  // namespace

TEST_CASE("within one chart the metric is the straight chord") {
  const Tiling k0 = Tiling::single_tile();
  GeodesicEngine eng(k0);
  const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

  for (int i = 0; i < 5; ++i) {
    // adjacent corners: unit edge
    auto r = eng.distance({0, chart_corner(i)}, {0, chart_corner((i + 1) % 5)});
    CHECK(r.tol_met);
    CHECK(r.lower == Catch::Approx(1.0).margin(1e-12));
    CHECK(r.upper == Catch::Approx(1.0).margin(1e-12));
    CHECK(r.lower <= r.upper);

    // corners two apart: pentagon diagonal
    auto d = eng.distance({0, chart_corner(i)}, {0, chart_corner((i + 2) % 5)});
    CHECK(d.tol_met);
    CHECK(d.upper == Catch::Approx(kGolden).margin(1e-12));
    CHECK(d.lower == Catch::Approx(kGolden).margin(1e-12));
  }

  // center to corner: circumradius
  auto c = eng.distance({0, Vec2{0.0, 0.0}}, {0, chart_corner(0)});
  CHECK(c.tol_met);
  CHECK(c.upper == Catch::Approx(kCircumradius).margin(1e-12));

  // coincident points
  auto z = eng.distance({0, chart_corner(3)}, {0, chart_corner(3)});
  CHECK(z.upper == 0.0);
  CHECK(z.lower == 0.0);
}

TEST_CASE("centers of adjacent tiles are two apothems apart") {
  const Tiling k1 = gen(1);
  GeodesicEngine eng(k1);
  // The hub tile (child 5) shares an edge with each petal tile.
  for (FaceId petal = 0; petal < 5; ++petal) {
    auto r = eng.distance({5, Vec2{0.0, 0.0}}, {petal, Vec2{0.0, 0.0}});
    CHECK(r.tol_met);
    CHECK(r.upper == Catch::Approx(2.0 * kApothem).margin(1e-9));
    CHECK(r.lower == Catch::Approx(2.0 * kApothem).margin(1e-9));
    path_is_anchored(r, {5, Vec2{0.0, 0.0}}, {petal, Vec2{0.0, 0.0}}, k1);
  }
}

TEST_CASE("a reflex notch forces a bend pinned at the notch vertex") {
  const Tiling k1 = gen(1);
  GeodesicEngine eng(k1);

  // Points on the two rim edges flanking rim midpoint 5, each 0.2 away from
  // it. The rim wedge at that vertex opens 216 degrees, so the straight
  // chord of the two-tile unfolding leaves the surface and the taut path
  // bends exactly at the vertex: the distance is 0.4.
  const EdgeId ea = k1.edge_between(0, 5);
  const EdgeId eb = k1.edge_between(1, 5);
  REQUIRE(ea != kInvalidId);
  REQUIRE(eb != kInvalidId);
  const SurfacePoint a = surface_point_on_edge(k1, ea, 0.8);
  const SurfacePoint b = surface_point_on_edge(k1, eb, 0.8);

  GeodesicOptions opt;
  opt.tol = 1e-6;
  opt.max_steiner = 32;
  auto r = eng.distance(a, b, opt);
  CHECK(r.upper == Catch::Approx(0.4).margin(1e-9));
  CHECK(r.touches_boundary);
  CHECK(r.lower <= r.upper);
  // The unfolding chord stays strictly below the taut length here, so the
  // bracket cannot close to 1e-6.
  CHECK_FALSE(r.tol_met);
  // The witness path bends at vertex 5.
  bool bends_at_notch = false;
  for (const SurfacePoint& sp : r.path) {
    const CanonicalPoint cp = canonicalize(k1, sp);
    if (cp.kind == PointKind::kVertex && cp.vertex == 5) bends_at_notch = true;
  }
  CHECK(bends_at_notch);

  // Strict mode reports the same bracket through the failure object.
  opt.strict = true;
  bool threw = false;
  try {
    eng.distance(a, b, opt);
  } catch (const precision_error& pe) {
    threw = true;
    CHECK(pe.best.upper == Catch::Approx(0.4).margin(1e-9));
    CHECK(pe.best.lower > 0.35);
    CHECK(pe.best.lower < pe.best.upper);
  }
  CHECK(threw);
}

TEST_CASE("unit-edge paths bound the metric on both sides") {
  const Tiling k2 = gen(2);
  GeodesicEngine eng(k2);
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> pick(0, k2.vertex_count() - 1);

  GeodesicOptions opt;
  opt.tol = 1e-3;
  opt.max_steiner = 16;

  for (int trial = 0; trial < 50; ++trial) {
    const VertexId u = pick(rng);
    VertexId v = pick(rng);
    if (u == v) v = (v + 1) % k2.vertex_count();
    const int dp = k2.edge_distance(u, v);
    REQUIRE(dp > 0);

    auto r = eng.distance(surface_point_at_vertex(k2, u),
                          surface_point_at_vertex(k2, v), opt);
    // Following the edge path tile by tile realizes d', so d <= d'.
    CHECK(r.upper <= dp + 1e-9);
    CHECK(r.lower <= dp + 1e-9);
    // Certified bracket never crosses, and the unit-edge distance never
    // exceeds three times the metric.
    CHECK(r.lower <= r.upper + 1e-12);
    CHECK(dp <= 3.0 * r.upper + 1e-6);
  }
}

TEST_CASE("bracket triangle inequality on random interior points") {
  const Tiling k2 = gen(2);
  GeodesicEngine eng(k2);
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> face(0, k2.face_count() - 1);

  GeodesicOptions opt;
  opt.tol = 1e-4;
  opt.max_steiner = 16;

  for (int trial = 0; trial < 12; ++trial) {
    const SurfacePoint a{face(rng), sample_in_pentagon(rng)};
    const SurfacePoint b{face(rng), sample_in_pentagon(rng)};
    const SurfacePoint c{face(rng), sample_in_pentagon(rng)};
    const auto rab = eng.distance(a, b, opt);
    const auto rbc = eng.distance(b, c, opt);
    const auto rac = eng.distance(a, c, opt);
    CHECK(rac.lower <= rab.upper + rbc.upper + 1e-9);
    CHECK(rab.lower <= rac.upper + rbc.upper + 1e-9);
    path_is_anchored(rab, a, b, k2);
  }
}

TEST_CASE("metric balls are sandwiched by unit-edge balls") {
  const Tiling k3 = gen(3);
  GeodesicEngine eng(k3);
  const VertexId v = deep_interior_vertex(k3);
  const SurfacePoint sv = surface_point_at_vertex(k3, v);

  for (int n = 1; n <= 3; ++n) {
    const auto inner = k3.ball(v, n);
    const auto metric = eng.ball_metric(sv, static_cast<double>(n));
    const auto outer = k3.ball(v, 3 * n);

    std::set<FaceId> inner_faces(inner.face_map.begin(), inner.face_map.end());
    std::set<FaceId> metric_faces(metric.face_map.begin(), metric.face_map.end());
    std::set<FaceId> outer_faces(outer.face_map.begin(), outer.face_map.end());

    for (FaceId f : inner_faces) CHECK(metric_faces.count(f) == 1);
    for (FaceId f : metric_faces) CHECK(outer_faces.count(f) == 1);
    CHECK(metric.tiling.valid());
  }

  // A radius below the circumradius captures no tile at all.
  const auto empty = eng.ball_metric(sv, 0.5);
  CHECK(empty.tiling.face_count() == 0);
  CHECK(empty.tiling.vertex_count() == 1);

  // Around a tile's center, radius 0.9 captures exactly that tile.
  const FaceId f = k3.incident_corners(v).front().face;
  const auto one = eng.ball_metric({f, Vec2{0.0, 0.0}}, 0.9);
  CHECK(one.tiling.face_count() == 1);
  CHECK(one.face_map == std::vector<FaceId>{f});
}

TEST_CASE("vertex bounds drive single-source queries") {
  const Tiling k1 = gen(1);
  GeodesicEngine eng(k1);
  const auto dist =
      eng.vertex_upper_bounds(surface_point_at_vertex(k1, 10), 10.0);
  REQUIRE(dist.size() == static_cast<size_t>(k1.vertex_count()));
  CHECK(dist[10] == 0.0);
  // Neighbors along edges are at distance at most one.
  for (EdgeId e : k1.incident_edges(10)) {
    const VertexId w = k1.other_endpoint(e, 10);
    CHECK(dist[static_cast<size_t>(w)] <= 1.0 + 1e-9);
    CHECK(dist[static_cast<size_t>(w)] > 0.5);
  }
  // Everything in one supertile is within a few edges.
  for (double d : dist) CHECK(d <= 4.0);
}
