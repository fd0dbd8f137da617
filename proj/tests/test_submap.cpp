#include "penthull/submap.hpp"

#include <random>

#include "catch2/catch_amalgamated.hpp"
#include "penthull/tiling.hpp"

using namespace penthull;

TEST_CASE("images land inside the child chart") {
  const Tiling k1 = make_supertile(1);
  const Tiling k2 = subdivide(k1);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<FaceId> pick(0, k1.face_count() - 1);
  for (int i = 0; i < 5000; ++i) {
    const SurfacePoint x{pick(rng), sample_in_pentagon(rng)};
    const MappedPoint y = map_point(k1, x);
    CHECK(y.sp.face / 6 == x.face);
    CHECK(pentagon_contains(y.sp.xy, 1e-9));
    REQUIRE_NOTHROW(canonicalize(k2, y.sp));
  }
}

TEST_CASE("round trips through the expansion are tight") {
  const Tiling k1 = make_supertile(1);
  const Tiling k2 = subdivide(k1);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<FaceId> pickp(0, k1.face_count() - 1);
  std::uniform_int_distribution<FaceId> pickc(0, k2.face_count() - 1);

  SECTION("forward then back") {
    for (int i = 0; i < 20000; ++i) {
      const SurfacePoint x{pickp(rng), sample_in_pentagon(rng)};
      const MappedPoint y = map_point(k1, x);
      const MappedPoint back = unmap_point(k2, y.sp);
      REQUIRE(back.sp.face == x.face);
      CHECK(distance(back.sp.xy, x.xy) < 1e-12);
      CHECK(back.region == y.region);
    }
  }

  SECTION("back then forward") {
    for (int i = 0; i < 20000; ++i) {
      const SurfacePoint y{pickc(rng), sample_in_pentagon(rng)};
      const MappedPoint x = unmap_point(k2, y);
      CHECK(pentagon_contains(x.sp.xy, 1e-9));
      const MappedPoint again = map_point(k1, x.sp);
      REQUIRE(again.sp.face == y.face);
      CHECK(distance(again.sp.xy, y.xy) < 1e-12);
      CHECK(again.region == x.region);
    }
  }
}

TEST_CASE("the map is well defined along shared edges") {
  const Tiling k2 = make_supertile(2);
  const Tiling k3 = subdivide(k2);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> par(0.05, 0.95);

  int interior_edges = 0;
  for (EdgeId e = 0; e < k2.edge_count() && interior_edges < 60; ++e) {
    const Edge& ed = k2.edge(e);
    if (ed.boundary()) continue;
    ++interior_edges;
    for (int k = 0; k < 40; ++k) {
      const double t = par(rng);
      // The same point expressed in both incident face charts.
      SurfacePoint reps[2];
      for (int sdx = 0; sdx < 2; ++sdx) {
        const FaceId f = ed.face[static_cast<size_t>(sdx)];
        const int i = ed.side[static_cast<size_t>(sdx)];
        const Face& fc = k2.face(f);
        const bool forward = fc.cycle[static_cast<size_t>(i)] == ed.u;
        const double tf = forward ? t : 1.0 - t;
        const Vec2 a = chart_corner(i), b = chart_corner((i + 1) % 5);
        reps[sdx] = {f, a + (b - a) * tf};
      }
      const MappedPoint ya = map_point(k2, reps[0]);
      const MappedPoint yb = map_point(k2, reps[1]);
      CHECK(surface_points_equal(k3, ya.sp, yb.sp, 1e-9));
    }
  }
  REQUIRE(interior_edges == 60);
}

TEST_CASE("old vertices are fixed cells of the map") {
  const Tiling k2 = make_supertile(2);
  const Tiling k3 = subdivide(k2);
  for (VertexId v : {0, 3, 7, 12, 30, 64}) {
    // Map v from each incident face chart; all images must canonicalize to
    // the same child vertex, namely v itself (old ids persist).
    for (const auto& fc : k2.incident_corners(v)) {
      const SurfacePoint x{fc.face, chart_corner(fc.corner)};
      const MappedPoint y = map_point(k2, x);
      const CanonicalPoint cy = canonicalize(k3, y.sp);
      REQUIRE(cy.kind == PointKind::kVertex);
      CHECK(cy.vertex == v);
    }
  }
}

TEST_CASE("region classification matches the acting piece's target") {
  const Tiling k1 = make_supertile(1);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    const SurfacePoint x{0, sample_in_pentagon(rng)};
    const MappedPoint y = map_point(k1, x);
    const int slot = y.sp.face % 6;
    if (y.region.kind == RegionKind::kBlue) {
      CHECK(slot == 5);
    } else {
      CHECK(slot == y.region.sym / 2);
    }
  }
}

TEST_CASE("unmap rejects complexes without addresses") {
  const Tiling seed = Tiling::single_tile();
  CHECK_THROWS_AS(unmap_point(seed, {0, Vec2{0.0, 0.0}}), domain_error);
}
