// Distances between pointed patches, the discrete vertex-pointed metric, the
// subdivision action on pointed patches, supertile chains, the three-sector
// wheel, epsilon-net censuses, and origin-forgetting equivalence.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <limits>
#include <queue>
#include <set>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "penthull/hull.hpp"
#include "penthull/submap.hpp"

namespace {

using namespace penthull;

// Unit-edge hop distance of every vertex to the host rim.
std::vector<std::int32_t> rim_distances(const Tiling& t) {
  std::vector<std::int32_t> dist(static_cast<size_t>(t.vertex_count()), -1);
  std::queue<VertexId> q;
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (t.on_boundary(v)) {
      dist[static_cast<size_t>(v)] = 0;
      q.push(v);
    }
  while (!q.empty()) {
    const VertexId v = q.front();
    q.pop();
    for (EdgeId e : t.incident_edges(v)) {
      const VertexId w = t.other_endpoint(e, v);
      if (dist[static_cast<size_t>(w)] >= 0) continue;
      dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
      q.push(w);
    }
  }
  return dist;
}

VertexId deepest_vertex(const Tiling& t) {
  const auto rim = rim_distances(t);
  VertexId best = 0;
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (rim[static_cast<size_t>(v)] > rim[static_cast<size_t>(best)]) best = v;
  return best;
}

// First vertex of the given degree at rim distance >= min_rim.
VertexId deep_vertex_of_degree(const Tiling& t, int degree, int min_rim) {
  const auto rim = rim_distances(t);
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (rim[static_cast<size_t>(v)] >= min_rim && t.degree(v) == degree)
      return v;
  return kInvalidId;
}

GeodesicOptions loose_geodesic() {
  GeodesicOptions g;
  g.tol = 1e-3;
  g.initial_steiner = 8;
  g.max_steiner = 16;
  return g;
}

}  // namespace

namespace penthull {

TEST_CASE("pointed balls certify a radius around their origin") {
  const Tiling k3 = make_supertile(3);
  const auto rim = rim_distances(k3);
  const VertexId v = deepest_vertex(k3);
  REQUIRE(rim[static_cast<size_t>(v)] >= 5);

  const PointedPatch bare = pointed_ball(k3, v, 0);
  CHECK(bare.tiling.face_count() == 0);
  CHECK(bare.origin.face == kInvalidId);
  CHECK(bare.guaranteed_radius == 0.0);

  double prev = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const PointedPatch p = pointed_ball(k3, v, n);
    REQUIRE(p.tiling.face_count() > 0);
    const CanonicalPoint c = canonicalize(p.tiling, p.origin);
    REQUIRE(c.kind == PointKind::kVertex);
    CHECK(p.guaranteed_radius >= prev);          // balls only grow
    CHECK(p.guaranteed_radius <= n / 3.0 + 1e-12);  // rim at most n hops out
    prev = p.guaranteed_radius;
  }
  // Vertices up to hop n-2 keep their whole star, so the rim of the radius-6
  // ball sits at hop >= 5 and a third of that is certified.
  CHECK(prev >= 5.0 / 3.0 - 1e-12);
}

TEST_CASE("a patch is at distance zero-ish from itself") {
  const Tiling k3 = make_supertile(3);
  const PointedPatch A = pointed_ball(k3, deepest_vertex(k3), 8);
  REQUIRE(A.guaranteed_radius >= 2.0);

  HullOptions opt;
  opt.geodesic = loose_geodesic();
  const HullDistance self = hull_distance(A, A, opt);

  CHECK(self.lower == 0.0);
  REQUIRE(self.witness.has_value());
  CHECK(self.witness->displacement_ab <= 1e-9);
  CHECK(self.witness->displacement_ba <= 1e-9);
  CHECK(self.upper <= 1.0 / A.guaranteed_radius + 1e-9);
  CHECK_FALSE(self.cap_hit);
}

TEST_CASE("sliding the origin along an edge costs the slide") {
  const Tiling k3 = make_supertile(3);
  const PointedPatch A = pointed_ball(k3, deepest_vertex(k3), 8);
  const CanonicalPoint ca = canonicalize(A.tiling, A.origin);
  REQUIRE(ca.kind == PointKind::kVertex);

  const auto incident = A.tiling.incident_edges(ca.vertex);
  REQUIRE_FALSE(incident.empty());
  const EdgeId e = incident.front();
  const double s = A.tiling.edge(e).u == ca.vertex ? 0.1 : 0.9;

  PointedPatch B;
  B.tiling = A.tiling;
  B.origin = surface_point_on_edge(B.tiling, e, s);
  B.guaranteed_radius = certified_radius(B.tiling, B.origin);
  CHECK(B.guaranteed_radius ==
        Catch::Approx(A.guaranteed_radius - 0.1).margin(1e-9));

  HullOptions opt;
  opt.geodesic = loose_geodesic();
  const HullDistance res = hull_distance(A, B, opt);

  CHECK(res.lower == 0.0);
  REQUIRE(res.witness.has_value());
  // The identity embedding realizes exactly the slide; no other origin image
  // comes close (the next candidate vertex is a whole edge away).
  CHECK(res.witness->displacement_ab >= 0.1 - 1e-3);
  CHECK(res.witness->displacement_ab <= 0.1 + 1e-3);
  CHECK(res.upper <= 0.4 + 1e-9);  // witness at the fractional radius
  CHECK_FALSE(res.cap_hit);

  const HullDistance rev = hull_distance(B, A, opt);
  CHECK(rev.upper == Catch::Approx(res.upper).margin(1e-6));
  CHECK(rev.lower == res.lower);
}

TEST_CASE("patterns that disagree at the origin saturate at the cap") {
  const Tiling k3 = make_supertile(3);
  const VertexId va = deep_vertex_of_degree(k3, 3, 4);
  const VertexId vb = deep_vertex_of_degree(k3, 4, 4);
  REQUIRE(va != kInvalidId);
  REQUIRE(vb != kInvalidId);

  const PointedPatch A = pointed_ball(k3, va, 5);
  const PointedPatch B = pointed_ball(k3, vb, 5);

  HullOptions opt;
  opt.geodesic = loose_geodesic();
  const HullDistance res = hull_distance(A, B, opt);
  CHECK(res.cap_hit);
  CHECK(res.upper == kHullCap);
  CHECK_FALSE(res.witness.has_value());  // every displacement exceeds the cap
  CHECK(res.lower <= res.upper);

  // The vertex-pointed metric pins the same pair exactly: bare radius-1
  // balls agree, the stars at radius 2 do not.
  const DiscreteHullDistance dd = discrete_hull_distance(A, B);
  CHECK(dd.iso_radius == 1);
  CHECK(dd.fail_radius == 2);
  CHECK(dd.value == kHullCap);  // 1/1 saturates
  CHECK(dd.lower == Catch::Approx(0.5));
  CHECK_FALSE(dd.truncation_limited);
}

TEST_CASE("the discrete metric separates at the first differing ball") {
  const Tiling k4 = make_supertile(4);
  const auto rim = rim_distances(k4);

  // Two deep vertices with identical radius-2 stars but different radius-3
  // balls: group by the rooted code at 2, compare at 3 within a group.
  std::map<std::vector<std::int32_t>, VertexId> first_with_star;
  VertexId x = kInvalidId, y = kInvalidId;
  for (VertexId v = 0; v < k4.vertex_count() && x == kInvalidId; ++v) {
    if (rim[static_cast<size_t>(v)] < 5) continue;
    auto b2 = k4.ball(v, 2);
    REQUIRE_FALSE(b2.truncated);
    const auto code2 = canonical_code(b2.tiling, b2.local_vertex(v));
    const auto [it, fresh] = first_with_star.try_emplace(code2, v);
    if (fresh) continue;
    auto ba = k4.ball(it->second, 3);
    auto bb = k4.ball(v, 3);
    if (ba.truncated || bb.truncated) continue;
    if (canonical_code(ba.tiling, ba.local_vertex(it->second)) !=
        canonical_code(bb.tiling, bb.local_vertex(v))) {
      x = it->second;
      y = v;
    }
  }
  REQUIRE(x != kInvalidId);

  const PointedPatch A = pointed_ball(k4, x, 7);
  const PointedPatch B = pointed_ball(k4, y, 7);
  const DiscreteHullDistance dd = discrete_hull_distance(A, B);
  CHECK(dd.iso_radius == 2);
  CHECK(dd.fail_radius == 3);
  CHECK(dd.value == Catch::Approx(0.5));
  CHECK(dd.lower == Catch::Approx(1.0 / 3.0));
  CHECK_FALSE(dd.truncation_limited);

  // Identical origins: agreement persists until the patches run out.
  const DiscreteHullDistance same = discrete_hull_distance(A, A);
  CHECK(same.truncation_limited);
  CHECK(same.fail_radius == -1);
  CHECK(same.lower == 0.0);
  CHECK(same.iso_radius >= 4);
  CHECK(same.value <= 0.25);

  // Non-vertex origins are rejected.
  PointedPatch slid = A;
  const CanonicalPoint ca = canonicalize(A.tiling, A.origin);
  const EdgeId e = A.tiling.incident_edges(ca.vertex).front();
  slid.origin = surface_point_on_edge(slid.tiling, e, 0.5);
  CHECK_THROWS_AS(discrete_hull_distance(slid, A), domain_error);
}

TEST_CASE("subdividing a pointed patch refines pattern and origin together") {
  const Tiling k2 = make_supertile(2);
  const PointedPatch A = pointed_ball(k2, deepest_vertex(k2), 4);
  REQUIRE(A.tiling.face_count() > 0);

  const PointedPatch wA = omega_pointed(A);
  CHECK(wA.tiling.face_count() == 6 * A.tiling.face_count());
  CHECK(wA.tiling.valid());
  CHECK(wA.guaranteed_radius ==
        Catch::Approx(A.guaranteed_radius / 0.54).epsilon(1e-12));
  // A vertex of the coarse pattern is again a vertex of the refinement.
  CHECK(canonicalize(wA.tiling, wA.origin).kind == PointKind::kVertex);

  // The origin pulls back exactly.
  const MappedPoint back = unmap_point(wA.tiling, wA.origin);
  CHECK(surface_points_equal(A.tiling, back.sp, A.origin, 1e-9));

  // The pattern pulls back to an isomorphic copy.
  const auto de = wA.tiling.desubstitute(wA.tiling.canonical_decomposition());
  CHECK(de.parent.face_count() == A.tiling.face_count());
  CHECK(isomorphism(de.parent, A.tiling).has_value());

  // Certified radii compound across rounds.
  const PointedPatch w2 = omega_pointed(wA);
  CHECK(w2.guaranteed_radius ==
        Catch::Approx(A.guaranteed_radius / (0.54 * 0.54)).epsilon(1e-12));
}

TEST_CASE("supertile chains climb the ancestry above a point") {
  PointedPatch A;
  A.tiling = make_supertile(3);
  A.origin = SurfacePoint{100, Vec2{0.0, 0.0}};

  const auto chain = supertile_chain(A, 3);
  REQUIRE(chain.size() == 4);
  for (int k = 0; k <= 3; ++k) {
    CHECK(chain[static_cast<size_t>(k)].level == k);
    CHECK(chain[static_cast<size_t>(k)].supertile.face_count() ==
          static_cast<int>(std::pow(6, k) + 0.5));
    CHECK(chain[static_cast<size_t>(k)].origin.face >= 0);
    CHECK(chain[static_cast<size_t>(k)].origin.face <
          chain[static_cast<size_t>(k)].supertile.face_count());
  }
  CHECK(chain[0].seed == A.tiling.face(100).dec);
  CHECK(chain[0].supertile.face_count() == 1);
  CHECK(chain[3].seed == Decoration{TileType::kCenter, 0});
  CHECK(chain[3].origin.face == 100);  // full depth reproduces the host
  for (int k = 1; k <= 3; ++k)
    CHECK(chain[static_cast<size_t>(k)].radius_bound >
          chain[static_cast<size_t>(k - 1)].radius_bound);

  CHECK_THROWS_AS(supertile_chain(A, 4), resource_limit_error);

  const auto single = supertile_chain(A, 0);
  REQUIRE(single.size() == 1);
  CHECK(single[0].supertile.face_count() == 1);

  // A chain rooted in the wheel complex climbs through its own ancestry.
  const PointedPatch qp = quadpent_tiling(2);
  PointedPatch Aq;
  Aq.tiling = qp.tiling;
  Aq.origin = SurfacePoint{qp.tiling.face_count() / 2, Vec2{0.0, 0.0}};
  const auto qchain = supertile_chain(Aq, 2);
  REQUIRE(qchain.size() == 3);
  CHECK(qchain[2].supertile.face_count() == 36);
  CHECK_THROWS_AS(supertile_chain(Aq, 3), resource_limit_error);
}

TEST_CASE("the three-sector wheel is a valid pointed complex") {
  const PointedPatch qp0 = quadpent_tiling(0);
  CHECK(qp0.tiling.valid());
  CHECK(qp0.tiling.face_count() == 3);
  CHECK(qp0.tiling.vertex_count() == 10);
  CHECK(qp0.tiling.edge_count() == 12);
  const CanonicalPoint hub0 = canonicalize(qp0.tiling, qp0.origin);
  REQUIRE(hub0.kind == PointKind::kVertex);
  CHECK(hub0.vertex == 0);
  CHECK(qp0.tiling.degree(0) == 3);
  CHECK_FALSE(qp0.tiling.on_boundary(0));
  for (const auto& f : qp0.tiling.faces())
    CHECK(f.dec == Decoration{TileType::kPetal, 2});
  CHECK(qp0.guaranteed_radius == Catch::Approx(1.0 / 3.0));

  const PointedPatch qp2 = quadpent_tiling(2);
  CHECK(qp2.tiling.valid());
  CHECK(qp2.tiling.face_count() == 3 * 36);
  CHECK(qp2.tiling.degree(0) == 3);  // the hub persists as vertex 0
  CHECK_FALSE(qp2.tiling.on_boundary(0));
  CHECK(qp2.tiling.adjacent_decorations_differ());
  CHECK(qp2.guaranteed_radius > 1.0);

  // The hub's radius-2 ball is one of the ball classes of a big supertile.
  auto hub_ball = qp2.tiling.ball(0, 2);
  REQUIRE_FALSE(hub_ball.truncated);
  const auto hub_code =
      canonical_code(hub_ball.tiling, hub_ball.local_vertex(0));
  const auto net = epsilon_net(2, 4);
  const bool found = std::any_of(net.begin(), net.end(),
                                 [&](const BallClass& bc) {
                                   return bc.code == hub_code;
                                 });
  CHECK(found);

  CHECK_THROWS_AS(quadpent_tiling(-1), domain_error);
  CHECK_THROWS_AS(quadpent_tiling(Tiling::max_level() + 1),
                  resource_limit_error);
}

TEST_CASE("epsilon nets census complete ball classes") {
  // Radius 0: every complete ball is a bare vertex.
  const Tiling k2 = make_supertile(2);
  const auto net0 = epsilon_net(0, 2);
  REQUIRE(net0.size() == 1);
  CHECK(net0[0].code == std::vector<std::int32_t>{0, 1});
  CHECK(net0[0].representative.origin.face == kInvalidId);
  int interior = 0;
  for (VertexId v = 0; v < k2.vertex_count(); ++v)
    if (!k2.on_boundary(v)) ++interior;
  CHECK(net0[0].population == interior);

  // Radius 2 = closed vertex stars. Classes only accumulate with depth.
  const auto net4 = epsilon_net(2, 4);
  const auto net5 = epsilon_net(2, 5);
  REQUIRE_FALSE(net4.empty());
  CHECK(net4.size() <= net5.size());

  std::vector<std::vector<std::int32_t>> codes4, codes5;
  for (const auto& bc : net4) codes4.push_back(bc.code);
  for (const auto& bc : net5) codes5.push_back(bc.code);
  CHECK(std::is_sorted(codes4.begin(), codes4.end()));
  CHECK(std::is_sorted(codes5.begin(), codes5.end()));
  CHECK(std::includes(codes5.begin(), codes5.end(), codes4.begin(),
                      codes4.end()));

  // Populations add up to the number of vertices with complete balls.
  const Tiling k4 = make_supertile(4);
  const auto rim = rim_distances(k4);
  int complete = 0;
  for (VertexId v = 0; v < k4.vertex_count(); ++v)
    if (rim[static_cast<size_t>(v)] > 2) ++complete;
  int total = 0;
  for (const auto& bc : net4) total += bc.population;
  CHECK(total == complete);

  // Representatives are pointed star patches certified to a third.
  for (const auto& bc : net4) {
    REQUIRE(bc.representative.tiling.face_count() > 0);
    const CanonicalPoint c =
        canonicalize(bc.representative.tiling, bc.representative.origin);
    CHECK(c.kind == PointKind::kVertex);
    CHECK(bc.representative.guaranteed_radius ==
          Catch::Approx(1.0 / 3.0));
    CHECK(bc.representative.tiling.face_count() ==
          bc.representative.tiling.degree(c.vertex));
  }
}

TEST_CASE("pattern equivalence forgets the marked origin") {
  const Tiling k2 = make_supertile(2);
  const VertexId v = deepest_vertex(k2);
  const PointedPatch A = pointed_ball(k2, v, 3);

  PointedPatch B;
  B.tiling = A.tiling;
  B.origin = surface_point_at_vertex(B.tiling, 0);
  B.guaranteed_radius = certified_radius(B.tiling, B.origin);

  const REquivalence same = r_equivalent(A, B);
  CHECK(same.witness.has_value());
  REQUIRE(same.equivalent_origins.size() ==
          static_cast<size_t>(A.tiling.vertex_count()));
  CHECK(same.equivalent_origins[5] == 5);

  const REquivalence diff = r_equivalent(A, pointed_ball(k2, v, 4));
  CHECK_FALSE(diff.witness.has_value());
  CHECK(diff.equivalent_origins.size() ==
        static_cast<size_t>(A.tiling.vertex_count()));

  // A non-vertex origin has no vertex-exchange companions.
  PointedPatch slid = A;
  const CanonicalPoint ca = canonicalize(A.tiling, A.origin);
  const EdgeId e = A.tiling.incident_edges(ca.vertex).front();
  slid.origin = surface_point_on_edge(slid.tiling, e, 0.3);
  const REquivalence off = r_equivalent(slid, B);
  CHECK(off.witness.has_value());
  CHECK(off.equivalent_origins.empty());
}

}  // namespace penthull
