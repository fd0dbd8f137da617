#pragma once

// Parameterized property checks over sampled data, shared by the `verify`
// subcommand and the acceptance harness. Each check runs one property and
// reports pass/fail plus a one-line detail; suites bundle them.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "penthull/chart.hpp"
#include "penthull/core.hpp"
#include "penthull/geodesic.hpp"
#include "penthull/hull.hpp"
#include "penthull/partition.hpp"
#include "penthull/submap.hpp"
#include "penthull/tiling.hpp"

namespace penthull {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.pass; });
  }
};

struct VerifyOptions {
  int level = 3;
  int samples = 500;
  std::uint64_t seed = 7;
  double tol = 1e-6;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Loose-but-certified geodesic options for bulk sampling: a single coarse
// Steiner pass keeps both bounds sound, which is all bracket assertions need.
inline GeodesicOptions bulk_geodesic() {
  GeodesicOptions g;
  g.tol = 5e-3;
  g.initial_steiner = 4;
  g.max_steiner = 4;
  return g;
}

// Uniform sample strictly inside the pentagon chart (margin keeps samples
// away from snapping thresholds).
inline Vec2 sample_chart_point(std::mt19937_64& rng, double margin = 1e-3) {
  static const std::vector<Vec2> corners = [] {
    std::vector<Vec2> c;
    for (int i = 0; i < 5; ++i) c.push_back(chart_corner(i));
    return c;
  }();
  std::uniform_real_distribution<double> ux(-kCircumradius, kCircumradius);
  for (;;) {
    const Vec2 p{ux(rng), ux(rng)};
    if (polygon_inset(corners, p) >= margin) return p;
  }
}

}  // namespace detail

// --------------------------------------------------------------- constants --

// The partition's printed values, recomputed from closed forms.
inline Check check_golden_constants(double tol = 1e-3) {
  const PartitionData& d = PartitionData::get();
  struct Row {
    const char* what;
    double got, want, tol;
  };
  const Row rows[] = {
      {"|M0|", d.M0.spectral_norm(), 2.2028, tol},
      {"|M1|", d.M1.spectral_norm(), 2.85906, tol},
      {"|M2|", d.M2.spectral_norm(), 3.39406, tol},
      {"|M0^-1|", d.M0.inverse().spectral_norm(), 0.453968, tol},
      {"|M1^-1|", d.M1.inverse().spectral_norm(), 0.453968, tol},
      {"|M2^-1|", d.M2.inverse().spectral_norm(), 0.538918, tol},
      {"det M0", d.M0.det(), 4.85231, tol},
      {"det M1", d.M1.det(), 6.29792, tol},
      {"det M2", d.M2.det(), 6.29792, tol},
      {"s", d.s, 0.45396847569786736, 1e-12},
      {"p1.x", d.p1.x, 0.22698423784893365, 1e-12},
      {"p1.y", d.p1.y, 0.31241700120720093, 1e-12},
      {"q1'.x", d.q1p.x, 0.4045084971874737, 1e-12},
      {"q1'.y", d.q1p.y, 0.5567581822058034, 1e-12},
  };
  Check c{"golden-constants", true, ""};
  int n = 0;
  for (const Row& r : rows) {
    ++n;
    if (std::abs(r.got - r.want) > r.tol) {
      c.pass = false;
      c.detail = std::string(r.what) + " = " + detail::fmt(r.got) +
                 ", expected " + detail::fmt(r.want);
      return c;
    }
  }
  c.detail = std::to_string(n) + " constants within tolerance";
  return c;
}

// ------------------------------------------------------------------ counts --

inline Check check_counts(int max_level = 5) {
  Check c{"counts", true, ""};
  Tiling t = make_supertile(0);
  std::int64_t f6 = 1;
  int pv = t.vertex_count(), pe = t.edge_count(), pf = t.face_count();
  for (int n = 0; n <= max_level; ++n) {
    if (n > 0) {
      const int ev = pv + pe + 5 * pf, ee = 2 * pe + 10 * pf, ef = 6 * pf;
      pv = t.vertex_count();
      pe = t.edge_count();
      pf = t.face_count();
      if (pv != ev || pe != ee || pf != ef) {
        c.pass = false;
        c.detail = "recurrence broken at level " + std::to_string(n);
        return c;
      }
      f6 *= 6;
    }
    const bool ok =
        t.face_count() == f6 &&
        t.vertex_count() - t.edge_count() + t.face_count() == 1 &&
        static_cast<int>(t.boundary().size()) == 5 * (1 << n) && t.valid() &&
        t.adjacent_decorations_differ();
    if (!ok) {
      c.pass = false;
      c.detail = "invariants broken at level " + std::to_string(n);
      return c;
    }
    pv = t.vertex_count();
    pe = t.edge_count();
    pf = t.face_count();
    if (n < max_level) t = subdivide(t);
  }
  c.detail = "levels 0.." + std::to_string(max_level) +
             ": tile counts, recurrences, Euler 1, rim sizes";
  return c;
}

// ------------------------------------------------- unit-edge vs geodesic ----

// Random vertex pairs: the unit-edge count never undercuts the geodesic and
// never exceeds three times it.
inline Check check_metric_sandwich(int level, int samples, std::uint64_t seed,
                                   double tol) {
  const Tiling t = make_supertile(level);
  GeodesicEngine engine(t);
  const GeodesicOptions gopt = detail::bulk_geodesic();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, t.vertex_count() - 1);

  Check c{"unit-edge-vs-geodesic", true, ""};
  double max_ratio = 0.0;
  int violations = 0, used = 0;
  for (int i = 0; i < samples; ++i) {
    const VertexId u = pick(rng), w = pick(rng);
    if (u == w) continue;
    ++used;
    const auto dist = t.bfs_distances(u);
    const double dprime = dist[static_cast<size_t>(w)];
    const GeodesicResult g = engine.distance(
        surface_point_at_vertex(t, u), surface_point_at_vertex(t, w), gopt);
    if (g.lower > dprime + tol) ++violations;
    if (dprime > 3.0 * g.upper + tol) ++violations;
    if (g.upper > 0.0) max_ratio = std::max(max_ratio, dprime / g.upper);
  }
  c.pass = violations == 0;
  c.detail = std::to_string(used) + " pairs, max d'/d ratio " +
             detail::fmt(max_ratio) + ", violations " +
             std::to_string(violations);
  return c;
}

// Ball inclusions: hop balls sit inside geodesic balls of the same radius,
// which sit inside hop balls of three times the radius.
inline Check check_ball_inclusions(int level, int vertices, int max_n,
                                   std::uint64_t seed) {
  const Tiling t = make_supertile(level);
  GeodesicEngine engine(t);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, t.vertex_count() - 1);

  Check c{"ball-inclusions", true, ""};
  for (int i = 0; i < vertices; ++i) {
    const VertexId v = pick(rng);
    const SurfacePoint sp = surface_point_at_vertex(t, v);
    for (int n = 1; n <= max_n; ++n) {
      auto hop1 = t.ball(v, n).face_map;
      auto geo = engine.ball_metric(sp, n, 4).face_map;
      auto hop3 = t.ball(v, 3 * n).face_map;
      std::sort(hop1.begin(), hop1.end());
      std::sort(geo.begin(), geo.end());
      std::sort(hop3.begin(), hop3.end());
      if (!std::includes(geo.begin(), geo.end(), hop1.begin(), hop1.end()) ||
          !std::includes(hop3.begin(), hop3.end(), geo.begin(), geo.end())) {
        c.pass = false;
        c.detail = "inclusion broken at vertex " + std::to_string(v) +
                   ", n=" + std::to_string(n);
        return c;
      }
    }
  }
  c.detail = std::to_string(vertices) + " vertices, n=1.." +
             std::to_string(max_n) + ": hop(n) within geo(n) within hop(3n)";
  return c;
}

// ------------------------------------------------------- point-map checks ---

// Shared-edge points map to the same image through either adjacent tile.
inline Check check_edge_well_defined(int level, int edges, int pts,
                                     std::uint64_t seed, double tol = 1e-9) {
  const Tiling t = make_supertile(level);
  const Tiling child = subdivide(t);
  std::vector<EdgeId> interior;
  for (EdgeId e = 0; e < t.edge_count(); ++e)
    if (!t.edge(e).boundary()) interior.push_back(e);
  std::mt19937_64 rng(seed);
  std::shuffle(interior.begin(), interior.end(), rng);
  if (static_cast<int>(interior.size()) > edges) interior.resize(edges);

  Check c{"edge-point-well-defined", true, ""};
  int checked = 0;
  for (EdgeId e : interior) {
    const auto& ed = t.edge(e);
    const FaceId f0 = ed.face[0], f1 = ed.face[1];
    const Vec2 u0 = vertex_position_in(t, f0, ed.u);
    const Vec2 v0 = vertex_position_in(t, f0, ed.v);
    const Vec2 u1 = vertex_position_in(t, f1, ed.u);
    const Vec2 v1 = vertex_position_in(t, f1, ed.v);
    for (int k = 0; k < pts; ++k) {
      const double s = 0.05 + 0.9 * (k + 0.5) / pts;
      const MappedPoint a = map_point(t, {f0, u0 + (v0 - u0) * s});
      const MappedPoint b = map_point(t, {f1, u1 + (v1 - u1) * s});
      ++checked;
      if (!surface_points_equal(child, a.sp, b.sp, tol)) {
        c.pass = false;
        c.detail = "images disagree on edge " + std::to_string(e) +
                   " at s=" + detail::fmt(s);
        return c;
      }
    }
  }
  c.detail = std::to_string(checked) + " edge points, both-tile images agree";
  return c;
}

// unmap after map is the identity, and attributes the same region.
inline Check check_round_trip(int level, int points, std::uint64_t seed,
                              double tol = 1e-9) {
  const Tiling t = make_supertile(level);
  const Tiling child = subdivide(t);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<FaceId> pick(0, t.face_count() - 1);

  Check c{"map-round-trip", true, ""};
  for (int i = 0; i < points; ++i) {
    const FaceId f = pick(rng);
    const Vec2 x = detail::sample_chart_point(rng);
    const MappedPoint y = map_point(t, {f, x});
    const MappedPoint back = unmap_point(child, y.sp);
    if (back.sp.face != f || distance(back.sp.xy, x) > tol ||
        !(back.region == y.region)) {
      c.pass = false;
      c.detail = "round trip drifted on face " + std::to_string(f);
      return c;
    }
  }
  c.detail = std::to_string(points) + " points returned within " +
             detail::fmt(tol);
  return c;
}

// The point map stretches by at most 3.40 and contracts by at most 1/0.54,
// in certified-bracket form.
inline Check check_point_lipschitz(int level, int samples, std::uint64_t seed,
                                   double tol) {
  const Tiling t = make_supertile(level);
  const Tiling child = subdivide(t);
  GeodesicEngine pre_engine(t), img_engine(child);
  const GeodesicOptions gopt = detail::bulk_geodesic();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<FaceId> pick(0, t.face_count() - 1);

  Check c{"point-map-lipschitz", true, ""};
  int violations = 0;
  for (int i = 0; i < samples; ++i) {
    const SurfacePoint x{pick(rng), detail::sample_chart_point(rng)};
    const SurfacePoint y{pick(rng), detail::sample_chart_point(rng)};
    const GeodesicResult pre = pre_engine.distance(x, y, gopt);
    const GeodesicResult img = img_engine.distance(
        map_point(t, x).sp, map_point(t, y).sp, gopt);
    if (img.lower > 3.40 * pre.upper + tol) ++violations;
    if (pre.lower > 0.54 * img.upper + tol) ++violations;
  }
  c.pass = violations == 0;
  c.detail = std::to_string(samples) + " pairs, expansion within [1/0.54" +
             std::string(", 3.40], violations ") + std::to_string(violations);
  return c;
}

// Pairs inside the conformal central region stretch by exactly the conformal
// factor 2.2028.
inline Check check_blue_ratio(int samples, std::uint64_t seed,
                              double tol = 1e-3) {
  const PartitionData& d = PartitionData::get();
  const std::vector<Vec2> blue(d.blue.begin(), d.blue.end());
  const Tiling k1 = make_supertile(1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(-0.3, 0.3);

  const auto sample_blue = [&]() -> Vec2 {
    for (;;) {
      const Vec2 p{ur(rng), ur(rng)};
      if (polygon_inset(blue, p) >= 0.01) return p;
    }
  };

  Check c{"central-region-ratio", true, ""};
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vec2 a = sample_blue();
    Vec2 b = sample_blue();
    while (distance(a, b) < 0.05) b = sample_blue();
    const MappedPoint ia = map_point(k1, {0, a});
    const MappedPoint ib = map_point(k1, {0, b});
    if (ia.sp.face != ib.sp.face ||
        !(ia.region == RegionId{RegionKind::kBlue, 0})) {
      c.pass = false;
      c.detail = "central sample left the conformal piece";
      return c;
    }
    const double ratio = distance(ia.sp.xy, ib.sp.xy) / distance(a, b);
    worst = std::max(worst, std::abs(ratio - 2.2028));
  }
  c.pass = worst <= tol;
  c.detail = std::to_string(samples) + " central pairs, max |ratio-2.2028| = " +
             detail::fmt(worst);
  return c;
}

// ------------------------------------------------------------ hull checks ---

// Vertex-pointed pairs: the combinatorial distance bracket sits under the
// metric bracket, which sits under eighteen times the combinatorial value.
inline Check check_pointed_sandwich(int level, int pairs, std::uint64_t seed,
                                    double tol) {
  const Tiling host = make_supertile(level);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, host.vertex_count() - 1);
  HullOptions hopt;
  hopt.max_radius = 4;
  hopt.geodesic = detail::bulk_geodesic();

  Check c{"pointed-metric-sandwich", true, ""};
  int violations = 0;
  for (int i = 0; i < pairs; ++i) {
    const VertexId u = pick(rng);
    const VertexId w = (i % 10 == 0) ? u : pick(rng);  // some equal pairs
    const PointedPatch A = pointed_ball(host, u, 6);
    const PointedPatch B = pointed_ball(host, w, 6);
    const DiscreteHullDistance dd = discrete_hull_distance(A, B);
    const HullDistance h = hull_distance(A, B, hopt);
    if (dd.lower > h.upper + tol) ++violations;       // d' <= d side
    if (h.lower > 18.0 * dd.value + tol) ++violations;  // d <= 18 d' side
  }
  c.pass = violations == 0;
  c.detail = std::to_string(pairs) + " vertex-pointed pairs, violations " +
             std::to_string(violations);
  return c;
}

// One subdivision round moves pointed patterns by at most a factor 20.4.
inline Check check_hull_lipschitz(int pairs, std::uint64_t seed, double tol) {
  const Tiling host = make_supertile(3);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, host.vertex_count() - 1);
  HullOptions hopt;
  hopt.max_radius = 4;
  hopt.geodesic = detail::bulk_geodesic();

  Check c{"subdivision-hull-lipschitz", true, ""};
  int violations = 0;
  for (int i = 0; i < pairs; ++i) {
    const VertexId u = pick(rng);
    const VertexId w = (i % 8 == 0) ? u : pick(rng);
    const PointedPatch A = pointed_ball(host, u, 5);
    const PointedPatch B = pointed_ball(host, w, 5);
    const HullDistance pre = hull_distance(A, B, hopt);
    const HullDistance img =
        hull_distance(omega_pointed(A), omega_pointed(B), hopt);
    if (img.lower > 20.4 * pre.upper + tol) ++violations;
  }
  c.pass = violations == 0;
  c.detail = std::to_string(pairs) + " pointed pairs, violations " +
             std::to_string(violations);
  return c;
}

// The radius-r ball-class census stops growing between two census hosts.
inline Check check_census_stability(int radius, int level_a, int level_b) {
  const auto net_a = epsilon_net(radius, level_a);
  const auto net_b = epsilon_net(radius, level_b);
  Check c{"ball-census-stability", false, ""};
  bool same = net_a.size() == net_b.size();
  if (same)
    for (size_t i = 0; i < net_a.size(); ++i)
      if (net_a[i].code != net_b[i].code) {
        same = false;
        break;
      }
  c.pass = same;
  c.detail = "radius " + std::to_string(radius) + ": " +
             std::to_string(net_a.size()) + " classes at level " +
             std::to_string(level_a) + ", " + std::to_string(net_b.size()) +
             " at level " + std::to_string(level_b) +
             (same ? " (identical sets)" : " (sets differ)");
  return c;
}

// Every decorated prototile's supertile eventually contains every prototile.
inline Check check_primitivity(int kmax = 4) {
  std::set<std::pair<int, int>> alphabet_keys;
  std::vector<Decoration> alphabet;
  const Tiling probe = make_supertile(3);
  for (FaceId f = 0; f < probe.face_count(); ++f) {
    const Decoration dec = probe.face(f).dec;
    if (alphabet_keys
            .insert({static_cast<int>(dec.type), dec.orient})
            .second)
      alphabet.push_back(dec);
  }

  Check c{"primitivity", true, ""};
  int worst_k = 0;
  for (const Decoration seed : alphabet) {
    int found = -1;
    for (int k = 1; k <= kmax && found < 0; ++k) {
      const Tiling t = make_supertile(k, seed);
      std::set<std::pair<int, int>> seen;
      for (FaceId f = 0; f < t.face_count(); ++f) {
        const Decoration dec = t.face(f).dec;
        seen.insert({static_cast<int>(dec.type), dec.orient});
      }
      if (seen == alphabet_keys) found = k;
    }
    if (found < 0) {
      c.pass = false;
      c.detail = "a prototile fails to reach the full alphabet by k=" +
                 std::to_string(kmax);
      return c;
    }
    worst_k = std::max(worst_k, found);
  }
  c.detail = std::to_string(alphabet.size()) +
             " prototiles cover the alphabet by k=" + std::to_string(worst_k);
  return c;
}

// The three-sector wheel: validity, hub shape, ball classes realized by
// supertiles, and the chain above the hub.
inline Check check_quadpent(int level) {
  Check c{"three-sector-wheel", true, ""};
  const PointedPatch qp = quadpent_tiling(level);
  if (!qp.tiling.valid() || qp.tiling.degree(0) != 3 ||
      qp.tiling.on_boundary(0)) {
    c.pass = false;
    c.detail = "wheel complex malformed at level " + std::to_string(level);
    return c;
  }

  std::set<std::vector<std::int32_t>> census;
  for (const BallClass& bc : epsilon_net(2, level + 2)) census.insert(bc.code);
  int checked = 0;
  for (VertexId v = 0; v < qp.tiling.vertex_count(); ++v) {
    auto ball = qp.tiling.ball(v, 2);
    if (ball.truncated) continue;
    ++checked;
    if (census.find(canonical_code(ball.tiling, ball.local_vertex(v))) ==
        census.end()) {
      c.pass = false;
      c.detail = "wheel ball at vertex " + std::to_string(v) +
                 " unseen among supertile classes";
      return c;
    }
  }
  if (checked == 0) {
    c.pass = false;
    c.detail = "no complete radius-2 balls in the wheel";
    return c;
  }

  const auto chain = supertile_chain(qp, level);  // throws on broken links
  if (static_cast<int>(chain.size()) != level + 1) {
    c.pass = false;
    c.detail = "chain above the hub has the wrong length";
    return c;
  }
  c.detail = "level " + std::to_string(level) + ": " + std::to_string(checked) +
             " complete balls realized by supertiles; chain of " +
             std::to_string(chain.size()) + " links verified";
  return c;
}

// Every subdivided patch desubstitutes back to its source, origin included.
inline Check check_surjectivity(int samples, std::uint64_t seed,
                                double tol = 1e-9) {
  const Tiling host = make_supertile(3);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, host.vertex_count() - 1);
  std::uniform_int_distribution<int> rad(2, 4);

  Check c{"subdivision-preimages", true, ""};
  for (int i = 0; i < samples; ++i) {
    const PointedPatch P = pointed_ball(host, pick(rng), rad(rng));
    if (P.tiling.face_count() == 0) continue;
    const Tiling child = subdivide(P.tiling);
    const SurfacePoint img = map_point(P.tiling, P.origin).sp;

    const auto de = child.desubstitute(child.canonical_decomposition());
    const MappedPoint back = unmap_point(child, img);
    const bool ok = isomorphism(de.parent, P.tiling).has_value() &&
                    surface_points_equal(P.tiling, back.sp, P.origin, tol) &&
                    isomorphism(subdivide(de.parent), child).has_value();
    if (!ok) {
      c.pass = false;
      c.detail = "preimage round trip failed on sample " + std::to_string(i);
      return c;
    }
  }
  c.detail = std::to_string(samples) +
             " pointed patches rebuilt from their preimages";
  return c;
}

// ------------------------------------------------------------------ suites --

inline Report verify_counts_suite(const VerifyOptions& o) {
  Report r{"counts", {}};
  r.checks.push_back(check_counts(std::min(o.level + 1, 5)));
  return r;
}

inline Report verify_metrics_suite(const VerifyOptions& o) {
  Report r{"metrics", {}};
  r.checks.push_back(
      check_metric_sandwich(o.level, o.samples, o.seed, o.tol));
  r.checks.push_back(check_ball_inclusions(
      o.level, std::clamp(o.samples / 10, 5, 50), 3, o.seed));
  return r;
}

inline Report verify_substitution_suite(const VerifyOptions& o) {
  Report r{"substitution", {}};
  const int lvl = std::min(o.level, 2);
  r.checks.push_back(check_golden_constants());
  r.checks.push_back(check_edge_well_defined(
      lvl, std::clamp(o.samples / 10, 5, 50), 100, o.seed));
  r.checks.push_back(check_round_trip(lvl, o.samples * 4, o.seed));
  r.checks.push_back(check_point_lipschitz(lvl, o.samples, o.seed, o.tol));
  r.checks.push_back(check_blue_ratio(std::max(o.samples / 5, 20), o.seed));
  return r;
}

inline Report verify_hull_suite(const VerifyOptions& o) {
  Report r{"hull", {}};
  const int pairs = std::clamp(o.samples / 10, 10, 60);
  r.checks.push_back(
      check_pointed_sandwich(std::min(o.level, 3), pairs, o.seed, o.tol));
  r.checks.push_back(check_hull_lipschitz(std::min(pairs, 30), o.seed, o.tol));
  r.checks.push_back(check_census_stability(2, 4, 5));
  r.checks.push_back(check_primitivity(4));
  r.checks.push_back(check_quadpent(2));
  r.checks.push_back(check_surjectivity(std::min(pairs, 30), o.seed));
  return r;
}

inline std::vector<Report> verify_suites(const std::string& which,
                                         const VerifyOptions& o) {
  std::vector<Report> out;
  if (which == "counts" || which == "all") out.push_back(verify_counts_suite(o));
  if (which == "metrics" || which == "all")
    out.push_back(verify_metrics_suite(o));
  if (which == "substitution" || which == "all")
    out.push_back(verify_substitution_suite(o));
  if (which == "hull" || which == "all") out.push_back(verify_hull_suite(o));
  if (out.empty()) throw domain_error("unknown verification suite: " + which);
  return out;
}

}  // namespace penthull
