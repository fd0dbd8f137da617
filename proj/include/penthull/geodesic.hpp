#pragma once

// Certified two-sided bounds for the intrinsic (geodesic) metric of the flat
// structure. Upper bounds come from shortest paths in a Steiner graph
// (uniform subdivision points on every edge) tightened by string-pulling the
// path's face corridor in its unfolding; lower bounds come from the straight
// chord of that unfolding together with combinatorial bounds from the
// unit-edge metric. Brackets refine by doubling the Steiner density until the
// requested tolerance is met or a cap is reached.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "penthull/chart.hpp"
#include "penthull/core.hpp"
#include "penthull/tiling.hpp"

namespace penthull {

struct GeodesicOptions {
  double tol = 1e-6;        // requested bracket width (absolute)
  int initial_steiner = 8;  // subdivision points per edge
  int max_steiner = 64;     // densest graph tried before giving up
  bool strict = false;      // throw precision_error instead of flagging
};

struct GeodesicResult {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::vector<SurfacePoint> path;  // witness polyline for the upper bound
  bool tol_met = false;
  bool touches_boundary = false;  // witness interacts with the host boundary
  int steiner_used = 0;
};

// Raised in strict mode when the bracket cannot reach tolerance; carries the
// best bounds obtained.
class precision_error : public std::runtime_error {
 public:
  precision_error(const std::string& msg, GeodesicResult best_so_far)
      : std::runtime_error(msg), best(std::move(best_so_far)) {}
  GeodesicResult best;
};

namespace detail {

// Taut path through a corridor of portals by the classic funnel scan.
struct FunnelBend {
  int portal;  // index into the portal arrays
  bool left;
};

struct FunnelOutcome {
  double length = 0.0;
  std::vector<Vec2> points;       // p, bends..., q (all in the f0 frame)
  std::vector<FunnelBend> bends;  // which portal endpoint each bend pins
};

inline FunnelOutcome string_pull(Vec2 p, const std::vector<Vec2>& left,
                                 const std::vector<Vec2>& right, Vec2 q) {
  // left/right hold the crossed portals; a terminal degenerate portal {q,q}
  // is appended internally.
  constexpr double kEps = 1e-13;
  std::vector<Vec2> L{p};
  std::vector<Vec2> R{p};
  L.insert(L.end(), left.begin(), left.end());
  R.insert(R.end(), right.begin(), right.end());
  L.push_back(q);
  R.push_back(q);

  FunnelOutcome out;
  out.points.push_back(p);

  Vec2 apex = p, pl = p, pr = p;
  int apex_i = 0, left_i = 0, right_i = 0;
  for (int i = 1; i < static_cast<int>(L.size()); ++i) {
    const Vec2 nl = L[static_cast<size_t>(i)], nr = R[static_cast<size_t>(i)];
    // Tighten the right side: the new endpoint narrows the funnel when it
    // lies on or to the left of the current right ray (tri_area2 > 0 means
    // "left of").
    if (tri_area2(apex, pr, nr) >= -kEps) {
      if (distance(apex, pr) < kEps || tri_area2(apex, pl, nr) < kEps) {
        pr = nr;
        right_i = i;
      } else {
        // Narrowing crossed the left boundary: the left endpoint becomes
        // the new apex and the scan restarts from it.
        out.points.push_back(pl);
        out.bends.push_back({left_i, true});
        apex = pl;
        apex_i = left_i;
        pl = apex;
        pr = apex;
        left_i = apex_i;
        right_i = apex_i;
        i = apex_i;
        continue;
      }
    }
    // Tighten the left side, symmetrically.
    if (tri_area2(apex, pl, nl) <= kEps) {
      if (distance(apex, pl) < kEps || tri_area2(apex, pr, nl) > -kEps) {
        pl = nl;
        left_i = i;
      } else {
        out.points.push_back(pr);
        out.bends.push_back({right_i, false});
        apex = pr;
        apex_i = right_i;
        pl = apex;
        pr = apex;
        left_i = apex_i;
        right_i = apex_i;
        i = apex_i;
        continue;
      }
    }
  }
  out.points.push_back(q);
  for (size_t i = 1; i < out.points.size(); ++i)
    out.length += distance(out.points[i - 1], out.points[i]);
  return out;
}

}  // namespace detail

class GeodesicEngine {
 public:
  explicit GeodesicEngine(const Tiling& t) : t_(t) {}

  const Tiling& tiling() const { return t_; }

  GeodesicResult distance(SurfacePoint a, SurfacePoint b,
                          GeodesicOptions opt = {}) {
    const CanonicalPoint ca = canonicalize(t_, a);
    const CanonicalPoint cb = canonicalize(t_, b);

    GeodesicResult best;
    best.touches_boundary = touches_boundary(ca) || touches_boundary(cb);

    // Within one chart the straight chord realizes the metric.
    if (ca.sp.face == cb.sp.face) {
      const double d = penthull::distance(ca.sp.xy, cb.sp.xy);
      best.lower = best.upper = d;
      best.tol_met = true;
      best.path = {ca.sp, cb.sp};
      return best;
    }
    if (ca.kind == PointKind::kVertex && cb.kind == PointKind::kVertex &&
        ca.vertex == cb.vertex) {
      best.lower = best.upper = 0.0;
      best.tol_met = true;
      best.path = {ca.sp};
      return best;
    }

    const double comb_lower = combinatorial_lower(ca, cb);
    best.lower = comb_lower;

    for (int k = opt.initial_steiner; k <= opt.max_steiner; k *= 2) {
      const Graph& g = graph(k);
      const auto dres = dijkstra_pair(g, ca.sp, cb.sp);
      if (!dres) break;  // disconnected (cannot happen in valid complexes)

      double cur_upper = dres->dist;
      double cur_chord = 0.0;
      std::vector<SurfacePoint> cur_path{ca.sp, cb.sp};
      bool cur_boundary = touches_boundary(ca) || touches_boundary(cb);

      // Corridor -> portals -> taut path and unfolded chord.
      const auto corridor = build_corridor(g, *dres, ca.sp, cb.sp);
      if (corridor) {
        const auto pull = pull_through(*corridor, ca.sp, cb.sp);
        cur_upper = std::min(cur_upper, pull.taut);
        cur_chord = pull.chord;
        cur_path = pull.path;
        for (const SurfacePoint& sp : pull.path) {
          const CanonicalPoint cp = canonicalize(t_, sp);
          if (touches_boundary(cp)) cur_boundary = true;
        }
      }

      if (cur_upper < best.upper || best.path.empty()) {
        // The chord bound belongs to the corridor of the best witness, so it
        // is replaced (not maxed) whenever the witness improves.
        best.upper = cur_upper;
        best.path = cur_path;
        best.steiner_used = k;
        best.touches_boundary = cur_boundary;
        best.lower = std::max(comb_lower, std::min(cur_chord, best.upper));
      }

      if (best.upper - best.lower <= opt.tol) {
        best.tol_met = true;
        return best;
      }
    }

    if (opt.strict)
      throw precision_error("geodesic bracket width " +
                                std::to_string(best.upper - best.lower) +
                                " exceeds tolerance",
                            best);
    return best;
  }

  // Upper bounds on the geodesic distance from x to every vertex, via the
  // Steiner graph; entries beyond cutoff are +infinity.
  std::vector<double> vertex_upper_bounds(SurfacePoint x, double cutoff,
                                          int steiner = 8) {
    const CanonicalPoint cx = canonicalize(t_, x);
    const Graph& g = graph(steiner);
    std::vector<double> dist;
    dijkstra_from(g, cx.sp, cutoff, dist);
    dist.resize(static_cast<size_t>(t_.vertex_count()));
    return dist;
  }

  // Metric ball as a sub-complex: the tiles all of whose corners have
  // certified upper bound <= r (with a hair of slack so unit-edge paths of
  // integer length land inside integer radii exactly).
  Tiling::Patch ball_metric(SurfacePoint x, double r, int steiner = 8) {
    if (r < 0.0) throw domain_error("ball_metric: negative radius");
    const double slack = r * 1e-12 + 1e-12;
    const auto dist = vertex_upper_bounds(x, r + 1.0, steiner);
    std::vector<FaceId> keep;
    for (FaceId f = 0; f < t_.face_count(); ++f) {
      bool all = true;
      for (VertexId v : t_.face(f).cycle)
        if (!(dist[static_cast<size_t>(v)] <= r + slack)) {
          all = false;
          break;
        }
      if (all) keep.push_back(f);
    }
    Tiling::Patch p;
    if (keep.empty()) {
      p.tiling = Tiling::isolated_vertex();
      const CanonicalPoint cx = canonicalize(t_, x);
      p.vertex_map = {cx.kind == PointKind::kVertex
                          ? cx.vertex
                          : t_.face(cx.sp.face).cycle[0]};
    } else {
      p = t_.subcomplex(keep);
    }
    for (VertexId v = 0; v < t_.vertex_count(); ++v)
      if (t_.on_boundary(v) && dist[static_cast<size_t>(v)] <= r + slack) {
        p.truncated = true;
        break;
      }
    return p;
  }

 private:
  struct Graph {
    int k = 0;
    int per_face = 0;    // 5 corners + 5k edge nodes
    int node_count = 0;  // V + E k
    std::vector<std::int32_t> face_nodes;  // F * per_face node ids
    std::vector<Vec2> face_pos;            // chart position, same layout
    std::vector<int> nf_start;             // node -> faces (CSR)
    std::vector<FaceId> nf_face;
  };

  struct DijkstraPairResult {
    double dist = 0.0;
    std::vector<std::int32_t> node_path;  // settled nodes, source side first
  };

  struct PullResult {
    double taut = 0.0;
    double chord = 0.0;
    std::vector<SurfacePoint> path;
  };

  struct Corridor {
    std::vector<FaceId> faces;
    std::vector<int> slots;  // slots[i]: edge slot in faces[i] toward faces[i+1]
  };

  bool touches_boundary(const CanonicalPoint& cp) const {
    switch (cp.kind) {
      case PointKind::kVertex:
        return t_.on_boundary(cp.vertex);
      case PointKind::kEdge:
        return t_.edge(cp.edge).boundary();
      case PointKind::kInterior:
        for (EdgeId e : t_.face(cp.sp.face).edges)
          if (t_.edge(e).boundary()) return true;
        return false;
    }
    return false;
  }

  double combinatorial_lower(const CanonicalPoint& ca,
                             const CanonicalPoint& cb) const {
    // d >= d'(u, w)/3 - |a - u| - |b - w| for corner vertices u, w of the
    // carrying faces (unit-edge distances dominate a third of the metric).
    const auto anchor = [&](const CanonicalPoint& c) {
      if (c.kind == PointKind::kVertex)
        return std::pair<VertexId, double>(c.vertex, 0.0);
      const Face& fc = t_.face(c.sp.face);
      VertexId bestv = fc.cycle[0];
      double bestd = 1e300;
      for (int i = 0; i < 5; ++i) {
        const double d = penthull::distance(c.sp.xy, chart_corner(i));
        if (d < bestd) {
          bestd = d;
          bestv = fc.cycle[static_cast<size_t>(i)];
        }
      }
      return std::pair<VertexId, double>(bestv, bestd);
    };
    const auto [u, offa] = anchor(ca);
    const auto [w, offb] = anchor(cb);
    if (u == w) return 0.0;
    const int dprime = t_.edge_distance(u, w);
    if (dprime < 0) return 0.0;
    return std::max(0.0, dprime / 3.0 - offa - offb);
  }

  const Graph& graph(int k) {
    auto it = graphs_.find(k);
    if (it != graphs_.end()) return it->second;
    Graph g;
    g.k = k;
    g.per_face = 5 + 5 * k;
    const int V = t_.vertex_count(), E = t_.edge_count(), F = t_.face_count();
    g.node_count = V + E * k;
    g.face_nodes.resize(static_cast<size_t>(F) * g.per_face);
    g.face_pos.resize(g.face_nodes.size());
    for (FaceId f = 0; f < F; ++f) {
      const Face& fc = t_.face(f);
      size_t w = static_cast<size_t>(f) * g.per_face;
      for (int i = 0; i < 5; ++i, ++w) {
        g.face_nodes[w] = fc.cycle[static_cast<size_t>(i)];
        g.face_pos[w] = chart_corner(i);
      }
      for (int i = 0; i < 5; ++i) {
        const EdgeId e = fc.edges[static_cast<size_t>(i)];
        const bool forward = fc.cycle[static_cast<size_t>(i)] == t_.edge(e).u;
        const Vec2 a = chart_corner(i), b = chart_corner((i + 1) % 5);
        for (int j = 1; j <= k; ++j, ++w) {
          g.face_nodes[w] = V + e * k + (j - 1);
          const double s = static_cast<double>(j) / (k + 1);
          g.face_pos[w] = forward ? a + (b - a) * s : b + (a - b) * s;
        }
      }
    }
    // node -> faces
    g.nf_start.assign(static_cast<size_t>(g.node_count) + 1, 0);
    for (std::int32_t n : g.face_nodes) ++g.nf_start[static_cast<size_t>(n) + 1];
    for (size_t i = 1; i < g.nf_start.size(); ++i)
      g.nf_start[i] += g.nf_start[i - 1];
    g.nf_face.resize(g.face_nodes.size());
    {
      std::vector<int> fill(g.nf_start.begin(), g.nf_start.end() - 1);
      for (FaceId f = 0; f < F; ++f)
        for (int j = 0; j < g.per_face; ++j) {
          const std::int32_t n =
              g.face_nodes[static_cast<size_t>(f) * g.per_face + j];
          g.nf_face[static_cast<size_t>(fill[static_cast<size_t>(n)]++)] = f;
        }
    }
    return graphs_.emplace(k, std::move(g)).first->second;
  }

  // Single-source shortest paths from point x (in face x.face's chart).
  // Stops once the frontier passes `cutoff`; with a target the search also
  // stops as soon as no unsettled node can improve the best point-to-point
  // estimate, which it reports through out_best/out_best_node.
  void dijkstra_from(const Graph& g, SurfacePoint x, double cutoff,
                     std::vector<double>& dist,
                     std::vector<std::int32_t>* parent = nullptr,
                     const SurfacePoint* target = nullptr,
                     double* out_best = nullptr,
                     std::int32_t* out_best_node = nullptr) const {
    const double inf = std::numeric_limits<double>::infinity();
    dist.assign(static_cast<size_t>(g.node_count), inf);
    if (parent) parent->assign(static_cast<size_t>(g.node_count), -1);
    using Item = std::pair<double, std::int32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;

    // Nodes of the target face, keyed by their slot there (for the final leg).
    std::vector<int> target_slot;
    double best = inf;
    std::int32_t best_node = -1;
    size_t tb = 0;
    if (target) {
      target_slot.assign(static_cast<size_t>(g.node_count), -1);
      tb = static_cast<size_t>(target->face) * g.per_face;
      for (int j = 0; j < g.per_face; ++j)
        target_slot[static_cast<size_t>(g.face_nodes[tb + static_cast<size_t>(j)])] = j;
    }

    const size_t base = static_cast<size_t>(x.face) * g.per_face;
    for (int j = 0; j < g.per_face; ++j) {
      const std::int32_t n = g.face_nodes[base + static_cast<size_t>(j)];
      const double d = penthull::distance(g.face_pos[base + static_cast<size_t>(j)], x.xy);
      if (d < dist[static_cast<size_t>(n)]) {
        dist[static_cast<size_t>(n)] = d;
        heap.push({d, n});
      }
    }
    while (!heap.empty()) {
      const auto [d, n] = heap.top();
      heap.pop();
      if (d > dist[static_cast<size_t>(n)]) continue;
      if (d > cutoff) break;
      if (target) {
        if (d >= best) break;  // no remaining node can improve the estimate
        const int j = target_slot[static_cast<size_t>(n)];
        if (j >= 0) {
          const double cand =
              d + penthull::distance(g.face_pos[tb + static_cast<size_t>(j)], target->xy);
          if (cand < best) {
            best = cand;
            best_node = n;
          }
        }
      }
      for (int fi = g.nf_start[static_cast<size_t>(n)];
           fi < g.nf_start[static_cast<size_t>(n) + 1]; ++fi) {
        const FaceId f = g.nf_face[static_cast<size_t>(fi)];
        const size_t fb = static_cast<size_t>(f) * g.per_face;
        // position of n inside f
        Vec2 pn;
        for (int j = 0; j < g.per_face; ++j)
          if (g.face_nodes[fb + static_cast<size_t>(j)] == n) {
            pn = g.face_pos[fb + static_cast<size_t>(j)];
            break;
          }
        for (int j = 0; j < g.per_face; ++j) {
          const std::int32_t m = g.face_nodes[fb + static_cast<size_t>(j)];
          if (m == n) continue;
          const double nd =
              d + penthull::distance(pn, g.face_pos[fb + static_cast<size_t>(j)]);
          if (nd < dist[static_cast<size_t>(m)]) {
            dist[static_cast<size_t>(m)] = nd;
            if (parent) (*parent)[static_cast<size_t>(m)] = n;
            heap.push({nd, m});
          }
        }
      }
    }
    if (out_best) *out_best = best;
    if (out_best_node) *out_best_node = best_node;
  }

  std::optional<DijkstraPairResult> dijkstra_pair(const Graph& g,
                                                  SurfacePoint a,
                                                  SurfacePoint b) const {
    std::vector<double> dist;
    std::vector<std::int32_t> parent;
    double best = std::numeric_limits<double>::infinity();
    std::int32_t best_node = -1;
    dijkstra_from(g, a, std::numeric_limits<double>::infinity(), dist, &parent,
                  &b, &best, &best_node);
    if (best_node < 0) return std::nullopt;
    DijkstraPairResult out;
    out.dist = best;
    for (std::int32_t n = best_node; n >= 0; n = parent[static_cast<size_t>(n)])
      out.node_path.push_back(n);
    std::reverse(out.node_path.begin(), out.node_path.end());
    return out;
  }

  // Faces of node n (from the graph CSR).
  std::vector<FaceId> faces_of(const Graph& g, std::int32_t n) const {
    return {g.nf_face.begin() + g.nf_start[static_cast<size_t>(n)],
            g.nf_face.begin() + g.nf_start[static_cast<size_t>(n) + 1]};
  }

  static bool contains(const std::vector<FaceId>& v, FaceId f) {
    return std::find(v.begin(), v.end(), f) != v.end();
  }

  // Edge slot of face `from` leading to face `to`, or -1.
  int slot_toward(FaceId from, FaceId to) const {
    for (int i = 0; i < 5; ++i)
      if (neighbor_face(t_, from, i) == to) return i;
    return -1;
  }

  // Fan of faces around vertex x from face f to face target (exclusive of f,
  // inclusive of target), turning in one direction; nullopt when the
  // boundary interrupts.
  std::optional<std::vector<FaceId>> fan_around(VertexId x, FaceId f,
                                                FaceId target,
                                                bool ccw) const {
    std::vector<FaceId> chain;
    FaceId cur = f;
    for (int guard = 0; guard < 64; ++guard) {
      // corner of x in cur
      int c = -1;
      const Face& fc = t_.face(cur);
      for (int i = 0; i < 5; ++i)
        if (fc.cycle[static_cast<size_t>(i)] == x) c = i;
      if (c < 0) return std::nullopt;
      const int slot = ccw ? c : mod5(c - 1);
      const FaceId nxt = neighbor_face(t_, cur, slot);
      if (nxt == kInvalidId) return std::nullopt;
      chain.push_back(nxt);
      if (nxt == target) return chain;
      cur = nxt;
    }
    return std::nullopt;
  }

  std::optional<Corridor> build_corridor(const Graph& g,
                                         const DijkstraPairResult& d,
                                         SurfacePoint a, SurfacePoint b) const {
    std::vector<FaceId> faces{a.face};
    const auto push_face = [&](FaceId f) {
      if (faces.back() != f) faces.push_back(f);
    };

    // Waypoint faces: for each consecutive node pair choose a common face,
    // bridging vertex pivots with a fan.
    const std::vector<std::int32_t>& nodes = d.node_path;
    if (nodes.empty()) return std::nullopt;
    for (size_t i = 0; i <= nodes.size(); ++i) {
      // Hop i runs from nodes[i-1] (or the source point) to nodes[i] (or the
      // target point); its carrying faces contain both hop endpoints.
      const std::vector<FaceId> fs = i < nodes.size()
                                         ? faces_of(g, nodes[i])
                                         : std::vector<FaceId>{b.face};
      std::vector<FaceId> shared;
      if (i == 0) {
        shared = fs;  // seeded nodes lie in a.face already
      } else {
        const std::vector<FaceId> prev_fs = faces_of(g, nodes[i - 1]);
        for (FaceId f : fs)
          if (contains(prev_fs, f)) shared.push_back(f);
      }
      FaceId cur = faces.back();
      if (contains(shared, cur)) continue;
      // Prefer an edge-adjacent hop face.
      FaceId chosen = kInvalidId;
      for (FaceId f : shared)
        if (slot_toward(cur, f) >= 0) {
          chosen = f;
          break;
        }
      if (chosen != kInvalidId) {
        push_face(chosen);
        continue;
      }
      if (shared.empty()) return std::nullopt;
      // Vertex pivot: the previous node must be a vertex shared by cur and
      // the hop face; bridge with the shorter unobstructed fan.
      chosen = shared.front();
      if (i == 0 || nodes[i - 1] >= t_.vertex_count()) return std::nullopt;
      const VertexId x = nodes[i - 1];
      const auto fan_a = fan_around(x, cur, chosen, true);
      const auto fan_b = fan_around(x, cur, chosen, false);
      const std::optional<std::vector<FaceId>>* pick = nullptr;
      if (fan_a && (!fan_b || fan_a->size() <= fan_b->size())) pick = &fan_a;
      else if (fan_b) pick = &fan_b;
      if (!pick) return std::nullopt;
      for (FaceId f : **pick) push_face(f);
    }
    push_face(b.face);

    Corridor c;
    c.faces = std::move(faces);
    c.slots.resize(c.faces.size() - 1);
    for (size_t i = 0; i + 1 < c.faces.size(); ++i) {
      const int s = slot_toward(c.faces[i], c.faces[i + 1]);
      if (s < 0) return std::nullopt;
      c.slots[i] = s;
    }
    return c;
  }

  PullResult pull_through(const Corridor& c, SurfacePoint a,
                          SurfacePoint b) const {
    // Unfold the corridor into a.face's frame.
    std::vector<Affine> into_f0(c.faces.size());
    into_f0[0] = Affine::identity();
    std::vector<Vec2> left, right;
    for (size_t i = 0; i + 1 < c.faces.size(); ++i) {
      const int s = c.slots[i];
      into_f0[i + 1] = into_f0[i].after(unfold_across(t_, c.faces[i], s));
      left.push_back(into_f0[i](chart_corner((s + 1) % 5)));
      right.push_back(into_f0[i](chart_corner(s)));
    }
    const Vec2 q = into_f0.back()(b.xy);

    const auto funnel = detail::string_pull(a.xy, left, right, q);

    PullResult out;
    out.taut = funnel.length;
    out.chord = penthull::distance(a.xy, q);
    out.path.push_back({a.face, a.xy});
    for (const auto& bend : funnel.bends) {
      // Portal j sits between corridor faces j-1 and j (1-based in the
      // funnel arrays because of the leading pseudo portal).
      const int j = bend.portal - 1;
      if (j < 0 || j >= static_cast<int>(c.slots.size())) continue;
      const Face& fc = t_.face(c.faces[static_cast<size_t>(j)]);
      const int s = c.slots[static_cast<size_t>(j)];
      const VertexId w = bend.left ? fc.cycle[static_cast<size_t>((s + 1) % 5)]
                                   : fc.cycle[static_cast<size_t>(s)];
      out.path.push_back(surface_point_at_vertex(t_, w));
    }
    out.path.push_back({b.face, b.xy});
    return out;
  }

  const Tiling& t_;
  std::map<int, Graph> graphs_;
};

// One-shot convenience wrapper.
inline GeodesicResult geodesic_distance(const Tiling& t, SurfacePoint a,
                                        SurfacePoint b,
                                        GeodesicOptions opt = {}) {
  GeodesicEngine engine(t);
  return engine.distance(a, b, opt);
}

}  // namespace penthull
