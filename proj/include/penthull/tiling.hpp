#pragma once

// Decorated pentagonal cell complexes: construction from facial cycles,
// structural validation, subdivision, supertile generation, combinatorial
// (unit-edge) distances, combinatorial balls, and de-substitution.
//
// A Tiling is an immutable orientable 2-complex in which every face is a
// combinatorial pentagon stored as a counterclockwise vertex cycle. Edges and
// all incidence tables are derived from the facial cycles at construction.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "penthull/core.hpp"
#include "penthull/subdivision_data.hpp"

namespace penthull {

struct Face {
  std::array<VertexId, 5> cycle{};  // counterclockwise corner vertices
  std::array<EdgeId, 5> edges{};    // edges[i] joins cycle[i], cycle[i+1]
  Decoration dec;
};

struct Edge {
  VertexId u = kInvalidId;  // u < v
  VertexId v = kInvalidId;
  std::array<FaceId, 2> face{kInvalidId, kInvalidId};
  std::array<std::int8_t, 2> side{-1, -1};  // cycle position within face[k]

  bool boundary() const { return face[1] == kInvalidId; }
};

// Hierarchical address of a face produced by subdivision.
struct FaceAddress {
  FaceId parent = kInvalidId;
  std::uint8_t slot = 0;  // 0..4 petal at parent cycle position, 5 center
};

struct ValidateOptions {
  bool require_disk = true;  // single boundary cycle and Euler number 1
};

class Tiling {
 public:
  struct FaceSpec {
    std::array<VertexId, 5> cycle{};
    Decoration dec;
  };

  // Builds a complex from facial cycles. Vertex ids must be dense in
  // [0, vertex_count); pass vertex_count = -1 to use max id + 1. Throws
  // validation_error if an edge would belong to more than two faces or a
  // cycle repeats a vertex.
  explicit Tiling(const std::vector<FaceSpec>& specs, int vertex_count = -1) {
    build(specs, vertex_count);
  }

  // The one-face seed complex (generation 0) with vertices 0..4.
  static Tiling single_tile(Decoration dec = {TileType::kCenter, 0}) {
    std::vector<FaceSpec> specs(1);
    specs[0].cycle = {0, 1, 2, 3, 4};
    specs[0].dec = dec;
    return Tiling(specs);
  }

  // A complex holding one isolated vertex and no cells.
  static Tiling isolated_vertex() { return Tiling({}, 1); }

  // ----------------------------------------------------------- accessors ---

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }

  const Face& face(FaceId f) const { return faces_[static_cast<size_t>(f)]; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<size_t>(e)]; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }

  int level() const { return level_; }
  bool has_addresses() const { return !addresses_.empty(); }
  FaceAddress address(FaceId f) const {
    if (!has_addresses()) throw domain_error("tiling has no parent addresses");
    return addresses_[static_cast<size_t>(f)];
  }
  const std::shared_ptr<const Tiling>& parent() const { return parent_; }

  // Number of incident edges.
  int degree(VertexId v) const {
    return ve_start_[static_cast<size_t>(v) + 1] - ve_start_[static_cast<size_t>(v)];
  }
  bool on_boundary(VertexId v) const {
    return vertex_on_boundary_[static_cast<size_t>(v)] != 0;
  }

  // Incident edge ids of v, in ascending order.
  std::vector<EdgeId> incident_edges(VertexId v) const {
    return {ve_edge_.begin() + ve_start_[static_cast<size_t>(v)],
            ve_edge_.begin() + ve_start_[static_cast<size_t>(v) + 1]};
  }

  // Incident (face, corner) pairs of v, ascending by face id.
  struct FaceCorner {
    FaceId face;
    std::uint8_t corner;
  };
  std::vector<FaceCorner> incident_corners(VertexId v) const {
    std::vector<FaceCorner> out;
    for (int k = vfc_start_[static_cast<size_t>(v)];
         k < vfc_start_[static_cast<size_t>(v) + 1]; ++k) {
      out.push_back({vfc_face_[static_cast<size_t>(k)],
                     vfc_corner_[static_cast<size_t>(k)]});
    }
    return out;
  }

  VertexId other_endpoint(EdgeId e, VertexId v) const {
    const Edge& ed = edges_[static_cast<size_t>(e)];
    return ed.u == v ? ed.v : ed.u;
  }

  EdgeId edge_between(VertexId a, VertexId b) const {
    for (int k = ve_start_[static_cast<size_t>(a)];
         k < ve_start_[static_cast<size_t>(a) + 1]; ++k) {
      const EdgeId e = ve_edge_[static_cast<size_t>(k)];
      if (other_endpoint(e, a) == b) return e;
    }
    return kInvalidId;
  }

  // Position of edge e within face f's edge array, or -1.
  int face_edge_index(FaceId f, EdgeId e) const {
    const Face& fc = faces_[static_cast<size_t>(f)];
    for (int i = 0; i < 5; ++i)
      if (fc.edges[static_cast<size_t>(i)] == e) return i;
    return -1;
  }

  // Boundary cycles, each rotated to start at its smallest vertex, sorted by
  // that vertex. A disk complex has exactly one.
  const std::vector<std::vector<VertexId>>& boundary_cycles() const {
    return boundary_cycles_;
  }
  const std::vector<VertexId>& boundary() const {
    static const std::vector<VertexId> kEmpty;
    return boundary_cycles_.empty() ? kEmpty : boundary_cycles_.front();
  }

  // ---------------------------------------------------------- validation ---

  // Returns human-readable descriptions of violated invariants (empty = ok).
  std::vector<std::string> validate(ValidateOptions opt = {}) const {
    std::vector<std::string> issues;
    auto complain = [&issues](std::string msg) { issues.push_back(std::move(msg)); };

    if (faces_.empty()) {
      if (vertex_count_ != 1 || !edges_.empty())
        complain("cell-free complex must be a single isolated vertex");
      return issues;
    }

    for (FaceId f = 0; f < face_count(); ++f) {
      const Face& fc = faces_[static_cast<size_t>(f)];
      for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j)
          if (fc.cycle[static_cast<size_t>(i)] == fc.cycle[static_cast<size_t>(j)])
            complain("face " + std::to_string(f) + " repeats a vertex");
        const Edge& ed = edges_[static_cast<size_t>(fc.edges[static_cast<size_t>(i)])];
        const VertexId a = fc.cycle[static_cast<size_t>(i)];
        const VertexId b = fc.cycle[static_cast<size_t>((i + 1) % 5)];
        if (std::minmax(a, b) != std::minmax(ed.u, ed.v))
          complain("face " + std::to_string(f) + " edge table mismatch");
      }
      if (fc.dec.orient > 4) complain("face " + std::to_string(f) + " bad orient");
    }

    // Orientability: the two sides of an interior edge traverse it in
    // opposite directions.
    for (EdgeId e = 0; e < edge_count(); ++e) {
      const Edge& ed = edges_[static_cast<size_t>(e)];
      if (ed.boundary()) continue;
      const auto dir = [&](int k) {
        const Face& fc = faces_[static_cast<size_t>(ed.face[static_cast<size_t>(k)])];
        return fc.cycle[static_cast<size_t>(ed.side[static_cast<size_t>(k)])] == ed.u;
      };
      if (dir(0) == dir(1))
        complain("edge " + std::to_string(e) + " has inconsistent orientation");
    }

    for (VertexId v = 0; v < vertex_count(); ++v)
      if (degree(v) == 0) complain("isolated vertex " + std::to_string(v));

    // Each boundary vertex must lie on exactly two boundary edges.
    std::vector<int> bdeg(static_cast<size_t>(vertex_count_), 0);
    int boundary_edges = 0;
    for (const Edge& ed : edges_) {
      if (!ed.boundary()) continue;
      ++boundary_edges;
      ++bdeg[static_cast<size_t>(ed.u)];
      ++bdeg[static_cast<size_t>(ed.v)];
    }
    for (VertexId v = 0; v < vertex_count(); ++v) {
      if (bdeg[static_cast<size_t>(v)] != 0 && bdeg[static_cast<size_t>(v)] != 2)
        complain("pinched boundary at vertex " + std::to_string(v));
    }
    int cycle_total = 0;
    for (const auto& c : boundary_cycles_) cycle_total += static_cast<int>(c.size());
    if (cycle_total != boundary_edges) complain("boundary walk incomplete");

    // Connectivity over edges.
    {
      std::vector<char> seen(static_cast<size_t>(vertex_count_), 0);
      std::vector<VertexId> stack{0};
      seen[0] = 1;
      while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (int k = ve_start_[static_cast<size_t>(v)];
             k < ve_start_[static_cast<size_t>(v) + 1]; ++k) {
          const VertexId w = other_endpoint(ve_edge_[static_cast<size_t>(k)], v);
          if (!seen[static_cast<size_t>(w)]) {
            seen[static_cast<size_t>(w)] = 1;
            stack.push_back(w);
          }
        }
      }
      if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        complain("complex is not connected");
    }

    if (opt.require_disk) {
      if (vertex_count_ - edge_count() + face_count() != 1)
        complain("Euler number is not 1");
      if (boundary_cycles_.size() != 1)
        complain("boundary is not a single cycle");
    }
    return issues;
  }

  bool valid(ValidateOptions opt = {}) const { return validate(opt).empty(); }

  // True when no two edge-adjacent tiles carry the same decoration relative
  // to the shared edge: across every interior edge, the pairs
  // (type, side_index - orient mod 5) on the two sides differ.
  bool adjacent_decorations_differ() const {
    for (const Edge& ed : edges_) {
      if (ed.boundary()) continue;
      const auto label = [&](int k) {
        const Face& fc = faces_[static_cast<size_t>(ed.face[static_cast<size_t>(k)])];
        return std::pair<TileType, int>(
            fc.dec.type, mod5(ed.side[static_cast<size_t>(k)] - fc.dec.orient));
      };
      if (label(0) == label(1)) return false;
    }
    return true;
  }

  // ---------------------------------------------------------- subdivision ---

  // Splits every pentagon into six per the template in subdivision_data.hpp.
  // Vertex ids: originals keep their id; the midpoint of edge e becomes
  // V + e; interior vertex z_j of face f becomes V + E + 5 f + j. Child face
  // ids: face f yields children 6 f + slot. The result keeps a shared-pointer
  // chain to its ancestors and per-face addresses.
  friend Tiling subdivide(const Tiling& t) {
    const int V = t.vertex_count(), E = t.edge_count(), F = t.face_count();
    std::vector<FaceSpec> specs(static_cast<size_t>(F) * 6);
    for (FaceId f = 0; f < F; ++f) {
      const Face& fc = t.face(f);
      for (int s = 0; s < 6; ++s) {
        FaceSpec& out = specs[static_cast<size_t>(f) * 6 + static_cast<size_t>(s)];
        for (int i = 0; i < 5; ++i) {
          const SubVertexRef r = kChildTemplates[static_cast<size_t>(s)]
                                     .cycle[static_cast<size_t>(i)];
          switch (r.kind) {
            case SubVertexKind::kParentCorner:
              out.cycle[static_cast<size_t>(i)] = fc.cycle[r.index];
              break;
            case SubVertexKind::kEdgeMid:
              out.cycle[static_cast<size_t>(i)] = V + fc.edges[r.index];
              break;
            case SubVertexKind::kInterior:
              out.cycle[static_cast<size_t>(i)] = V + E + 5 * f + r.index;
              break;
          }
        }
        out.dec = child_decoration(fc.dec, s);
      }
    }
    Tiling child(specs, V + E + 5 * F);
    child.level_ = t.level_ + 1;
    child.parent_ = std::make_shared<const Tiling>(t);
    child.addresses_.resize(static_cast<size_t>(F) * 6);
    for (FaceId f = 0; f < F; ++f)
      for (int s = 0; s < 6; ++s)
        child.addresses_[static_cast<size_t>(f) * 6 + static_cast<size_t>(s)] =
            {f, static_cast<std::uint8_t>(s)};
    return child;
  }

  // Level cap for supertile generation; override with PENTHULL_MAX_LEVEL.
  static int max_level() {
    if (const char* env = std::getenv("PENTHULL_MAX_LEVEL")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 7;
  }

  // ------------------------------------------------------------ distances ---

  // Unit-edge graph distances from `source`; entries beyond `cutoff` (when
  // cutoff >= 0) and unreachable vertices are -1.
  std::vector<std::int32_t> bfs_distances(VertexId source, int cutoff = -1) const {
    std::vector<std::int32_t> dist(static_cast<size_t>(vertex_count_), -1);
    dist[static_cast<size_t>(source)] = 0;
    std::queue<VertexId> q;
    q.push(source);
    while (!q.empty()) {
      const VertexId v = q.front();
      q.pop();
      const std::int32_t dv = dist[static_cast<size_t>(v)];
      if (cutoff >= 0 && dv >= cutoff) continue;
      for (int k = ve_start_[static_cast<size_t>(v)];
           k < ve_start_[static_cast<size_t>(v) + 1]; ++k) {
        const VertexId w = other_endpoint(ve_edge_[static_cast<size_t>(k)], v);
        if (dist[static_cast<size_t>(w)] < 0) {
          dist[static_cast<size_t>(w)] = dv + 1;
          q.push(w);
        }
      }
    }
    return dist;
  }

  int edge_distance(VertexId a, VertexId b) const {
    if (a == b) return 0;
    const auto dist = bfs_distances(a);
    return dist[static_cast<size_t>(b)];
  }

  // -------------------------------------------------------------- patches ---

  struct Patch;

  // Standalone copy of the given faces (sorted unique host ids expected) with
  // id maps back into this complex.
  Patch subcomplex(const std::vector<FaceId>& face_ids) const;

  // Combinatorial ball: all tiles whose five corners lie within unit-edge
  // distance n of v, plus v itself (as an isolated vertex when no tile
  // qualifies). `truncated` reports whether a host-boundary vertex lies
  // within distance n, i.e. whether a larger host could enlarge the ball.
  Patch ball(VertexId v, int n) const;

  // ------------------------------------------------------ de-substitution ---

  struct DesubstituteResult;

  // Reassembles the parent complex from a grouping of faces: parent_of[f] in
  // [0, P) names the parent of face f. Throws recognizability_error when the
  // grouping is not the image of the subdivision rule.
  DesubstituteResult desubstitute(const std::vector<std::int32_t>& parent_of) const;

  // parent_of grouping induced by this complex's own addresses.
  std::vector<std::int32_t> canonical_decomposition() const {
    if (!has_addresses())
      throw domain_error("canonical_decomposition: no parent addresses");
    std::vector<std::int32_t> parent_of(static_cast<size_t>(face_count()));
    for (FaceId f = 0; f < face_count(); ++f)
      parent_of[static_cast<size_t>(f)] = addresses_[static_cast<size_t>(f)].parent;
    return parent_of;
  }

 private:
  Tiling() = default;

  void build(const std::vector<FaceSpec>& specs, int vertex_count) {
    faces_.resize(specs.size());
    std::int64_t max_id = -1;
    for (const FaceSpec& s : specs)
      for (VertexId v : s.cycle) {
        if (v < 0) throw validation_error("negative vertex id");
        max_id = std::max<std::int64_t>(max_id, v);
      }
    vertex_count_ = vertex_count >= 0 ? vertex_count : static_cast<int>(max_id + 1);
    if (max_id >= vertex_count_)
      throw validation_error("vertex id exceeds declared vertex count");
    if (vertex_count_ <= 0) throw validation_error("empty complex");

    std::unordered_map<std::uint64_t, EdgeId> edge_of;
    edge_of.reserve(specs.size() * 4);
    for (FaceId f = 0; f < static_cast<FaceId>(specs.size()); ++f) {
      Face& fc = faces_[static_cast<size_t>(f)];
      fc.cycle = specs[static_cast<size_t>(f)].cycle;
      fc.dec = specs[static_cast<size_t>(f)].dec;
      for (int i = 0; i < 5; ++i) {
        const VertexId a = fc.cycle[static_cast<size_t>(i)];
        const VertexId b = fc.cycle[static_cast<size_t>((i + 1) % 5)];
        if (a == b) throw validation_error("degenerate edge in facial cycle");
        const auto [lo, hi] = std::minmax(a, b);
        const std::uint64_t key =
            (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint32_t>(hi);
        auto [it, inserted] = edge_of.try_emplace(
            key, static_cast<EdgeId>(edges_.size()));
        if (inserted) edges_.push_back(Edge{lo, hi, {kInvalidId, kInvalidId}, {-1, -1}});
        Edge& ed = edges_[static_cast<size_t>(it->second)];
        if (ed.face[0] == kInvalidId) {
          ed.face[0] = f;
          ed.side[0] = static_cast<std::int8_t>(i);
        } else if (ed.face[1] == kInvalidId) {
          ed.face[1] = f;
          ed.side[1] = static_cast<std::int8_t>(i);
        } else {
          throw validation_error("edge shared by more than two faces");
        }
        fc.edges[static_cast<size_t>(i)] = it->second;
      }
    }

    build_incidence();
    build_boundary();
  }

  void build_incidence() {
    ve_start_.assign(static_cast<size_t>(vertex_count_) + 1, 0);
    for (const Edge& ed : edges_) {
      ++ve_start_[static_cast<size_t>(ed.u) + 1];
      ++ve_start_[static_cast<size_t>(ed.v) + 1];
    }
    for (size_t i = 1; i < ve_start_.size(); ++i) ve_start_[i] += ve_start_[i - 1];
    ve_edge_.resize(static_cast<size_t>(edges_.size()) * 2);
    {
      std::vector<int> fill(ve_start_.begin(), ve_start_.end() - 1);
      for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
        ve_edge_[static_cast<size_t>(fill[static_cast<size_t>(edges_[static_cast<size_t>(e)].u)]++)] = e;
        ve_edge_[static_cast<size_t>(fill[static_cast<size_t>(edges_[static_cast<size_t>(e)].v)]++)] = e;
      }
    }

    vfc_start_.assign(static_cast<size_t>(vertex_count_) + 1, 0);
    for (const Face& fc : faces_)
      for (VertexId v : fc.cycle) ++vfc_start_[static_cast<size_t>(v) + 1];
    for (size_t i = 1; i < vfc_start_.size(); ++i) vfc_start_[i] += vfc_start_[i - 1];
    vfc_face_.resize(static_cast<size_t>(faces_.size()) * 5);
    vfc_corner_.resize(vfc_face_.size());
    {
      std::vector<int> fill(vfc_start_.begin(), vfc_start_.end() - 1);
      for (FaceId f = 0; f < static_cast<FaceId>(faces_.size()); ++f)
        for (int i = 0; i < 5; ++i) {
          const VertexId v = faces_[static_cast<size_t>(f)].cycle[static_cast<size_t>(i)];
          const int k = fill[static_cast<size_t>(v)]++;
          vfc_face_[static_cast<size_t>(k)] = f;
          vfc_corner_[static_cast<size_t>(k)] = static_cast<std::uint8_t>(i);
        }
    }
  }

  void build_boundary() {
    vertex_on_boundary_.assign(static_cast<size_t>(vertex_count_), 0);
    // Boundary dart of a boundary edge: opposite to the unique facial
    // traversal. Map its start vertex to (end vertex, edge).
    std::unordered_map<VertexId, std::pair<VertexId, EdgeId>> next;
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
      const Edge& ed = edges_[static_cast<size_t>(e)];
      if (!ed.boundary()) continue;
      vertex_on_boundary_[static_cast<size_t>(ed.u)] = 1;
      vertex_on_boundary_[static_cast<size_t>(ed.v)] = 1;
      const Face& fc = faces_[static_cast<size_t>(ed.face[0])];
      const VertexId from = fc.cycle[static_cast<size_t>(ed.side[0])];
      const VertexId to = fc.cycle[static_cast<size_t>((ed.side[0] + 1) % 5)];
      next.emplace(to, std::make_pair(from, e));  // reversed traversal
    }
    std::vector<char> used(edges_.size(), 0);
    std::vector<VertexId> starts;
    for (const auto& [start, arrow] : next) starts.push_back(start);
    std::sort(starts.begin(), starts.end());
    for (VertexId start : starts) {
      auto it = next.find(start);
      if (it == next.end() || used[static_cast<size_t>(it->second.second)]) continue;
      std::vector<VertexId> cycle;
      VertexId cur = start;
      while (true) {
        auto jt = next.find(cur);
        if (jt == next.end() || used[static_cast<size_t>(jt->second.second)]) break;
        used[static_cast<size_t>(jt->second.second)] = 1;
        cycle.push_back(cur);
        cur = jt->second.first;
        if (cur == start) break;
      }
      if (!cycle.empty()) {
        const auto smallest = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), smallest, cycle.end());
        boundary_cycles_.push_back(std::move(cycle));
      }
    }
    std::sort(boundary_cycles_.begin(), boundary_cycles_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }

  std::vector<Face> faces_;
  std::vector<Edge> edges_;
  int vertex_count_ = 0;
  int level_ = 0;
  std::vector<FaceAddress> addresses_;
  std::shared_ptr<const Tiling> parent_;

  std::vector<int> ve_start_;
  std::vector<EdgeId> ve_edge_;
  std::vector<int> vfc_start_;
  std::vector<FaceId> vfc_face_;
  std::vector<std::uint8_t> vfc_corner_;
  std::vector<std::uint8_t> vertex_on_boundary_;
  std::vector<std::vector<VertexId>> boundary_cycles_;
};

// A standalone sub-complex together with id maps into its host.
struct Tiling::Patch {
  Tiling tiling;
  std::vector<VertexId> vertex_map;  // patch vertex -> host vertex (ascending)
  std::vector<EdgeId> edge_map;      // patch edge -> host edge
  std::vector<FaceId> face_map;      // patch face -> host face (ascending)
  bool truncated = false;

  // Patch-local id of a host vertex, or -1.
  VertexId local_vertex(VertexId host) const {
    const auto it = std::lower_bound(vertex_map.begin(), vertex_map.end(), host);
    if (it == vertex_map.end() || *it != host) return kInvalidId;
    return static_cast<VertexId>(it - vertex_map.begin());
  }
  FaceId local_face(FaceId host) const {
    const auto it = std::lower_bound(face_map.begin(), face_map.end(), host);
    if (it == face_map.end() || *it != host) return kInvalidId;
    return static_cast<FaceId>(it - face_map.begin());
  }
};

inline Tiling::Patch Tiling::subcomplex(const std::vector<FaceId>& face_ids) const {
  Patch p;
  p.face_map = face_ids;
  std::vector<VertexId> verts;
  verts.reserve(face_ids.size() * 5);
  for (FaceId f : face_ids)
    for (VertexId v : face(f).cycle) verts.push_back(v);
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  p.vertex_map = verts;

  std::vector<FaceSpec> specs(face_ids.size());
  for (size_t k = 0; k < face_ids.size(); ++k) {
    const Face& fc = face(face_ids[k]);
    specs[k].dec = fc.dec;
    for (int i = 0; i < 5; ++i) {
      const auto it = std::lower_bound(verts.begin(), verts.end(),
                                       fc.cycle[static_cast<size_t>(i)]);
      specs[k].cycle[static_cast<size_t>(i)] =
          static_cast<VertexId>(it - verts.begin());
    }
  }
  p.tiling = Tiling(specs, static_cast<int>(verts.size()));
  p.edge_map.resize(static_cast<size_t>(p.tiling.edge_count()));
  for (EdgeId e = 0; e < p.tiling.edge_count(); ++e) {
    const Edge& ed = p.tiling.edge(e);
    p.edge_map[static_cast<size_t>(e)] =
        edge_between(verts[static_cast<size_t>(ed.u)], verts[static_cast<size_t>(ed.v)]);
  }
  return p;
}

inline Tiling::Patch Tiling::ball(VertexId v, int n) const {
  if (v < 0 || v >= vertex_count_) throw domain_error("ball: vertex out of range");
  if (n < 0) throw domain_error("ball: negative radius");
  const auto dist = bfs_distances(v, n);
  std::vector<FaceId> keep;
  for (FaceId f = 0; f < face_count(); ++f) {
    bool all = true;
    for (VertexId w : face(f).cycle)
      if (dist[static_cast<size_t>(w)] < 0) {
        all = false;
        break;
      }
    if (all) keep.push_back(f);
  }
  Patch p;
  if (keep.empty()) {
    p.tiling = Tiling::isolated_vertex();
    p.vertex_map = {v};
  } else {
    p = subcomplex(keep);
  }
  p.truncated = false;
  if (faces_.empty()) {
    p.truncated = true;  // a bare vertex knows nothing beyond itself
  } else {
    for (VertexId w = 0; w < vertex_count_; ++w)
      if (vertex_on_boundary_[static_cast<size_t>(w)] && dist[static_cast<size_t>(w)] >= 0) {
        p.truncated = true;
        break;
      }
  }
  return p;
}

struct Tiling::DesubstituteResult {
  Tiling parent;
  std::vector<VertexId> vertex_map;  // parent vertex -> child-complex vertex
  std::vector<FaceId> center_child;  // parent face -> its center child face
};

inline Tiling::DesubstituteResult Tiling::desubstitute(
    const std::vector<std::int32_t>& parent_of) const {
  if (static_cast<int>(parent_of.size()) != face_count())
    throw domain_error("desubstitute: grouping size mismatch");
  std::int32_t ngroups = 0;
  for (std::int32_t g : parent_of) {
    if (g < 0) throw domain_error("desubstitute: negative group id");
    ngroups = std::max(ngroups, g + 1);
  }
  std::vector<std::vector<FaceId>> groups(static_cast<size_t>(ngroups));
  for (FaceId f = 0; f < face_count(); ++f)
    groups[static_cast<size_t>(parent_of[static_cast<size_t>(f)])].push_back(f);

  auto fail = [](const std::string& why) -> void {
    throw recognizability_error("desubstitute: " + why);
  };

  std::vector<FaceSpec> specs(static_cast<size_t>(ngroups));
  std::vector<FaceId> centers(static_cast<size_t>(ngroups), kInvalidId);
  for (std::int32_t g = 0; g < ngroups; ++g) {
    const auto& members = groups[static_cast<size_t>(g)];
    if (members.size() != 6) fail("group " + std::to_string(g) + " is not six tiles");

    // The center child is the unique member all of whose neighbors lie in the
    // group.
    FaceId center = kInvalidId;
    for (FaceId f : members) {
      bool internal = true;
      for (EdgeId e : face(f).edges) {
        const Edge& ed = edge(e);
        const FaceId other = ed.face[0] == f ? ed.face[1] : ed.face[0];
        if (other == kInvalidId ||
            parent_of[static_cast<size_t>(other)] != g) {
          internal = false;
          break;
        }
      }
      if (internal) {
        if (center != kInvalidId) fail("group " + std::to_string(g) + " has two centers");
        center = f;
      }
    }
    if (center == kInvalidId) fail("group " + std::to_string(g) + " has no center tile");
    const Face& cf = face(center);
    if (cf.dec.type != TileType::kCenter)
      fail("center tile of group " + std::to_string(g) + " is not center-typed");
    centers[static_cast<size_t>(g)] = center;

    // Petal opposite center edge i, with the shared edge located inside the
    // petal's own cycle.
    std::array<FaceId, 5> petal{};
    std::array<int, 5> corner_pos{};
    int delta = -1;
    for (int i = 0; i < 5; ++i) {
      const Edge& ed = edge(cf.edges[static_cast<size_t>(i)]);
      const FaceId pf = ed.face[0] == center ? ed.face[1] : ed.face[0];
      if (pf == kInvalidId || parent_of[static_cast<size_t>(pf)] != g)
        fail("center of group " + std::to_string(g) + " touches a foreign tile");
      const Face& pfc = face(pf);
      if (pfc.dec.type != TileType::kPetal)
        fail("non-petal tile beside center in group " + std::to_string(g));
      const int k = face_edge_index(pf, cf.edges[static_cast<size_t>(i)]);
      const int c = (k + 3) % 5;  // petal corner vertex position
      const int d = mod5(pfc.dec.orient - c);
      if (delta < 0) delta = d;
      if (d != delta || (delta != kPetalOrient[0] && delta != kPetalOrient[1]))
        fail("petal orientations of group " + std::to_string(g) + " disagree");
      petal[static_cast<size_t>(i)] = pf;
      corner_pos[static_cast<size_t>(i)] = c;
    }

    // Stitch checks: petal i's cycle around the shared edge must read
    // (corner, mid, z_{i+1}, z_i, mid') consistently with the center and with
    // petal i+1.
    for (int i = 0; i < 5; ++i) {
      const Face& pfc = face(petal[static_cast<size_t>(i)]);
      const int c = corner_pos[static_cast<size_t>(i)];
      const VertexId zi = cf.cycle[static_cast<size_t>(i)];
      const VertexId zi1 = cf.cycle[static_cast<size_t>((i + 1) % 5)];
      if (pfc.cycle[static_cast<size_t>((c + 2) % 5)] != zi1 ||
          pfc.cycle[static_cast<size_t>((c + 3) % 5)] != zi)
        fail("petal " + std::to_string(i) + " of group " + std::to_string(g) +
             " is not glued to the center correctly");
      const Face& nfc = face(petal[static_cast<size_t>((i + 1) % 5)]);
      const int nc = corner_pos[static_cast<size_t>((i + 1) % 5)];
      if (pfc.cycle[static_cast<size_t>((c + 1) % 5)] !=
          nfc.cycle[static_cast<size_t>((nc + 4) % 5)])
        fail("petals " + std::to_string(i) + "," + std::to_string((i + 1) % 5) +
             " of group " + std::to_string(g) + " do not share a midpoint");
    }

    FaceSpec& spec = specs[static_cast<size_t>(g)];
    for (int i = 0; i < 5; ++i)
      spec.cycle[static_cast<size_t>(i)] =
          face(petal[static_cast<size_t>(i)])
              .cycle[static_cast<size_t>(corner_pos[static_cast<size_t>(i)])];
    spec.dec.type = delta == kPetalOrient[0] ? TileType::kCenter : TileType::kPetal;
    spec.dec.orient = cf.dec.orient;
  }

  // Compact the corner vertex ids.
  std::vector<VertexId> verts;
  for (const FaceSpec& s : specs)
    for (VertexId v : s.cycle) verts.push_back(v);
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<FaceSpec> compact = specs;
  for (FaceSpec& s : compact)
    for (VertexId& v : s.cycle) {
      const auto it = std::lower_bound(verts.begin(), verts.end(), v);
      v = static_cast<VertexId>(it - verts.begin());
    }

  DesubstituteResult out{Tiling(compact, static_cast<int>(verts.size())),
                         std::move(verts), std::move(centers)};
  const auto issues = out.parent.validate({/*require_disk=*/false});
  if (!issues.empty()) throw recognizability_error("desubstitute: " + issues.front());
  return out;
}

// Generation-n supertile: the seed tile subdivided n times, ancestors kept.
inline Tiling make_supertile(int n, Decoration seed = {TileType::kCenter, 0}) {
  if (n < 0) throw domain_error("make_supertile: negative level");
  if (n > Tiling::max_level())
    throw resource_limit_error("make_supertile: level " + std::to_string(n) +
                               " exceeds cap " + std::to_string(Tiling::max_level()) +
                               " (set PENTHULL_MAX_LEVEL to raise)");
  Tiling t = Tiling::single_tile(seed);
  for (int i = 0; i < n; ++i) t = subdivide(t);
  return t;
}

}  // namespace penthull
