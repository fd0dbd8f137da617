#pragma once

// Decoration-preserving cell maps between pentagonal complexes: rooted
// isomorphism, injective embeddings (pattern occurrences), automorphism
// orbits, and a canonical code for rooted complexes (used for ball censuses).
//
// All maps here are orientation-preserving: a face may land on a face only by
// a cyclic rotation of its counterclockwise cycle, never a reflection, and
// the decoration (type, distinguished-edge index) must be carried exactly.
// Maps are propagated over darts (face corners), so they are determined by
// the image of a single dart.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "penthull/core.hpp"
#include "penthull/tiling.hpp"

namespace penthull {

// ------------------------------------------------------------------- darts --

using DartId = std::int32_t;  // 5 * face + corner

inline constexpr DartId make_dart(FaceId f, int corner) {
  return 5 * f + corner;
}
inline constexpr FaceId dart_face(DartId d) { return d / 5; }
inline constexpr int dart_corner(DartId d) { return d % 5; }

inline VertexId dart_vertex(const Tiling& t, DartId d) {
  return t.face(dart_face(d)).cycle[static_cast<size_t>(dart_corner(d))];
}
inline DartId dart_next(DartId d) {
  return make_dart(dart_face(d), (dart_corner(d) + 1) % 5);
}
// Opposite dart across the underlying edge, or kInvalidId on the boundary.
inline DartId dart_twin(const Tiling& t, DartId d) {
  const Face& fc = t.face(dart_face(d));
  const Edge& ed = t.edge(fc.edges[static_cast<size_t>(dart_corner(d))]);
  const int k = (ed.face[0] == dart_face(d) && ed.side[0] == dart_corner(d)) ? 1 : 0;
  if (ed.face[static_cast<size_t>(k)] == kInvalidId) return kInvalidId;
  return make_dart(ed.face[static_cast<size_t>(k)], ed.side[static_cast<size_t>(k)]);
}

// Smallest dart based at vertex v.
inline DartId first_dart_at(const Tiling& t, VertexId v) {
  const auto corners = t.incident_corners(v);
  if (corners.empty()) return kInvalidId;
  return make_dart(corners.front().face, corners.front().corner);
}

// ---------------------------------------------------------------- cell map --

// A decoration-preserving, orientation-preserving injective map of cell
// complexes, stored per cell. face_rot[f] = r means corner i of f lands on
// corner (i + r) mod 5 of face_map[f].
struct CellMap {
  std::vector<FaceId> face_map;
  std::vector<std::int8_t> face_rot;
  std::vector<VertexId> vertex_map;
  std::vector<EdgeId> edge_map;

  DartId map_dart(DartId d) const {
    const FaceId f = dart_face(d);
    return make_dart(face_map[static_cast<size_t>(f)],
                     (dart_corner(d) + face_rot[static_cast<size_t>(f)]) % 5);
  }
};

// Grows the unique decoration-preserving map of P into H sending dart dp to
// dart dh, propagating across shared edges until all faces of P are mapped.
// Returns nullopt when the propagation hits a contradiction: decoration
// mismatch, an interior edge of P forced onto the boundary of H, or a cell
// collision (the map must be injective). Requires P to be dart-connected
// (true for every ball and supertile patch produced here).
inline std::optional<CellMap> embed_from(const Tiling& P, DartId dp,
                                         const Tiling& H, DartId dh) {
  if (P.face_count() == 0 || H.face_count() == 0) return std::nullopt;

  CellMap m;
  m.face_map.assign(static_cast<size_t>(P.face_count()), kInvalidId);
  m.face_rot.assign(static_cast<size_t>(P.face_count()), 0);
  m.vertex_map.assign(static_cast<size_t>(P.vertex_count()), kInvalidId);
  m.edge_map.assign(static_cast<size_t>(P.edge_count()), kInvalidId);
  std::vector<char> used_face(static_cast<size_t>(H.face_count()), 0);
  std::vector<char> used_vertex(static_cast<size_t>(H.vertex_count()), 0);
  std::vector<char> used_edge(static_cast<size_t>(H.edge_count()), 0);

  std::queue<FaceId> pending;

  const auto assign_face = [&](FaceId f, FaceId g, int rot) -> bool {
    if (m.face_map[static_cast<size_t>(f)] != kInvalidId) {
      return m.face_map[static_cast<size_t>(f)] == g &&
             m.face_rot[static_cast<size_t>(f)] == rot;
    }
    const Face& pf = P.face(f);
    const Face& hf = H.face(g);
    if (pf.dec.type != hf.dec.type) return false;
    if (hf.dec.orient != mod5(pf.dec.orient + rot)) return false;
    if (used_face[static_cast<size_t>(g)]) return false;

    for (int i = 0; i < 5; ++i) {
      const VertexId vp = pf.cycle[static_cast<size_t>(i)];
      const VertexId vh = hf.cycle[static_cast<size_t>((i + rot) % 5)];
      if (m.vertex_map[static_cast<size_t>(vp)] == kInvalidId) {
        if (used_vertex[static_cast<size_t>(vh)]) return false;
        m.vertex_map[static_cast<size_t>(vp)] = vh;
        used_vertex[static_cast<size_t>(vh)] = 1;
      } else if (m.vertex_map[static_cast<size_t>(vp)] != vh) {
        return false;
      }
    }
    for (int i = 0; i < 5; ++i) {
      const EdgeId ep = pf.edges[static_cast<size_t>(i)];
      const EdgeId eh = hf.edges[static_cast<size_t>((i + rot) % 5)];
      if (m.edge_map[static_cast<size_t>(ep)] == kInvalidId) {
        if (used_edge[static_cast<size_t>(eh)]) return false;
        m.edge_map[static_cast<size_t>(ep)] = eh;
        used_edge[static_cast<size_t>(eh)] = 1;
      } else if (m.edge_map[static_cast<size_t>(ep)] != eh) {
        return false;
      }
    }
    m.face_map[static_cast<size_t>(f)] = g;
    m.face_rot[static_cast<size_t>(f)] = static_cast<std::int8_t>(rot);
    used_face[static_cast<size_t>(g)] = 1;
    pending.push(f);
    return true;
  };

  if (!assign_face(dart_face(dp), dart_face(dh),
                   mod5(dart_corner(dh) - dart_corner(dp))))
    return std::nullopt;

  while (!pending.empty()) {
    const FaceId f = pending.front();
    pending.pop();
    for (int i = 0; i < 5; ++i) {
      const DartId d = make_dart(f, i);
      const DartId dt = dart_twin(P, d);
      if (dt == kInvalidId) continue;  // boundary of the pattern: free
      const DartId hd = m.map_dart(d);
      const DartId ht = dart_twin(H, hd);
      if (ht == kInvalidId) return std::nullopt;  // interior forced onto boundary
      if (!assign_face(dart_face(dt), dart_face(ht),
                       mod5(dart_corner(ht) - dart_corner(dt))))
        return std::nullopt;
    }
  }

  for (FaceId f = 0; f < P.face_count(); ++f)
    if (m.face_map[static_cast<size_t>(f)] == kInvalidId)
      return std::nullopt;  // pattern not dart-connected
  return m;
}

// True when every face is reachable from face 0 across interior edges. Maps
// are propagated over shared edges, so patterns must satisfy this for
// embed_from to be a complete search; balls in these complexes always do
// (asserted by the test suite), and callers below guard on it.
inline bool dart_connected(const Tiling& T) {
  if (T.face_count() == 0) return true;
  std::vector<char> seen(static_cast<size_t>(T.face_count()), 0);
  std::vector<FaceId> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const FaceId f = stack.back();
    stack.pop_back();
    for (int i = 0; i < 5; ++i) {
      const DartId tw = dart_twin(T, make_dart(f, i));
      if (tw == kInvalidId) continue;
      const FaceId g = dart_face(tw);
      if (!seen[static_cast<size_t>(g)]) {
        seen[static_cast<size_t>(g)] = 1;
        ++reached;
        stack.push_back(g);
      }
    }
  }
  return reached == T.face_count();
}

// ------------------------------------------------------- rooted isomorphy ---

// Decoration-preserving bijection A -> B taking root vertex a to root b.
inline std::optional<CellMap> rooted_isomorphism(const Tiling& A, VertexId a,
                                                 const Tiling& B, VertexId b) {
  if (A.vertex_count() != B.vertex_count() || A.edge_count() != B.edge_count() ||
      A.face_count() != B.face_count())
    return std::nullopt;
  if (A.face_count() == 0) {
    // Two rooted isolated vertices are trivially isomorphic.
    CellMap m;
    m.vertex_map = {b};
    return m;
  }
  const DartId da = first_dart_at(A, a);
  if (da == kInvalidId) return std::nullopt;  // root not on any cell
  if (!dart_connected(A))
    throw domain_error("rooted_isomorphism: complex not edge-connected through faces");
  for (const auto& [g, corner] : B.incident_corners(b)) {
    auto m = embed_from(A, da, B, make_dart(g, corner));
    if (m) return m;  // injective + equal counts = bijective
  }
  return std::nullopt;
}

inline bool rooted_isomorphic(const Tiling& A, VertexId a, const Tiling& B,
                              VertexId b) {
  return rooted_isomorphism(A, a, B, b).has_value();
}

// Unrooted decoration-preserving bijection.
inline std::optional<CellMap> isomorphism(const Tiling& A, const Tiling& B) {
  if (A.vertex_count() != B.vertex_count() || A.edge_count() != B.edge_count() ||
      A.face_count() != B.face_count())
    return std::nullopt;
  if (A.face_count() == 0) {
    CellMap m;
    m.vertex_map = {0};
    return m;
  }
  const DartId da = make_dart(0, 0);
  for (FaceId g = 0; g < B.face_count(); ++g)
    for (int c = 0; c < 5; ++c) {
      auto m = embed_from(A, da, B, make_dart(g, c));
      if (m) return m;
    }
  return std::nullopt;
}

// ----------------------------------------------------------- occurrences ---

// All injective decoration-preserving embeddings of pattern P into host H,
// in ascending order of the image of P's dart (0, 0). A pattern with no faces
// is rejected (every vertex would match).
inline std::vector<CellMap> find_occurrences(const Tiling& P, const Tiling& H) {
  if (P.face_count() == 0)
    throw domain_error("find_occurrences: pattern has no tiles");
  std::vector<CellMap> out;
  const DartId dp = make_dart(0, 0);
  for (FaceId g = 0; g < H.face_count(); ++g)
    for (int c = 0; c < 5; ++c) {
      auto m = embed_from(P, dp, H, make_dart(g, c));
      if (m) out.push_back(std::move(*m));
    }
  return out;
}

// Vertices reachable from v by decoration-preserving automorphisms of T,
// sorted ascending (always contains v).
inline std::vector<VertexId> automorphism_orbit(const Tiling& T, VertexId v) {
  std::vector<VertexId> orbit{v};
  if (T.face_count() == 0) return orbit;
  const DartId d0 = make_dart(0, 0);
  for (FaceId g = 0; g < T.face_count(); ++g)
    for (int c = 0; c < 5; ++c) {
      auto m = embed_from(T, d0, T, make_dart(g, c));
      if (m) orbit.push_back(m->vertex_map[static_cast<size_t>(v)]);
    }
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  return orbit;
}

// ---------------------------------------------------------- canonical code --

// A complete invariant of the rooted, decorated, oriented complex: two rooted
// complexes have equal codes iff they are rooted-isomorphic. Encodes a
// breadth-first traversal of the faces from each dart at the root, taking the
// lexicographically smallest encoding over those starting darts.
inline std::vector<std::int32_t> canonical_code(const Tiling& T, VertexId root) {
  if (T.face_count() == 0) return {0, 1};  // isolated vertex

  std::vector<std::int32_t> best;
  std::vector<std::int32_t> face_idx(static_cast<size_t>(T.face_count()));
  std::vector<std::int32_t> vert_idx(static_cast<size_t>(T.vertex_count()));

  for (const auto& [f0, c0] : T.incident_corners(root)) {
    std::fill(face_idx.begin(), face_idx.end(), -1);
    std::fill(vert_idx.begin(), vert_idx.end(), -1);
    std::vector<std::int32_t> code;
    code.push_back(T.face_count());
    code.push_back(T.vertex_count());

    std::int32_t next_face = 0, next_vert = 0;
    // Entry dart (face, corner) per discovered face; corners are read
    // starting from the entry corner so the encoding is label-free.
    std::vector<DartId> entry;
    const auto discover = [&](FaceId f, int corner) {
      if (face_idx[static_cast<size_t>(f)] >= 0) return;
      face_idx[static_cast<size_t>(f)] = next_face++;
      entry.push_back(make_dart(f, corner));
    };
    discover(f0, c0);
    for (size_t head = 0; head < entry.size(); ++head) {
      const FaceId f = dart_face(entry[head]);
      const int c = dart_corner(entry[head]);
      const Face& fc = T.face(f);
      code.push_back(static_cast<std::int32_t>(fc.dec.type));
      code.push_back(mod5(fc.dec.orient - c));
      for (int k = 0; k < 5; ++k) {
        const int i = (c + k) % 5;
        const VertexId v = fc.cycle[static_cast<size_t>(i)];
        if (vert_idx[static_cast<size_t>(v)] < 0)
          vert_idx[static_cast<size_t>(v)] = next_vert++;
        code.push_back(vert_idx[static_cast<size_t>(v)]);
        const DartId tw = dart_twin(T, make_dart(f, i));
        if (tw == kInvalidId) {
          code.push_back(-1);
        } else {
          discover(dart_face(tw), dart_corner(tw));
          code.push_back(face_idx[static_cast<size_t>(dart_face(tw))]);
        }
      }
    }
    if (next_face != T.face_count())
      throw domain_error("canonical_code: complex not edge-connected through faces");

    if (best.empty() || code < best) best = std::move(code);
  }
  return best.empty() ? std::vector<std::int32_t>{0, 1} : best;
}

}  // namespace penthull
