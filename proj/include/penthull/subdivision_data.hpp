#pragma once

// The subdivision rule as *data*. Everything a consumer needs to subdivide a
// decorated pentagonal complex is tabulated here: the combinatorial template
// (how one pentagon splits into six) and the decoration rule (how child tiles
// are decorated given the parent's decoration). Code elsewhere only reads
// these tables, so the rule can be reviewed or swapped without touching
// algorithms. Bump the version string on any change.

#include <array>
#include <cstdint>

#include "penthull/core.hpp"

namespace penthull {

inline constexpr const char* kSubdivisionDataVersion = "1";

// Tile alphabet. Every tile of every generated complex carries one type and an
// orientation in 0..4 (the index of its distinguished edge within the stored
// facial cycle). The decorations are chiral: orientation-preserving cell maps
// must match them exactly, reflections are not decoration-preserving.
enum class TileType : std::uint8_t { kCenter = 0, kPetal = 1 };

struct Decoration {
  TileType type = TileType::kCenter;
  std::uint8_t orient = 0;  // distinguished edge index, 0..4

  friend constexpr bool operator==(Decoration a, Decoration b) {
    return a.type == b.type && a.orient == b.orient;
  }
};

// --------------------------------------------------------------- template ---
//
// One pentagon with counterclockwise cycle (v0 .. v4) splits into six
// pentagons: five "petal" children, one per corner, and one "center" child.
// New vertices: one midpoint m_i on each parent edge (v_i, v_{i+1}) and five
// interior vertices z_0 .. z_4 (z_j is the center-child corner adjacent to
// petal j's corner sector).
//
// Child slot s in 0..4 = petal child whose first cycle vertex is parent
// corner v_s; slot 5 = center child.
//
// Cycle entries are symbolic: kParentCorner i -> v_i, kEdgeMid i -> m_i,
// kInterior j -> z_j.

enum class SubVertexKind : std::uint8_t { kParentCorner, kEdgeMid, kInterior };

struct SubVertexRef {
  SubVertexKind kind;
  std::uint8_t index;  // 0..4 within its kind
};

struct ChildTemplate {
  std::array<SubVertexRef, 5> cycle;
};

inline constexpr std::array<ChildTemplate, 6> kChildTemplates = [] {
  using K = SubVertexKind;
  std::array<ChildTemplate, 6> t{};
  for (int s = 0; s < 5; ++s) {
    // Petal at corner v_s: (v_s, m_s, z_{s+1}, z_s, m_{s-1}).
    t[s].cycle[0] = {K::kParentCorner, static_cast<std::uint8_t>(s)};
    t[s].cycle[1] = {K::kEdgeMid, static_cast<std::uint8_t>(s)};
    t[s].cycle[2] = {K::kInterior, static_cast<std::uint8_t>((s + 1) % 5)};
    t[s].cycle[3] = {K::kInterior, static_cast<std::uint8_t>(s)};
    t[s].cycle[4] = {K::kEdgeMid, static_cast<std::uint8_t>((s + 4) % 5)};
  }
  // Center child: (z_0 .. z_4).
  for (int j = 0; j < 5; ++j) {
    t[5].cycle[j] = {K::kInterior, static_cast<std::uint8_t>(j)};
  }
  return t;
}();

// -------------------------------------------------------- decoration rule ---
//
// Child decorations as a function of the parent decoration (type, orient d):
//   - center child: (kCenter, d)   [phase-preserving]
//   - every petal child: (kPetal, kPetalOrient[parent type]) where the petal's
//     cycle starts at its parent-corner vertex.
//
// The petal orientation encodes the parent's type, which is what makes parent
// decorations recoverable from child decorations. The pair (0, 2) is the
// unique phase assignment for which no two edge-adjacent tiles of any
// generation carry the same decoration relative to the shared edge.

inline constexpr std::array<std::uint8_t, 2> kPetalOrient = {0, 2};

inline constexpr Decoration child_decoration(Decoration parent, int slot) {
  if (slot == 5) return {TileType::kCenter, parent.orient};
  return {TileType::kPetal,
          kPetalOrient[static_cast<std::size_t>(parent.type)]};
}

// Number of tile types in the alphabet.
inline constexpr int kTileTypeCount = 2;

// Subdivision is purely combinatorial; geometry (charts, the piecewise-affine
// expansion, drawing positions) lives in chart.hpp / partition.hpp and is
// never consulted by the subdivision algorithm.

}  // namespace penthull
