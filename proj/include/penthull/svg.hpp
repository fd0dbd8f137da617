#pragma once

// SVG rendering of nested subdivisions inside the canonical pentagon chart.
// Each leaf cell's outline is pulled from its own chart back to the root
// chart through the inverse affine pieces along the face's address chain.
// Pulled-back edges stay straight one level down but bend across piece
// boundaries deeper in, so outlines are sampled densely and emitted as
// polylines. Output is plain text with fixed 9-decimal coordinates, so a
// given complex always renders to the identical byte sequence.

#include <cstdio>
#include <string>
#include <vector>

#include "penthull/chart.hpp"
#include "penthull/core.hpp"
#include "penthull/partition.hpp"
#include "penthull/submap.hpp"
#include "penthull/tiling.hpp"

namespace penthull {

inline constexpr int kMaxRenderDepth = 6;

struct RenderOptions {
  int samples_per_edge = 12;  // outline sampling density per leaf edge
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

// Fill per decoration: cool shades for center tiles, warm for petals,
// indexed by orientation.
inline const char* svg_fill(Decoration dec) {
  static const char* center[5] = {"#5b8dc9", "#4a7ab8", "#6da0d6", "#3d69a6",
                                  "#7fb2e3"};
  static const char* petal[5] = {"#e8b04b", "#d99a3c", "#f2c55e", "#c9862f",
                                 "#f7d37a"};
  return dec.type == TileType::kCenter
             ? center[dec.orient % 5]
             : petal[dec.orient % 5];
}

struct RootPoint {
  Vec2 xy;
  FaceId root = 0;  // face index in the top-most ancestor complex
};

// Walks a leaf-chart point up the whole address chain: classify against the
// child chart's target triangles, apply the inverse piece, repeat.
inline RootPoint pull_to_root(const Tiling& t, FaceId leaf, Vec2 y) {
  const Tiling* cur = &t;
  FaceId f = leaf;
  while (cur->has_addresses() && cur->parent()) {
    const FaceAddress addr = cur->address(f);
    const RegionId r = child_region_at(addr.slot, y);
    y = PartitionData::get().piece(r).map.inverse()(y);
    f = addr.parent;
    cur = cur->parent().get();
  }
  return {y, f};
}

}  // namespace detail

// Renders the nested partition picture of `t`: every tile drawn inside the
// canonical pentagon of its root ancestor; multiple root faces are laid out
// side by side. Depth (subdivision level) is capped at kMaxRenderDepth.
inline std::string render_svg(const Tiling& t, RenderOptions opt = {}) {
  if (t.level() > kMaxRenderDepth)
    throw resource_limit_error("render_svg: depth beyond " +
                               std::to_string(kMaxRenderDepth));
  if (opt.samples_per_edge < 1) opt.samples_per_edge = 1;

  // Count root faces for the layout strip.
  const Tiling* top = &t;
  while (top->has_addresses() && top->parent()) top = top->parent().get();
  const int roots = top->face_count();

  const double pitch = 2.0;  // root chart spacing along x
  const double half = 0.95;  // canonical pentagon fits in [-0.95, 0.95]
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
  out += detail::svg_num(-half) + " " + detail::svg_num(-half) + " " +
         detail::svg_num(2.0 * half + pitch * (roots - 1)) + " " +
         detail::svg_num(2.0 * half) + "\">\n";
  out += "<g stroke=\"#1c1c1c\" stroke-width=\"0.004\" "
         "stroke-linejoin=\"round\" fill-opacity=\"0.88\">\n";

  const int s = opt.samples_per_edge;
  for (FaceId f = 0; f < t.face_count(); ++f) {
    std::string d;
    for (int i = 0; i < 5; ++i) {
      const Vec2 a = chart_corner(i);
      const Vec2 b = chart_corner((i + 1) % 5);
      for (int k = 0; k < s; ++k) {
        const double u = static_cast<double>(k) / s;
        const auto rp =
            detail::pull_to_root(t, f, {a.x + (b.x - a.x) * u,
                                        a.y + (b.y - a.y) * u});
        const double x = rp.xy.x + pitch * rp.root;
        d += (d.empty() ? "M " : "L ");
        d += detail::svg_num(x) + " " + detail::svg_num(-rp.xy.y) + " ";
      }
    }
    d += "Z";
    out += "<path fill=\"";
    out += detail::svg_fill(t.face(f).dec);
    out += "\" d=\"" + d + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace penthull
