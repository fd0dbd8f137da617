// A short tour of the library: build nested subdivisions, measure both
// metrics, compare pointed patterns, and render a picture.

#include <cstdio>

#include "penthull/geodesic.hpp"
#include "penthull/hull.hpp"
#include "penthull/json_io.hpp"
#include "penthull/svg.hpp"
#include "penthull/tiling.hpp"

using namespace penthull;

int main() {
  // Iterated subdivision of a single pentagon: six cells per cell per level.
  const Tiling k3 = make_supertile(3);
  std::printf("level-3 complex: %d vertices, %d edges, %d faces, rim %zu\n",
              k3.vertex_count(), k3.edge_count(), k3.face_count(),
              k3.boundary().size());

  // Unit-edge distance: hops along the edge graph.
  const VertexId a = 0, b = k3.vertex_count() / 2;
  std::printf("unit-edge distance %d -> %d: %d hops\n", a, b,
              k3.edge_distance(a, b));

  // Geodesic distance: a certified bracket from corridor refinement.
  GeodesicEngine engine(k3);
  const GeodesicResult g = engine.distance(surface_point_at_vertex(k3, a),
                                           surface_point_at_vertex(k3, b));
  std::printf("geodesic bracket: [%.6f, %.6f] via %zu waypoints\n", g.lower,
              g.upper, g.path.size());

  // Pointed patterns: how far apart two marked neighborhoods are. Use the
  // vertex with the largest certified radius so distances have room to show.
  VertexId deep = 0;
  for (VertexId v = 0; v < k3.vertex_count(); ++v)
    if (certified_radius(k3, surface_point_at_vertex(k3, v)) >
        certified_radius(k3, surface_point_at_vertex(k3, deep)))
      deep = v;
  const PointedPatch A = pointed_ball(k3, deep, 8);
  const HullDistance self = hull_distance(A, A);
  const HullDistance moved = hull_distance(A, omega_pointed(A));
  std::printf("pointed-pattern brackets: self [%.4f, %.4f], "
              "after one subdivision [%.4f, %.4f]\n",
              self.lower, self.upper, moved.lower, moved.upper);

  // Every complete radius-2 vertex ball, up to isomorphism.
  const auto net = epsilon_net(2, 4);
  std::printf("radius-2 ball classes in the level-4 complex: %zu\n",
              net.size());

  // Pictures and documents.
  const std::string svg = render_svg(make_supertile(2));
  const std::string doc = to_text(patch_to_json(make_supertile(1)));
  std::printf("level-2 SVG: %zu bytes; level-1 JSON: %zu bytes\n", svg.size(),
              doc.size());
  return 0;
}
