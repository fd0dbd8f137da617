// Command-line front end: generate subdivision complexes, query metrics and
// pointed-pattern distances, run the verification suites, and render SVG
// pictures. JSON goes to stdout unless -o names a file. Exit codes: 0 on
// success, 1 when a computation or verification fails, 2 on usage errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "penthull/json_io.hpp"
#include "penthull/svg.hpp"
#include "penthull/verify.hpp"

using namespace penthull;

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw validation_error("cannot open for writing: " + out_path);
  f << text;
}

Json read_json(const std::string& path) {
  if (path.empty() || path == "-") return Json::parse(std::cin);
  std::ifstream f(path);
  if (!f) throw validation_error("cannot read: " + path);
  return Json::parse(f);
}

void guard_level(int level) {
  if (level < 0) throw domain_error("level must be nonnegative");
  if (level > Tiling::max_level())
    throw resource_limit_error(
        "level " + std::to_string(level) + " exceeds cap " +
        std::to_string(Tiling::max_level()) +
        " (set PENTHULL_MAX_LEVEL to raise)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "penthull: pentagonal subdivision complexes, certified geodesic "
      "brackets, and pointed-pattern distances"};
  app.require_subcommand(1);

  // ----- gen ---------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a level-n supertile patch");
  int gen_level = 2;
  std::string gen_type = "center";
  int gen_orient = 0;
  std::string gen_out;
  gen->add_option("-n,--level", gen_level, "subdivision level")
      ->capture_default_str();
  gen->add_option("--seed-type", gen_type, "seed tile type (center|petal)")
      ->capture_default_str();
  gen->add_option("--seed-orient", gen_orient, "seed tile orientation 0..4")
      ->check(CLI::Range(0, 4))
      ->capture_default_str();
  gen->add_option("-o,--output", gen_out, "write JSON here instead of stdout");

  // ----- subdivide ---------------------------------------------------------
  auto* sub = app.add_subcommand(
      "subdivide", "subdivide a patch once (from --input, or a generated "
                   "level-n supertile)");
  int sub_level = 1;
  std::string sub_in, sub_out;
  sub->add_option("-n,--level", sub_level, "level of the generated source")
      ->capture_default_str();
  sub->add_option("--input", sub_in, "patch JSON to subdivide ('-' = stdin)");
  sub->add_option("-o,--output", sub_out, "write JSON here instead of stdout");

  // ----- ball --------------------------------------------------------------
  auto* ball = app.add_subcommand(
      "ball", "unit-edge ball around a vertex of a level-n supertile");
  int ball_level = 3, ball_vertex = 0, ball_radius = 2;
  std::string ball_out;
  ball->add_option("-n,--level", ball_level, "subdivision level")
      ->capture_default_str();
  ball->add_option("--vertex", ball_vertex, "center vertex id")
      ->capture_default_str();
  ball->add_option("--radius", ball_radius, "hop radius")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  ball->add_option("-o,--output", ball_out, "write JSON here instead of stdout");

  // ----- dist --------------------------------------------------------------
  auto* dist = app.add_subcommand(
      "dist", "certified geodesic bracket between two vertices");
  int dist_level = 2, dist_from = 0, dist_to = 1;
  double dist_tol = 1e-6;
  std::string dist_out;
  dist->add_option("-n,--level", dist_level, "subdivision level")
      ->capture_default_str();
  dist->add_option("--from", dist_from, "source vertex id")->required();
  dist->add_option("--to", dist_to, "target vertex id")->required();
  dist->add_option("--tol", dist_tol, "bracket width target")
      ->capture_default_str();
  dist->add_option("-o,--output", dist_out, "write JSON here instead of stdout");

  // ----- map-point ---------------------------------------------------------
  auto* mp = app.add_subcommand(
      "map-point", "push a chart point one subdivision level down");
  int mp_level = 1, mp_face = 0;
  std::vector<double> mp_xy{0.0, 0.0};
  std::string mp_in, mp_out;
  mp->add_option("-n,--level", mp_level,
                 "level of the generated host (ignored with --input)")
      ->capture_default_str();
  mp->add_option("--input", mp_in, "patch JSON hosting the point");
  mp->add_option("--face", mp_face, "host face id")->capture_default_str();
  mp->add_option("--xy", mp_xy, "chart coordinates x y")
      ->expected(2)
      ->capture_default_str();
  mp->add_option("-o,--output", mp_out, "write JSON here instead of stdout");

  // ----- hull-dist ----------------------------------------------------------
  auto* hd = app.add_subcommand(
      "hull-dist", "pointed-pattern distance bracket between two patches");
  std::string hd_a, hd_b, hd_out;
  int hd_max_radius = 12;
  hd->add_option("a", hd_a, "first pointed patch JSON file")->required();
  hd->add_option("b", hd_b, "second pointed patch JSON file")->required();
  hd->add_option("--max-radius", hd_max_radius, "largest compared radius")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  hd->add_option("-o,--output", hd_out, "write JSON here instead of stdout");

  // ----- quadpent -----------------------------------------------------------
  auto* qp = app.add_subcommand(
      "quadpent", "three-sector wheel complex with its hub origin");
  int qp_level = 2;
  std::string qp_out;
  qp->add_option("-n,--level", qp_level, "subdivision level")
      ->capture_default_str();
  qp->add_option("-o,--output", qp_out, "write JSON here instead of stdout");

  // ----- eps-net ------------------------------------------------------------
  auto* en = app.add_subcommand(
      "eps-net", "census of complete radius-r vertex balls in a supertile");
  int en_level = 4, en_radius = 2;
  std::string en_out;
  en->add_option("-n,--level", en_level, "census host level")
      ->capture_default_str();
  en->add_option("--radius", en_radius, "ball radius")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  en->add_option("-o,--output", en_out, "write JSON here instead of stdout");

  // ----- chain --------------------------------------------------------------
  auto* ch = app.add_subcommand(
      "chain", "supertile chain above a face of a level-n supertile");
  int ch_level = 3, ch_face = 0, ch_depth = -1;
  std::string ch_out;
  ch->add_option("-n,--level", ch_level, "subdivision level")
      ->capture_default_str();
  ch->add_option("--face", ch_face, "face whose center anchors the chain")
      ->capture_default_str();
  ch->add_option("--depth", ch_depth, "links above the base (default: level)")
      ->capture_default_str();
  ch->add_option("-o,--output", ch_out, "write JSON here instead of stdout");

  // ----- verify ------------------------------------------------------------
  auto* ver = app.add_subcommand("verify", "run verification suites");
  VerifyOptions vopt;
  std::string ver_suite = "all";
  ver->add_option("--suite", ver_suite,
                  "counts | metrics | substitution | hull | all")
      ->check(CLI::IsMember({"counts", "metrics", "substitution", "hull",
                             "all"}))
      ->capture_default_str();
  ver->add_option("-n,--level", vopt.level, "sampling host level")
      ->capture_default_str();
  ver->add_option("--samples", vopt.samples, "sample count scale")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ver->add_option("--seed", vopt.seed, "sampling seed")->capture_default_str();
  ver->add_option("--tol", vopt.tol, "assertion slack")->capture_default_str();

  // ----- render-svg ---------------------------------------------------------
  auto* rs = app.add_subcommand("render-svg",
                                "draw a level-n supertile as nested charts");
  int rs_level = 2, rs_samples = 12;
  std::string rs_out;
  rs->add_option("-n,--level", rs_level, "subdivision level")
      ->capture_default_str();
  rs->add_option("--samples", rs_samples, "outline samples per edge")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rs->add_option("-o,--output", rs_out, "write SVG here instead of stdout");

  // ----- stats --------------------------------------------------------------
  auto* st = app.add_subcommand("stats", "one-line census of a supertile");
  int st_level = 2;
  st->add_option("-n,--level", st_level, "subdivision level")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      guard_level(gen_level);
      const Decoration seed{tile_type_from_name(gen_type),
                            static_cast<std::uint8_t>(gen_orient)};
      emit(to_text(patch_to_json(make_supertile(gen_level, seed))), gen_out);
    } else if (*sub) {
      Tiling t = [&] {
        if (sub->count("--input")) return tiling_from_json(read_json(sub_in));
        guard_level(sub_level + 1);
        return make_supertile(sub_level);
      }();
      emit(to_text(patch_to_json(subdivide(t))), sub_out);
    } else if (*ball) {
      guard_level(ball_level);
      const Tiling t = make_supertile(ball_level);
      if (ball_vertex < 0 || ball_vertex >= t.vertex_count())
        throw domain_error("vertex id out of range");
      const auto b = t.ball(ball_vertex, ball_radius);
      Json j = patch_to_json(b.tiling,
                             b.tiling.vertex_count() > 0
                                 ? std::optional<VertexId>(
                                       b.local_vertex(ball_vertex))
                                 : std::nullopt);
      j["truncated"] = b.truncated;
      emit(to_text(j), ball_out);
    } else if (*dist) {
      guard_level(dist_level);
      const Tiling t = make_supertile(dist_level);
      if (dist_from < 0 || dist_from >= t.vertex_count() || dist_to < 0 ||
          dist_to >= t.vertex_count())
        throw domain_error("vertex id out of range");
      GeodesicEngine engine(t);
      GeodesicOptions gopt;
      gopt.tol = dist_tol;
      const GeodesicResult g =
          engine.distance(surface_point_at_vertex(t, dist_from),
                          surface_point_at_vertex(t, dist_to), gopt);
      emit(to_text(geodesic_result_to_json(g)), dist_out);
    } else if (*mp) {
      Tiling t = [&] {
        if (mp->count("--input")) return tiling_from_json(read_json(mp_in));
        guard_level(mp_level);
        return make_supertile(mp_level);
      }();
      if (mp_face < 0 || mp_face >= t.face_count())
        throw domain_error("face id out of range");
      const MappedPoint m = map_point(t, {mp_face, {mp_xy[0], mp_xy[1]}});
      Json j;
      j["point"] = surface_point_to_json(m.sp);
      j["region"] = region_name(m.region);
      emit(to_text(j), mp_out);
    } else if (*hd) {
      const PointedPatch A = pointed_patch_from_json(read_json(hd_a));
      const PointedPatch B = pointed_patch_from_json(read_json(hd_b));
      HullOptions hopt;
      hopt.max_radius = hd_max_radius;
      emit(to_text(hull_distance_to_json(hull_distance(A, B, hopt))), hd_out);
    } else if (*qp) {
      guard_level(qp_level);
      emit(to_text(pointed_patch_to_json(quadpent_tiling(qp_level))), qp_out);
    } else if (*en) {
      guard_level(en_level);
      emit(to_text(epsilon_net_to_json(epsilon_net(en_radius, en_level),
                                       en_radius, en_level)),
           en_out);
    } else if (*ch) {
      guard_level(ch_level);
      const Tiling t = make_supertile(ch_level);
      if (ch_face < 0 || ch_face >= t.face_count())
        throw domain_error("face id out of range");
      const PointedPatch base{t, SurfacePoint{ch_face, {0.0, 0.0}}, 0.0};
      const int depth = ch_depth < 0 ? ch_level : ch_depth;
      emit(to_text(chain_to_json(supertile_chain(base, depth))), ch_out);
    } else if (*ver) {
      guard_level(vopt.level);
      bool all_pass = true;
      std::string first_fail;
      for (const Report& rep : verify_suites(ver_suite, vopt)) {
        for (const Check& c : rep.checks) {
          std::printf("%s/%s: %s — %s\n", rep.suite.c_str(), c.name.c_str(),
                      c.pass ? "PASS" : "FAIL", c.detail.c_str());
          if (!c.pass && first_fail.empty())
            first_fail = rep.suite + "/" + c.name + ": " + c.detail;
          all_pass = all_pass && c.pass;
        }
      }
      if (!all_pass) {
        std::fprintf(stderr, "verification failed: %s\n", first_fail.c_str());
        return 1;
      }
      std::printf("all checks passed\n");
    } else if (*rs) {
      if (rs_level > kMaxRenderDepth)
        throw resource_limit_error("render depth beyond " +
                                   std::to_string(kMaxRenderDepth));
      guard_level(rs_level);
      RenderOptions ro;
      ro.samples_per_edge = rs_samples;
      emit(render_svg(make_supertile(rs_level), ro), rs_out);
    } else if (*st) {
      guard_level(st_level);
      const Tiling t = make_supertile(st_level);
      std::printf(
          "level %d: vertices %d, edges %d, faces %d, boundary %zu, euler "
          "%d\n",
          st_level, t.vertex_count(), t.edge_count(), t.face_count(),
          t.boundary().size(),
          t.vertex_count() - t.edge_count() + t.face_count());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
