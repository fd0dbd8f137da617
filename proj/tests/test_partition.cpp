#include "penthull/partition.hpp"

#include <random>

#include "catch2/catch_amalgamated.hpp"

using namespace penthull;

namespace {

void check_vec(Vec2 got, Vec2 want, double tol) {
  CHECK(std::abs(got.x - want.x) <= tol);
  CHECK(std::abs(got.y - want.y) <= tol);
}

double polygon_area(const std::vector<Vec2>& poly) {
  double a = 0.0;
  for (size_t i = 0; i < poly.size(); ++i)
    a += poly[i].cross(poly[(i + 1) % poly.size()]);
  return std::abs(a) * 0.5;
}

constexpr double kPentagonArea = 1.7204774005889671;  // 5 / (4 tan(pi/5))

}  // namespace

TEST_CASE("fundamental constants match their frozen decimals") {
  const PartitionData& d = PartitionData::get();
  // Exact closed forms, pinned tightly.
  CHECK(std::abs(d.s - 0.45396847569786736) < 1e-12);
  CHECK(std::abs(kCircumradius - 0.8506508083520399) < 1e-14);
  check_vec(d.p1, {0.22698423784893365, 0.31241700120720093}, 1e-12);
  check_vec(d.q1p, {0.4045084971874737, 0.5567581822058034}, 1e-12);
  check_vec(d.p1p, {0.0, kCircumradius}, 0.0);
  CHECK(std::abs(d.p1.norm() - 0.38616865081873425) < 1e-12);

  // Published four-to-six digit values for the derived matrices.
  CHECK(std::abs(d.M0.spectral_norm() - 2.2028) < 1e-3);
  CHECK(std::abs(d.M1.spectral_norm() - 2.85906) < 1e-3);
  CHECK(std::abs(d.M2.spectral_norm() - 3.39406) < 1e-3);
  CHECK(std::abs(d.M0.inverse().spectral_norm() - 0.453968) < 1e-3);
  CHECK(std::abs(d.M1.inverse().spectral_norm() - 0.453968) < 1e-3);
  CHECK(std::abs(d.M2.inverse().spectral_norm() - 0.538918) < 1e-3);
  CHECK(std::abs(d.M0.det() - 4.85231) < 1e-3);
  CHECK(std::abs(d.M1.det() - 6.29792) < 1e-3);
  CHECK(std::abs(d.M2.det() - 6.29792) < 1e-3);

  // The contraction scale of the inverse center piece equals s (exact in
  // algebra; the conformal spectral norm cancels to ~1e-9 in doubles).
  CHECK(std::abs(d.M0.inverse().spectral_norm() - d.s) < 1e-8);
  // Diagonal route without cancellation: the smaller singular value of the
  // diagonal M1 is its top-left entry, and its reciprocal is exactly s too.
  CHECK(std::abs(1.0 / d.M1.a - d.s) < 1e-14);
}

TEST_CASE("derived matrices take the documented shapes") {
  const PartitionData& d = PartitionData::get();

  // M0 is conformal: scaled rotation by 36 degrees.
  CHECK(std::abs(d.M0.a - d.M0.d) < 1e-12);
  CHECK(std::abs(d.M0.b + d.M0.c) < 1e-12);
  CHECK(std::abs(d.M0.a - 1.7820995) < 1e-6);
  CHECK(std::abs(d.M0.c - 1.29477108) < 1e-6);

  // M1 is diagonal.
  CHECK(std::abs(d.M1.b) < 1e-12);
  CHECK(std::abs(d.M1.c) < 1e-12);
  CHECK(std::abs(d.M1.a - 2.20279613) < 1e-6);
  CHECK(std::abs(d.M1.d - 2.85905818) < 1e-6);

  CHECK(std::abs(d.M2.a - 1.91041506) < 1e-6);
  CHECK(std::abs(d.M2.b - -0.12330309) < 1e-6);
  CHECK(std::abs(d.M2.c - 0.8998564) < 1e-6);
  CHECK(std::abs(d.M2.d - 3.23854608) < 1e-6);

  // The left yellow matrix is the mirror conjugate of the right one.
  const Mat2 conj = Mat2::mirror_y() * d.M2 * Mat2::mirror_y();
  CHECK(std::abs(d.M2L.a - conj.a) < 1e-15);
  CHECK(std::abs(d.M2L.b - conj.b) < 1e-15);

  // The center piece takes the inner pentagon corners to the chart corners.
  for (int j = 0; j < 5; ++j)
    check_vec(d.M0 * d.blue[static_cast<size_t>(j)], chart_corner(j), 1e-12);
}

TEST_CASE("each piece sends its region onto the documented chart triangle") {
  const PartitionData& d = PartitionData::get();
  for (int j = 0; j < 10; ++j) {
    const RegionId orange{RegionKind::kOrange, static_cast<std::uint8_t>(j)};
    const auto poly = d.region_polygon(orange);
    const Affine f = d.piece(orange).map;
    check_vec(f(poly[0]), chart_edge_midpoint(2), 1e-12);
    check_vec(f(poly[1]), chart_corner(j % 2 == 0 ? 3 : 2), 1e-12);
    check_vec(f(poly[2]), chart_corner(0), 1e-12);

    const RegionId yellow{RegionKind::kYellow, static_cast<std::uint8_t>(j)};
    const auto ypoly = d.region_polygon(yellow);
    const Affine g = d.piece(yellow).map;
    check_vec(g(ypoly[0]), chart_corner(j % 2 == 0 ? 3 : 2), 1e-12);
    check_vec(g(ypoly[1]), chart_corner(j % 2 == 0 ? 4 : 1), 1e-12);
    check_vec(g(ypoly[2]), chart_corner(0), 1e-12);

    CHECK(d.piece(orange).child_slot == j / 2);
    CHECK(d.piece(yellow).child_slot == j / 2);
  }
  CHECK(d.piece({RegionKind::kBlue, 0}).child_slot == 5);
}

TEST_CASE("the 21 regions tile the pentagon") {
  const PartitionData& d = PartitionData::get();

  SECTION("areas add up: plain and determinant-weighted") {
    double total = 0.0, weighted = 0.0;
    for (const RegionId r : d.regions()) {
      const auto poly = d.region_polygon(r);
      const double area = polygon_area(poly);
      total += area;
      weighted += std::abs(d.piece(r).map.A.det()) * area;
    }
    CHECK(std::abs(total - kPentagonArea) < 1e-9);
    CHECK(std::abs(weighted - 6.0 * kPentagonArea) < 1e-9);
  }

  SECTION("random points lie in exactly one region interior") {
    std::mt19937_64 rng(2024);
    int strictly_inside = 0, samples = 0;
    for (int k = 0; k < 20000; ++k) {
      const Vec2 p = sample_in_pentagon(rng);
      int count = 0;
      for (const RegionId r : d.regions())
        if (polygon_inset(d.region_polygon(r), p) > 1e-9) ++count;
      CHECK(count <= 1);
      samples++;
      strictly_inside += count;
      // classify agrees with direct membership
      const RegionId c = classify(p);
      CHECK(polygon_inset(d.region_polygon(c), p) >= -1e-9);
    }
    // Region boundaries have measure zero: almost all samples are interior.
    CHECK(strictly_inside > samples * 99 / 100);
  }
}

TEST_CASE("classification precedence at shared boundaries") {
  const PartitionData& d = PartitionData::get();

  // Corners of the inner pentagon belong to blue by precedence.
  CHECK(classify(d.p1) == RegionId{RegionKind::kBlue, 0});
  CHECK(classify(d.blue[2]) == RegionId{RegionKind::kBlue, 0});

  // The mirror axis between the two halves of the top orange triangle picks
  // the even (unmirrored) copy.
  const Vec2 on_axis = (d.q1 + Vec2{0.0, kCircumradius}) * 0.5;
  CHECK(classify(on_axis) == RegionId{RegionKind::kOrange, 0});

  // A point deep inside the right yellow triangle of sector 0.
  const Vec2 yc = (d.p1 + d.q1p + d.p1p) * (1.0 / 3.0);
  CHECK(classify(yc) == RegionId{RegionKind::kYellow, 0});

  // Outside the pentagon: rejected.
  CHECK_THROWS_AS(classify({2.0, 2.0}), domain_error);
}
