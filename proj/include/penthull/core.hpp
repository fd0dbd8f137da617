#pragma once

// Basic value types shared by every module: 2-D vectors, 2x2 matrices, affine
// maps, id types, and the exception hierarchy.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace penthull {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using FaceId = std::int32_t;
inline constexpr std::int32_t kInvalidId = -1;

inline constexpr double kPi = 3.14159265358979323846;

// ------------------------------------------------------------------ errors --

// Structural invariant of a complex is broken (bad cycles, bad gluing, ...).
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input complex is not a valid image of the subdivision rule.
class recognizability_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource cap (level, node count, ...) would be exceeded.
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Query arguments outside the mathematical domain of the operation.
class domain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------------- Vec2 ---

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double px, double py) : x(px), y(py) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }

  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  // z-component of the 3-D cross product; positive when `o` lies
  // counterclockwise of *this.
  constexpr double cross(Vec2 o) const { return x * o.y - y * o.x; }
  constexpr double norm_sq() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm_sq()); }
};

inline constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Signed doubled area of triangle (a, b, c); positive for counterclockwise.
inline constexpr double tri_area2(Vec2 a, Vec2 b, Vec2 c) {
  return (b - a).cross(c - a);
}

// ------------------------------------------------------------------- Mat2 ---

// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  constexpr Mat2() = default;
  constexpr Mat2(double pa, double pb, double pc, double pd)
      : a(pa), b(pb), c(pc), d(pd) {}

  static Mat2 rotation(double radians) {
    const double co = std::cos(radians), si = std::sin(radians);
    return {co, -si, si, co};
  }
  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  // Reflection across the y-axis.
  static constexpr Mat2 mirror_y() { return {-1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 diagonal(double sx, double sy) {
    return {sx, 0.0, 0.0, sy};
  }

  constexpr Vec2 operator*(Vec2 v) const {
    return {a * v.x + b * v.y, c * v.x + d * v.y};
  }
  constexpr Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,  //
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  constexpr Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }

  constexpr double det() const { return a * d - b * c; }
  constexpr Mat2 transpose() const { return {a, c, b, d}; }

  Mat2 inverse() const {
    const double dt = det();
    if (std::abs(dt) < 1e-300) throw domain_error("Mat2::inverse: singular");
    const double s = 1.0 / dt;
    return {d * s, -b * s, -c * s, a * s};
  }

  // Largest singular value (operator 2-norm), closed form for 2x2.
  double spectral_norm() const {
    const double q = a * a + b * b + c * c + d * d;
    const double dt = det();
    const double root = std::sqrt(std::max(0.0, q * q - 4.0 * dt * dt));
    return std::sqrt(0.5 * (q + root));
  }
};

// ----------------------------------------------------------------- Affine ---

// Affine map v -> A v + t.
struct Affine {
  Mat2 A;
  Vec2 t;

  constexpr Vec2 operator()(Vec2 v) const { return A * v + t; }

  // Composition: (this after o)(v) == (*this)(o(v)).
  constexpr Affine after(const Affine& o) const {
    return {A * o.A, A * o.t + t};
  }

  Affine inverse() const {
    const Mat2 inv = A.inverse();
    return {inv, -(inv * t)};
  }

  static constexpr Affine identity() { return {Mat2::identity(), Vec2{}}; }

  // The unique orientation-preserving isometry taking segment (a0, a1) onto
  // segment (b0, b1); the segments must have equal length.
  static Affine segment_map(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    const Vec2 u = a1 - a0, v = b1 - b0;
    const double n2 = u.norm_sq();
    if (n2 <= 0.0) throw domain_error("segment_map: degenerate segment");
    // Rotation taking u to v (lengths assumed equal).
    const double co = u.dot(v) / n2, si = u.cross(v) / n2;
    const Mat2 r{co, -si, si, co};
    return {r, b0 - r * a0};
  }
};

// ----------------------------------------------------------------- helpers --

inline constexpr int mod5(int k) { return ((k % 5) + 5) % 5; }

}  // namespace penthull
