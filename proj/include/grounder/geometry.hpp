#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace grounder {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
  double n = norm(v);
  return n > 0.0 ? v / n : Vec3{};
}

inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb8& o) const { return r == o.r && g == o.g && b == o.b; }
};

// Axis-aligned box stored as center and full edge lengths.
struct AABB {
  Vec3 center;
  Vec3 size;

  Vec3 min_corner() const { return center - size * 0.5; }
  Vec3 max_corner() const { return center + size * 0.5; }
  double diagonal() const { return norm(size); }
  double volume() const { return size.x * size.y * size.z; }

  bool contains(const Vec3& p, double tol = 0.0) const {
    Vec3 lo = min_corner();
    Vec3 hi = max_corner();
    return p.x >= lo.x - tol && p.x <= hi.x + tol && p.y >= lo.y - tol && p.y <= hi.y + tol &&
           p.z >= lo.z - tol && p.z <= hi.z + tol;
  }

  bool operator==(const AABB& o) const { return center == o.center && size == o.size; }
};

inline AABB aabb_union(const AABB& a, const AABB& b) {
  Vec3 lo{std::min(a.min_corner().x, b.min_corner().x), std::min(a.min_corner().y, b.min_corner().y),
          std::min(a.min_corner().z, b.min_corner().z)};
  Vec3 hi{std::max(a.max_corner().x, b.max_corner().x), std::max(a.max_corner().y, b.max_corner().y),
          std::max(a.max_corner().z, b.max_corner().z)};
  return {(lo + hi) * 0.5, hi - lo};
}

}  // namespace grounder
