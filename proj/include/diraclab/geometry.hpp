// Small 3-vector and cylindrical-point types shared by the field,
// coupling and holonomy modules.
#pragma once

#include <cmath>

namespace diraclab {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 v) { return v *= s; }
inline Vec3 operator*(Vec3 v, double s) { return v *= s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

// epsilon_123 = +1, right-handed axes.
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline bool all_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// Point in cylindrical coordinates (r, phi, z); phi measured from +x.
struct CylindricalPoint {
  double r = 1.0;
  double phi = 0.0;
  double z = 0.0;
};

inline Vec3 to_cartesian(const CylindricalPoint& p) {
  return {p.r * std::cos(p.phi), p.r * std::sin(p.phi), p.z};
}

inline Vec3 unit_radial(double phi) { return {std::cos(phi), std::sin(phi), 0.0}; }
inline Vec3 unit_azimuthal(double phi) { return {-std::sin(phi), std::cos(phi), 0.0}; }

}  // namespace diraclab
