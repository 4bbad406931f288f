#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace bflab {

using Cplx = std::complex<double>;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  Vec3& operator*=(double s) {
    x *= s; y *= s; z *= s;
    return *this;
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return n > 0.0 ? v * (1.0 / n) : v;
}

// Complex 3-vector, used for N = e1 + i e2 and for Fourier transforms of
// vector-valued integrands.
struct CVec3 {
  Cplx x{}, y{}, z{};

  CVec3() = default;
  CVec3(Cplx cx, Cplx cy, Cplx cz) : x(cx), y(cy), z(cz) {}
  CVec3(const Vec3& re, const Vec3& im)
      : x(re.x, im.x), y(re.y, im.y), z(re.z, im.z) {}

  CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  CVec3 operator*(Cplx s) const { return {x * s, y * s, z * s}; }
  CVec3& operator+=(const CVec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }

  Vec3 real() const { return {x.real(), y.real(), z.real()}; }
  Vec3 imag() const { return {x.imag(), y.imag(), z.imag()}; }
};

inline CVec3 operator*(Cplx s, const CVec3& v) { return v * s; }
inline CVec3 operator*(const Vec3& v, Cplx s) { return CVec3{v, Vec3{}} * s; }

inline double norm2(const CVec3& v) {
  return std::norm(v.x) + std::norm(v.y) + std::norm(v.z);
}

inline double norm(const CVec3& v) { return std::sqrt(norm2(v)); }

}  // namespace bflab
