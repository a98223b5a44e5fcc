#pragma once

#include <cmath>
#include <complex>

namespace pw {

using cplx = std::complex<double>;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

/// Complex-valued 3-vector (wave-function gradients).
struct CVec3 {
  cplx x{0.0, 0.0};
  cplx y{0.0, 0.0};
  cplx z{0.0, 0.0};

  cplx& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  const cplx& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline CVec3 operator*(const CVec3& a, cplx s) { return {a.x * s, a.y * s, a.z * s}; }
inline CVec3 operator*(cplx s, const CVec3& a) { return a * s; }
inline Vec3 real_part(const CVec3& a) { return {a.x.real(), a.y.real(), a.z.real()}; }
inline Vec3 imag_part(const CVec3& a) { return {a.x.imag(), a.y.imag(), a.z.imag()}; }

}  // namespace pw
