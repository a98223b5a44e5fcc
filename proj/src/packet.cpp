#include "pilotwave/packet.hpp"

#include <cmath>
#include <numbers>

namespace pw {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;  // ln(2*pi)

double width_ratio(double t, const UniformFieldPacket& p) {
  // hbar t / (2 m sigma0^2)
  return p.constants.hbar * t / (2.0 * p.constants.mass * p.sigma0 * p.sigma0);
}
}  // namespace

double gravity_force(const PhysicalConstants& c) { return c.mass * c.gravity; }

double strong_force() { return 0.05; }

cplx complex_width(double t, const UniformFieldPacket& p) {
  return p.sigma0 * cplx{1.0, width_ratio(t, p)};
}

double spread_width(double t, const UniformFieldPacket& p) {
  const double r = width_ratio(t, p);
  return p.sigma0 * std::sqrt(1.0 + r * r);
}

Vec3 packet_center(double t, const UniformFieldPacket& p) {
  return p.u * t - p.force * (t * t / (2.0 * p.constants.mass));
}

namespace {
/// Shared pieces of the closed-form wave: exponent chunks per axis plus the
/// propagation phase, all relative to the moving center.
struct UfParts {
  cplx st;
  cplx inv_4stsig;   // 1/(4 s_t sigma0)
  cplx log_pref1d;   // log of the per-axis prefactor (2 pi s_t^2)^(-1/4)
  Vec3 xi;           // x - center(t)
  Vec3 vel_phase;    // (m/hbar)(u - K t / m), the gradient of the plane phase
  double scalar_phase;  // -(m/hbar) [ u.(u t/2) ... ] time-only part, see below
};

UfParts make_parts(const Vec3& x, double t, const UniformFieldPacket& p) {
  const PhysicalConstants& c = p.constants;
  UfParts parts;
  parts.st = complex_width(t, p);
  parts.inv_4stsig = 1.0 / (4.0 * parts.st * p.sigma0);
  parts.log_pref1d = -0.25 * kLog2Pi - 0.5 * std::log(parts.st);
  parts.xi = x - packet_center(t, p);
  const Vec3 kin = p.u - p.force * (t / c.mass);  // u - K t/m
  parts.vel_phase = kin * (c.mass / c.hbar);
  // (m/hbar) [ (u - K t/m).(x - u t/2) - K^2 t^3 / 6 m^2 ] splits into a
  // x-linear part (vel_phase . x) and this time-only remainder.
  parts.scalar_phase = (c.mass / c.hbar) *
                       (-dot(kin, p.u) * (0.5 * t) -
                        dot(p.force, p.force) * t * t * t / (6.0 * c.mass * c.mass));
  return parts;
}
}  // namespace

cplx psi_uf(const Vec3& x, double t, const UniformFieldPacket& p) {
  const UfParts parts = make_parts(x, t, p);
  const cplx envelope = -norm2(parts.xi) * parts.inv_4stsig;
  const cplx phase{0.0, dot(parts.vel_phase, x) + parts.scalar_phase};
  return std::exp(3.0 * parts.log_pref1d + envelope + phase);
}

double rho_uf(const Vec3& x, double t, const UniformFieldPacket& p) {
  const double sig2 = spread_width(t, p) * spread_width(t, p);
  const Vec3 xi = x - packet_center(t, p);
  return std::pow(2.0 * std::numbers::pi * sig2, -1.5) * std::exp(-norm2(xi) / (2.0 * sig2));
}

CVec3 grad_psi_uf(const Vec3& x, double t, const UniformFieldPacket& p) {
  const UfParts parts = make_parts(x, t, p);
  const cplx psi = psi_uf(x, t, p);
  CVec3 g;
  for (int i = 0; i < 3; ++i)
    g[i] = psi * (-2.0 * parts.xi[i] * parts.inv_4stsig + cplx{0.0, parts.vel_phase[i]});
  return g;
}

WaveSample sample_uf(const Vec3& x, double t, const UniformFieldPacket& p) {
  WaveSample w;
  w.psi = psi_uf(x, t, p);
  w.grad_psi = grad_psi_uf(x, t, p);
  w.position = x;
  w.time = t;
  return w;
}

AxisSample axis_factor_uf(int axis, double coord, double t, const UniformFieldPacket& p) {
  const PhysicalConstants& c = p.constants;
  const cplx st = complex_width(t, p);
  const cplx inv_2stsig = 1.0 / (2.0 * st * p.sigma0);
  const double center = packet_center(t, p)[axis];
  const double xi = coord - center;
  const cplx log_pref = -0.25 * kLog2Pi - 0.5 * std::log(st);

  cplx phase{0.0, 0.0};
  cplx dlog{-xi * inv_2stsig};
  if (axis == 0) {
    const double kin = p.u.x - p.force.x * t / c.mass;
    const double vel_phase = kin * c.mass / c.hbar;
    phase = cplx{0.0, vel_phase * coord -
                          (c.mass / c.hbar) * (kin * p.u.x * 0.5 * t +
                                               p.force.x * p.force.x * t * t * t /
                                                   (6.0 * c.mass * c.mass))};
    dlog += cplx{0.0, vel_phase};
  }

  AxisSample s;
  s.value = std::exp(log_pref - xi * xi * inv_2stsig * 0.5 + phase);
  s.deriv = s.value * dlog;
  return s;
}

FactorizedWaveSample factors_uf(const Vec3& x, double t, const UniformFieldPacket& p) {
  FactorizedWaveSample f;
  f.x = axis_factor_uf(0, x.x, t, p);
  f.y = axis_factor_uf(1, x.y, t, p);
  f.z = axis_factor_uf(2, x.z, t, p);
  f.position = x;
  f.time = t;
  return f;
}

Vec3 velocity_uf(const Vec3& x, double t, const UniformFieldPacket& p, bool spin_on) {
  const PhysicalConstants& c = p.constants;
  const double hbar_t = c.hbar * t;
  const double denom = 4.0 * c.mass * c.mass * std::pow(p.sigma0, 4) + hbar_t * hbar_t;
  const double sp = c.hbar * hbar_t / denom;  // hbar^2 t / (4 m^2 sigma0^4 + hbar^2 t^2)
  const Vec3 xi = x - packet_center(t, p);

  Vec3 v = p.u - p.force * (t / c.mass) + sp * xi;
  if (spin_on) {
    const double sig = spread_width(t, p);
    const double cs = c.hbar / (2.0 * c.mass * sig * sig);
    v.x -= cs * xi.y;
    v.y += cs * xi.x;
  }
  return v;
}

double z_exact(double z0, double t, const UniformFieldPacket& p) {
  return z0 * spread_width(t, p) / p.sigma0;
}

}  // namespace pw
