#pragma once

#include "pilotwave/constants.hpp"
#include "pilotwave/vec3.hpp"
#include "pilotwave/wave.hpp"

namespace pw {

/// Gaussian packet in the linear potential V(x) = K.x, centered at the
/// origin at t = 0 with the group velocity and force along x.
struct UniformFieldPacket {
  double sigma0 = 5.0;  // A
  Vec3 u;               // group velocity, (u, 0, 0), A/fs
  Vec3 force;           // K = (K, 0, 0), eV/A
  PhysicalConstants constants;

  static UniformFieldPacket from_energy(double energy_ev, double sigma0, double force_x,
                                        const PhysicalConstants& c) {
    UniformFieldPacket p;
    p.sigma0 = sigma0;
    p.u = {group_speed(energy_ev, c), 0.0, 0.0};
    p.force = {force_x, 0.0, 0.0};
    p.constants = c;
    return p;
  }
};

/// K = m g: free fall along x at femtosecond scales deflects by ~1e-19 A,
/// so results are insensitive to it.
double gravity_force(const PhysicalConstants& c);

/// A force strong enough to deflect the packet by ~1 A over a ~1.5 fs
/// transit; preset for runs where the field should be visible.
double strong_force();

/// s_t = sigma0 (1 + i hbar t / 2 m sigma0^2).
cplx complex_width(double t, const UniformFieldPacket& p);

/// sigma(t) = sigma0 sqrt(1 + (hbar t / 2 m sigma0^2)^2).
double spread_width(double t, const UniformFieldPacket& p);

/// Packet center u t - K t^2 / 2m.
Vec3 packet_center(double t, const UniformFieldPacket& p);

/// Wave value at (x, t); the phase convention follows the closed-form
/// solution for a Gaussian in a linear potential.
cplx psi_uf(const Vec3& x, double t, const UniformFieldPacket& p);

/// rho(x,t) = (2 pi sigma^2)^(-3/2) exp(-(x - center)^2 / 2 sigma^2).
double rho_uf(const Vec3& x, double t, const UniformFieldPacket& p);

/// Analytic gradient of psi_uf.
CVec3 grad_psi_uf(const Vec3& x, double t, const UniformFieldPacket& p);

/// Full wave sample (value + gradient) at a point.
WaveSample sample_uf(const Vec3& x, double t, const UniformFieldPacket& p);

/// One axis factor of the product form; axis in {0,1,2}.  The x factor
/// carries the whole propagation phase.
AxisSample axis_factor_uf(int axis, double coord, double t, const UniformFieldPacket& p);

FactorizedWaveSample factors_uf(const Vec3& x, double t, const UniformFieldPacket& p);

/// Closed-form guidance velocity; spin terms carry hbar/(2 m sigma^2).
Vec3 velocity_uf(const Vec3& x, double t, const UniformFieldPacket& p, bool spin_on);

/// Exact z coordinate of the path starting at z0: z0 sigma(t)/sigma0.
double z_exact(double z0, double t, const UniformFieldPacket& p);

}  // namespace pw
