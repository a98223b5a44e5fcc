#pragma once

#include "pilotwave/constants.hpp"
#include "pilotwave/vec3.hpp"
#include "pilotwave/wave.hpp"

namespace pw {

/// Density floor below which the velocity field is treated as undefined
/// (nodes).  Trajectories hitting it are aborted and flagged, never
/// extrapolated.
inline constexpr double kDensityFloor = 1e-30;

/// Per-axis amplitude floor for the factorized velocity path.
inline constexpr double kComponentFloor = 1e-12;

/// Spinless probability current J = (hbar/m) Im(psi* grad psi).
Vec3 current_spinless(const WaveSample& w, const PhysicalConstants& c);

/// Density gradient grad rho = 2 Re(psi* grad psi), evaluated analytically
/// from the sampled gradient (never by finite differences).
Vec3 grad_density(const WaveSample& w);

/// Spin-dependent current J + (hbar/2m) (grad rho) x s_hat.  s_hat must be
/// a unit vector.
Vec3 current_spin(const WaveSample& w, const Vec3& s_hat, const PhysicalConstants& c);

/// Guidance velocity J/rho without the spin term.  Throws NodeError when
/// rho <= kDensityFloor.
Vec3 velocity(const WaveSample& w, const PhysicalConstants& c);

/// Guidance velocity J(x,t;s_hat)/rho with the spin term.
Vec3 velocity(const WaveSample& w, const Vec3& s_hat, const PhysicalConstants& c);

/// Factorized velocity for s_hat = z_hat:
///   v_x = (hbar/m) [ Im(dpsi_x/psi_x) + spin * Re(dpsi_y/psi_y) ]
///   v_y = (hbar/m) [ Im(dpsi_y/psi_y) - spin * Re(dpsi_x/psi_x) ]
///   v_z = (hbar/m)   Im(dpsi_z/psi_z)
/// Throws NodeError when any |psi_i| <= kComponentFloor.
Vec3 velocity_factorized(const FactorizedWaveSample& f, bool spin_on, const PhysicalConstants& c);

}  // namespace pw
