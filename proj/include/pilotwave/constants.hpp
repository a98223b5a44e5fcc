#pragma once

#include <cmath>

#include "pilotwave/errors.hpp"

namespace pw {

/// Internal unit system: lengths in angstrom, times in femtoseconds,
/// energies in electronvolts.  Masses then carry eV*fs^2/A^2 and hbar
/// carries eV*fs.  Every formula takes the constants explicitly so that
/// mass sweeps reuse the same code path.
struct PhysicalConstants {
  double hbar = 0.0;         // eV*fs
  double mass = 0.0;         // eV*fs^2/A^2
  double light_speed = 0.0;  // A/fs
  double gravity = 0.0;      // A/fs^2

  /// hbar^2/(2m) in eV*A^2; the scale that converts energies to squared
  /// wavenumbers.
  double kinetic_scale() const { return hbar * hbar / (2.0 * mass); }
};

namespace detail {
constexpr double kHbarEvFs = 0.6582119569;        // CODATA 2018, 6.582119569e-16 eV*s
constexpr double kElectronRestEv = 510998.95000;  // CODATA 2018 electron m*c^2
constexpr double kLightSpeedAFs = 2997.92458;     // 2.99792458e8 m/s
constexpr double kGravityAFs2 = 9.8e-20;          // 9.8 m/s^2
}  // namespace detail

/// Electron constants in the A/fs/eV system.
inline PhysicalConstants electron_constants() {
  PhysicalConstants c;
  c.hbar = detail::kHbarEvFs;
  c.light_speed = detail::kLightSpeedAFs;
  c.mass = detail::kElectronRestEv / (c.light_speed * c.light_speed);
  c.gravity = detail::kGravityAFs2;
  return c;
}

/// Same unit system with the particle mass scaled by `factor` (mass sweeps).
inline PhysicalConstants with_mass_factor(const PhysicalConstants& base, double factor) {
  if (!(factor > 0.0)) throw InputError("mass factor must be positive");
  PhysicalConstants c = base;
  c.mass = base.mass * factor;
  return c;
}

/// k = sqrt(2 m E)/hbar.  E in eV, k in 1/A.
inline double energy_to_wavenumber(double energy, const PhysicalConstants& c) {
  if (energy < 0.0) throw InputError("energy_to_wavenumber: negative energy");
  return std::sqrt(energy / c.kinetic_scale());
}

/// E = (hbar k)^2 / 2m.
inline double wavenumber_to_energy(double k, const PhysicalConstants& c) {
  return c.kinetic_scale() * k * k;
}

/// Group speed of a packet with kinetic energy E0 = m u^2 / 2.
inline double group_speed(double energy, const PhysicalConstants& c) {
  if (energy < 0.0) throw InputError("group_speed: negative energy");
  return std::sqrt(2.0 * energy / c.mass);
}

}  // namespace pw
