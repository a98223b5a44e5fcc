#include "pilotwave/guidance.hpp"

#include <cmath>

namespace pw {

Vec3 current_spinless(const WaveSample& w, const PhysicalConstants& c) {
  const cplx ps = std::conj(w.psi);
  const double s = c.hbar / c.mass;
  return {s * (ps * w.grad_psi.x).imag(),
          s * (ps * w.grad_psi.y).imag(),
          s * (ps * w.grad_psi.z).imag()};
}

Vec3 grad_density(const WaveSample& w) {
  const cplx ps = std::conj(w.psi);
  return {2.0 * (ps * w.grad_psi.x).real(),
          2.0 * (ps * w.grad_psi.y).real(),
          2.0 * (ps * w.grad_psi.z).real()};
}

Vec3 current_spin(const WaveSample& w, const Vec3& s_hat, const PhysicalConstants& c) {
  if (std::fabs(norm2(s_hat) - 1.0) > 1e-9)
    throw InputError("current_spin: s_hat must be a unit vector");
  const Vec3 js = cross(grad_density(w), s_hat) * (c.hbar / (2.0 * c.mass));
  return current_spinless(w, c) + js;
}

namespace {
Vec3 divide_by_density(const Vec3& j, double rho) {
  if (!(rho > kDensityFloor)) throw NodeError("velocity: density at node floor");
  return j / rho;
}
}  // namespace

Vec3 velocity(const WaveSample& w, const PhysicalConstants& c) {
  return divide_by_density(current_spinless(w, c), w.density());
}

Vec3 velocity(const WaveSample& w, const Vec3& s_hat, const PhysicalConstants& c) {
  return divide_by_density(current_spin(w, s_hat, c), w.density());
}

Vec3 velocity_factorized(const FactorizedWaveSample& f, bool spin_on, const PhysicalConstants& c) {
  if (std::abs(f.x.value) <= kComponentFloor || std::abs(f.y.value) <= kComponentFloor ||
      std::abs(f.z.value) <= kComponentFloor)
    throw NodeError("velocity_factorized: axis factor at node floor");

  const cplx lx = f.x.deriv / f.x.value;
  const cplx ly = f.y.deriv / f.y.value;
  const cplx lz = f.z.deriv / f.z.value;
  const double s = c.hbar / c.mass;
  const double spin = spin_on ? 1.0 : 0.0;
  return {s * (lx.imag() + spin * ly.real()),
          s * (ly.imag() - spin * lx.real()),
          s * lz.imag()};
}

}  // namespace pw
