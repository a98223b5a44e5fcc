#pragma once

#include <cmath>

#include "pilotwave/errors.hpp"
#include "pilotwave/vec3.hpp"

namespace pw {

/// Fixed two-component spinor chi; the guiding wave is psi(x,t) * chi with
/// chi constant in time.
struct SpinorState {
  cplx up{1.0, 0.0};
  cplx down{0.0, 0.0};

  double norm2() const { return std::norm(up) + std::norm(down); }

  static SpinorState normalized(cplx up, cplx down) {
    const double n = std::sqrt(std::norm(up) + std::norm(down));
    if (!(n > 0.0)) throw InputError("spinor: zero vector");
    return {up / n, down / n};
  }

  static SpinorState spin_up() { return {cplx{1.0, 0.0}, cplx{0.0, 0.0}}; }
  static SpinorState spin_down() { return {cplx{0.0, 0.0}, cplx{1.0, 0.0}}; }
};

/// Unit spin direction s_hat = chi^dag sigma chi for a normalized spinor.
/// Rejects spinors whose norm deviates from 1 by more than 1e-9.
inline Vec3 spin_vector(const SpinorState& chi) {
  if (std::fabs(chi.norm2() - 1.0) > 1e-9)
    throw InputError("spin_vector: spinor not normalized");
  const cplx ud = std::conj(chi.up) * chi.down;
  return {2.0 * ud.real(), 2.0 * ud.imag(), std::norm(chi.up) - std::norm(chi.down)};
}

}  // namespace pw
