#pragma once

#include "pilotwave/vec3.hpp"

namespace pw {

/// Local wave-function sample: value and spatial gradient at one point.
/// The single input shape for the current and velocity operations.
struct WaveSample {
  cplx psi{0.0, 0.0};
  CVec3 grad_psi;
  Vec3 position;
  double time = 0.0;

  double density() const { return std::norm(psi); }
};

/// One axis factor of a product wave: value and d/dx_i value.
struct AxisSample {
  cplx value{0.0, 0.0};
  cplx deriv{0.0, 0.0};
};

/// Factorized wave psi = psi_x(x) psi_y(y) psi_z(z) with per-axis
/// derivatives; the production representation for both scenarios.
struct FactorizedWaveSample {
  AxisSample x;
  AxisSample y;
  AxisSample z;
  Vec3 position;
  double time = 0.0;

  double density() const { return std::norm(x.value) * std::norm(y.value) * std::norm(z.value); }

  /// Assembled full sample (product rule for the gradient).
  WaveSample assemble() const {
    WaveSample w;
    w.psi = x.value * y.value * z.value;
    w.grad_psi.x = x.deriv * y.value * z.value;
    w.grad_psi.y = x.value * y.deriv * z.value;
    w.grad_psi.z = x.value * y.value * z.deriv;
    w.position = position;
    w.time = time;
    return w;
  }
};

}  // namespace pw
