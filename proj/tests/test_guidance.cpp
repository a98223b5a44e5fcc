#include <doctest.h>

#include <array>
#include <cmath>

#include "pilotwave/guidance.hpp"
#include "pilotwave/packet.hpp"
#include "pilotwave/spinor.hpp"
#include "test_util.hpp"

using namespace pw;
using pwtest::rel_err;

namespace {

const PhysicalConstants kC = electron_constants();

UniformFieldPacket reference_packet() {
  return UniformFieldPacket::from_energy(5.0, 5.0, gravity_force(kC), kC);
}

/// Independent spin-vector oracle: explicit 2x2 Pauli matrix products.
Vec3 pauli_oracle(const SpinorState& chi) {
  using M = std::array<std::array<cplx, 2>, 2>;
  const M sx{{{cplx{0, 0}, cplx{1, 0}}, {cplx{1, 0}, cplx{0, 0}}}};
  const M sy{{{cplx{0, 0}, cplx{0, -1}}, {cplx{0, 1}, cplx{0, 0}}}};
  const M sz{{{cplx{1, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{-1, 0}}}};
  const std::array<cplx, 2> v{chi.up, chi.down};
  auto expect = [&](const M& m) {
    cplx acc = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) acc += std::conj(v[i]) * m[i][j] * v[j];
    return acc.real();
  };
  return {expect(sx), expect(sy), expect(sz)};
}

}  // namespace

TEST_CASE("spin vector of the z eigenstates") {
  CHECK(norm(spin_vector(SpinorState::spin_up()) - Vec3{0, 0, 1}) < 1e-15);
  CHECK(norm(spin_vector(SpinorState::spin_down()) - Vec3{0, 0, -1}) < 1e-15);
}

TEST_CASE("spin vector of (1,1)/sqrt2 matches the Pauli oracle") {
  const SpinorState chi = SpinorState::normalized({1.0, 0.0}, {1.0, 0.0});
  const Vec3 s = spin_vector(chi);
  CHECK(norm(s - Vec3{1, 0, 0}) < 1e-12);
  CHECK(norm(s - pauli_oracle(chi)) < 1e-14);
}

TEST_CASE("spin vector is unit length for random spinors") {
  pwtest::TestRng rng(7001);
  for (int i = 0; i < 50; ++i) {
    const SpinorState chi = SpinorState::normalized(
        {rng.uniform(-1, 1), rng.uniform(-1, 1)}, {rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const Vec3 s = spin_vector(chi);
    CHECK(std::fabs(norm(s) - 1.0) < 1e-12);
    CHECK(norm(s - pauli_oracle(chi)) < 1e-13);
  }
}

TEST_CASE("spin vector rejects non-normalized spinors") {
  SpinorState chi;
  chi.up = {1.1, 0.0};
  CHECK_THROWS_AS(spin_vector(chi), InputError);
}

TEST_CASE("real waves carry no spinless current") {
  WaveSample w;
  w.psi = {0.73, 0.0};
  w.grad_psi = {cplx{0.4, 0.0}, cplx{-1.2, 0.0}, cplx{0.05, 0.0}};
  CHECK(norm(current_spinless(w, kC)) == 0.0);
}

TEST_CASE("plane wave current and velocity") {
  const double k = 1.3;
  WaveSample w;
  w.psi = std::exp(cplx{0.0, k * 2.0});
  w.grad_psi.x = cplx{0.0, k} * w.psi;
  const Vec3 j = current_spinless(w, kC);
  CHECK(rel_err(j.x, kC.hbar * k / kC.mass * std::norm(w.psi)) < 1e-14);
  CHECK(j.y == 0.0);
  const Vec3 v = velocity(w, kC);
  CHECK(rel_err(v.x, kC.hbar * k / kC.mass) < 1e-14);
}

TEST_CASE("packet-center current equals u times rho at t = 0") {
  const UniformFieldPacket p = reference_packet();
  const WaveSample w = sample_uf({0, 0, 0}, 0.0, p);
  const Vec3 j = current_spinless(w, kC);
  CHECK(rel_err(j, p.u * rho_uf({0, 0, 0}, 0.0, p)) < 1e-12);
}

TEST_CASE("spin term vanishes when grad rho is parallel to s_hat") {
  WaveSample w;
  w.psi = {0.8, 0.1};
  w.grad_psi.z = {0.3, -0.2};  // grad rho along z only
  const Vec3 j0 = current_spinless(w, kC);
  const Vec3 js = current_spin(w, {0, 0, 1}, kC);
  CHECK(norm(js - j0) < 1e-16);
}

TEST_CASE("spin current of a real gaussian matches the cross-product expansion") {
  const UniformFieldPacket p = reference_packet();
  const Vec3 x{1.2, -0.7, 2.1};
  const WaveSample w = sample_uf(x, 0.0, p);
  const Vec3 gr = grad_density(w);
  const Vec3 js = current_spin(w, {0, 0, 1}, kC) - current_spinless(w, kC);
  // (grad rho) x z_hat = (d_y rho, -d_x rho, 0)
  const Vec3 want = Vec3{gr.y, -gr.x, 0.0} * (kC.hbar / (2.0 * kC.mass));
  CHECK(rel_err(js, want) < 1e-13);
}

TEST_CASE("spin current at the detector point matches the closed-form velocity route") {
  const UniformFieldPacket p = reference_packet();
  const Vec3 x{20, 20, 20};
  const double t = 1.0;
  const WaveSample w = sample_uf(x, t, p);
  const Vec3 j = current_spin(w, {0, 0, 1}, kC);
  const Vec3 want = velocity_uf(x, t, p, true) * rho_uf(x, t, p);
  CHECK(rel_err(j, want) < 1e-10);
}

TEST_CASE("velocity flips its spin part under s_hat -> -s_hat") {
  const UniformFieldPacket p = reference_packet();
  const Vec3 x{3.0, -2.0, 1.0};
  const WaveSample w = sample_uf(x, 0.8, p);
  const Vec3 v0 = velocity(w, kC);
  const Vec3 vp = velocity(w, Vec3{0, 0, 1}, kC);
  const Vec3 vm = velocity(w, Vec3{0, 0, -1}, kC);
  CHECK(norm((vp + vm) * 0.5 - v0) < 1e-12 * norm(v0));
  CHECK(norm((vp - vm) * 0.5 + (vm - v0)) < 1e-12 * (norm(v0) + 1.0));
}

TEST_CASE("velocity signals a node below the density floor") {
  WaveSample w;
  w.psi = {1e-16, 0.0};
  w.grad_psi.x = {0.0, 1e-16};
  CHECK_THROWS_AS(velocity(w, kC), NodeError);

  FactorizedWaveSample f;
  f.x = {cplx{1e-13, 0.0}, cplx{0.0, 0.0}};
  f.y = {cplx{1.0, 0.0}, cplx{0.0, 0.0}};
  f.z = {cplx{1.0, 0.0}, cplx{0.0, 0.0}};
  CHECK_THROWS_AS(velocity_factorized(f, false, kC), NodeError);
}

TEST_CASE("factorized velocity without spin equals the assembled general route") {
  const UniformFieldPacket p = reference_packet();
  pwtest::TestRng rng(99);
  for (int i = 0; i < 50; ++i) {
    const Vec3 x{rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-8, 8)};
    const double t = rng.uniform(0.0, 3.0);
    const FactorizedWaveSample f = factors_uf(x, t, p);
    const Vec3 va = velocity_factorized(f, false, kC);
    const Vec3 vb = velocity(f.assemble(), kC);
    CHECK(rel_err(va, vb) < 1e-12);
    // with spin: factorized path vs general path with s_hat = z
    const Vec3 sa = velocity_factorized(f, true, kC);
    const Vec3 sb = velocity(f.assemble(), Vec3{0, 0, 1}, kC);
    CHECK(rel_err(sa, sb) < 1e-11);
  }
}

TEST_CASE("y-symmetric factor adds no spin term on the y = 0 plane") {
  const UniformFieldPacket p = reference_packet();
  const FactorizedWaveSample f = factors_uf({2.0, 0.0, 1.0}, 1.2, p);
  const Vec3 v_off = velocity_factorized(f, false, kC);
  const Vec3 v_on = velocity_factorized(f, true, kC);
  CHECK(std::fabs(v_on.x - v_off.x) < 1e-14);  // Re(dpsi_y/psi_y) = 0 at y = 0
}

TEST_CASE("factorized velocity matches the closed-form field at random points") {
  const UniformFieldPacket p = reference_packet();
  pwtest::TestRng rng(1234);
  for (int i = 0; i < 100; ++i) {
    const Vec3 x{rng.uniform(-10, 25), rng.uniform(-10, 25), rng.uniform(-10, 25)};
    const double t = rng.uniform(0.0, 4.0);
    const FactorizedWaveSample f = factors_uf(x, t, p);
    for (bool spin : {false, true}) {
      const Vec3 got = velocity_factorized(f, spin, kC);
      const Vec3 want = velocity_uf(x, t, p, spin);
      CHECK(rel_err(got, want) < 1e-10);
    }
  }
}

TEST_CASE("current is invariant under a global phase") {
  const UniformFieldPacket p = reference_packet();
  const WaveSample w = sample_uf({4.0, 1.0, -2.0}, 0.9, p);
  WaveSample w2 = w;
  const cplx phase = std::exp(cplx{0.0, 1.234});
  w2.psi *= phase;
  w2.grad_psi = w2.grad_psi * phase;
  CHECK(rel_err(current_spin(w2, {0, 0, 1}, kC), current_spin(w, {0, 0, 1}, kC)) < 1e-14);
}

TEST_CASE("mirror symmetry: v_x(x,-y; z) = v_x(x,y; -z), v_y anti-symmetric") {
  const UniformFieldPacket p = reference_packet();
  pwtest::TestRng rng(555);
  for (int i = 0; i < 40; ++i) {
    const Vec3 x{rng.uniform(-6, 6), rng.uniform(-6, 6), rng.uniform(-6, 6)};
    const double t = rng.uniform(0.0, 3.0);
    const Vec3 mirrored{x.x, -x.y, x.z};
    const Vec3 va = velocity(sample_uf(mirrored, t, p), Vec3{0, 0, 1}, kC);
    const Vec3 vb = velocity(sample_uf(x, t, p), Vec3{0, 0, -1}, kC);
    CHECK(std::fabs(va.x - vb.x) < 1e-12 * (std::fabs(vb.x) + 1.0));
    CHECK(std::fabs(va.y + vb.y) < 1e-12 * (std::fabs(vb.y) + 1.0));
    CHECK(std::fabs(va.z - vb.z) < 1e-12 * (std::fabs(vb.z) + 1.0));
  }
}

namespace {

/// 4th-order central difference of f at x0 along axis, spacing h.
template <class F>
double fd4(F&& f, Vec3 x0, int axis, double h) {
  Vec3 xm2 = x0, xm1 = x0, xp1 = x0, xp2 = x0;
  xm2[axis] -= 2 * h;
  xm1[axis] -= h;
  xp1[axis] += h;
  xp2[axis] += 2 * h;
  return (f(xm2) - 8.0 * f(xm1) + 8.0 * f(xp1) - f(xp2)) / (12.0 * h);
}

}  // namespace

TEST_CASE("spin current is divergence-free on the packet grid") {
  const UniformFieldPacket p = reference_packet();
  const double t = 0.7;
  const double h = 0.05;
  auto js = [&](const Vec3& x, int comp) {
    const WaveSample w = sample_uf(x, t, p);
    const Vec3 term = cross(grad_density(w), Vec3{0, 0, 1}) * (kC.hbar / (2.0 * kC.mass));
    return term[comp];
  };
  double max_js = 0.0;
  double max_div = 0.0;
  const Vec3 center = packet_center(t, p);
  for (double dx = -4.0; dx <= 4.01; dx += 1.0)
    for (double dy = -4.0; dy <= 4.01; dy += 1.0)
      for (double dz = -2.0; dz <= 2.01; dz += 2.0) {
        const Vec3 x = center + Vec3{dx, dy, dz};
        double div = 0.0;
        for (int axis = 0; axis < 3; ++axis)
          div += fd4([&](const Vec3& q) { return js(q, axis); }, x, axis, h);
        const WaveSample w = sample_uf(x, t, p);
        max_js = std::max(max_js, norm(cross(grad_density(w), Vec3{0, 0, 1})) *
                                      (kC.hbar / (2.0 * kC.mass)));
        max_div = std::max(max_div, std::fabs(div));
      }
  CHECK(max_div <= 1e-6 * max_js);  // per angstrom
}

TEST_CASE("continuity equation holds on the uniform-field grid") {
  const UniformFieldPacket p = reference_packet();
  const double t = 0.8;
  const double h = 0.05;
  const double ht = 5e-4;
  for (bool spin : {false, true}) {
    auto jc = [&](const Vec3& x, double tt, int comp) {
      const WaveSample w = sample_uf(x, tt, p);
      const Vec3 j = spin ? current_spin(w, {0, 0, 1}, kC) : current_spinless(w, kC);
      return j[comp];
    };
    double max_res = 0.0;
    double max_div = 0.0;
    const Vec3 center = packet_center(t, p);
    for (double dx = -4.0; dx <= 4.01; dx += 2.0)
      for (double dy = -4.0; dy <= 4.01; dy += 2.0)
        for (double dz = -4.0; dz <= 4.01; dz += 2.0) {
          const Vec3 x = center + Vec3{dx, dy, dz};
          double div = 0.0;
          for (int axis = 0; axis < 3; ++axis)
            div += fd4([&](const Vec3& q) { return jc(q, t, axis); }, x, axis, h);
          const double drho =
              (rho_uf(x, t + ht, p) - rho_uf(x, t - ht, p)) / (2.0 * ht);
          max_div = std::max(max_div, std::fabs(div));
          max_res = std::max(max_res, std::fabs(drho + div));
        }
    CHECK(max_res <= 1e-5 * max_div);
  }
}
