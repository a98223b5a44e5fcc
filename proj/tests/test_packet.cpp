#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pilotwave/packet.hpp"
#include "pilotwave/quadrature.hpp"
#include "pilotwave/trajectory.hpp"
#include "test_util.hpp"

using namespace pw;
using pwtest::rel_err;

namespace {

const PhysicalConstants kC = electron_constants();

UniformFieldPacket reference_packet() {
  return UniformFieldPacket::from_energy(5.0, 5.0, gravity_force(kC), kC);
}

/// Independent free-Gaussian oracle (K = 0 closed form, coded from scratch).
cplx free_packet_oracle(const Vec3& x, double t, double sigma0, const Vec3& u,
                        const PhysicalConstants& c) {
  const cplx st = sigma0 * cplx{1.0, c.hbar * t / (2.0 * c.mass * sigma0 * sigma0)};
  const Vec3 xi = x - u * t;
  const cplx envelope = -dot(xi, xi) / (4.0 * st * sigma0);
  const cplx phase{0.0, (c.mass / c.hbar) * (dot(u, x) - 0.5 * dot(u, u) * t)};
  return std::pow(2.0 * std::numbers::pi * st * st, -0.75) * std::exp(envelope + phase);
}

}  // namespace

TEST_CASE("complex width at t = 0 and at the spreading time") {
  const UniformFieldPacket p = reference_packet();
  CHECK(complex_width(0.0, p) == cplx{5.0, 0.0});
  CHECK(spread_width(0.0, p) == 5.0);
  const double t_spread = 2.0 * kC.mass * 25.0 / kC.hbar;  // hbar t / 2 m sigma0^2 = 1
  CHECK(rel_err(spread_width(t_spread, p), 5.0 * std::sqrt(2.0)) < 1e-13);
}

TEST_CASE("spread at 1 fs matches the hand-evaluated formula") {
  const UniformFieldPacket p = reference_packet();
  // Independent evaluation: r = hbar/(2 m sigma0^2), sigma = sigma0 sqrt(1 + r^2).
  const double r = 0.6582119569 / (2.0 * kC.mass * 25.0);
  const double want = 5.0 * std::sqrt(1.0 + r * r);
  CHECK(rel_err(spread_width(1.0, p), want) < 1e-12);
  CHECK(rel_err(want, 5.1322718709) < 1e-9);
  const cplx st = complex_width(1.0, p);
  CHECK(st.real() == 5.0);
  CHECK(rel_err(st.imag(), 5.0 * r) < 1e-12);
}

TEST_CASE("peak value at the origin at t = 0") {
  const UniformFieldPacket p = reference_packet();
  const double want = std::pow(2.0 * std::numbers::pi * 25.0, -0.75);
  CHECK(rel_err(std::abs(psi_uf({0, 0, 0}, 0.0, p)), want) < 1e-13);
}

TEST_CASE("3d norm of the wave is 1") {
  const UniformFieldPacket p = reference_packet();
  const double t = 0.9;
  const double sig = spread_width(t, p);
  const Vec3 c0 = packet_center(t, p);
  // Separable density: norm = (1d integral)^3 with |psi|^2 sampled directly.
  const int n = 401;
  const double half = 8.0 * sig;
  const double h = 2.0 * half / (n - 1);
  std::vector<double> fx(n), fy(n), fz(n);
  for (int i = 0; i < n; ++i) {
    const double s = -half + h * i;
    fx[i] = std::norm(psi_uf({c0.x + s, c0.y, c0.z}, t, p));
    fy[i] = std::norm(psi_uf({c0.x, c0.y + s, c0.z}, t, p));
    fz[i] = std::norm(psi_uf({c0.x, c0.y, c0.z + s}, t, p));
  }
  const double peak = std::norm(psi_uf(c0, t, p));
  const double norm3 = simpson(fx, h) * simpson(fy, h) * simpson(fz, h) / (peak * peak);
  CHECK(std::fabs(norm3 - 1.0) < 1e-6);
}

TEST_CASE("K = 0 reduces to the free gaussian packet") {
  UniformFieldPacket p = reference_packet();
  p.force = {0.0, 0.0, 0.0};
  pwtest::TestRng rng(2024);
  for (int i = 0; i < 50; ++i) {
    const Vec3 x{rng.uniform(-15, 30), rng.uniform(-15, 15), rng.uniform(-15, 15)};
    const double t = rng.uniform(0.0, 4.0);
    const cplx want = free_packet_oracle(x, t, p.sigma0, p.u, kC);
    CHECK(rel_err(psi_uf(x, t, p), want) < 1e-12);
  }
}

TEST_CASE("rho equals |psi|^2") {
  const UniformFieldPacket p = reference_packet();
  pwtest::TestRng rng(31);
  for (int i = 0; i < 100; ++i) {
    const Vec3 x{rng.uniform(-12, 30), rng.uniform(-12, 12), rng.uniform(-12, 12)};
    const double t = rng.uniform(0.0, 5.0);
    CHECK(rel_err(rho_uf(x, t, p), std::norm(psi_uf(x, t, p))) < 1e-12);
  }
  // peak identity rho(center) (2 pi sigma^2)^{3/2} = 1
  const double t = 2.2;
  const double sig2 = spread_width(t, p) * spread_width(t, p);
  CHECK(rel_err(rho_uf(packet_center(t, p), t, p) *
                    std::pow(2.0 * std::numbers::pi * sig2, 1.5),
                1.0) < 1e-12);
}

TEST_CASE("gradient at the packet center is (i m u / hbar) psi") {
  const UniformFieldPacket p = reference_packet();
  const CVec3 g = grad_psi_uf({0, 0, 0}, 0.0, p);
  const cplx psi = psi_uf({0, 0, 0}, 0.0, p);
  CHECK(std::abs(g.x - cplx{0.0, kC.mass * p.u.x / kC.hbar} * psi) < 1e-13 * std::abs(g.x));
  CHECK(std::abs(g.y) < 1e-15);
  CHECK(std::abs(g.z) < 1e-15);
}

TEST_CASE("gradient matches central finite differences") {
  const UniformFieldPacket p = reference_packet();
  const double h = 1e-4;
  pwtest::TestRng rng(47);
  for (int i = 0; i < 100; ++i) {
    const Vec3 x{rng.uniform(-8, 20), rng.uniform(-8, 8), rng.uniform(-8, 8)};
    const double t = rng.uniform(0.0, 3.0);
    const CVec3 g = grad_psi_uf(x, t, p);
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 xp = x, xm = x;
      xp[axis] += h;
      xm[axis] -= h;
      const cplx fd = (psi_uf(xp, t, p) - psi_uf(xm, t, p)) / (2.0 * h);
      CHECK(std::abs(g[axis] - fd) < 1e-7 * (std::abs(g[axis]) + std::abs(psi_uf(x, t, p))));
    }
  }
}

TEST_CASE("gradient y component is odd under y -> -y") {
  const UniformFieldPacket p = reference_packet();
  const CVec3 gp = grad_psi_uf({3.0, 2.5, 1.0}, 1.1, p);
  const CVec3 gm = grad_psi_uf({3.0, -2.5, 1.0}, 1.1, p);
  CHECK(std::abs(gp.y + gm.y) < 1e-13 * std::abs(gp.y));
}

TEST_CASE("velocity field at t = 0 is the group velocity") {
  const UniformFieldPacket p = reference_packet();
  CHECK(norm(velocity_uf({7.0, -3.0, 2.0}, 0.0, p, false) - p.u) < 1e-14);
}

TEST_CASE("spin terms vanish at the packet center") {
  const UniformFieldPacket p = reference_packet();
  const double t = 1.7;
  const Vec3 c0 = packet_center(t, p);
  const Vec3 v = velocity_uf({c0.x, 0.0, 0.0}, t, p, true);
  const Vec3 want = p.u - p.force * (t / kC.mass);
  CHECK(norm(v - want) < 1e-12);
}

TEST_CASE("factorized product reproduces the full wave") {
  const UniformFieldPacket p = reference_packet();
  pwtest::TestRng rng(88);
  for (int i = 0; i < 60; ++i) {
    const Vec3 x{rng.uniform(-10, 25), rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const double t = rng.uniform(0.0, 4.0);
    const FactorizedWaveSample f = factors_uf(x, t, p);
    CHECK(rel_err(f.x.value * f.y.value * f.z.value, psi_uf(x, t, p)) < 1e-10);
  }
}

TEST_CASE("z streamlines follow the spread exactly") {
  const UniformFieldPacket p = reference_packet();
  CHECK(z_exact(5.0, 0.0, p) == 5.0);
  CHECK(z_exact(0.0, 3.3, p) == 0.0);
  const double t_spread = 2.0 * kC.mass * 25.0 / kC.hbar;
  CHECK(rel_err(z_exact(5.0, t_spread, p), 5.0 * std::sqrt(2.0)) < 1e-13);
  for (double t : {0.3, 1.1, 2.9}) {
    CHECK(rel_err(z_exact(2.5, t, p) / 2.5, spread_width(t, p) / p.sigma0) < 1e-14);
  }
}

TEST_CASE("spinless x streamlines never reorder") {
  const UniformFieldPacket p = reference_packet();
  auto field = [&](const Vec3& x, double t) { return velocity_uf(x, t, p, false); };
  Vec3 a{-2.0, 0.0, 0.0};
  Vec3 b{-1.8, 0.0, 0.0};
  const double dt = 1e-3;
  for (int i = 0; i < 3000; ++i) {
    const double t = i * dt;
    a = rk4_step(a, t, dt, field);
    b = rk4_step(b, t, dt, field);
    REQUIRE(a.x < b.x);
  }
}

TEST_CASE("strong force preset deflects visibly, gravity does not") {
  const PhysicalConstants c = electron_constants();
  CHECK(gravity_force(c) < 1e-19);
  UniformFieldPacket p = UniformFieldPacket::from_energy(5.0, 5.0, strong_force(), c);
  const double t = 1.5;
  const double deflection = p.force.x * t * t / (2.0 * c.mass);
  CHECK(deflection > 0.5);
  CHECK(deflection < 5.0);
}
