// Every substitution in the Bogdanov-Takens reduction is checked by flow:
// integrate stage k and stage k-1 from corresponding initial points and map
// the end point of stage k back. Stages are quadratic truncations, so the
// residual is cubic in the initial radius.

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "allee/bifurcations.hpp"

namespace allee {
namespace {

using V3 = std::array<double, 3>;  // (u, v, t); t is only used by the time change
using Field = std::function<V3(const V3&)>;

V3 rk4(const Field& f, V3 z, double span, int steps = 4000) {
  const double dt = span / steps;
  auto axpy = [](const V3& a, double s, const V3& b) { return V3{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]}; };
  for (int i = 0; i < steps; ++i) {
    const V3 k1 = f(z);
    const V3 k2 = f(axpy(z, dt / 2, k1));
    const V3 k3 = f(axpy(z, dt / 2, k2));
    const V3 k4 = f(axpy(z, dt, k3));
    for (int j = 0; j < 3; ++j) z[j] += dt / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  return z;
}

struct Stages {
  BtLadder L;
  double sqrt_f20;

  explicit Stages(const BtLadder& ladder) : L(ladder), sqrt_f20(std::sqrt(std::abs(ladder.f.f20))) {}

  V3 s1(const V3& z) const {
    const auto& a = L.ab;
    const double u = z[0], v = z[1];
    return {a.a00 + a.a10 * u + a.a01 * v + a.a20 * u * u + a.a11 * u * v,
            a.b10 * u + a.b01 * v + a.b20 * u * u + a.b11 * u * v + a.b02 * v * v, 1.0};
  }
  V3 s2(const V3& z) const {
    const auto& c = L.c;
    const auto& d = L.d;
    const double u = z[0], v = z[1];
    return {c.c00 + v + c.c20 * u * u + c.c11 * u * v,
            d.d00 + d.d10 * u + d.d01 * v + d.d20 * u * u + d.d11 * u * v + d.d02 * v * v, 1.0};
  }
  V3 s3(const V3& z) const {
    const auto& e = L.e;
    const double u = z[0], v = z[1];
    return {v, e.e00 + e.e10 * u + e.e01 * v + e.e20 * u * u + e.e11 * u * v + e.e02 * v * v, 1.0};
  }
  // Third component: dt/dtau.
  V3 s4(const V3& z) const {
    const auto& f = L.f;
    const double u = z[0], v = z[1];
    return {v, f.f00 + f.f10 * u + f.f01 * v + f.f20 * u * u + f.f11 * u * v, 1.0 - L.e.e02 * u};
  }
  V3 s5(const V3& z) const {
    const auto& g = L.g;
    const double u = z[0], v = z[1];
    return {v, g.g00 + g.g10 * u + g.g01 * v - u * u + g.g11 * u * v, 1.0};
  }
  V3 s6(const V3& z) const {
    const auto& h = L.h;
    const double u = z[0], v = z[1];
    return {v, h.h00 + h.h01 * v - u * u + h.h11 * u * v, 1.0};
  }
  V3 s7(const V3& z) const {
    const double u = z[0], v = z[1];
    return {v, L.l00 + L.l01 * v + u * u + u * v, 1.0};
  }

  V3 to2(const V3& z) const { return {z[0], L.ab.a10 * z[0] + L.ab.a01 * z[1], z[2]}; }
  V3 from2(const V3& z) const { return {z[0], (z[1] - L.ab.a10 * z[0]) / L.ab.a01, z[2]}; }
  V3 to3(const V3& z) const {
    const double u = z[0], v = z[1];
    return {u, L.c.c00 + v + L.c.c20 * u * u + L.c.c11 * u * v, z[2]};
  }
  V3 from3(const V3& z) const {
    const double u = z[0];
    return {u, (z[1] - L.c.c00 - L.c.c20 * u * u) / (1 + L.c.c11 * u), z[2]};
  }
  V3 to4(const V3& z) const { return {z[0], z[1] * (1 - L.e.e02 * z[0]), z[2]}; }
  V3 from4(const V3& z) const { return {z[0], z[1] / (1 - L.e.e02 * z[0]), z[2]}; }
  V3 to5(const V3& z) const {
    return L.mirrored ? V3{-z[0], -z[1] / sqrt_f20, z[2]} : V3{z[0], z[1] / sqrt_f20, z[2]};
  }
  V3 from5(const V3& z) const {
    return L.mirrored ? V3{-z[0], -z[1] * sqrt_f20, z[2]} : V3{z[0], z[1] * sqrt_f20, z[2]};
  }
  V3 to6(const V3& z) const { return {z[0] - L.g.g10 / 2, z[1], z[2]}; }
  V3 from6(const V3& z) const { return {z[0] + L.g.g10 / 2, z[1], z[2]}; }
  V3 to7(const V3& z) const {
    const double h11 = L.h.h11;
    return {-h11 * h11 * z[0], h11 * h11 * h11 * z[1], z[2]};
  }
  V3 from7(const V3& z) const {
    const double h11 = L.h.h11;
    return {-z[0] / (h11 * h11), z[1] / (h11 * h11 * h11), z[2]};
  }
};

double distance(const V3& a, const V3& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

constexpr double kSpan = 0.5;
constexpr double kTolerance = 1e-6;

// Each stage pair from a handful of starting points on a small circle.
void check_chain(const Stages& S, const std::function<V3(const V3&)>& s0, const std::function<V3(const V3&)>& to1,
                 const std::function<V3(const V3&)>& from1, double radius) {
  const Field f1 = [&](const V3& z) { return S.s1(z); };
  const Field f2 = [&](const V3& z) { return S.s2(z); };
  const Field f3 = [&](const V3& z) { return S.s3(z); };
  const Field f4 = [&](const V3& z) { return S.s4(z); };
  const Field f5 = [&](const V3& z) { return S.s5(z); };
  const Field f6 = [&](const V3& z) { return S.s6(z); };
  const Field f7 = [&](const V3& z) { return S.s7(z); };
  const double c5 = S.sqrt_f20;     // t1 = c5 tau
  const double c7 = -1.0 / S.L.h.h11;  // t2 = c7 t1

  for (int k = 0; k < 6; ++k) {
    const double angle = 2 * std::numbers::pi * k / 6 + 0.2;
    const V3 z1{radius * std::cos(angle), radius * std::sin(angle), 0.0};

    if (s0) {
      const V3 z0 = from1(z1);
      const V3 end0 = rk4(s0, z0, kSpan);
      const V3 end1 = rk4(f1, z1, kSpan);
      EXPECT_LE(distance(from1(end1), end0), kTolerance) << "stage 1, start " << k;
    }

    const V3 z2 = S.to2(z1);
    EXPECT_LE(distance(S.from2(rk4(f2, z2, kSpan)), rk4(f1, z1, kSpan)), kTolerance) << "stage 2, start " << k;

    const V3 z3 = S.to3(z2);
    EXPECT_LE(distance(S.from3(rk4(f3, z3, kSpan)), rk4(f2, z2, kSpan)), kTolerance) << "stage 3, start " << k;

    // New time tau: integrate in tau, then run stage 3 for the elapsed t.
    const V3 z4 = S.to4(z3);
    const V3 end4 = rk4(f4, z4, kSpan);
    EXPECT_LE(distance(S.from4(end4), rk4(f3, z3, end4[2])), kTolerance) << "stage 4, start " << k;

    const V3 z5 = S.to5(z4);
    EXPECT_LE(distance(S.from5(rk4(f5, z5, kSpan * c5)), rk4(f4, z4, kSpan)), kTolerance) << "stage 5, start " << k;

    const V3 z6 = S.to6(z5);
    EXPECT_LE(distance(S.from6(rk4(f6, z6, kSpan)), rk4(f5, z5, kSpan)), kTolerance) << "stage 6, start " << k;

    const V3 z7 = S.to7(z6);
    EXPECT_LE(distance(S.from7(rk4(f7, z7, kSpan * c7)), rk4(f6, z6, kSpan)), kTolerance) << "stage 7, start " << k;
  }
}

TEST(BtChain, StagesReproduceModelFlow) {
  const ModelParams base = cusp_base(1.0, 0.1);
  const double x7 = 2 * base.h;
  for (auto eta : {std::array{0.0, 0.0}, std::array{2e-4, -3e-4}, std::array{-5e-4, 1e-3}}) {
    ModelParams p = base;
    p.h += eta[0];
    p.s += eta[1];
    const Stages S(reduce_bt(bt_expansion(base, eta[0], eta[1])));
    ASSERT_FALSE(S.L.mirrored);
    ASSERT_LT(S.L.h.h11, 0.0);
    const Field model = [&](const V3& z) {
      const Vec2 f = vector_field(p, {z[0], z[1]});
      return V3{f[0], f[1], 1.0};
    };
    check_chain(
        S, model, [&](const V3& z) { return V3{z[0] - x7, z[1] - x7, z[2]}; },
        [&](const V3& z) { return V3{z[0] + x7, z[1] + x7, z[2]}; }, 2e-3);
  }
}

// Synthetic coefficients with f20 > 0 exercise the mirrored scaling.
TEST(BtChain, MirroredBranchIsFlowConsistent) {
  BtExpansion ab{.a00 = 2e-4, .a10 = 0.3, .a01 = -0.5, .a20 = -1.0, .a11 = -0.7,
                 .b10 = 0.18, .b01 = -0.3, .b20 = -2.0, .b11 = 0.5, .b02 = 0.3};
  const BtLadder L = reduce_bt(ab);
  ASSERT_TRUE(L.mirrored);
  ASSERT_GT(L.f.f20, 0.0);
  const Stages S(L);
  check_chain(S, nullptr, nullptr, nullptr, 2e-3);

  ab.b20 = 2.0;
  EXPECT_FALSE(reduce_bt(ab).mirrored);
}

}  // namespace
}  // namespace allee
