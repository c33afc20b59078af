#include <gtest/gtest.h>

#include <cmath>

#include "allee/bifurcations.hpp"
#include "allee/error.hpp"

namespace allee {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no allee::Error thrown";
  return ErrorCode::NumericalFailure;
}

TEST(BogdanovTakens, UnperturbedCuspMapsToOrigin) {
  const ModelParams base = cusp_base(1.0, 0.1);
  const BTReport r = bt_normal_form(base, {0.0, 0.0});
  EXPECT_NEAR(r.l00, 0.0, 1e-14);
  EXPECT_NEAR(r.l01, 0.0, 1e-14);
  EXPECT_FALSE(r.mirrored);
  EXPECT_EQ(r.verdict, BtVerdict::BTCodim2);
  EXPECT_DOUBLE_EQ(r.ladder.ab.a00, 0.0);
}

TEST(BogdanovTakens, LimitingCoefficients) {
  const ModelParams base = cusp_base(1.0, 0.1);
  const BtLadder L = bt_normal_form(base, {0.0, 0.0}).ladder;
  const double s1 = base.s;
  EXPECT_NEAR(L.f.f20, -0.5, 1e-12);
  EXPECT_NEAR(L.f.f11, -(s1 + 2 + base.q), 1e-10);
  // h11 = g11 = f11 / sqrt(-f20).
  EXPECT_NEAR(L.h.h11, -(s1 + 2 + base.q) / std::sqrt(0.5), 1e-10);
  EXPECT_NEAR(L.h.h11, -6.599663291, 1e-9);
}

TEST(BogdanovTakens, F20MatchesCuspCoefficientAcrossGrid) {
  for (double q : {0.3, 1.0, 2.5, 4.0}) {
    const double h3 = 1.0 / (4 * (q + 1));
    for (double frac : {0.1, 0.5, 0.9}) {
      const ModelParams base = cusp_base(q, frac * 2 * h3);
      const BtLadder L = reduce_bt(bt_expansion(base, 0.0, 0.0));
      const CuspCheck c = cusp_check(base, {2 * h3, 2 * h3});
      EXPECT_LT(L.f.f20, 0.0);
      EXPECT_NEAR(L.f.f20, c.g20, 1e-12);
      EXPECT_NEAR(L.f.f20, (2 * h3 - 0.5) * (q + 1), 1e-12);
      EXPECT_FALSE(L.mirrored);
      // e00 e02^2 enters f20 and e02 grows like s1, so "small" shrinks as m -> 2 h3.
      for (auto eta : {std::array{1e-5, 0.0}, std::array{0.0, -1e-5}, std::array{-7e-6, 7e-6}}) {
        EXPECT_LT(reduce_bt(bt_expansion(base, eta[0], eta[1])).f.f20, 0.0);
      }
    }
  }
}

TEST(BogdanovTakens, JacobianDeterminantRegression) {
  const ModelParams base = cusp_base(1.0, 0.1);
  const BTReport fine = bt_normal_form(base, {0.0, 0.0}, 1e-6);
  const BTReport coarse = bt_normal_form(base, {0.0, 0.0}, 1e-5);
  EXPECT_NEAR(fine.jac_det, -1327.96, 0.05);
  EXPECT_LE(std::abs(fine.jac_det - coarse.jac_det), 1e-3 * std::abs(fine.jac_det));
  EXPECT_GT(std::abs(fine.jac_det), kBtJacobianThreshold);
}

TEST(BogdanovTakens, PerturbationEntersAsConstantTerm) {
  const ModelParams base = cusp_base(1.0, 0.1);
  const BtExpansion e = bt_expansion(base, 3e-4, -2e-4);
  EXPECT_NEAR(e.a00, -3e-4, 1e-16);
  // The predator field vanishes on the diagonal whatever s is.
  EXPECT_NEAR(e.b10 + e.b01, 0.0, 1e-12);
}

TEST(BogdanovTakens, Errors) {
  const ModelParams base = cusp_base(1.0, 0.1);
  ModelParams off = base;
  off.s += 0.1;
  EXPECT_EQ(code_of([&] { bt_normal_form(off, {0.0, 0.0}); }), ErrorCode::CuspConditionsViolated);
  EXPECT_EQ(code_of([&] { bt_normal_form(base, {0.02, 0.0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { cusp_base(1.0, 0.3); }), ErrorCode::CuspConditionsViolated);
  EXPECT_EQ(code_of([] { cusp_base(1.0, 0.25); }), ErrorCode::CuspConditionsViolated);

  BtExpansion flat{};
  flat.a01 = 1.0;
  flat.b11 = 1.0;
  EXPECT_EQ(code_of([&] { reduce_bt(flat); }), ErrorCode::SignAssumptionViolated);
  BtExpansion singular{};
  singular.b20 = 1.0;
  EXPECT_EQ(code_of([&] { reduce_bt(singular); }), ErrorCode::NumericalFailure);
}

}  // namespace
}  // namespace allee
