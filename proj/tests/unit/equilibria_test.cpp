#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "allee/equilibria.hpp"
#include "allee/error.hpp"
#include "sampling.hpp"

namespace allee {
namespace {

using testing::random_params;

const Equilibrium* find_label(const std::vector<Equilibrium>& es, Label l) {
  for (const Equilibrium& e : es) {
    if (e.label == l) return &e;
    for (const Tag& t : e.coincident) {
      if (t.label == l) return &e;
    }
  }
  return nullptr;
}

TEST(PreyAxis, Examples) {
  const auto e1 = solve_branch_prey_axis({.q = 1, .s = 1, .h = 0.25, .m = 0.2});
  ASSERT_EQ(e1.size(), 1u);
  EXPECT_EQ(e1[0].label, Label::E1);
  EXPECT_DOUBLE_EQ(e1[0].location.x, 0.5);
  EXPECT_EQ(e1[0].location.y, 0.0);

  EXPECT_TRUE(solve_branch_prey_axis({.q = 1, .s = 1, .h = 0.26, .m = 0.2}).empty());

  const ModelParams p{.q = 1, .s = 1, .h = 0.21, .m = 0.2};
  const auto two = solve_branch_prey_axis(p);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].label, Label::E2);
  EXPECT_EQ(two[1].label, Label::E3);
  EXPECT_NEAR(two[0].location.x, 0.7, 1e-15);
  EXPECT_NEAR(two[1].location.x, 0.3, 1e-15);
  for (const auto& e : two) EXPECT_LE(std::abs(branch_polynomial(p, Branch::PreyAxis, e.location.x)), 1e-14);
}

TEST(AlleeLine, Examples) {
  for (double h : {0.01, 0.1, 0.3}) {
    EXPECT_TRUE(solve_branch_allee_line({.q = 6, .s = 1, .h = h, .m = 0.2}).empty());
  }
  const auto e4 = solve_branch_allee_line({.q = 1, .s = 1, .h = 0.16, .m = 0.2});
  ASSERT_EQ(e4.size(), 1u);
  EXPECT_EQ(e4[0].label, Label::E4);
  EXPECT_NEAR(e4[0].location.x, 0.4, 1e-15);
  EXPECT_EQ(e4[0].location.y, 0.2);

  const ModelParams p{.q = 1, .s = 1, .h = 0.15, .m = 0.2};
  const auto two = solve_branch_allee_line(p);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].label, Label::E5);
  EXPECT_EQ(two[1].label, Label::E6);
  EXPECT_NEAR(two[0].location.x, 0.5, 1e-15);
  EXPECT_NEAR(two[1].location.x, 0.3, 1e-15);
  for (const auto& e : two) EXPECT_LE(std::abs(branch_polynomial(p, Branch::AlleeLine, e.location.x)), 1e-14);
}

TEST(Diagonal, Examples) {
  const auto e7 = solve_branch_diagonal({.q = 1, .s = 1, .h = 0.125, .m = 0.1});
  ASSERT_EQ(e7.size(), 1u);
  EXPECT_EQ(e7[0].label, Label::E7);
  EXPECT_DOUBLE_EQ(e7[0].location.x, 0.25);
  EXPECT_DOUBLE_EQ(e7[0].location.y, 0.25);

  EXPECT_TRUE(solve_branch_diagonal({.q = 1, .s = 1, .h = 0.13, .m = 0.1}).empty());

  const ModelParams p{.q = 1, .s = 1, .h = 0.12, .m = 0.1};
  const auto two = solve_branch_diagonal(p);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].label, Label::E8);
  EXPECT_EQ(two[1].label, Label::E9);
  EXPECT_NEAR(two[0].location.x, 0.3, 1e-15);
  EXPECT_NEAR(two[1].location.x, 0.2, 1e-15);
  for (const auto& e : two) {
    EXPECT_EQ(e.location.x, e.location.y);
    EXPECT_LE(std::abs(branch_polynomial(p, Branch::Diagonal, e.location.x)), 1e-14);
  }
}

TEST(Discriminants, SquareRootsAreExact) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 1000; ++n) {
    const BranchDiscriminants d = discriminants(random_params(rng));
    EXPECT_EQ(d.B.has_value(), d.delta1 >= 0.0);
    EXPECT_EQ(d.D.has_value(), d.delta2 >= 0.0);
    if (d.B) EXPECT_LE(std::abs(*d.B * *d.B - d.delta1), 4e-16 * std::max(1.0, d.A * d.A));
    if (d.D) EXPECT_LE(std::abs(*d.D * *d.D - d.delta2), 4e-16 * std::max(1.0, d.C * d.C));
  }
}

// Expected branch sizes straight from the sign of each discriminant.
std::array<std::size_t, 3> expected_counts(const ModelParams& p) {
  auto count = [](double delta, double b, double c) -> std::size_t {
    const double band = kDiscriminantTolerance * std::max({1.0, b * b, c * c});
    if (delta > band) return 2;
    if (delta >= -band) return 1;
    return 0;
  };
  const BranchDiscriminants d = discriminants(p);
  return {count(1.0 - 4.0 * p.h, 1.0, p.h), d.A > 0.0 ? count(d.delta1, d.A, p.h) : 0,
          count(d.delta2, d.C, p.h * d.C)};
}

TEST(Branches, RootCountsAndResidualsOnRandomSweep) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 3);
  std::array<std::array<int, 3>, 3> seen{};
  for (int n = 0; n < 10000; ++n) {
    ModelParams p = random_params(rng);
    // A quarter of the points sit exactly on a double-root surface.
    switch (pick(rng)) {
      case 0: p.h = 0.25; break;
      case 1:
        if (1.0 - p.q * p.m > 0.0) p.h = std::pow(1.0 - p.q * p.m, 2) / 4.0;
        break;
      case 2: p.h = 1.0 / (4.0 * (p.q + 1.0)); break;
      default: break;
    }
    const auto expect = expected_counts(p);
    const std::array<std::vector<Equilibrium>, 3> got{solve_branch_prey_axis(p), solve_branch_allee_line(p),
                                                      solve_branch_diagonal(p)};
    const std::array<Branch, 3> branches{Branch::PreyAxis, Branch::AlleeLine, Branch::Diagonal};
    for (int b = 0; b < 3; ++b) {
      ASSERT_EQ(got[b].size(), expect[b]) << "branch " << b << " q=" << p.q << " h=" << p.h << " m=" << p.m;
      ++seen[b][expect[b]];
      for (const Equilibrium& e : got[b]) {
        EXPECT_EQ(e.branch, branches[b]);
        const double x = e.location.x;
        EXPECT_GT(x, 0.0);
        EXPECT_LE(std::abs(branch_polynomial(p, e.branch, x)), 1e-13 * std::max(1.0, x * x));
      }
    }
  }
  for (const auto& row : seen) {
    for (int c : row) EXPECT_GT(c, 0);
  }
}

TEST(Portrait, ResidualAndSpectrumInvariants) {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 2000; ++n) {
    const ModelParams p = random_params(rng);
    for (const Equilibrium& e : full_portrait(p)) {
      EXPECT_LE(norm(vector_field(p, e.location)), 1e-12);
      const auto sum = e.eigenvalues[0] + e.eigenvalues[1];
      const auto prod = e.eigenvalues[0] * e.eigenvalues[1];
      EXPECT_NEAR(sum.real(), e.trace, 1e-10);
      EXPECT_NEAR(prod.real(), e.det, 1e-10);
      EXPECT_NEAR(sum.imag(), 0.0, 1e-10);
    }
  }
}

TEST(Portrait, ExampleUnions) {
  const auto high_h = full_portrait({.q = 1, .s = 1, .h = 0.3, .m = 0.2});
  for (const Equilibrium& e : high_h) EXPECT_NE(e.branch, Branch::PreyAxis);

  // At h = 0.21 both interior discriminants are negative: only E2 and E3 remain.
  const auto axis_only = full_portrait({.q = 1, .s = 1, .h = 0.21, .m = 0.2});
  EXPECT_EQ(axis_only.size(), 2u);

  const ModelParams p{.q = 1, .s = 1, .h = 0.1, .m = 0.2};
  const auto many = full_portrait(p);
  EXPECT_EQ(many.size(), 6u);
  for (const Equilibrium& e : many) EXPECT_LE(norm(vector_field(p, e.location)), 1e-12);
}

TEST(Portrait, MergesCoincidentRootsAtH1) {
  const ModelParams p{.q = 1, .s = 1, .h = 0.12, .m = 0.2};
  EXPECT_DOUBLE_EQ(thresholds(p).h1, 0.12);
  const auto portrait = full_portrait(p);
  const Equilibrium* e6 = find_label(portrait, Label::E6);
  const Equilibrium* e9 = find_label(portrait, Label::E9);
  ASSERT_NE(e6, nullptr);
  ASSERT_EQ(e6, e9);
  EXPECT_NEAR(e6->location.x, 0.2, 1e-12);
  EXPECT_NEAR(e6->location.y, 0.2, 1e-12);
  EXPECT_EQ(e6->coincident.size(), 1u);
  EXPECT_EQ(e6->classification, StabilityKind::SaddleNode);

  std::mt19937_64 rng(17);
  for (int n = 0; n < 500; ++n) {
    const double q = testing::uniform(rng, 0.1, 4.0);
    const double m = testing::uniform(rng, 0.02, 0.98) / (q + 1.0);
    const ModelParams at_h1{.q = q, .s = 1.0, .h = m - (q + 1.0) * m * m, .m = m};
    const auto allee = solve_branch_allee_line(at_h1);
    const bool hit = std::any_of(allee.begin(), allee.end(), [&](const Equilibrium& e) {
      return std::hypot(e.location.x - m, e.location.y - m) <= 1e-12;
    });
    EXPECT_TRUE(hit) << "q=" << q << " m=" << m;
  }
}

TEST(Classify, PaperExamples) {
  const ModelParams p2{.q = 1, .s = 1, .h = 0.21, .m = 0.2};
  const auto prey = full_portrait(p2);
  EXPECT_EQ(find_label(prey, Label::E2)->classification, StabilityKind::StableNode);
  EXPECT_EQ(find_label(prey, Label::E3)->classification, StabilityKind::Saddle);
  EXPECT_NEAR(find_label(prey, Label::E2)->eigenvalues[0].real() + find_label(prey, Label::E2)->eigenvalues[1].real(),
              -0.4 - 0.2, 1e-12);

  const auto e8 = full_portrait({.q = 1, .s = 0.5, .h = 0.12, .m = 0.1});
  EXPECT_EQ(find_label(e8, Label::E8)->classification, StabilityKind::WeakCenter);

  const auto e7 = full_portrait({.q = 1, .s = 5.0 / 3.0, .h = 0.125, .m = 0.1});
  EXPECT_EQ(find_label(e7, Label::E7)->classification, StabilityKind::Cusp);

  const auto e1 = full_portrait({.q = 1, .s = 1, .h = 0.25, .m = 0.2});
  EXPECT_EQ(find_label(e1, Label::E1)->classification, StabilityKind::SaddleNode);
}

TEST(Classify, RejectsNonEquilibrium) {
  const ModelParams p{.q = 1, .s = 1, .h = 0.21, .m = 0.2};
  Equilibrium e = solve_branch_prey_axis(p).front();
  e.location.x += 1e-3;
  try {
    classify(p, e);
    FAIL() << "expected InconsistentInput";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::InconsistentInput);
  }
}

TEST(Classify, FormulaRouteAgreesWithEigenvalues) {
  std::mt19937_64 rng(19);
  int hyperbolic = 0;
  for (int n = 0; n < 5000; ++n) {
    const ModelParams p = random_params(rng);
    for (const Equilibrium& e : full_portrait(p)) {
      const TraceDet td = closed_form_trace_det(p, e.branch, e.location.x);
      const Mat2 J = derivatives(p, e.location).jacobian;
      EXPECT_NEAR(td.trace, trace(J), 1e-12 * std::max(1.0, frobenius_norm(J)));
      EXPECT_NEAR(td.det, det(J), 1e-12 * std::max(1.0, frobenius_norm(J) * frobenius_norm(J)));
      const StabilityKind by_eigen = classify_by_eigenvalues(J);
      if (is_hyperbolic(e.classification)) {
        ++hyperbolic;
        EXPECT_EQ(e.classification, by_eigen) << "q=" << p.q << " s=" << p.s << " h=" << p.h << " m=" << p.m;
      } else {
        EXPECT_FALSE(is_hyperbolic(by_eigen));
      }
      // Saddle iff the eigenvalues are real with opposite signs.
      const bool opposite = e.eigenvalues[0].imag() == 0.0 && e.eigenvalues[0].real() * e.eigenvalues[1].real() < 0.0;
      EXPECT_EQ(e.classification == StabilityKind::Saddle, opposite);
    }
  }
  EXPECT_GT(hyperbolic, 5000);
}

// For m > A/2 and h > h1 the Allee-line root E5 lies left of m, so the
// eigenvalue s m (1 - m/x5) is negative.
TEST(Classify, AlleeLineEigenvalueSign) {
  std::mt19937_64 rng(23);
  int checked = 0;
  while (checked < 1000) {
    const ModelParams p = random_params(rng);
    const BranchDiscriminants d = discriminants(p);
    const double h1 = thresholds(p).h1;
    if (!(d.A > 0.0) || !(p.m > d.A / 2.0) || !(p.h > h1) || !(d.delta1 > 1e-8)) continue;
    const auto roots = solve_branch_allee_line(p);
    ASSERT_EQ(roots.size(), 2u);
    const Equilibrium& e5 = roots[0];
    const double lambda2 = p.s * p.m * (1.0 - p.m / e5.location.x);
    EXPECT_LT(lambda2, 0.0);
    const Mat2 J = derivatives(p, e5.location).jacobian;
    EXPECT_NEAR(J[1][0], 0.0, 1e-14);
    EXPECT_NEAR(J[1][1], lambda2, 1e-12);
    ++checked;
  }
}

TEST(Thresholds, Examples) {
  const Thresholds t = thresholds({.q = 1, .s = 1, .h = 0.12, .m = 0.2});
  EXPECT_NEAR(t.h1, 0.12, 1e-15);
  EXPECT_EQ(t.h2, 0.25);
  EXPECT_EQ(t.h3, 0.125);

  const Thresholds hopf = thresholds({.q = 1, .s = 0.5, .h = 0.12, .m = 0.1});
  ASSERT_TRUE(hopf.s2.has_value());
  EXPECT_NEAR(*hopf.s2, 0.5, 1e-14);
  ASSERT_TRUE(hopf.s1.has_value());
  EXPECT_NEAR(*hopf.s1, (0.48 - 1.0) / (2.0 * (0.1 - 0.24)), 1e-14);

  // s1 is undefined on m = 2h; s2, s3 need two diagonal roots.
  const Thresholds none = thresholds({.q = 1, .s = 1, .h = 0.1, .m = 0.2});
  EXPECT_FALSE(none.s1.has_value());
  EXPECT_FALSE(thresholds({.q = 1, .s = 1, .h = 0.2, .m = 0.2}).s2.has_value());

  const Thresholds explicit_x = thresholds({.q = 1, .s = 1, .h = 0.12, .m = 0.1}, 0.3, std::nullopt);
  EXPECT_NEAR(*explicit_x.s2, 0.5, 1e-14);
  EXPECT_FALSE(explicit_x.s3.has_value());
}

TEST(Names, RoundTrip) {
  for (int i = 1; i <= 9; ++i) {
    const auto l = static_cast<Label>(i);
    EXPECT_EQ(label_from_string(to_string(l)), l);
  }
  for (auto k : {StabilityKind::StableNode, StabilityKind::UnstableNode, StabilityKind::StableFocus,
                 StabilityKind::UnstableFocus, StabilityKind::Saddle, StabilityKind::SaddleNode,
                 StabilityKind::WeakCenter, StabilityKind::Cusp, StabilityKind::Degenerate}) {
    EXPECT_EQ(stability_from_string(to_string(k)), k);
  }
  for (auto b : {Branch::PreyAxis, Branch::AlleeLine, Branch::Diagonal}) EXPECT_EQ(branch_from_string(to_string(b)), b);
}

}  // namespace allee

TEST(Classify, RepeatedEigenvalueIsANodeOnBothRoutes) {
  // E5 = (0.2, 0.3) at q=2.5, s=1, h=0.01, m=0.3 has trace -0.3, det 0.0225.
  const ModelParams p{.q = 2.5, .s = 1, .h = 0.01, .m = 0.3};
  bool seen = false;
  for (const Equilibrium& e : full_portrait(p)) {
    if (e.label != Label::E5) continue;
    seen = true;
    EXPECT_EQ(e.classification, StabilityKind::StableNode);
    EXPECT_EQ(classify_by_eigenvalues(derivatives(p, e.location).jacobian), StabilityKind::StableNode);
  }
  EXPECT_TRUE(seen);
  EXPECT_EQ(classify_by_eigenvalues({{{-1.0, 1e-9}, {-1e-9, -1.0}}}), StabilityKind::StableNode);
  EXPECT_EQ(classify_by_eigenvalues({{{-1.0, 1e-3}, {-1e-3, -1.0}}}), StabilityKind::StableFocus);
}

}  // namespace
