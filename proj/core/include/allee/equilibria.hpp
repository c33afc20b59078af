#pragma once

// Closed-form equilibria of the three branches of the predator nullcline
// (y = 0, y = m, y = x) and their classification.

#include <array>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "allee/model.hpp"

namespace allee {

enum class Branch { PreyAxis, AlleeLine, Diagonal };

/// E1..E9 as numbered in the analysis: E1-E3 on y = 0, E4-E6 on y = m,
/// E7-E9 on y = x. E1, E4 and E7 are the double roots.
enum class Label { E1 = 1, E2, E3, E4, E5, E6, E7, E8, E9 };

enum class StabilityKind {
  StableNode,
  UnstableNode,
  StableFocus,
  UnstableFocus,
  Saddle,
  SaddleNode,
  WeakCenter,
  Cusp,
  Degenerate,
};

std::string_view to_string(Branch b) noexcept;
std::string_view to_string(Label l) noexcept;
std::string_view to_string(StabilityKind k) noexcept;
std::optional<Branch> branch_from_string(std::string_view s) noexcept;
std::optional<Label> label_from_string(std::string_view s) noexcept;
std::optional<StabilityKind> stability_from_string(std::string_view s) noexcept;

bool is_hyperbolic(StabilityKind k) noexcept;

struct BranchDiscriminants {
  double A = 0.0;       ///< 1 - q m
  double delta1 = 0.0;  ///< A^2 - 4h
  std::optional<double> B;  ///< sqrt(delta1) when delta1 >= 0
  double C = 0.0;       ///< 1 / (q + 1)
  double delta2 = 0.0;  ///< C^2 - 4h / (q + 1)
  std::optional<double> D;  ///< sqrt(delta2) when delta2 >= 0
};

BranchDiscriminants discriminants(const ModelParams& p);

struct Tag {
  Branch branch;
  Label label;
  friend bool operator==(const Tag&, const Tag&) = default;
};

struct Equilibrium {
  State location;
  Branch branch = Branch::PreyAxis;
  Label label = Label::E1;
  /// Other branch roots that coincide with this point (merged by full_portrait).
  std::vector<Tag> coincident;
  StabilityKind classification = StabilityKind::Degenerate;
  std::array<std::complex<double>, 2> eigenvalues{};
  double trace = 0.0;
  double det = 0.0;
};

/// Relative band |delta| / max(1, coeff^2) under which a quadratic counts
/// as having a double root.
inline constexpr double kDiscriminantTolerance = 1e-10;
/// Equilibria closer than this are the same point.
inline constexpr double kCoincidenceDistance = 1e-10;
/// A pair with |Im| <= this * |Re| is a repeated real eigenvalue (node, not focus).
inline constexpr double kRepeatedRootBand = 1e-6;
/// Largest vector-field residual accepted by classify().
inline constexpr double kResidualTolerance = 1e-9;

std::vector<Equilibrium> solve_branch_prey_axis(const ModelParams& p);
std::vector<Equilibrium> solve_branch_allee_line(const ModelParams& p);
std::vector<Equilibrium> solve_branch_diagonal(const ModelParams& p);

/// Residual of the defining quadratic of `branch` at abscissa x.
double branch_polynomial(const ModelParams& p, Branch branch, double x);

/// Trace and determinant from the branch-specific closed forms.
struct TraceDet {
  double trace;
  double det;
};
TraceDet closed_form_trace_det(const ModelParams& p, Branch branch, double x);

/// Classification by the case analysis (closed-form trace/det, then the
/// normal-form checks at non-hyperbolic points). Throws InconsistentInput
/// when e is not an equilibrium of p.
StabilityKind classify(const ModelParams& p, const Equilibrium& e);

/// Independent route: numeric eigenvalues of the analytic Jacobian.
/// Non-hyperbolic spectra map to SaddleNode (one zero eigenvalue),
/// Cusp (double zero) or WeakCenter (purely imaginary pair); those need the
/// higher-order checks to be confirmed.
StabilityKind classify_by_eigenvalues(const Mat2& J);
std::array<std::complex<double>, 2> eigenvalues(const Mat2& J);

struct Thresholds {
  double h1 = 0.0;  ///< m - (q+1) m^2
  double h2 = 0.25;
  double h3 = 0.0;  ///< 1 / (4(q+1))
  std::optional<double> s1;  ///< (4h-1) / (2(m-2h))
  std::optional<double> s2;  ///< (2x8 + q x8 - 1) / (m - x8)
  std::optional<double> s3;  ///< (2x9 + q x9 - 1) / (m - x9)
};

Thresholds thresholds(const ModelParams& p, std::optional<double> x8, std::optional<double> x9);
/// Same, with x8/x9 taken from the diagonal branch when it has two roots.
Thresholds thresholds(const ModelParams& p);

/// All equilibria in x > 0, y >= 0, classified, with coincident roots of
/// different branches merged.
std::vector<Equilibrium> full_portrait(const ModelParams& p);

}  // namespace allee
