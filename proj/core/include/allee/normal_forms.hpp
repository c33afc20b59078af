#pragma once

// Local normal-form reductions at non-hyperbolic equilibria: the quadratic
// coefficient on the center direction of a saddle-node, and the two
// quadratic coefficients that certify a codimension-2 cusp.

#include <array>

#include "allee/model.hpp"

namespace allee {

/// Taylor coefficients of the vector field about a point.
///
/// `a[i][j]` multiplies u^i v^j in the prey component and `b[i][j]` in the
/// predator component, for i + j <= 3 (u = x - x0, v = y - y0). Entries with
/// i + j > 3 stay zero.
struct TaylorCoefficients {
  std::array<std::array<double, 4>, 4> a{};
  std::array<std::array<double, 4>, 4> b{};
};

TaylorCoefficients taylor_at(const ModelParams& p, const State& u);

/// Sum of the cubic Taylor polynomial at displacement `delta`.
Vec2 evaluate(const TaylorCoefficients& t, const Vec2& delta);

/// Quadratic part of a planar field: coeff[k] = {c20, c11, c02} of component k.
struct QuadraticTerms {
  std::array<std::array<double, 3>, 2> coeff{};
};

QuadraticTerms quadratic_terms(const TaylorCoefficients& t);

Mat2 inverse(const Mat2& a);
Mat2 multiply(const Mat2& a, const Mat2& b);

/// Quadratic part after the linear substitution z = P xi, i.e. the
/// coefficients of P^{-1} Q(P xi).
QuadraticTerms change_basis(const QuadraticTerms& quad, const Mat2& P);

// |det| <= 1e-9 |J|^2 and |trace| <= 1e-9 |J| count as zero.
inline constexpr double kDegeneracyTolerance = 1e-9;
bool det_is_zero(const Mat2& J);
bool trace_is_zero(const Mat2& J);

/// Kernel vector of a singular 2x2 matrix, scaled so its first component is 1
/// whenever that component is nonzero.
Vec2 null_vector(const Mat2& J);

enum class SaddleNodeVerdict { SaddleNode, NeedsHigherOrder };

struct SaddleNodeCheck {
  double c20 = 0.0;           ///< u^2 coefficient on the center direction
  double rho = 0.0;           ///< the nonzero eigenvalue
  Vec2 center_direction{};    ///< kernel of J, first component 1
  Vec2 hyperbolic_direction{};
  SaddleNodeVerdict verdict = SaddleNodeVerdict::NeedsHigherOrder;
};

/// Requires det(J) ~ 0 and trace(J) != 0; throws NotSemiDegenerate otherwise.
SaddleNodeCheck saddle_node_check(const ModelParams& p, const State& u);

/// c20 for an explicit basis (center, hyperbolic). Exposed so the
/// dependence on eigenvector scaling can be tested.
double saddle_node_coefficient(const QuadraticTerms& quad, const Vec2& center, const Vec2& hyperbolic);

enum class CuspVerdict { Codim2Cusp, Degenerate };

/// Reduction to  u' = v + e20 u^2 + ...,  v' = f20 u^2 + f11 u v + ...
/// and then v' = g20 u^2 + g11 u v  with g20 = f20, g11 = f11 + 2 e20.
struct CuspCheck {
  double e20 = 0.0;
  double e11 = 0.0;
  double f20 = 0.0;
  double f11 = 0.0;
  double f02 = 0.0;
  double g20 = 0.0;
  double g11 = 0.0;
  CuspVerdict verdict = CuspVerdict::Degenerate;
};

/// Requires det(J) ~ 0, trace(J) ~ 0 and J != 0; throws NotDoublyDegenerate.
CuspCheck cusp_check(const ModelParams& p, const State& u);

}  // namespace allee
