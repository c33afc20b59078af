#include "allee/normal_forms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "allee/error.hpp"

namespace allee {
namespace {

double max_abs(const QuadraticTerms& q) {
  double m = 0.0;
  for (const auto& row : q.coeff)
    for (double c : row) m = std::max(m, std::abs(c));
  return m;
}

bool negligible(double value, double scale) {
  return std::abs(value) <= kDegeneracyTolerance * std::max(1.0, scale);
}

}  // namespace

TaylorCoefficients taylor_at(const ModelParams& p, const State& u) {
  const DerivativeBundle d = derivatives(p, u);
  TaylorCoefficients t;
  t.a[1][0] = d.jacobian[0][0];
  t.a[0][1] = d.jacobian[0][1];
  t.b[1][0] = d.jacobian[1][0];
  t.b[0][1] = d.jacobian[1][1];

  t.a[2][0] = 0.5 * d.second[0][0];
  t.a[1][1] = d.second[0][1];
  t.a[0][2] = 0.5 * d.second[0][2];
  t.b[2][0] = 0.5 * d.second[1][0];
  t.b[1][1] = d.second[1][1];
  t.b[0][2] = 0.5 * d.second[1][2];

  // Cubic coefficients: d^3 f / dx^i dy^j divided by i! j!.
  t.b[3][0] = d.third_f2[0] / 6.0;
  t.b[2][1] = d.third_f2[1] / 2.0;
  t.b[1][2] = d.third_f2[2] / 2.0;
  t.b[0][3] = d.third_f2[3] / 6.0;
  return t;
}

Vec2 evaluate(const TaylorCoefficients& t, const Vec2& delta) {
  Vec2 out{0.0, 0.0};
  double ui = 1.0;
  for (int i = 0; i <= 3; ++i) {
    double vj = 1.0;
    for (int j = 0; i + j <= 3; ++j) {
      out[0] += t.a[i][j] * ui * vj;
      out[1] += t.b[i][j] * ui * vj;
      vj *= delta[1];
    }
    ui *= delta[0];
  }
  return out;
}

QuadraticTerms quadratic_terms(const TaylorCoefficients& t) {
  QuadraticTerms q;
  q.coeff[0] = {t.a[2][0], t.a[1][1], t.a[0][2]};
  q.coeff[1] = {t.b[2][0], t.b[1][1], t.b[0][2]};
  return q;
}

Mat2 inverse(const Mat2& a) {
  const double d = det(a);
  if (d == 0.0 || !std::isfinite(d)) {
    throw Error(ErrorCode::NumericalFailure, "singular change of basis");
  }
  return {{{a[1][1] / d, -a[0][1] / d}, {-a[1][0] / d, a[0][0] / d}}};
}

Mat2 multiply(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

QuadraticTerms change_basis(const QuadraticTerms& quad, const Mat2& P) {
  // Component k of Q at z = P xi is the bilinear form B_k(z, z) with
  // B_k = [[c20, c11/2], [c11/2, c02]].
  const Vec2 p1{P[0][0], P[1][0]};
  const Vec2 p2{P[0][1], P[1][1]};
  auto bilinear = [&](int k, const Vec2& l, const Vec2& r) {
    const auto& c = quad.coeff[k];
    return c[0] * l[0] * r[0] + 0.5 * c[1] * (l[0] * r[1] + l[1] * r[0]) + c[2] * l[1] * r[1];
  };
  std::array<std::array<double, 3>, 2> raw{};
  for (int k = 0; k < 2; ++k) {
    raw[k] = {bilinear(k, p1, p1), 2.0 * bilinear(k, p1, p2), bilinear(k, p2, p2)};
  }
  const Mat2 Pinv = inverse(P);
  QuadraticTerms out;
  for (int k = 0; k < 2; ++k)
    for (int c = 0; c < 3; ++c) out.coeff[k][c] = Pinv[k][0] * raw[0][c] + Pinv[k][1] * raw[1][c];
  return out;
}

bool det_is_zero(const Mat2& J) {
  const double n = frobenius_norm(J);
  return std::abs(det(J)) <= kDegeneracyTolerance * n * n;
}

bool trace_is_zero(const Mat2& J) {
  return std::abs(trace(J)) <= kDegeneracyTolerance * frobenius_norm(J);
}

Vec2 null_vector(const Mat2& J) {
  // Use the row with the larger coefficient on y: a v1 + b v2 = 0.
  const int r = std::abs(J[0][1]) >= std::abs(J[1][1]) ? 0 : 1;
  if (J[r][1] != 0.0) return {1.0, -J[r][0] / J[r][1]};
  return {0.0, 1.0};
}

double saddle_node_coefficient(const QuadraticTerms& quad, const Vec2& center, const Vec2& hyperbolic) {
  const Mat2 P{{{center[0], hyperbolic[0]}, {center[1], hyperbolic[1]}}};
  return change_basis(quad, P).coeff[0][0];
}

SaddleNodeCheck saddle_node_check(const ModelParams& p, const State& u) {
  const TaylorCoefficients t = taylor_at(p, u);
  const Mat2 J{{{t.a[1][0], t.a[0][1]}, {t.b[1][0], t.b[0][1]}}};
  if (!det_is_zero(J) || trace_is_zero(J)) {
    std::ostringstream os;
    os << "saddle-node check needs det(J) = 0 and trace(J) != 0 (det = " << det(J)
       << ", trace = " << trace(J) << ")";
    throw Error(ErrorCode::NotSemiDegenerate, os.str());
  }

  SaddleNodeCheck out;
  out.rho = trace(J);
  out.center_direction = null_vector(J);

  // Eigenvector of rho from whichever row of (J - rho I) is better conditioned.
  const Vec2 w1{J[0][1], out.rho - J[0][0]};
  const Vec2 w2{out.rho - J[1][1], J[1][0]};
  out.hyperbolic_direction = norm(w1) >= norm(w2) ? w1 : w2;

  const QuadraticTerms quad = quadratic_terms(t);
  out.c20 = saddle_node_coefficient(quad, out.center_direction, out.hyperbolic_direction);
  out.verdict = negligible(out.c20, max_abs(quad)) || negligible(out.rho, frobenius_norm(J))
                    ? SaddleNodeVerdict::NeedsHigherOrder
                    : SaddleNodeVerdict::SaddleNode;
  return out;
}

CuspCheck cusp_check(const ModelParams& p, const State& u) {
  const TaylorCoefficients t = taylor_at(p, u);
  const Mat2 J{{{t.a[1][0], t.a[0][1]}, {t.b[1][0], t.b[0][1]}}};
  if (!det_is_zero(J) || !trace_is_zero(J) || frobenius_norm(J) == 0.0) {
    std::ostringstream os;
    os << "cusp check needs a nonzero nilpotent Jacobian (det = " << det(J) << ", trace = " << trace(J)
       << ")";
    throw Error(ErrorCode::NotDoublyDegenerate, os.str());
  }

  // Basis {v, w} with J v = 0 and J w = v puts the linear part in the form
  // u' = v. With w = (0, 1/J01) this is u1 = u3, v1 = v2 u3 + v3 / J01.
  const Vec2 v = null_vector(J);
  Vec2 w;
  if (J[0][1] != 0.0) {
    w = {0.0, 1.0 / J[0][1]};
  } else if (J[0][0] != 0.0) {
    w = {1.0 / J[0][0], 0.0};
  } else {
    throw Error(ErrorCode::NumericalFailure, "cannot build a Jordan basis for the cusp reduction");
  }
  const Mat2 P{{{v[0], w[0]}, {v[1], w[1]}}};
  const QuadraticTerms quad = quadratic_terms(t);
  const QuadraticTerms r = change_basis(quad, P);

  CuspCheck out;
  out.e20 = r.coeff[0][0];
  out.e11 = r.coeff[0][1];
  out.f20 = r.coeff[1][0];
  out.f11 = r.coeff[1][1];
  out.f02 = r.coeff[1][2];
  out.g20 = out.f20;
  out.g11 = out.f11 + 2.0 * out.e20;
  const double scale = max_abs(quad);
  out.verdict = negligible(out.g20, scale) || negligible(out.g11, scale) ? CuspVerdict::Degenerate
                                                                           : CuspVerdict::Codim2Cusp;
  return out;
}

}  // namespace allee
