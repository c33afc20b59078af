#include "allee/bifurcations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "allee/error.hpp"

namespace allee {
namespace {

bool negligible(double value, double scale) {
  return std::abs(value) <= kDegeneracyTolerance * std::max(1.0, scale);
}

// D^2 f(v, v) for one component given {xx, xy, yy}.
double second_form(const std::array<double, 3>& d2, const Vec2& v) {
  return d2[0] * v[0] * v[0] + 2.0 * d2[1] * v[0] * v[1] + d2[2] * v[1] * v[1];
}

[[noreturn]] void inadmissible(const std::string& what) { throw Error(ErrorCode::HopfInadmissible, what); }

bool same_value(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

std::string_view to_string(WeakFocus w) noexcept { return w == WeakFocus::E8 ? "E8" : "E9"; }

std::string_view to_string(HopfDirection d) noexcept {
  switch (d) {
    case HopfDirection::Supercritical: return "Supercritical";
    case HopfDirection::Subcritical: return "Subcritical";
    case HopfDirection::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::optional<WeakFocus> weak_focus_from_string(std::string_view s) noexcept {
  if (s == "E8") return WeakFocus::E8;
  if (s == "E9") return WeakFocus::E9;
  return std::nullopt;
}

std::string_view to_string(SotomayorVerdict v) noexcept {
  return v == SotomayorVerdict::SaddleNodeBifurcation ? "SaddleNodeBifurcation" : "Degenerate";
}

std::string_view to_string(BtVerdict v) noexcept { return v == BtVerdict::BTCodim2 ? "BTCodim2" : "Degenerate"; }

SotomayorReport sotomayor_saddle_node(const ModelParams& p, const State& u, Parameter bif_param) {
  const DerivativeBundle d = derivatives(p, u);
  const Mat2& J = d.jacobian;
  if (!det_is_zero(J) || trace_is_zero(J)) {
    std::ostringstream os;
    os << "Jacobian at (" << u.x << ", " << u.y << ") has no simple zero eigenvalue (det = " << det(J)
       << ", trace = " << trace(J) << ")";
    throw Error(ErrorCode::NoZeroEigenvalue, os.str());
  }

  SotomayorReport r;
  r.v = null_vector(J);
  // Left null vector from the second column, w = 2(-J22, J12); the factor 2
  // matches the normalization w = (2sm, -q) at E1.
  if (J[0][1] != 0.0 || J[1][1] != 0.0) {
    r.w = {-2.0 * J[1][1], 2.0 * J[0][1]};
  } else {
    r.w = {2.0 * J[1][0], -2.0 * J[0][0]};
  }

  const Vec2 f_mu = parameter_derivative(p, u, bif_param);
  r.transversality1 = dot(r.w, f_mu);
  r.transversality2 = dot(r.w, {second_form(d.second[0], r.v), second_form(d.second[1], r.v)});

  const double scale = frobenius_norm(J);
  r.verdict = negligible(r.transversality1, scale) || negligible(r.transversality2, scale)
                  ? SotomayorVerdict::Degenerate
                  : SotomayorVerdict::SaddleNodeBifurcation;
  return r;
}

State weak_focus_location(const ModelParams& p, WeakFocus which) {
  const Label want = which == WeakFocus::E8 ? Label::E8 : Label::E9;
  for (const Equilibrium& e : solve_branch_diagonal(p)) {
    if (e.label == want) return e.location;
  }
  inadmissible("the diagonal branch has no pair of simple roots (delta2 <= 0)");
}

double hopf_critical_s(const ModelParams& p, WeakFocus which) {
  validate(p);
  const State u = weak_focus_location(p, which);
  const double x = u.x;
  if (which == WeakFocus::E8 && !(p.m < x)) {
    std::ostringstream os;
    os << "E8 needs m < x8, got m = " << p.m << ", x8 = " << x;
    inadmissible(os.str());
  }
  if (which == WeakFocus::E9 && !(p.m > x)) {
    std::ostringstream os;
    os << "E9 needs m > x9, got m = " << p.m << ", x9 = " << x;
    inadmissible(os.str());
  }
  const double s = (2.0 * x + p.q * x - 1.0) / (p.m - x);
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "critical s = " << s << " is not positive";
    inadmissible(os.str());
  }
  return s;
}

std::array<double, 8> phi_terms(const TaylorCoefficients& t, PhiVariant variant) {
  const double a10 = t.a[1][0], a01 = t.a[0][1], a20 = t.a[2][0], a11 = t.a[1][1], a30 = t.a[3][0];
  const double b10 = t.b[1][0], b20 = t.b[2][0], b11 = t.b[1][1], b02 = t.b[0][2];
  const double b03 = t.b[0][3], b12 = t.b[1][2], b21 = t.b[2][1];
  const bool printed = variant == PhiVariant::AsPrinted;
  return {
      a10 * b10 * (a11 * a11 + a11 * b02),
      a10 * a01 * (b11 * b11 + a20 * b11 + a11 * b02),
      0.0,
      -2.0 * a10 * b10 * b02 * b02,
      -2.0 * a10 * a01 * (a20 * a20 - b20 * b02),
      -a01 * a01 * (2.0 * a20 * b20 + (printed ? b11 * a20 : b11 * b20)),
      ((printed ? a01 * t.b[0][1] : a01 * b10) - 2.0 * a10 * a10) * (b11 * b02 - a11 * a20),
      -(a10 * a10 + a01 * b10) * (3.0 * (b10 * b03 - a01 * a30) + 2.0 * a10 * b12 - a01 * b21),
  };
}

double lyapunov_sigma_general(const TaylorCoefficients& t, LyapunovFormula formula) {
  const double a = t.a[1][0], b = t.a[0][1], c = t.b[1][0], d = t.b[0][1];
  const double a20 = t.a[2][0], a11 = t.a[1][1], a02 = t.a[0][2];
  const double b20 = t.b[2][0], b11 = t.b[1][1], b02 = t.b[0][2];
  const double a30 = t.a[3][0], a21 = t.a[2][1], a12 = t.a[1][2];
  const double b21 = t.b[2][1], b12 = t.b[1][2], b03 = t.b[0][3];
  const double D = a * d - b * c;
  if (!(D > 0.0) || b == 0.0) {
    throw Error(ErrorCode::NotAWeakCenter, "general Lyapunov formula needs det > 0 and a01 != 0");
  }
  const double bracket = a * c * (a11 * a11 + a11 * b02 + a02 * b11) + a * b * (b11 * b11 + a20 * b11 + a11 * (formula == LyapunovFormula::Corrected ? b20 : b02)) +
                         c * c * (a11 * a02 + 2.0 * a02 * b02) - 2.0 * a * c * (b02 * b02 - a20 * a02) -
                         2.0 * a * b * (a20 * a20 - b20 * b02) - b * b * (2.0 * a20 * b20 + b11 * b20) +
                         (b * c - 2.0 * a * a) * (b11 * b02 - a11 * a20) -
                         (a * a + b * c) * (3.0 * (c * b03 - b * a30) + 2.0 * a * (a21 + b12) + (c * a12 - b * b21));
  return -3.0 * std::numbers::pi / (2.0 * b * std::pow(D, 1.5)) * bracket;
}

HopfReport first_lyapunov_coefficient(const ModelParams& p, WeakFocus which) {
  validate(p);
  HopfReport r;
  r.which = which;
  r.location = weak_focus_location(p, which);
  r.s_critical = p.s;

  const TaylorCoefficients t = taylor_at(p, r.location);
  const Mat2 J{{{t.a[1][0], t.a[0][1]}, {t.b[1][0], t.b[0][1]}}};
  r.M = det(J);
  if (std::abs(trace(J)) > kWeakCenterTraceTolerance || !(r.M > 0.0)) {
    std::ostringstream os;
    os << to_string(which) << " is not a weak center at s = " << p.s << " (trace = " << trace(J)
       << ", det = " << r.M << ")";
    throw Error(ErrorCode::NotAWeakCenter, os.str());
  }
  r.transversality = p.m - r.location.x;

  const double a01 = t.a[0][1];
  const double prefactor = -3.0 * std::numbers::pi / (2.0 * a01 * std::pow(r.M, 1.5));
  r.phi = phi_terms(t, PhiVariant::Consistent);
  double sum = 0.0;
  for (double v : r.phi) sum += v;
  r.sigma = prefactor * sum;

  const auto printed = phi_terms(t, PhiVariant::AsPrinted);
  double printed_sum = 0.0;
  for (double v : printed) printed_sum += v;
  r.sigma_as_printed = prefactor * printed_sum;
  r.sigma_general = lyapunov_sigma_general(t, LyapunovFormula::AsPublished);
  r.sigma_corrected = lyapunov_sigma_general(t, LyapunovFormula::Corrected);

  // The published bracket carries a11*b02 where a11*b20 belongs; with a10 != 0
  // that flips the sign at some weak centers, so the verdict uses the fix.
  if (r.sigma_corrected < -kSigmaTolerance) {
    r.direction = HopfDirection::Supercritical;
  } else if (r.sigma_corrected > kSigmaTolerance) {
    r.direction = HopfDirection::Subcritical;
  }
  return r;
}

ModelParams cusp_base(double q, double m) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::CuspConditionsViolated, "q must be positive");
  }
  if (!(m > 0.0 && m < 1.0)) {
    throw Error(ErrorCode::CuspConditionsViolated, "m must lie in (0, 1)");
  }
  const double h3 = 1.0 / (4.0 * (q + 1.0));
  const double den = 2.0 * (m - 2.0 * h3);
  if (std::abs(den) <= 1e-12) {
    throw Error(ErrorCode::CuspConditionsViolated, "m = 2 h3 leaves s1 undefined");
  }
  const double s1 = (4.0 * h3 - 1.0) / den;
  if (!(s1 > 0.0)) {
    std::ostringstream os;
    os << "s1 = " << s1 << " is not positive (needs m < 2 h3 = " << 2.0 * h3 << ")";
    throw Error(ErrorCode::CuspConditionsViolated, os.str());
  }
  return ModelParams{.q = q, .s = s1, .h = h3, .m = m};
}

BtExpansion bt_expansion(const ModelParams& base, double eta1, double eta2) {
  ModelParams perturbed = base;
  perturbed.h += eta1;
  perturbed.s += eta2;
  const State center{2.0 * base.h, 2.0 * base.h};
  const TaylorCoefficients t = taylor_at(perturbed, center);
  BtExpansion e;
  e.a00 = vector_field(perturbed, center)[0];
  e.a10 = t.a[1][0];
  e.a01 = t.a[0][1];
  e.a20 = t.a[2][0];
  e.a11 = t.a[1][1];
  e.b10 = t.b[1][0];
  e.b01 = t.b[0][1];
  e.b20 = t.b[2][0];
  e.b11 = t.b[1][1];
  e.b02 = t.b[0][2];
  return e;
}

BtLadder reduce_bt(const BtExpansion& ab) {
  const auto [a00, a10, a01, a20, a11, b10, b01, b20, b11, b02] = ab;
  if (a01 == 0.0) throw Error(ErrorCode::NumericalFailure, "a01 = 0: the linear change of variables is singular");

  BtLadder L;
  L.ab = ab;

  // Flatten the prey equation: u2 = u1, v2 = a00 + a10 u1 + a01 v1 + ...
  auto& c = L.c;
  c.c00 = a00;
  c.c20 = a20 - a11 * a10 / a01;
  c.c11 = a11 / a01;
  auto& d = L.d;
  d.d00 = a00 * a10;
  d.d10 = a01 * b10 - a10 * b01;
  d.d01 = a10 + b01;
  d.d20 = a10 * a20 + a01 * b20 - a10 * b11 - a10 * a10 * a11 / a01 + a10 * a10 * b02 / a01;
  d.d11 = b11 + a10 * a11 / a01 - 2.0 * a10 * b02 / a01;
  d.d02 = b02 / a01;

  // v3 = c00 + v2 + c20 u2^2 + c11 u2 v2, so that u3' = v3.
  auto& e = L.e;
  e.e00 = d.d00 - c.c00 * d.d01 + c.c00 * c.c00 * d.d02;
  e.e10 = d.d10 + c.c11 * d.d00 - c.c00 * d.d11 - c.c00 * c.c00 * c.c11 * d.d02;
  e.e01 = d.d01 - c.c00 * c.c11 - 2.0 * c.c00 * d.d02;
  e.e20 = d.d20 + c.c11 * d.d10 - c.c20 * d.d01 + 2.0 * c.c00 * c.c20 * d.d02 +
          c.c00 * c.c00 * c.c11 * c.c11 * d.d02;
  e.e11 = d.d11 + 2.0 * c.c20 + c.c00 * c.c11 * c.c11 + 2.0 * c.c00 * c.c11 * d.d02;
  e.e02 = d.d02 + c.c11;

  // Time change dt = (1 - e02 u3) dtau removes the v^2 term.
  auto& f = L.f;
  f.f00 = e.e00;
  f.f10 = e.e10 - 2.0 * e.e00 * e.e02;
  f.f01 = e.e01;
  f.f20 = e.e20 - 2.0 * e.e02 * e.e10 + e.e00 * e.e02 * e.e02;
  f.f11 = -e.e01 * e.e02 + e.e11;

  const double f_scale = std::max({1.0, std::abs(e.e20), std::abs(e.e02 * e.e10)});
  if (std::abs(f.f20) <= 1e-12 * f_scale) {
    throw Error(ErrorCode::SignAssumptionViolated, "f20 vanishes; the quadratic normal form is degenerate");
  }

  auto& g = L.g;
  if (f.f20 < 0.0) {
    const double r = std::sqrt(-f.f20);
    g.g00 = -f.f00 / f.f20;
    g.g10 = -f.f10 / f.f20;
    g.g01 = f.f01 / r;
    g.g11 = f.f11 / r;
  } else {
    const double r = std::sqrt(f.f20);
    L.mirrored = true;
    g.g00 = -f.f00 / f.f20;
    g.g10 = f.f10 / f.f20;
    g.g01 = f.f01 / r;
    g.g11 = -f.f11 / r;
  }

  auto& h = L.h;
  h.h00 = g.g00 + 0.25 * g.g10 * g.g10;
  h.h01 = g.g01 + 0.5 * g.g10 * g.g11;
  h.h11 = g.g11;

  L.l00 = -h.h00 * std::pow(h.h11, 4);
  L.l01 = -h.h01 * h.h11;
  return L;
}

Mat2 bt_parameter_jacobian(const ModelParams& base, double step) {
  auto l = [&](double e1, double e2) {
    const BtLadder L = reduce_bt(bt_expansion(base, e1, e2));
    return Vec2{L.l00, L.l01};
  };
  const Vec2 p1 = l(step, 0.0), m1 = l(-step, 0.0);
  const Vec2 p2 = l(0.0, step), m2 = l(0.0, -step);
  const double inv = 1.0 / (2.0 * step);
  return {{{(p1[0] - m1[0]) * inv, (p2[0] - m2[0]) * inv}, {(p1[1] - m1[1]) * inv, (p2[1] - m2[1]) * inv}}};
}

BTReport bt_normal_form(const ModelParams& base, std::array<double, 2> eta, double fd_step) {
  validate(base);
  const ModelParams cusp = cusp_base(base.q, base.m);
  if (!same_value(base.h, cusp.h) || !same_value(base.s, cusp.s)) {
    std::ostringstream os;
    os << "base point is not a cusp: need h = h3 = " << cusp.h << " and s = s1 = " << cusp.s << ", got h = "
       << base.h << ", s = " << base.s;
    throw Error(ErrorCode::CuspConditionsViolated, os.str());
  }
  if (!(std::hypot(eta[0], eta[1]) <= kBtMaxEta)) {
    std::ostringstream os;
    os << "|eta| must not exceed " << kBtMaxEta;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  if (!(fd_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");

  BTReport r;
  r.eta = eta;
  r.ladder = reduce_bt(bt_expansion(base, eta[0], eta[1]));
  r.l00 = r.ladder.l00;
  r.l01 = r.ladder.l01;
  r.mirrored = r.ladder.mirrored;
  r.jacobian = bt_parameter_jacobian(base, fd_step);
  r.jac_det = det(r.jacobian);
  r.verdict = std::abs(r.jac_det) > kBtJacobianThreshold ? BtVerdict::BTCodim2 : BtVerdict::Degenerate;
  return r;
}

}  // namespace allee
