#include "allee/equilibria.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "allee/error.hpp"
#include "allee/normal_forms.hpp"

namespace allee {
namespace {

constexpr std::array<std::string_view, 9> kKindNames = {
    "StableNode", "UnstableNode", "StableFocus", "UnstableFocus", "Saddle",
    "SaddleNode", "WeakCenter",   "Cusp",        "Degenerate",
};
constexpr std::array<std::string_view, 3> kBranchNames = {"PreyAxis", "AlleeLine", "Diagonal"};
constexpr std::array<std::string_view, 9> kLabelNames = {"E1", "E2", "E3", "E4", "E5",
                                                         "E6", "E7", "E8", "E9"};

enum class RootCase { None, Double, Two };

struct QuadraticRoots {
  RootCase kind = RootCase::None;
  double larger = 0.0;
  double smaller = 0.0;
};

// Roots of x^2 - b x + c with b > 0, c > 0. The larger root is computed
// directly and the smaller from the product of roots, which avoids the
// cancellation in (b - sqrt(delta)) / 2 when c is small.
QuadraticRoots solve_monic(double b, double c) {
  const double delta = b * b - 4.0 * c;
  const double scale = std::max({1.0, b * b, c * c});
  QuadraticRoots r;
  if (std::abs(delta) <= kDiscriminantTolerance * scale) {
    r.kind = RootCase::Double;
    r.larger = r.smaller = 0.5 * b;
  } else if (delta > 0.0) {
    r.kind = RootCase::Two;
    r.larger = 0.5 * (b + std::sqrt(delta));
    r.smaller = c / r.larger;
  }
  return r;
}

Equilibrium make_equilibrium(const ModelParams& p, Branch branch, Label label, double x) {
  Equilibrium e;
  switch (branch) {
    case Branch::PreyAxis: e.location = {x, 0.0}; break;
    case Branch::AlleeLine: e.location = {x, p.m}; break;
    case Branch::Diagonal: e.location = {x, x}; break;
  }
  e.branch = branch;
  e.label = label;
  const TraceDet td = closed_form_trace_det(p, branch, x);
  e.trace = td.trace;
  e.det = td.det;
  e.eigenvalues = eigenvalues(derivatives(p, e.location).jacobian);
  e.classification = classify(p, e);
  return e;
}

std::vector<Equilibrium> from_roots(const ModelParams& p, Branch branch, const QuadraticRoots& r,
                                    Label double_label, Label larger_label, Label smaller_label) {
  std::vector<Equilibrium> out;
  if (r.kind == RootCase::Double) {
    out.push_back(make_equilibrium(p, branch, double_label, r.larger));
  } else if (r.kind == RootCase::Two) {
    out.push_back(make_equilibrium(p, branch, larger_label, r.larger));
    out.push_back(make_equilibrium(p, branch, smaller_label, r.smaller));
  }
  return out;
}

template <std::size_t N, typename Enum>
std::optional<Enum> parse_enum(const std::array<std::string_view, N>& names, std::string_view s, int offset) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<Enum>(static_cast<int>(i) + offset);
  }
  return std::nullopt;
}

bool denominator_ok(double d) { return std::abs(d) > 1e-12; }

}  // namespace

std::string_view to_string(Branch b) noexcept { return kBranchNames[static_cast<int>(b)]; }
std::string_view to_string(Label l) noexcept { return kLabelNames[static_cast<int>(l) - 1]; }
std::string_view to_string(StabilityKind k) noexcept { return kKindNames[static_cast<int>(k)]; }

std::optional<Branch> branch_from_string(std::string_view s) noexcept {
  return parse_enum<3, Branch>(kBranchNames, s, 0);
}
std::optional<Label> label_from_string(std::string_view s) noexcept {
  return parse_enum<9, Label>(kLabelNames, s, 1);
}
std::optional<StabilityKind> stability_from_string(std::string_view s) noexcept {
  return parse_enum<9, StabilityKind>(kKindNames, s, 0);
}

bool is_hyperbolic(StabilityKind k) noexcept {
  switch (k) {
    case StabilityKind::StableNode:
    case StabilityKind::UnstableNode:
    case StabilityKind::StableFocus:
    case StabilityKind::UnstableFocus:
    case StabilityKind::Saddle:
      return true;
    default:
      return false;
  }
}

BranchDiscriminants discriminants(const ModelParams& p) {
  BranchDiscriminants d;
  d.A = 1.0 - p.q * p.m;
  d.delta1 = d.A * d.A - 4.0 * p.h;
  if (d.delta1 >= 0.0) d.B = std::sqrt(d.delta1);
  d.C = 1.0 / (p.q + 1.0);
  d.delta2 = d.C * d.C - 4.0 * p.h / (p.q + 1.0);
  if (d.delta2 >= 0.0) d.D = std::sqrt(d.delta2);
  return d;
}

double branch_polynomial(const ModelParams& p, Branch branch, double x) {
  switch (branch) {
    case Branch::PreyAxis: return x * x - x + p.h;
    case Branch::AlleeLine: return x * x - (1.0 - p.q * p.m) * x + p.h;
    case Branch::Diagonal: return x * x - x / (p.q + 1.0) + p.h / (p.q + 1.0);
  }
  return 0.0;
}

std::vector<Equilibrium> solve_branch_prey_axis(const ModelParams& p) {
  validate(p);
  return from_roots(p, Branch::PreyAxis, solve_monic(1.0, p.h), Label::E1, Label::E2, Label::E3);
}

std::vector<Equilibrium> solve_branch_allee_line(const ModelParams& p) {
  validate(p);
  const double A = 1.0 - p.q * p.m;
  if (A <= 0.0) return {};
  return from_roots(p, Branch::AlleeLine, solve_monic(A, p.h), Label::E4, Label::E5, Label::E6);
}

std::vector<Equilibrium> solve_branch_diagonal(const ModelParams& p) {
  validate(p);
  const double C = 1.0 / (p.q + 1.0);
  return from_roots(p, Branch::Diagonal, solve_monic(C, p.h * C), Label::E7, Label::E8, Label::E9);
}

TraceDet closed_form_trace_det(const ModelParams& p, Branch branch, double x) {
  const double s = p.s;
  const double m = p.m;
  const double q = p.q;
  switch (branch) {
    case Branch::PreyAxis: {
      const double l1 = 1.0 - 2.0 * x;
      const double l2 = -s * m;
      return {l1 + l2, l1 * l2};
    }
    case Branch::AlleeLine: {
      const double l1 = 1.0 - 2.0 * x - q * m;
      const double l2 = s * m * (1.0 - m / x);
      return {l1 + l2, l1 * l2};
    }
    case Branch::Diagonal:
      return {s * (m - x) + (1.0 - 2.0 * x - q * x), s * (m - x) * (1.0 - 2.0 * x - 2.0 * q * x)};
  }
  return {0.0, 0.0};
}

std::array<std::complex<double>, 2> eigenvalues(const Mat2& J) {
  Eigen::Matrix2d M;
  M << J[0][0], J[0][1], J[1][0], J[1][1];
  Eigen::EigenSolver<Eigen::Matrix2d> solver(M, /*computeEigenvectors=*/false);
  const auto ev = solver.eigenvalues();
  std::array<std::complex<double>, 2> out{ev(0), ev(1)};
  // Deterministic order: larger real part first, then larger imaginary part.
  if (out[0].real() < out[1].real() || (out[0].real() == out[1].real() && out[0].imag() < out[1].imag())) {
    std::swap(out[0], out[1]);
  }
  return out;
}

StabilityKind classify_by_eigenvalues(const Mat2& J) {
  const double scale = frobenius_norm(J);
  if (scale == 0.0) return StabilityKind::Degenerate;
  const auto ev = eigenvalues(J);
  const double zero = 1e-7 * scale;
  const double im = std::abs(ev[0].imag());
  const bool complex_pair = im > 1e-12 * scale && im > kRepeatedRootBand * std::abs(ev[0].real());
  const bool z0 = std::abs(ev[0].real()) <= zero;
  const bool z1 = std::abs(ev[1].real()) <= zero;

  if (z0 && z1) return complex_pair ? StabilityKind::WeakCenter : StabilityKind::Cusp;
  if (z0 || z1) return StabilityKind::SaddleNode;
  if (ev[0].real() * ev[1].real() < 0.0) return StabilityKind::Saddle;
  const bool stable = ev[0].real() < 0.0;
  if (complex_pair) return stable ? StabilityKind::StableFocus : StabilityKind::UnstableFocus;
  return stable ? StabilityKind::StableNode : StabilityKind::UnstableNode;
}

StabilityKind classify(const ModelParams& p, const Equilibrium& e) {
  const Vec2 residual = vector_field(p, e.location);
  if (norm(residual) > kResidualTolerance) {
    std::ostringstream os;
    os << to_string(e.label) << " at (" << e.location.x << ", " << e.location.y
       << ") is not an equilibrium: residual " << norm(residual);
    throw Error(ErrorCode::InconsistentInput, os.str());
  }

  const TraceDet td = closed_form_trace_det(p, e.branch, e.location.x);
  const double n = frobenius_norm(derivatives(p, e.location).jacobian);
  const bool det_zero = std::abs(td.det) <= kDegeneracyTolerance * n * n;
  const bool trace_zero = std::abs(td.trace) <= kDegeneracyTolerance * n;

  if (det_zero) {
    try {
      if (trace_zero) {
        return cusp_check(p, e.location).verdict == CuspVerdict::Codim2Cusp ? StabilityKind::Cusp
                                                                            : StabilityKind::Degenerate;
      }
      return saddle_node_check(p, e.location).verdict == SaddleNodeVerdict::SaddleNode
                 ? StabilityKind::SaddleNode
                 : StabilityKind::Degenerate;
    } catch (const Error&) {
      // The closed forms and the analytic Jacobian disagree about the
      // degeneracy at rounding level; no normal form applies.
      return StabilityKind::Degenerate;
    }
  }
  if (td.det < 0.0) return StabilityKind::Saddle;
  if (trace_zero) return StabilityKind::WeakCenter;

  const bool stable = td.trace < 0.0;
  // tr^2 - 4 det = -4 Im(lambda)^2 for a complex pair; same band as the eigenvalue route.
  const double band = 4.0 * kRepeatedRootBand * kRepeatedRootBand * (td.trace * td.trace / 4.0);
  const bool node = td.trace * td.trace - 4.0 * td.det >= -band;
  if (node) return stable ? StabilityKind::StableNode : StabilityKind::UnstableNode;
  return stable ? StabilityKind::StableFocus : StabilityKind::UnstableFocus;
}

Thresholds thresholds(const ModelParams& p, std::optional<double> x8, std::optional<double> x9) {
  Thresholds t;
  t.h1 = p.m - (p.q + 1.0) * p.m * p.m;
  t.h3 = 1.0 / (4.0 * (p.q + 1.0));
  if (const double den = 2.0 * (p.m - 2.0 * p.h); denominator_ok(den)) {
    t.s1 = (4.0 * p.h - 1.0) / den;
  }
  auto critical_s = [&](double x) -> std::optional<double> {
    const double den = p.m - x;
    if (!denominator_ok(den)) return std::nullopt;
    return (2.0 * x + p.q * x - 1.0) / den;
  };
  if (x8) t.s2 = critical_s(*x8);
  if (x9) t.s3 = critical_s(*x9);
  return t;
}

Thresholds thresholds(const ModelParams& p) {
  validate(p);
  std::optional<double> x8;
  std::optional<double> x9;
  const QuadraticRoots r = solve_monic(1.0 / (p.q + 1.0), p.h / (p.q + 1.0));
  if (r.kind == RootCase::Two) {
    x8 = r.larger;
    x9 = r.smaller;
  }
  return thresholds(p, x8, x9);
}

std::vector<Equilibrium> full_portrait(const ModelParams& p) {
  validate(p);
  std::vector<Equilibrium> all;
  for (auto* solver : {&solve_branch_prey_axis, &solve_branch_allee_line, &solve_branch_diagonal}) {
    for (Equilibrium& e : (*solver)(p)) {
      auto same = std::find_if(all.begin(), all.end(), [&](const Equilibrium& o) {
        return std::hypot(o.location.x - e.location.x, o.location.y - e.location.y) <= kCoincidenceDistance;
      });
      if (same != all.end()) {
        same->coincident.push_back({e.branch, e.label});
      } else {
        all.push_back(std::move(e));
      }
    }
  }
  return all;
}

}  // namespace allee
