#pragma once

// Harvested Leslie-Gower predator-prey model with an Allee effect in the
// predator. Nondimensional form:
//
//   dx/dt = x(1 - x) - q x y - h
//   dy/dt = s y (1 - y/x)(y - m)
//
// The y-equation is singular at x = 0; every evaluation here rejects x <= 0.

#include <array>
#include <cmath>
#include <optional>
#include <string_view>

namespace allee {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

inline double trace(const Mat2& a) { return a[0][0] + a[1][1]; }
inline double det(const Mat2& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
inline double frobenius_norm(const Mat2& a) {
  return std::sqrt(a[0][0] * a[0][0] + a[0][1] * a[0][1] + a[1][0] * a[1][0] + a[1][1] * a[1][1]);
}
inline Vec2 operator*(const Mat2& a, const Vec2& v) {
  return {a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]};
}
inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(const Vec2& v) { return std::hypot(v[0], v[1]); }

/// Parameters of the dimensional system before scaling.
struct DimensionalParams {
  double r;  ///< intrinsic prey growth rate
  double K;  ///< prey carrying capacity
  double q;  ///< predation rate
  double b;  ///< predator-to-prey carrying proportionality
  double s;  ///< predator growth rate
  double h;  ///< constant harvest intensity
  double m;  ///< Allee threshold
};

/// Nondimensional parameters. Valid when q, s, h > 0 and 0 < m < 1.
struct ModelParams {
  double q = 0.0;
  double s = 0.0;
  double h = 0.0;
  double m = 0.0;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Throws NonPositiveParameter / AlleeThresholdOutOfRange.
void validate(const ModelParams& p);
void validate(const DimensionalParams& p);

struct State {
  double x = 0.0;  ///< prey density
  double y = 0.0;  ///< predator density

  Vec2 vec() const { return {x, y}; }
  friend bool operator==(const State&, const State&) = default;
};

/// Parameters a bifurcation analysis may vary.
enum class Parameter { q, s, h, m };

/// Value, Jacobian and higher partials of the vector field at one state.
///
/// `second[k]` holds {d2/dx2, d2/dxdy, d2/dy2} of component k. Only the
/// predator component has nonzero third partials (the prey component is a
/// quadratic polynomial), stored as {xxx, xxy, xyy, yyy}.
struct DerivativeBundle {
  Vec2 f{};
  Mat2 jacobian{};
  std::array<std::array<double, 3>, 2> second{};
  std::array<double, 4> third_f2{};

  static constexpr double third_f1(int /*index*/) { return 0.0; }
};

ModelParams nondimensionalize(const DimensionalParams& p);

Vec2 vector_field(const ModelParams& p, const State& u);

/// Right-hand side of the dimensional system, used to check the scaling.
Vec2 dimensional_vector_field(const DimensionalParams& p, const State& u);

DerivativeBundle derivatives(const ModelParams& p, const State& u);

/// Partial derivative of the vector field with respect to one parameter.
Vec2 parameter_derivative(const ModelParams& p, const State& u, Parameter which);

double& parameter_ref(ModelParams& p, Parameter which);
double parameter_value(const ModelParams& p, Parameter which);

std::string_view to_string(Parameter which) noexcept;
std::optional<Parameter> parameter_from_string(std::string_view name) noexcept;

}  // namespace allee
