#include "allee/model.hpp"

#include <sstream>

#include "allee/error.hpp"

namespace allee {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be positive and finite, got " << value;
    throw Error(ErrorCode::NonPositiveParameter, os.str());
  }
}

void require_interior(const State& u) {
  if (!(u.x > 0.0)) {
    std::ostringstream os;
    os << "prey density must be positive, got x = " << u.x;
    throw Error(ErrorCode::DomainViolation, os.str());
  }
}

}  // namespace

void validate(const ModelParams& p) {
  require_positive(p.q, "q");
  require_positive(p.s, "s");
  require_positive(p.h, "h");
  require_positive(p.m, "m");
  if (!(p.m < 1.0)) {
    std::ostringstream os;
    os << "Allee threshold must satisfy 0 < m < 1, got m = " << p.m;
    throw Error(ErrorCode::AlleeThresholdOutOfRange, os.str());
  }
}

void validate(const DimensionalParams& p) {
  require_positive(p.r, "r");
  require_positive(p.K, "K");
  require_positive(p.q, "q");
  require_positive(p.b, "b");
  require_positive(p.s, "s");
  require_positive(p.h, "h");
  require_positive(p.m, "m");
}

ModelParams nondimensionalize(const DimensionalParams& p) {
  validate(p);
  const double bK = p.b * p.K;
  ModelParams out{
      .q = p.q * bK / p.r,
      .s = p.s * bK / p.r,
      .h = p.h / (p.K * p.r),
      .m = p.m / bK,
  };
  validate(out);
  return out;
}

Vec2 vector_field(const ModelParams& p, const State& u) {
  require_interior(u);
  const double x = u.x;
  const double y = u.y;
  return {x * (1.0 - x) - p.q * x * y - p.h, p.s * y * (1.0 - y / x) * (y - p.m)};
}

Vec2 dimensional_vector_field(const DimensionalParams& p, const State& u) {
  require_interior(u);
  const double x = u.x;
  const double y = u.y;
  return {p.r * x * (1.0 - x / p.K) - p.q * x * y - p.h,
          p.s * y * (1.0 - y / (p.b * x)) * (y - p.m)};
}

DerivativeBundle derivatives(const ModelParams& p, const State& u) {
  require_interior(u);
  const double x = u.x;
  const double y = u.y;
  const double s = p.s;
  const double m = p.m;
  const double q = p.q;

  const double x2 = x * x;
  const double x3 = x2 * x;
  const double x4 = x3 * x;
  // y^2 (y - m) and 3y^2 - 2my recur in the x-partials of the predator equation.
  const double cubic = y * y * (y - m);
  const double mixed = 3.0 * y * y - 2.0 * m * y;

  DerivativeBundle d;
  d.f = {x * (1.0 - x) - q * x * y - p.h, s * y * (1.0 - y / x) * (y - m)};
  d.jacobian = {{{1.0 - 2.0 * x - q * y, -q * x},
                 {s * cubic / x2, s * (2.0 * y - m - 3.0 * y * y / x + 2.0 * m * y / x)}}};
  d.second[0] = {-2.0, -q, 0.0};
  d.second[1] = {-2.0 * s * cubic / x3, s * mixed / x2, s * (2.0 - 6.0 * y / x + 2.0 * m / x)};
  d.third_f2 = {6.0 * s * cubic / x4, -2.0 * s * mixed / x3, s * (6.0 * y - 2.0 * m) / x2, -6.0 * s / x};
  return d;
}

Vec2 parameter_derivative(const ModelParams& p, const State& u, Parameter which) {
  require_interior(u);
  const double x = u.x;
  const double y = u.y;
  switch (which) {
    case Parameter::h: return {-1.0, 0.0};
    case Parameter::q: return {-x * y, 0.0};
    case Parameter::s: return {0.0, y * (1.0 - y / x) * (y - p.m)};
    case Parameter::m: return {0.0, -p.s * y * (1.0 - y / x)};
  }
  return {0.0, 0.0};
}

double& parameter_ref(ModelParams& p, Parameter which) {
  switch (which) {
    case Parameter::q: return p.q;
    case Parameter::s: return p.s;
    case Parameter::h: return p.h;
    case Parameter::m: return p.m;
  }
  return p.h;
}

double parameter_value(const ModelParams& p, Parameter which) {
  switch (which) {
    case Parameter::q: return p.q;
    case Parameter::s: return p.s;
    case Parameter::h: return p.h;
    case Parameter::m: return p.m;
  }
  return p.h;
}

std::string_view to_string(Parameter which) noexcept {
  switch (which) {
    case Parameter::q: return "q";
    case Parameter::s: return "s";
    case Parameter::h: return "h";
    case Parameter::m: return "m";
  }
  return "h";
}

std::optional<Parameter> parameter_from_string(std::string_view name) noexcept {
  for (Parameter p : {Parameter::q, Parameter::s, Parameter::h, Parameter::m}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

}  // namespace allee
