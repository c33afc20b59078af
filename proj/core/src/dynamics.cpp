#include "allee/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "allee/error.hpp"

namespace allee {
namespace {

// Dormand-Prince 5(4) tableau and Hairer's dense-output coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

Vec2 axpy(const Vec2& u, double h, std::initializer_list<std::pair<double, const Vec2*>> terms) {
  Vec2 out = u;
  for (const auto& [c, k] : terms) {
    out[0] += h * c * (*k)[0];
    out[1] += h * c * (*k)[1];
  }
  return out;
}

// One accepted step with its continuous extension.
struct Step {
  double t0 = 0.0;
  double h = 0.0;
  Vec2 u0{};
  Vec2 u1{};
  std::array<Vec2, 5> rcont{};

  double t1() const { return t0 + h; }
  Vec2 at_theta(double theta) const {
    const double th1 = 1.0 - theta;
    Vec2 out;
    for (int i = 0; i < 2; ++i) {
      out[i] = rcont[0][i] +
               theta * (rcont[1][i] + th1 * (rcont[2][i] + theta * (rcont[3][i] + th1 * rcont[4][i])));
    }
    return out;
  }
};

using StepObserver = std::function<std::optional<Terminal>(const Step&)>;

struct RunResult {
  Terminal terminal = Terminal::HorizonReached;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

RunResult run(const PlanarField& field, const Vec2& start, const IntegratorConfig& cfg, const StepObserver& observe) {
  const double sign = cfg.reverse_time ? -1.0 : 1.0;
  auto f = [&](const Vec2& u) -> std::optional<Vec2> {
    auto v = field(u);
    if (!v) return std::nullopt;
    return Vec2{sign * (*v)[0], sign * (*v)[1]};
  };

  RunResult res;
  Vec2 u = start;
  auto k1_opt = f(u);
  if (!k1_opt) throw Error(ErrorCode::DomainViolation, "initial state is outside the domain of the field");
  Vec2 k1 = *k1_opt;

  auto scale = [&](int i, const Vec2& a, const Vec2& b) {
    return cfg.abs_tol + cfg.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
  };

  double h;
  {
    const double s0 = std::hypot(u[0] / scale(0, u, u), u[1] / scale(1, u, u)) / std::sqrt(2.0);
    const double s1 = std::hypot(k1[0] / scale(0, u, u), k1[1] / scale(1, u, u)) / std::sqrt(2.0);
    h = (s0 < 1e-5 || s1 < 1e-5) ? 1e-6 : 0.01 * s0 / s1;
    h = std::min(h, cfg.max_step);
  }

  double t = 0.0;
  while (t < cfg.t_max) {
    const double remaining = cfg.t_max - t;
    if (remaining <= 1e-13 * cfg.t_max) break;
    h = std::min(h, cfg.max_step);
    const bool last = h >= remaining;
    if (last) h = remaining;
    if (h <= 1e-14 * std::max(1.0, t)) {
      res.terminal = Terminal::StepSizeUnderflow;
      return res;
    }

    std::optional<Vec2> k2, k3, k4, k5, k6, k7;
    Vec2 u1;
    bool inside = (k2 = f(axpy(u, h, {{a21, &k1}}))).has_value() &&
                  (k3 = f(axpy(u, h, {{a31, &k1}, {a32, &*k2}}))).has_value() &&
                  (k4 = f(axpy(u, h, {{a41, &k1}, {a42, &*k2}, {a43, &*k3}}))).has_value() &&
                  (k5 = f(axpy(u, h, {{a51, &k1}, {a52, &*k2}, {a53, &*k3}, {a54, &*k4}}))).has_value() &&
                  (k6 = f(axpy(u, h, {{a61, &k1}, {a62, &*k2}, {a63, &*k3}, {a64, &*k4}, {a65, &*k5}})))
                      .has_value();
    if (inside) {
      u1 = axpy(u, h, {{a71, &k1}, {a73, &*k3}, {a74, &*k4}, {a75, &*k5}, {a76, &*k6}});
      inside = (k7 = f(u1)).has_value();
    }
    if (!inside) {
      ++res.rejected;
      h *= 0.25;
      continue;
    }

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e = h * (e1 * k1[i] + e3 * (*k3)[i] + e4 * (*k4)[i] + e5 * (*k5)[i] + e6 * (*k6)[i] +
                            e7 * (*k7)[i]);
      const double r = e / scale(i, u, u1);
      err += r * r;
    }
    err = std::sqrt(err / 2.0);
    if (!std::isfinite(err)) {
      ++res.rejected;
      h *= 0.25;
      continue;
    }

    if (err > 1.0) {
      ++res.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }

    Step step;
    step.t0 = t;
    step.h = h;
    step.u0 = u;
    step.u1 = u1;
    for (int i = 0; i < 2; ++i) {
      const double du = u1[i] - u[i];
      const double bspl = h * k1[i] - du;
      step.rcont[0][i] = u[i];
      step.rcont[1][i] = du;
      step.rcont[2][i] = bspl;
      step.rcont[3][i] = du - h * (*k7)[i] - bspl;
      step.rcont[4][i] = h * (d1 * k1[i] + d3 * (*k3)[i] + d4 * (*k4)[i] + d5 * (*k5)[i] + d6 * (*k6)[i] +
                              d7 * (*k7)[i]);
    }
    ++res.accepted;
    t = last ? cfg.t_max : t + h;
    u = u1;
    k1 = *k7;

    if (auto stop = observe(step)) {
      res.terminal = *stop;
      return res;
    }
    if (!std::isfinite(u[0]) || !std::isfinite(u[1]) || norm(u) > cfg.divergence_radius) {
      res.terminal = Terminal::Diverged;
      return res;
    }
    if (cfg.convergence_speed > 0.0 && norm(k1) < cfg.convergence_speed) {
      res.terminal = Terminal::ConvergedToPoint;
      return res;
    }
    h *= err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
  }
  return res;
}

PlanarField model_field(const ModelParams& p) {
  return [p](const Vec2& u) -> std::optional<Vec2> {
    if (!(u[0] > 0.0)) return std::nullopt;
    return vector_field(p, State{u[0], u[1]});
  };
}

}  // namespace

std::string_view to_string(Terminal t) noexcept {
  switch (t) {
    case Terminal::HorizonReached: return "HorizonReached";
    case Terminal::ConvergedToPoint: return "ConvergedToPoint";
    case Terminal::HitDomainFloor: return "HitDomainFloor";
    case Terminal::Diverged: return "Diverged";
    case Terminal::StepSizeUnderflow: return "StepSizeUnderflow";
  }
  return "HorizonReached";
}

std::string_view to_string(CycleStability s) noexcept {
  switch (s) {
    case CycleStability::Attracting: return "Attracting";
    case CycleStability::Repelling: return "Repelling";
    case CycleStability::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string_view to_string(CycleOutcome o) noexcept {
  switch (o) {
    case CycleOutcome::CycleFound: return "CycleFound";
    case CycleOutcome::ConvergedToPoint: return "ConvergedToPoint";
    case CycleOutcome::Escaped: return "Escaped";
    case CycleOutcome::Unresolved: return "Unresolved";
  }
  return "Unresolved";
}

void validate(const IntegratorConfig& cfg) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "integrator setting " << name << " must be positive, got " << v;
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
  };
  positive(cfg.rel_tol, "rel_tol");
  positive(cfg.abs_tol, "abs_tol");
  positive(cfg.max_step, "max_step");
  positive(cfg.t_max, "t_max");
  positive(cfg.x_floor, "x_floor");
  positive(cfg.divergence_radius, "divergence_radius");
  if (!(cfg.convergence_speed >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "convergence_speed must be non-negative");
  }
}

Trajectory integrate_system(const PlanarField& f, const Vec2& u0, const IntegratorConfig& cfg) {
  validate(cfg);
  Trajectory tr;
  tr.samples.push_back({0.0, u0[0], u0[1]});
  Sample last = tr.samples.back();
  const RunResult r = run(f, u0, cfg, [&](const Step& s) -> std::optional<Terminal> {
    last = {s.t1(), s.u1[0], s.u1[1]};
    if (cfg.record) tr.samples.push_back(last);
    return std::nullopt;
  });
  if (!cfg.record && r.accepted > 0) tr.samples.push_back(last);
  tr.terminal = r.terminal;
  tr.steps_accepted = r.accepted;
  tr.steps_rejected = r.rejected;
  return tr;
}

Trajectory integrate(const ModelParams& p, const State& u0, const IntegratorConfig& cfg) {
  validate(p);
  validate(cfg);
  if (!(u0.x > cfg.x_floor) || !(u0.y >= 0.0) || !std::isfinite(u0.y)) {
    std::ostringstream os;
    os << "initial state (" << u0.x << ", " << u0.y << ") needs x > " << cfg.x_floor << " and y >= 0";
    throw Error(ErrorCode::DomainViolation, os.str());
  }
  Trajectory tr;
  tr.samples.push_back({0.0, u0.x, u0.y});
  Sample last = tr.samples.back();
  const RunResult r = run(model_field(p), u0.vec(), cfg, [&](const Step& s) -> std::optional<Terminal> {
    last = {s.t1(), s.u1[0], s.u1[1]};
    if (cfg.record) tr.samples.push_back(last);
    if (s.u1[0] < cfg.x_floor) return Terminal::HitDomainFloor;
    return std::nullopt;
  });
  if (!cfg.record && r.accepted > 0) tr.samples.push_back(last);
  tr.terminal = r.terminal;
  // Extinction drives the predator equation stiff (y/x blows up); a step
  // underflow that close to the floor is the floor.
  if (tr.terminal == Terminal::StepSizeUnderflow && tr.samples.back().x < 1e-4) {
    tr.terminal = Terminal::HitDomainFloor;
  }
  tr.steps_accepted = r.accepted;
  tr.steps_rejected = r.rejected;
  return tr;
}

CycleDetection detect_cycle(const ModelParams& p, const State& center, const IntegratorConfig& cfg,
                            const CycleOptions& opts) {
  validate(p);
  validate(cfg);
  if (opts.confirmations < 1 || opts.max_returns < opts.confirmations + 1 || !(opts.return_tolerance > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "cycle options need confirmations >= 1 and a positive tolerance");
  }
  const double cx = center.x;
  const double cy = center.y;
  const double min_radius = std::max(opts.collapse_radius, 10.0 * cfg.abs_tol);

  CycleDetection out;
  State start = opts.start.value_or(State{cx + 1e-2, cy});
  int returns = 0;
  double multiplier = std::numeric_limits<double>::quiet_NaN();

  enum class Stop { None, Found, Collapsed, Escaped, Restart, Budget };

  while (true) {
    std::vector<double> xs;   // section abscissae in this segment
    std::vector<double> ts;   // crossing times in this segment
    double lap_max = 0.0;
    double last_lap_max = 0.0;
    double restart_x = 0.0;
    Stop stop = Stop::None;

    auto on_step = [&](const Step& s) -> std::optional<Terminal> {
      if (s.u1[0] < cfg.x_floor) {
        stop = Stop::Escaped;
        return Terminal::HitDomainFloor;
      }
      for (int k = 1; k <= 8; ++k) {
        const Vec2 w = s.at_theta(k / 8.0);
        lap_max = std::max(lap_max, std::hypot(w[0] - cx, w[1] - cy));
      }
      if (std::hypot(s.u1[0] - cx, s.u1[1] - cy) > opts.escape_radius) {
        stop = Stop::Escaped;
        return Terminal::Diverged;
      }

      const double g0 = s.u0[1] - cy;
      const double g1 = s.u1[1] - cy;
      if (!((g0 < 0.0 && g1 >= 0.0) || (g0 > 0.0 && g1 <= 0.0))) return std::nullopt;

      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = s.at_theta(mid)[1] - cy;
        if ((gm < 0.0) == (g0 < 0.0)) lo = mid; else hi = mid;
      }
      const double theta = 0.5 * (lo + hi);
      const Vec2 pt = s.at_theta(theta);
      if (!(pt[0] > cx)) return std::nullopt;

      xs.push_back(pt[0]);
      ts.push_back(s.t0 + theta * s.h);
      out.section_crossings.push_back({pt[0], cy});
      last_lap_max = lap_max;
      lap_max = 0.0;
      ++returns;

      if (pt[0] - cx < min_radius) {
        stop = Stop::Collapsed;
        return Terminal::ConvergedToPoint;
      }
      const std::size_t n = xs.size();
      if (n >= 3) {
        const double dA = xs[n - 2] - xs[n - 3];
        const double dB = xs[n - 1] - xs[n - 2];
        if (dA * dB > 0.0 && std::abs(dB) > 100.0 * opts.return_tolerance) multiplier = dB / dA;
      }
      if (n >= static_cast<std::size_t>(opts.confirmations) + 1 && n >= 2) {
        bool settled = true;
        for (int k = 0; k < opts.confirmations; ++k) {
          const double d = std::abs(xs[n - 1 - k] - xs[n - 2 - k]);
          // Relative test too: a slowly collapsing spiral has tiny steps.
          if (d >= opts.return_tolerance || d > 1e-3 * (xs[n - 1 - k] - cx)) settled = false;
        }
        // Monotone steps with a ratio near one are a slow spiral, however
        // small: extrapolate the geometric tail to the fixed point.
        if (settled && n >= 3) {
          const double dA = xs[n - 2] - xs[n - 3];
          const double dB = xs[n - 1] - xs[n - 2];
          const double noise = 1e-3 * opts.return_tolerance;
          if (std::abs(dB) > noise && dA * dB > 0.0) {
            const double ratio = dB / dA;
            if (ratio >= 1.0 || std::abs(dB) * ratio / (1.0 - ratio) >= opts.return_tolerance) settled = false;
          }
        }
        // The first lap of a segment may start off the section's direction
        // of travel, so it does not count as a full period.
        if (settled && n >= 3) {
          stop = Stop::Found;
          return Terminal::HorizonReached;
        }
      }
      if (opts.accelerate && n >= 3) {
        const double x0 = xs[n - 3], x1 = xs[n - 2], x2 = xs[n - 1];
        const double dA = x1 - x0, dB = x2 - x1;
        const double ratio = dB / dA;
        if (dA * dB > 0.0 && ratio < 1.0 && std::abs(dB) >= opts.return_tolerance) {
          const double target = x2 + dB * ratio / (1.0 - ratio);
          if (target - cx > min_radius && std::abs(target - x2) <= std::abs(x2 - cx)) {
            restart_x = target;
            stop = Stop::Restart;
            return Terminal::HorizonReached;
          }
        }
      }
      if (returns >= opts.max_returns) {
        stop = Stop::Budget;
        return Terminal::HorizonReached;
      }
      return std::nullopt;
    };

    const RunResult r = run(model_field(p), start.vec(), cfg, on_step);

    if (stop == Stop::Restart) {
      start = State{restart_x, cy};
      continue;
    }
    if (returns == 0) {
      std::ostringstream os;
      os << "orbit from (" << start.x << ", " << start.y << ") never crossed the section y = " << cy
         << " (terminal " << to_string(r.terminal) << ")";
      throw Error(ErrorCode::NoCrossings, os.str());
    }

    switch (stop) {
      case Stop::Found: {
        out.found = true;
        out.outcome = CycleOutcome::CycleFound;
        const std::size_t n = ts.size();
        out.period = (ts[n - 1] - ts[n - 1 - opts.confirmations]) / opts.confirmations;
        out.amplitude = last_lap_max;
        out.multiplier = multiplier;
        if (std::isfinite(multiplier) && std::abs(multiplier) < 1.0 - 1e-6) {
          out.stability = cfg.reverse_time ? CycleStability::Repelling : CycleStability::Attracting;
        }
        break;
      }
      case Stop::Collapsed: out.outcome = CycleOutcome::ConvergedToPoint; break;
      case Stop::Escaped: out.outcome = CycleOutcome::Escaped; break;
      default:
        if (r.terminal == Terminal::ConvergedToPoint) {
          out.outcome = CycleOutcome::ConvergedToPoint;
        } else if (r.terminal == Terminal::Diverged || r.terminal == Terminal::HitDomainFloor) {
          out.outcome = CycleOutcome::Escaped;
        } else {
          out.outcome = CycleOutcome::Unresolved;
        }
        break;
    }
    if (!out.found) out.multiplier = multiplier;
    return out;
  }
}

namespace {

enum class ProbeFate { Converged, Escaped, Undecided };

struct ProbeResult {
  ProbeFate fate = ProbeFate::Undecided;
  int sign_changes_x = 0;
  int sign_changes_y = 0;
};

// Field of the displacement from e, so tolerances scale with the probe radius.
PlanarField displacement_field(const ModelParams& p, const State& e) {
  return [p, e](const Vec2& d) -> std::optional<Vec2> {
    const State u{e.x + d[0], e.y + d[1]};
    if (!(u.x > 0.0)) return std::nullopt;
    return vector_field(p, u);
  };
}

Vec2 probe_offset(const ProbeOptions& opts, int k) {
  // Offset keeps probes off the invariant lines y = 0, y = m, y = x.
  const double angle = 0.3 + 2.0 * std::numbers::pi * k / opts.directions;
  return {opts.radius * std::cos(angle), opts.radius * std::sin(angle)};
}

ProbeResult probe(const PlanarField& g, Vec2 start, bool reverse, const ProbeOptions& opts) {
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-9;
  cfg.abs_tol = opts.converged_radius * 1e-6;
  cfg.max_step = 1.0;
  cfg.t_max = opts.t_max;
  cfg.divergence_radius = 1.0;
  cfg.reverse_time = reverse;
  cfg.record = false;

  ProbeResult res;
  // Sign of each component, updated only while it is a visible fraction of
  // the radius: a component decaying far below the tolerance flips at random.
  std::array<bool, 2> positive{start[0] > 0.0, start[1] > 0.0};
  run(g, start, cfg, [&](const Step& s) -> std::optional<Terminal> {
    for (int k = 1; k <= 8; ++k) {
      const Vec2 d = s.at_theta(k / 8.0);
      const double r = norm(d);
      for (int i = 0; i < 2; ++i) {
        if (std::abs(d[i]) < 1e-3 * r || (d[i] > 0.0) == positive[i]) continue;
        positive[i] = d[i] > 0.0;
        ++(i == 0 ? res.sign_changes_x : res.sign_changes_y);
      }
      if (r < opts.converged_radius) {
        res.fate = ProbeFate::Converged;
        return Terminal::ConvergedToPoint;
      }
      if (r > opts.escaped_radius) {
        res.fate = ProbeFate::Escaped;
        return Terminal::Diverged;
      }
    }
    return std::nullopt;
  });
  return res;
}

// Linear part of the time-T flow map around e, measured by integrating
// opposite probe pairs (the half-difference cancels the quadratic terms)
// over T = 1 / (observed rate), short enough that rotation cannot alias.
std::optional<Mat2> flow_map(const PlanarField& g, const ProbeOptions& opts) {
  double rate = 0.0;
  for (int k = 0; k < opts.directions; ++k) {
    const Vec2 d = probe_offset(opts, k);
    const auto v = g(d);
    if (!v) return std::nullopt;
    rate = std::max(rate, norm(*v) / opts.radius);
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) return std::nullopt;

  IntegratorConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = opts.radius * 1e-14;
  cfg.t_max = 1.0 / rate;
  cfg.max_step = cfg.t_max;
  cfg.record = false;
  cfg.divergence_radius = 1.0;

  Mat2 yd{}, dd{};
  for (int k = 0; k < opts.directions; ++k) {
    const Vec2 d = probe_offset(opts, k);
    const Trajectory plus = integrate_system(g, d, cfg);
    const Trajectory minus = integrate_system(g, {-d[0], -d[1]}, cfg);
    if (plus.terminal != Terminal::HorizonReached || minus.terminal != Terminal::HorizonReached) return std::nullopt;
    const Vec2 y{(plus.samples.back().x - minus.samples.back().x) / 2, (plus.samples.back().y - minus.samples.back().y) / 2};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        yd[i][j] += y[i] * d[j];
        dd[i][j] += d[i] * d[j];
      }
    }
  }
  const double dd_det = det(dd);
  if (!(std::abs(dd_det) > 0.0)) return std::nullopt;
  const Mat2 dd_inv{{{dd[1][1] / dd_det, -dd[0][1] / dd_det}, {-dd[1][0] / dd_det, dd[0][0] / dd_det}}};
  Mat2 m{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m[i][j] = yd[i][0] * dd_inv[0][j] + yd[i][1] * dd_inv[1][j];
  return m;
}

// Spiral vs monotone approach; nullopt when the flow map is too close to a
// repeated eigenvalue or the long probes contradict it.
std::optional<bool> spirals(const PlanarField& g, const std::vector<ProbeResult>& runs, const ProbeOptions& opts) {
  const auto m = flow_map(g, opts);
  if (!m) return std::nullopt;
  const double tr = trace(*m);
  const double dt = det(*m);
  const double disc = tr * tr - 4.0 * dt;
  if (std::abs(disc) <= 1e-6 * (tr * tr + 4.0 * std::abs(dt))) return std::nullopt;
  const bool spiral = disc < 0.0;
  // Near a node each displacement component changes sign at most once.
  if (!spiral) {
    for (const ProbeResult& r : runs) {
      if (r.sign_changes_x >= 2 || r.sign_changes_y >= 2) return std::nullopt;
    }
  }
  return spiral;
}

}  // namespace

std::optional<StabilityKind> classify_by_simulation(const ModelParams& p, const Equilibrium& e,
                                                    const ProbeOptions& opts) {
  validate(p);
  if (opts.directions < 2 || !(opts.radius > opts.converged_radius) || !(opts.escaped_radius > opts.radius) ||
      !(opts.t_max > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "probe options need converged < radius < escaped, t_max > 0, 2+ directions");
  }
  const PlanarField g = displacement_field(p, e.location);
  auto sweep = [&](bool reverse) {
    std::vector<ProbeResult> runs;
    for (int k = 0; k < opts.directions; ++k) runs.push_back(probe(g, probe_offset(opts, k), reverse, opts));
    return runs;
  };
  auto all = [](const std::vector<ProbeResult>& runs, ProbeFate fate) {
    return std::all_of(runs.begin(), runs.end(), [&](const ProbeResult& r) { return r.fate == fate; });
  };

  const auto forward = sweep(false);
  if (all(forward, ProbeFate::Converged)) {
    const auto focus = spirals(g, forward, opts);
    if (!focus) return std::nullopt;
    return *focus ? StabilityKind::StableFocus : StabilityKind::StableNode;
  }
  if (!all(forward, ProbeFate::Escaped)) return std::nullopt;

  const auto backward = sweep(true);
  if (all(backward, ProbeFate::Converged)) {
    const auto focus = spirals(g, backward, opts);
    if (!focus) return std::nullopt;
    return *focus ? StabilityKind::UnstableFocus : StabilityKind::UnstableNode;
  }
  if (all(backward, ProbeFate::Escaped)) return StabilityKind::Saddle;
  return std::nullopt;
}

}  // namespace allee
