#pragma once

// Simulation oracle: adaptive Dormand-Prince 5(4) integration, limit-cycle
// detection on a Poincare section, and stability classification by probing
// trajectories around an equilibrium.

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "allee/equilibria.hpp"
#include "allee/model.hpp"

namespace allee {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.5;
  double t_max = 100.0;
  /// Integration stops with HitDomainFloor once x drops below this.
  double x_floor = 1e-8;
  /// Stop with ConvergedToPoint once |f(u)| falls below this; 0 disables.
  double convergence_speed = 0.0;
  /// Stop with Diverged once |u| exceeds this.
  double divergence_radius = 1e6;
  /// Integrate the negated field (samples still carry increasing t).
  bool reverse_time = false;
  /// Keep every accepted step in Trajectory::samples; otherwise only the endpoints.
  bool record = true;
};

/// Throws InvalidArgument unless every tolerance and length is positive.
void validate(const IntegratorConfig& cfg);

enum class Terminal { HorizonReached, ConvergedToPoint, HitDomainFloor, Diverged, StepSizeUnderflow };

std::string_view to_string(Terminal t) noexcept;

struct Sample {
  double t;
  double x;
  double y;
};

struct Trajectory {
  std::vector<Sample> samples;
  Terminal terminal = Terminal::HorizonReached;
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
};

/// Right-hand side of a planar autonomous system. Returning nullopt marks the
/// state as outside the domain; the stepper then retries with a smaller step.
using PlanarField = std::function<std::optional<Vec2>(const Vec2&)>;

/// Generic integration; cfg.x_floor is not applied.
Trajectory integrate_system(const PlanarField& f, const Vec2& u0, const IntegratorConfig& cfg);

/// Throws DomainViolation when u0.x <= x_floor or u0.y < 0.
Trajectory integrate(const ModelParams& p, const State& u0, const IntegratorConfig& cfg);

enum class CycleStability { Attracting, Repelling, Inconclusive };
enum class CycleOutcome { CycleFound, ConvergedToPoint, Escaped, Unresolved };

std::string_view to_string(CycleStability s) noexcept;
std::string_view to_string(CycleOutcome o) noexcept;

struct CycleOptions {
  /// Start point; defaults to center + (1e-2, 0).
  std::optional<State> start;
  int max_returns = 4000;
  /// Successive return points closer than this count as the same point.
  double return_tolerance = 1e-7;
  int confirmations = 3;
  /// Section radius below which the orbit has collapsed onto the center.
  double collapse_radius = 1e-6;
  /// Distance from the center beyond which the orbit has escaped.
  double escape_radius = 0.5;
  /// Use Steffensen steps on the return map when it is monotonically contracting.
  bool accelerate = true;
};

struct CycleDetection {
  bool found = false;
  double period = 0.0;
  double amplitude = 0.0;  ///< max distance from the center over one period
  std::vector<State> section_crossings;
  /// Estimated return-map multiplier in the integration direction.
  double multiplier = 0.0;
  /// Stability for the forward-time flow (a reversed-time attractor is Repelling).
  CycleStability stability = CycleStability::Inconclusive;
  CycleOutcome outcome = CycleOutcome::Unresolved;
};

/// Poincare section y = center.y, x > center.x, crossed upward in the
/// integration direction. Throws NoCrossings when the orbit never reaches
/// the section.
CycleDetection detect_cycle(const ModelParams& p, const State& center, const IntegratorConfig& cfg,
                            const CycleOptions& opts = {});

struct ProbeOptions {
  double radius = 1e-4;
  /// Two decades inside the start radius.
  double converged_radius = 1e-6;
  /// One decade outside: further out a probe may be caught by a neighbouring equilibrium.
  double escaped_radius = 1e-3;
  double t_max = 2e4;
  int directions = 8;
};

/// Observed class (StableNode/Focus, UnstableNode/Focus or Saddle), or
/// nullopt when the probes do not settle the question. Attraction and
/// repulsion come from the fate of the probes in forward and reversed time;
/// spiral vs monotone from the eigenvalues of the short-time flow map
/// measured on opposite probe pairs.
std::optional<StabilityKind> classify_by_simulation(const ModelParams& p, const Equilibrium& e,
                                                    const ProbeOptions& opts = {});

}  // namespace allee
