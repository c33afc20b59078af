#pragma once

// One-parameter sweeps: the equilibrium portrait evaluated on a grid, for
// plotting branches against the swept parameter.

#include <optional>
#include <string>
#include <vector>

#include "allee/cli/report.hpp"

namespace allee::cli {

struct SweepSpec {
  Parameter parameter = Parameter::h;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
  /// Values of the other three parameters; the swept entry is overwritten.
  ModelParams fixed;
};

/// Throws InvalidSweep unless lo < hi (both finite) and steps >= 2.
void validate(const SweepSpec& spec);

/// Grid value i of steps, exact at both ends.
double grid_value(const SweepSpec& spec, int i);

struct SweepPoint {
  double value = 0.0;
  std::optional<AnalysisReport> report;  ///< empty when the point was skipped
  std::string skip_reason;
};

/// Evaluates every grid point, `threads` at a time. Results are in grid
/// order whatever the thread count.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec, unsigned threads);

/// ALLEE_LAB_THREADS when set (must be a positive integer), otherwise the
/// hardware concurrency.
unsigned sweep_threads();

/// Header: <param>,n_prey_axis,n_allee_line,n_diagonal,E1..E9,flags.
/// Skipped points follow the rows as "# skipped <param>=<value>: <reason>".
std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepPoint>& points);
json sweep_json(const SweepSpec& spec, const std::vector<SweepPoint>& points);

}  // namespace allee::cli
