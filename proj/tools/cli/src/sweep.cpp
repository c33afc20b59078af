#include "allee/cli/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "allee/error.hpp"

namespace allee::cli {
namespace {

struct BranchCounts {
  int prey_axis = 0;
  int allee_line = 0;
  int diagonal = 0;
};

void count(BranchCounts& c, Branch b) {
  switch (b) {
    case Branch::PreyAxis: ++c.prey_axis; break;
    case Branch::AlleeLine: ++c.allee_line; break;
    case Branch::Diagonal: ++c.diagonal; break;
  }
}

BranchCounts branch_counts(const AnalysisReport& r) {
  BranchCounts c;
  for (const Equilibrium& e : r.equilibria) {
    count(c, e.branch);
    for (const Tag& t : e.coincident) count(c, t.branch);
  }
  return c;
}

// Classification per label, including labels merged into another point.
std::array<std::string, 9> label_columns(const AnalysisReport& r) {
  std::array<std::string, 9> cols;
  for (const Equilibrium& e : r.equilibria) {
    cols[static_cast<int>(e.label) - 1] = to_string(e.classification);
    for (const Tag& t : e.coincident) cols[static_cast<int>(t.label) - 1] = to_string(e.classification);
  }
  return cols;
}

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

void validate(const SweepSpec& spec) {
  if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi) || !(spec.lo < spec.hi)) {
    std::ostringstream os;
    os << "sweep range needs lo < hi, got [" << spec.lo << ", " << spec.hi << "]";
    throw Error(ErrorCode::InvalidSweep, os.str());
  }
  if (spec.steps < 2) {
    throw Error(ErrorCode::InvalidSweep, "sweep needs at least 2 steps, got " + std::to_string(spec.steps));
  }
}

double grid_value(const SweepSpec& spec, int i) {
  return std::lerp(spec.lo, spec.hi, static_cast<double>(i) / (spec.steps - 1));
}

std::vector<SweepPoint> run_sweep(const SweepSpec& spec, unsigned threads) {
  validate(spec);
  std::vector<SweepPoint> points(static_cast<std::size_t>(spec.steps));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < spec.steps; i = next++) {
      SweepPoint& pt = points[static_cast<std::size_t>(i)];
      pt.value = grid_value(spec, i);
      ModelParams p = spec.fixed;
      parameter_ref(p, spec.parameter) = pt.value;
      try {
        pt.report = analyze(p);
      } catch (const Error& e) {
        pt.skip_reason = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min(threads, static_cast<unsigned>(spec.steps)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
  }
  return points;
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("ALLEE_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 4096) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string("ALLEE_LAB_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepPoint>& points) {
  const std::string name(to_string(spec.parameter));
  std::ostringstream os;
  os << name << ",n_prey_axis,n_allee_line,n_diagonal,E1,E2,E3,E4,E5,E6,E7,E8,E9,flags\n";
  for (const SweepPoint& pt : points) {
    if (!pt.report) continue;
    const BranchCounts c = branch_counts(*pt.report);
    os << format_double(pt.value) << ',' << c.prey_axis << ',' << c.allee_line << ',' << c.diagonal;
    for (const std::string& col : label_columns(*pt.report)) os << ',' << col;
    os << ',' << join(pt.report->bifurcation_flags, ';') << '\n';
  }
  for (const SweepPoint& pt : points) {
    if (!pt.report) os << "# skipped " << name << '=' << format_double(pt.value) << ": " << pt.skip_reason << '\n';
  }
  return os.str();
}

json sweep_json(const SweepSpec& spec, const std::vector<SweepPoint>& points) {
  json rows = json::array();
  json skipped = json::array();
  for (const SweepPoint& pt : points) {
    if (pt.report) {
      rows.push_back(to_json(*pt.report));
    } else {
      skipped.push_back({{"value", pt.value}, {"reason", pt.skip_reason}});
    }
  }
  return json{{"parameter", to_string(spec.parameter)},
              {"lo", spec.lo},
              {"hi", spec.hi},
              {"steps", spec.steps},
              {"rows", rows},
              {"skipped", skipped}};
}

}  // namespace allee::cli
