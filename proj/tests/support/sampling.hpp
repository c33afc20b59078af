#pragma once

#include <random>

#include "allee/model.hpp"

namespace allee::testing {

inline ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> q(0.05, 5.0), s(0.05, 5.0), h(0.001, 0.4), m(0.01, 0.99);
  return ModelParams{.q = q(rng), .s = s(rng), .h = h(rng), .m = m(rng)};
}

inline State random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(0.05, 1.5), y(0.0, 1.5);
  return State{x(rng), y(rng)};
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Relative difference with a floor on the scale.
inline double rel_diff(double a, double b, double floor = 1.0) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace allee::testing
