#pragma once

#include <cmath>
#include <vector>

#include "csf/equilibrium.hpp"

namespace csf::testing {

/// Two-player brute force: best responses restricted to a 1e-3 grid, iterated
/// to a fixed point of the composed grid best response.
inline std::vector<double> grid_nash_oracle(const ContestGame& game) {
  constexpr int kSteps = 1000;
  auto grid_br = [&](std::size_t i, double other) {
    std::vector<double> x(2, other);
    double best = 0.0;
    double best_value = -INFINITY;
    for (int k = 0; k <= kSteps; ++k) {
      x[i] = game.v()[i] * k / kSteps;
      const double value = game.payoff(i, x);
      if (value > best_value + 1e-12) {
        best_value = value;
        best = x[i];
      }
    }
    return best;
  };
  double y = 0.5;
  for (int it = 0; it < 200; ++it) {
    const double next = grid_br(1, grid_br(0, y));
    if (std::fabs(next - y) < 1e-12) break;
    y = next;
  }
  return {grid_br(0, y), y};
}

}  // namespace csf::testing
