#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "csf/impact.hpp"

namespace csf {

/// Standard contest game: contestant i pays its effort x_i and wins v_i with
/// probability p_i(x).
class ContestGame {
 public:
  ContestGame(ImpactSpec spec, std::vector<double> v);

  const ImpactSpec& spec() const { return spec_; }
  const std::vector<double>& v() const { return v_; }
  std::size_t size() const { return v_.size(); }

  /// v_i p_i(x) - x_i. When every impact is zero the prize is split evenly.
  double payoff(std::size_t i, const std::vector<double>& x) const;

 private:
  ImpactSpec spec_;
  std::vector<double> v_;
};

/// Maximizer of the payoff over x_i in [0, v_i], ties to the smaller effort.
/// Returns 0 when no opponent has positive impact.
double best_response(const ContestGame& game, std::size_t i, const std::vector<double>& x);

struct EquilibriumConfig {
  double damping = 0.5;
  std::size_t max_iterations = 10000;
  double tolerance = 1e-8;
  std::size_t audit_points = 1000;
  double audit_slack = 1e-6;
};

enum class EquilibriumStatus { Converged, NotVerified, NoConvergence };
std::string_view to_string(EquilibriumStatus s);

struct EquilibriumResult {
  std::vector<double> x_star;  // last iterate when not converged
  std::vector<double> payoffs;
  bool converged = false;
  bool verified = false;
  std::size_t iterations = 0;
  std::vector<bool> boundary_flags;  // x_i = 0
  bool existence_warning = false;    // r > 1
  double max_audit_gain = 0.0;
  EquilibriumStatus status = EquilibriumStatus::NoConvergence;
};

/// Largest payoff gain any contestant gets by deviating to a point of an
/// evenly spaced grid over [0, v_i].
double audit_gain(const ContestGame& game, const std::vector<double>& x, std::size_t points);

/// Damped simultaneous best-response iteration from x_i = v_i / (n + 1),
/// audited on convergence.
EquilibriumResult solve_nash(const ContestGame& game, const EquilibriumConfig& config = {});

struct StaticRow {
  double b = 0.0;
  EquilibriumResult result;
  double total = 0.0;
};

struct ComparativeStatic {
  std::vector<StaticRow> rows;
  bool monotone = true;  // total effort weakly decreasing in b
};

/// Symmetric-luck game f(x) = b + x^r with common valuation v, one solve per b.
ComparativeStatic comparative_static_b(std::size_t n, double r, double v, const std::vector<double>& b_grid,
                                       const EquilibriumConfig& config = {});

}  // namespace csf
