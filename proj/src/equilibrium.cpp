#include "csf/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "csf/csf.hpp"

namespace csf {

namespace {

constexpr std::size_t kUniformPoints = 256;
constexpr std::size_t kLogPoints = 64;
constexpr double kTieSlack = 1e-13;

}  // namespace

ContestGame::ContestGame(ImpactSpec spec, std::vector<double> v) : spec_(std::move(spec)), v_(std::move(v)) {
  if (v_.size() < 2 || v_.size() > kMaxContestants) {
    throw CsfError(ErrorCode::InvalidSpec, "a game needs between 2 and 64 valuations");
  }
  if (!spec_.size_generic() && spec_.size() != v_.size()) {
    throw CsfError(ErrorCode::InvalidSpec, "valuation count does not match the spec");
  }
  for (double vi : v_) {
    if (!(vi > 0.0) || !std::isfinite(vi)) throw CsfError(ErrorCode::InvalidSpec, "valuations must be positive");
  }
}

double ContestGame::payoff(std::size_t i, const std::vector<double>& x) const {
  const std::vector<double> f = impacts<double>(spec_, full_mask(x.size()), x);
  double total = 0.0;
  for (double fj : f) total += fj;
  const double p = total > 0.0 ? f[i] / total : 1.0 / static_cast<double>(x.size());
  return v_[i] * p - x[i];
}

namespace {

/// Payoff of i as a function of its own effort, with the opponents' impact
/// total precomputed.
struct OwnPayoff {
  const ImpactSpec& spec;
  std::size_t i;
  double v;
  double rest;

  double operator()(double t) const {
    const double f = spec.impact<double>(i, t);
    return v * f / (f + rest) - t;
  }

  /// d/dt, analytic for parametric families.
  double slope(double t) const {
    const double f = spec.impact<double>(i, t);
    double df;
    if (spec.is_custom()) {
      const double h = std::max(1e-7, 1e-6 * t);
      const double lo = std::max(0.0, t - h);
      df = (spec.impact<double>(i, t + h) - spec.impact<double>(i, lo)) / (t + h - lo);
    } else if (t == 0.0) {
      df = spec.r() < 1.0 ? INFINITY : spec.r() == 1.0 ? spec.a(i) : 0.0;
    } else {
      df = spec.a(i) * spec.r() * std::pow(t, spec.r() - 1.0);
    }
    const double s = f + rest;
    return v * df * rest / (s * s) - 1.0;
  }
};

std::vector<double> search_grid(double hi) {
  std::vector<double> g;
  g.reserve(kUniformPoints + kLogPoints + 1);
  for (std::size_t k = 0; k <= kUniformPoints; ++k) g.push_back(hi * static_cast<double>(k) / kUniformPoints);
  for (std::size_t k = 0; k < kLogPoints; ++k) {
    g.push_back(hi * std::pow(10.0, -9.0 + 9.0 * static_cast<double>(k) / kLogPoints));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

double golden_section(const OwnPayoff& g, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + b); ++it) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  return 0.5 * (a + b);
}

/// Root of the slope in [lo, hi] given slope(lo) > 0 > slope(hi).
double bisect_slope(const OwnPayoff& g, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g.slope(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double best_response(const ContestGame& game, std::size_t i, const std::vector<double>& x) {
  const ImpactSpec& spec = game.spec();
  double rest = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j != i) rest += spec.impact<double>(j, x[j]);
  }
  if (!(rest > 0.0)) return 0.0;
  const double hi = game.v()[i];
  const OwnPayoff g{spec, i, hi, rest};

  const std::vector<double> grid = search_grid(hi);
  std::size_t best = 0;
  double best_value = g(grid[0]);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double value = g(grid[k]);
    if (value > best_value + kTieSlack) {
      best = k;
      best_value = value;
    }
  }

  const double lo = grid[best == 0 ? 0 : best - 1];
  const double up = grid[std::min(best + 1, grid.size() - 1)];
  double candidate;
  const double slope_lo = g.slope(lo);
  const double slope_up = g.slope(up);
  if (slope_lo > 0.0 && slope_up < 0.0) {
    candidate = bisect_slope(g, lo, up);
  } else {
    candidate = golden_section(g, lo, up);
  }

  double answer = grid[best];
  const double candidate_value = g(candidate);
  if (candidate_value > best_value + kTieSlack || (candidate_value >= best_value - kTieSlack && candidate < answer)) {
    answer = candidate;
    best_value = std::max(best_value, candidate_value);
  }
  // Smaller efforts win ties, including the corner.
  if (g(0.0) >= best_value - kTieSlack) answer = 0.0;
  return answer;
}

std::string_view to_string(EquilibriumStatus s) {
  switch (s) {
    case EquilibriumStatus::Converged:
      return "Converged";
    case EquilibriumStatus::NotVerified:
      return "NotVerified";
    case EquilibriumStatus::NoConvergence:
      return "NoConvergence";
  }
  return "?";
}

double audit_gain(const ContestGame& game, const std::vector<double>& x, std::size_t points) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double base = game.payoff(i, x);
    std::vector<double> y = x;
    for (std::size_t k = 0; k < points; ++k) {
      y[i] = game.v()[i] * static_cast<double>(k) / static_cast<double>(points - 1);
      worst = std::max(worst, game.payoff(i, y) - base);
    }
  }
  return worst;
}

EquilibriumResult solve_nash(const ContestGame& game, const EquilibriumConfig& config) {
  const std::size_t n = game.size();
  EquilibriumResult out;
  out.existence_warning = game.spec().r() > 1.0;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = game.v()[i] / static_cast<double>(n + 1);

  std::vector<double> br(n);
  for (std::size_t it = 1; it <= config.max_iterations; ++it) {
#pragma omp parallel for schedule(static) if (n >= 8)
    for (long i = 0; i < static_cast<long>(n); ++i) {
      br[static_cast<std::size_t>(i)] = best_response(game, static_cast<std::size_t>(i), x);
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double next = x[i] + config.damping * (br[i] - x[i]);
      // Damping only approaches a corner geometrically.
      if (br[i] == 0.0 && next < config.tolerance) next = 0.0;
      change = std::max(change, std::fabs(next - x[i]));
      x[i] = next;
    }
    out.iterations = it;
    if (change < config.tolerance) {
      out.converged = true;
      break;
    }
  }

  out.x_star = x;
  for (std::size_t i = 0; i < n; ++i) {
    out.payoffs.push_back(game.payoff(i, x));
    out.boundary_flags.push_back(x[i] == 0.0);
  }
  if (out.converged) {
    out.max_audit_gain = audit_gain(game, x, config.audit_points);
    out.verified = out.max_audit_gain <= config.audit_slack;
    out.status = out.verified ? EquilibriumStatus::Converged : EquilibriumStatus::NotVerified;
  }
  return out;
}

ComparativeStatic comparative_static_b(std::size_t n, double r, double v, const std::vector<double>& b_grid,
                                       const EquilibriumConfig& config) {
  ComparativeStatic out;
  for (double b : b_grid) {
    const ContestGame game(ImpactSpec::symmetric_luck(b, r).with_size(n), std::vector<double>(n, v));
    StaticRow row;
    row.b = b;
    row.result = solve_nash(game, config);
    for (double xi : row.result.x_star) row.total += xi;
    out.rows.push_back(std::move(row));
  }
  std::vector<const StaticRow*> by_b;
  for (const auto& row : out.rows) by_b.push_back(&row);
  std::stable_sort(by_b.begin(), by_b.end(), [](const auto* l, const auto* r) { return l->b < r->b; });
  for (std::size_t k = 1; k < by_b.size(); ++k) {
    if (by_b[k]->total > by_b[k - 1]->total + 1e-9) out.monotone = false;
  }
  return out;
}

}  // namespace csf
