#pragma once

#include <optional>
#include <span>
#include <vector>

#include "csf/contest.hpp"
#include "csf/error.hpp"
#include "csf/impact.hpp"
#include "csf/numeric.hpp"

namespace csf {

namespace detail {

inline std::size_t resolve_size(const ImpactSpec& spec, std::size_t profile_size) {
  if (!spec.size_generic() && spec.size() != profile_size) {
    throw CsfError(ErrorCode::InvalidProfile, "profile has " + std::to_string(profile_size) +
                                                  " efforts for a " + std::to_string(spec.size()) +
                                                  "-contestant spec");
  }
  if (profile_size < 2 || profile_size > kMaxContestants) {
    throw CsfError(ErrorCode::InvalidProfile, "profile size must be in [2, 64]");
  }
  return profile_size;
}

template <class T>
void require_efforts(std::span<const T> x) {
  for (const T& v : x) {
    if constexpr (is_exact_v<T>) {
      if (v < 0) throw CsfError(ErrorCode::InvalidProfile, "efforts must be non-negative");
    } else {
      if (!std::isfinite(v) || v < 0.0) {
        throw CsfError(ErrorCode::InvalidProfile, "efforts must be finite and non-negative");
      }
    }
  }
}

}  // namespace detail

/// Impact values f_j(x_j) for every j in m (zero outside m).
template <class T>
std::vector<T> impacts(const ImpactSpec& spec, Mask m, std::span<const T> x) {
  const std::size_t n = detail::resolve_size(spec, x.size());
  detail::require_efforts(x);
  std::vector<T> f(n, T(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (contains(m, j)) f[j] = spec.impact<T>(j, x[j]);
  }
  return f;
}

/// p^M(x^M) for the sub-contest m. x is the full-length profile; the result is
/// full-length too, with zeros outside m.
///
/// Throws InvalidSubset when |m| < 2 and DegenerateDenominator when every
/// member of m has zero impact.
template <class T>
std::vector<T> evaluate(const ImpactSpec& spec, Mask m, std::span<const T> x) {
  const std::size_t n = detail::resolve_size(spec, x.size());
  require_subcontest(m, n);
  std::vector<T> p = impacts(spec, m, x);
  T total = 0;
  for (std::size_t j = 0; j < n; ++j) total += p[j];
  if (!(total > 0)) {
    throw CsfError(ErrorCode::DegenerateDenominator, "every member of the sub-contest has zero impact");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (contains(m, j)) p[j] /= total;
  }
  return p;
}

template <class T>
std::vector<T> evaluate(const ImpactSpec& spec, std::span<const T> x) {
  return evaluate(spec, full_mask(x.size()), x);
}

inline std::vector<double> evaluate(const ImpactSpec& spec, const EffortProfile& x) {
  return evaluate<double>(spec, x.values());
}

/// The spec of the sub-contest m, re-indexed so that member k of m becomes
/// contestant k.
inline ImpactSpec restrict(const ImpactSpec& spec, Mask m) { return spec.restricted(m); }

/// d_ij(x) = [p_j(0, x_-i) - p_j(x)] / p_j(0, x_-i), straight from probabilities.
///
/// Throws UndefinedDeviation when p_j(0, x_-i) = 0.
template <class T>
T deviation(const ImpactSpec& spec, std::size_t i, std::size_t j, std::span<const T> x) {
  const std::size_t n = detail::resolve_size(spec, x.size());
  if (i == j || i >= n || j >= n) {
    throw CsfError(ErrorCode::InvalidSubset, "deviation needs two distinct contestants");
  }
  std::vector<T> inactive(x.begin(), x.end());
  inactive[i] = 0;
  const T before = evaluate<T>(spec, inactive)[j];
  if (!(before > 0)) {
    throw CsfError(ErrorCode::UndefinedDeviation, "p_j(0, x_-i) = 0, deviation undefined");
  }
  const T after = evaluate<T>(spec, x)[j];
  return T((before - after) / before);
}

/// [f_i(x_i) - f_i(0)] / sum_k f_k(x_k): the externality of i on any opponent
/// for a logit-form CSF, without the cancellation of the direct definition.
template <class T>
T effort_share(const ImpactSpec& spec, std::size_t i, std::span<const T> x) {
  const std::size_t n = detail::resolve_size(spec, x.size());
  std::vector<T> f = impacts(spec, full_mask(n), x);
  T total = 0;
  for (const T& v : f) total += v;
  if (!(total > 0)) throw CsfError(ErrorCode::DegenerateDenominator, "all impacts are zero");
  return T(spec.gain<T>(i, x[i]) / total);
}

/// Two-level split of the allocation: mu_i is secured by effort, mu_null is the
/// share left to luck. alpha_i = a_i / sum_k b_k when the family has luck.
template <class T>
struct Decomposition {
  std::vector<T> mu;
  T mu_null = 0;
  std::optional<std::vector<T>> alpha;
};

/// alpha_i = a_i / sum_k b_k. Throws LucklessFamily when sum_k b_k = 0.
template <class T>
std::vector<T> blavatskyy_params(const ImpactSpec& spec, std::size_t n) {
  if (spec.is_custom()) throw CsfError(ErrorCode::InvalidSpec, "alpha needs a parametric family");
  if (!spec.size_generic() && spec.size() != n) {
    throw CsfError(ErrorCode::InvalidSpec, "contestant count does not match the spec");
  }
  const T luck = spec.total_luck<T>(n);
  if (!(luck > 0)) throw CsfError(ErrorCode::LucklessFamily, "sum of b is zero, no tie outcome exists");
  std::vector<T> alpha(n);
  for (std::size_t i = 0; i < n; ++i) alpha[i] = spec.a_as<T>(i) / luck;
  return alpha;
}

template <class T>
std::vector<T> blavatskyy_params(const ImpactSpec& spec) {
  if (spec.size_generic()) throw CsfError(ErrorCode::InvalidSpec, "size-generic spec: pass n explicitly");
  return blavatskyy_params<T>(spec, spec.size());
}

template <class T>
Decomposition<T> decompose_two_level(const ImpactSpec& spec, std::span<const T> x) {
  if (spec.is_custom()) {
    throw CsfError(ErrorCode::InvalidSpec, "two-level decomposition is defined for parametric families only");
  }
  const std::size_t n = detail::resolve_size(spec, x.size());
  detail::require_efforts(x);
  bool active = false;
  for (const T& v : x) active = active || v > 0;
  if (!active) throw CsfError(ErrorCode::InvalidProfile, "the all-zero profile is outside the domain");

  std::vector<T> f = impacts(spec, full_mask(n), x);
  T total = 0;
  for (const T& v : f) total += v;
  if (!(total > 0)) throw CsfError(ErrorCode::DegenerateDenominator, "all impacts are zero");

  Decomposition<T> out;
  out.mu.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.mu[i] = spec.gain<T>(i, x[i]) / total;
  const T luck = spec.total_luck<T>(n);
  out.mu_null = luck / total;
  if (luck > 0) out.alpha = blavatskyy_params<T>(spec, n);
  return out;
}

}  // namespace csf
