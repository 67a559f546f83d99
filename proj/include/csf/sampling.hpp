#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "csf/axioms.hpp"

namespace csf::sampling {

/// Effort levels of the deterministic grid.
inline constexpr std::array<double, 4> kGridLevels = {0.0, 1.0, 2.0, 4.0};
/// Scale factors tried on the grid, in order.
inline constexpr std::array<double, 2> kGridLambdas = {2.0, 0.5};

/// All non-zero profiles in {0,1,2,4}^n ordered by: more distinct levels
/// first, then smaller maximum, then lexicographically descending. For n = 3
/// the first profile is (2,1,0).
std::vector<std::vector<double>> grid_profiles(std::size_t n);

/// Contestant counts the predicate is sampled on for this spec; nullopt when
/// none qualifies.
std::optional<std::pair<std::size_t, std::size_t>> size_range(const ImpactSpec& spec, Predicate p,
                                                              const SamplingPlan& plan);

/// Canonical moves of the predicate at profile x.
std::vector<Sample> moves_at(Predicate p, const std::vector<double>& x, std::span<const double> lambdas);

/// Grid prefix of the sample stream, at most plan.grid_samples long.
std::vector<Sample> grid_stream(const ImpactSpec& spec, Predicate p, const SamplingPlan& plan);

/// Random sample number `index` of the stream; a pure function of
/// (plan.seed, p, index).
Sample random_sample(const ImpactSpec& spec, Predicate p, const SamplingPlan& plan,
                     std::span<const double> lambdas, std::size_t index);

/// Engine seeded from (seed, stream, index) through splitmix64 finalisation.
std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

/// Log-uniform on [lo, hi].
double log_uniform(std::mt19937_64& rng, double lo, double hi);

}  // namespace csf::sampling
