#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "csf/axioms.hpp"

namespace csf::kernels {

template <class T>
struct SampleResult {
  OutcomeKind kind = OutcomeKind::Skipped;
  T lhs = 0;
  T rhs = 0;
  double gap = 0.0;
  std::string skip_reason;
};

/// One predicate on one sample. Evaluation failures (degenerate
/// denominators, undefined deviations, custom-domain overflow) come back as
/// Skipped rather than as exceptions so the result can cross an OpenMP
/// region.
template <class T>
SampleResult<T> evaluate_predicate(const ImpactSpec& spec, Predicate p, const Sample& s, double tolerance);

extern template SampleResult<double> evaluate_predicate<double>(const ImpactSpec&, Predicate, const Sample&, double);
extern template SampleResult<Rational> evaluate_predicate<Rational>(const ImpactSpec&, Predicate, const Sample&,
                                                                    double);

struct StreamScan {
  std::optional<std::size_t> first_violation;
  std::size_t samples_run = 0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
};

struct StreamInput {
  const ImpactSpec& spec;
  Predicate predicate;
  const SamplingPlan& plan;
  std::span<const Sample> grid;
  std::span<const double> lambdas;
  Backend backend;
  double tolerance;

  std::size_t total() const { return plan.samples; }
  Sample sample_at(std::size_t index) const;
};

/// Reference implementation: one sample at a time, stop at the first violation.
StreamScan scan_serial(const StreamInput& in);

/// OpenMP implementation: samples are classified in parallel chunks and
/// reduced in canonical order, so the result equals scan_serial exactly.
StreamScan scan_parallel(const StreamInput& in, std::size_t chunk = 256);

}  // namespace csf::kernels
