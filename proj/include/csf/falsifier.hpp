#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csf/axioms.hpp"

namespace csf {

struct Counterexample {
  Predicate predicate = Predicate::SM;
  std::string spec_summary;
  Sample sample;
  Outcome outcome;
  Backend backend = Backend::Float64;
  double tolerance = 0.0;
  bool shrunk = false;
};

/// First violation of the plan's sample stream, shrunk toward the integer
/// grid. nullopt when the whole plan holds or the axiom does not apply.
std::optional<Counterexample> falsify(const ImpactSpec& spec, AxiomId axiom, const SamplingPlan& plan);
std::optional<Counterexample> falsify_predicate(const ImpactSpec& spec, Predicate p, const SamplingPlan& plan);

/// Greedy moves toward {0,1,2,4} efforts and lambda in {2, 1/2}, each kept
/// only while the sample still violates. Deterministic; a grid witness is a
/// fixed point.
Counterexample shrink(const ImpactSpec& spec, const Counterexample& ce);

/// Re-evaluates the witness in isolation.
Outcome replay(const ImpactSpec& spec, const Counterexample& ce);

struct ExampleCheck {
  std::string name;
  std::string lhs;
  std::string rhs;
  std::string expected_lhs;
  std::string expected_rhs;
  bool pass = false;
};

struct PaperExamples {
  std::vector<ExampleCheck> checks;  // HOM, RH, HRE
  bool pass = false;
};

/// The three-contestant luck example a = b = (1,1,1), r = 1 at x = (2,1,0),
/// lambda = 2, evaluated with exact rationals.
PaperExamples reproduce_paper_examples();

}  // namespace csf
