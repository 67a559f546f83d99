#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csf/contest.hpp"
#include "csf/impact.hpp"
#include "csf/numeric.hpp"

namespace csf {

/// Axioms on CSFs, each a samplable numerical predicate.
///
///   SM   x_i < x_i' and p_i(x) < 1  =>  p_i(x_i, x_-i) < p_i(x_i', x_-i)
///   LCA  p_i^N(x) = p_i^M(x^M) * sum_{j in M} p_j^N(x)
///   HOM  p_i(lambda x) = p_i(x)
///   RH   p_i/p_j invariant under x -> lambda x            (x_i, x_j > 0)
///   HRE  d_ij/d_ji invariant under x -> lambda x          (x_i, x_j > 0)
///   ANY  swapping x_i and x_j swaps p_i and p_j
///   NAR  p_k unchanged when x_i + x_j is redistributed between i and j
///   DC   x_i = 0  =>  p_j^N(x) = p_j^{N\i}(x^{N\i})
///   CRI  p_i(0, x_-j) = p_i(x) / [1 - p_j(x)]
///   SP   p_i + p_j <= p_i^{N\j}(x_i + x_j, ...)
///   CP   p_i + p_j >= p_i^{N\j}(x_i + x_j, ...)
///   PA   sum_i mu_i + mu_null = 1 and mu_null > 0          (on the decomposition)
///   DI   mu_i / (1 - sum_{j!=i} mu_j) depends on x_i only  (on the decomposition)
enum class AxiomId { SM, LCA, HOM, RH, HRE, ANY, NAR, DC, CRI, SP, CP, PA, DI };

inline constexpr std::array<AxiomId, 13> kAllAxioms = {
    AxiomId::SM, AxiomId::LCA, AxiomId::HOM, AxiomId::RH, AxiomId::HRE, AxiomId::ANY, AxiomId::NAR,
    AxiomId::DC, AxiomId::CRI, AxiomId::SP,  AxiomId::CP,  AxiomId::PA, AxiomId::DI};

/// Axioms plus the auxiliary probes used by the implication harnesses:
/// super/subadditivity of the shared impact function (the SP/CP equivalence)
/// and weak decrease of p_j in an opponent's effort.
enum class Predicate {
  SM, LCA, HOM, RH, HRE, ANY, NAR, DC, CRI, SP, CP, PA, DI,
  Superadditive, Subadditive, OpponentDecreasing,
};

constexpr Predicate predicate_of(AxiomId a) { return static_cast<Predicate>(static_cast<int>(a)); }

std::string_view to_string(AxiomId a);
std::string_view to_string(Predicate p);
std::optional<AxiomId> parse_axiom(std::string_view text);

/// Smallest contestant count on which the predicate is sampled.
std::size_t min_contestants(Predicate p);

struct SamplingPlan {
  std::uint64_t seed = 20240917;
  std::size_t samples = 10000;
  /// Leading samples taken from the deterministic small-integer grid.
  std::size_t grid_samples = 512;
  /// Contestant counts drawn for size-generic specs.
  std::size_t n_min = 2;
  std::size_t n_max = 6;
  double effort_min = 1e-3;
  double effort_max = 1e3;
  double zero_probability = 0.2;
  std::vector<double> fixed_lambdas{0.5, 2.0, 10.0};
  std::size_t drawn_lambdas = 3;
  double lambda_draw_min = 1e-2;
  double lambda_draw_max = 1e2;
  double tolerance = 1e-6;
  /// Float64 tolerance for specs that are also exactly evaluable (integer r).
  double exact_compatible_tolerance = 1e-9;
  Backend backend = Backend::Float64;

  void validate() const;
  /// fixed_lambdas followed by the seeded log-uniform draws.
  std::vector<double> lambda_set() const;
  /// Zero under the exact backend.
  double tolerance_for(const ImpactSpec& spec) const;
};

/// One sampled instance of a predicate. Only the fields relevant to the
/// predicate are meaningful.
struct Sample {
  std::size_t index = 0;
  bool from_grid = false;
  std::vector<double> x;
  std::vector<double> alt;  // DI: the second profile, sharing x_i
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double lambda = 1.0;
  double bump = 0.0;
  bool multiplicative = false;
  Mask subset = 0;
  double share = 0.0;  // NAR: x_i' = share * (x_i + x_j)

  bool operator==(const Sample&) const = default;
};

/// Compact JSON object with the fields the predicate uses.
std::string witness_json(Predicate p, const Sample& s);

enum class OutcomeKind { Holds, Violated, Skipped };

struct Outcome {
  OutcomeKind kind = OutcomeKind::Skipped;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  std::string lhs_text;  // exact "p/q" under the rational backend
  std::string rhs_text;
  std::string skip_reason;
};

enum class VerdictStatus { HoldsOnSamples, Violated, Inapplicable };
std::string_view to_string(VerdictStatus s);

struct Witness {
  Sample sample;
  Outcome outcome;
};

struct AxiomVerdict {
  Predicate predicate = Predicate::SM;
  VerdictStatus status = VerdictStatus::Inapplicable;
  std::optional<Witness> witness;
  std::size_t samples_run = 0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  Backend backend = Backend::Float64;
  double tolerance = 0.0;
  std::string note;
};

enum class Execution { Serial, Parallel };

/// Runs the plan's sample stream (grid prefix, then seeded random samples)
/// and stops at the first violation in canonical sample order. Serial and
/// Parallel give identical verdicts.
AxiomVerdict check_predicate(const ImpactSpec& spec, Predicate p, const SamplingPlan& plan,
                             Execution exec = Execution::Parallel);

inline AxiomVerdict check_axiom(const ImpactSpec& spec, AxiomId a, const SamplingPlan& plan,
                                Execution exec = Execution::Parallel) {
  return check_predicate(spec, predicate_of(a), plan, exec);
}

/// Every canonical move of the predicate at one fixed profile, using the
/// given scale factors for HOM/RH/HRE.
AxiomVerdict check_at_profile(const ImpactSpec& spec, Predicate p, const std::vector<double>& x,
                              const std::vector<double>& lambdas, const SamplingPlan& plan);

/// Re-evaluates one sample in isolation.
Outcome evaluate_sample(const ImpactSpec& spec, Predicate p, const Sample& s, Backend backend, double tolerance);

/// Returns the reason when the predicate cannot apply to the spec at all
/// (PA/DI on luckless or custom families), or nullopt. Predicates needing
/// more contestants than the spec has hold vacuously instead.
std::optional<std::string> inapplicable_reason(const ImpactSpec& spec, Predicate p, const SamplingPlan& plan);

struct SpCpBoundary {
  double r = 1.0;
  double b = 0.0;
  AxiomVerdict sp;
  AxiomVerdict cp;
  AxiomVerdict superadditive;
  AxiomVerdict subadditive;
  /// SP holds iff f superadditive, CP holds iff f subadditive, on the same
  /// samples.
  bool consistent = false;
};

/// SP/CP verdicts for the symmetric family f(x) = b + x^r.
SpCpBoundary check_sp_cp_boundary(double r, double b, const SamplingPlan& plan);

struct CatalogueEntry {
  std::string name;
  ImpactSpec spec;
};

/// Tullock, ratio, luck-Tullock, head-start, symmetric-luck and custom
/// exp/log probes.
std::vector<CatalogueEntry> implication_catalogue();

struct FamilyImplications {
  std::string name;
  std::string spec_summary;
  std::vector<AxiomVerdict> verdicts;  // SM, LCA, HOM, RH, HRE, DC, CRI, OpponentDecreasing
  bool dc_cri_agree = true;            // required when LCA holds
  bool hre_rh_agree = true;            // required when CRI holds
  bool hom_implies_dc = true;          // SM+LCA+HOM => DC
  bool opponent_decreasing = true;

  const AxiomVerdict& verdict(Predicate p) const;
  bool consistent() const { return dc_cri_agree && hre_rh_agree && hom_implies_dc && opponent_decreasing; }
};

struct ImplicationReport {
  std::vector<FamilyImplications> families;
  bool consistent() const;
};

ImplicationReport implication_suite(const SamplingPlan& plan);

}  // namespace csf
