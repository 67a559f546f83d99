#include "csf/axioms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <json.hpp>

#include "csf/csf.hpp"
#include "csf/kernels.hpp"
#include "csf/sampling.hpp"

namespace csf {

namespace {

constexpr std::array<std::string_view, 16> kPredicateNames = {
    "SM", "LCA", "HOM", "RH",  "HRE", "ANY",           "NAR",         "DC",
    "CRI", "SP", "CP",  "PA",  "DI",  "Superadditive", "Subadditive", "OpponentDecreasing"};

constexpr std::uint64_t kLambdaStream = 0xA11CE;

std::string upper(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string_view to_string(AxiomId a) { return kPredicateNames[static_cast<std::size_t>(a)]; }

std::string_view to_string(Predicate p) { return kPredicateNames[static_cast<std::size_t>(p)]; }

std::optional<AxiomId> parse_axiom(std::string_view text) {
  const std::string key = upper(text);
  for (AxiomId a : kAllAxioms) {
    if (key == to_string(a)) return a;
  }
  return std::nullopt;
}

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::HoldsOnSamples:
      return "HoldsOnSamples";
    case VerdictStatus::Violated:
      return "Violated";
    case VerdictStatus::Inapplicable:
      return "Inapplicable";
  }
  return "?";
}

std::size_t min_contestants(Predicate p) {
  switch (p) {
    case Predicate::DC:
    case Predicate::CRI:
    case Predicate::NAR:
    case Predicate::SP:
    case Predicate::CP:
    case Predicate::Superadditive:
    case Predicate::Subadditive:
      return 3;
    default:
      return 2;
  }
}

void SamplingPlan::validate() const {
  auto fail = [](const std::string& msg) { throw CsfError(ErrorCode::InvalidSpec, "sampling plan: " + msg); };
  if (samples == 0) fail("samples must be positive");
  if (n_min < 2 || n_min > n_max || n_max > kMaxContestants) fail("contestant range must satisfy 2 <= n_min <= n_max <= 64");
  if (!(effort_min > 0.0) || !(effort_min < effort_max) || !std::isfinite(effort_max)) {
    fail("effort range must satisfy 0 < min < max < inf");
  }
  if (!(zero_probability >= 0.0 && zero_probability < 1.0)) fail("zero probability must lie in [0, 1)");
  for (double l : fixed_lambdas) {
    if (!(l > 0.0) || !std::isfinite(l)) fail("scale factors must be positive and finite");
  }
  if (drawn_lambdas > 0 && (!(lambda_draw_min > 0.0) || !(lambda_draw_min < lambda_draw_max))) {
    fail("scale factor draw range must satisfy 0 < min < max");
  }
  if (fixed_lambdas.empty() && drawn_lambdas == 0) fail("no scale factors");
  if (!(tolerance >= 0.0) || !(exact_compatible_tolerance >= 0.0)) fail("tolerances must be non-negative");
}

std::vector<double> SamplingPlan::lambda_set() const {
  std::vector<double> out = fixed_lambdas;
  for (std::size_t k = 0; k < drawn_lambdas; ++k) {
    auto rng = sampling::stream_engine(seed, kLambdaStream, k);
    out.push_back(sampling::log_uniform(rng, lambda_draw_min, lambda_draw_max));
  }
  return out;
}

double SamplingPlan::tolerance_for(const ImpactSpec& spec) const {
  if (backend == Backend::ExactRational) return 0.0;
  if (spec.exact_compatible()) return std::min(tolerance, exact_compatible_tolerance);
  return tolerance;
}

std::string witness_json(Predicate p, const Sample& s) {
  nlohmann::ordered_json j;
  j["x"] = s.x;
  auto pair = [&]() {
    j["i"] = s.i;
    j["j"] = s.j;
  };
  switch (p) {
    case Predicate::SM:
      j["i"] = s.i;
      j["bump"] = s.bump;
      j["mode"] = s.multiplicative ? "mul" : "add";
      break;
    case Predicate::OpponentDecreasing:
      pair();
      j["bump"] = s.bump;
      j["mode"] = s.multiplicative ? "mul" : "add";
      break;
    case Predicate::LCA:
      j["i"] = s.i;
      j["subset"] = members(s.subset);
      break;
    case Predicate::HOM:
      j["i"] = s.i;
      j["lambda"] = s.lambda;
      break;
    case Predicate::RH:
    case Predicate::HRE:
      pair();
      j["lambda"] = s.lambda;
      break;
    case Predicate::NAR:
      pair();
      j["k"] = s.k;
      j["share"] = s.share;
      break;
    case Predicate::PA:
      break;
    case Predicate::DI:
      j["i"] = s.i;
      j["alt"] = s.alt;
      break;
    default:
      pair();
      break;
  }
  return j.dump();
}

namespace {

template <class T>
Outcome to_outcome(const kernels::SampleResult<T>& r) {
  Outcome o;
  o.kind = r.kind;
  o.skip_reason = r.skip_reason;
  if (r.kind == OutcomeKind::Skipped) return o;
  o.lhs = to_double(r.lhs);
  o.rhs = to_double(r.rhs);
  o.gap = r.gap;
  if constexpr (is_exact_v<T>) {
    o.lhs_text = format_rational(r.lhs);
    o.rhs_text = format_rational(r.rhs);
  } else {
    o.lhs_text = format_shortest(r.lhs);
    o.rhs_text = format_shortest(r.rhs);
  }
  return o;
}

bool decomposition_predicate(Predicate p) { return p == Predicate::PA || p == Predicate::DI; }

}  // namespace

Outcome evaluate_sample(const ImpactSpec& spec, Predicate p, const Sample& s, Backend backend, double tolerance) {
  if (backend == Backend::ExactRational) {
    return to_outcome(kernels::evaluate_predicate<Rational>(spec, p, s, tolerance));
  }
  return to_outcome(kernels::evaluate_predicate<double>(spec, p, s, tolerance));
}

std::optional<std::string> inapplicable_reason(const ImpactSpec& spec, Predicate p, const SamplingPlan&) {
  if (decomposition_predicate(p)) {
    if (spec.is_custom()) return "the two-level decomposition needs a parametric family";
    const std::size_t n = spec.size_generic() ? 2 : spec.size();
    if (!(spec.total_luck<Rational>(n) > 0)) return "sum of b is zero, the null outcome has probability 0";
  }
  return std::nullopt;
}

namespace {

void require_backend(const ImpactSpec& spec, Backend backend) {
  if (!spec.supports(backend)) {
    throw CsfError(ErrorCode::BackendUnavailable,
                   "exact evaluation needs a parametric family with a positive integer r");
  }
}

AxiomVerdict blank_verdict(const ImpactSpec& spec, Predicate p, const SamplingPlan& plan) {
  AxiomVerdict v;
  v.predicate = p;
  v.backend = plan.backend;
  v.tolerance = plan.tolerance_for(spec);
  return v;
}

}  // namespace

AxiomVerdict check_predicate(const ImpactSpec& spec, Predicate p, const SamplingPlan& plan, Execution exec) {
  plan.validate();
  require_backend(spec, plan.backend);
  AxiomVerdict v = blank_verdict(spec, p, plan);
  if (auto reason = inapplicable_reason(spec, p, plan)) {
    v.status = VerdictStatus::Inapplicable;
    v.note = *reason;
    return v;
  }
  if (!sampling::size_range(spec, p, plan)) {
    // Too few contestants: every sample is skipped and the predicate holds
    // vacuously.
    v.status = VerdictStatus::HoldsOnSamples;
    v.samples_run = v.skipped = plan.samples;
    v.note = "vacuous, needs at least " + std::to_string(min_contestants(p)) + " contestants";
    return v;
  }
  const std::vector<Sample> grid = sampling::grid_stream(spec, p, plan);
  const std::vector<double> lambdas = plan.lambda_set();
  const kernels::StreamInput in{spec, p, plan, grid, lambdas, plan.backend, v.tolerance};
  const kernels::StreamScan scan = exec == Execution::Serial ? kernels::scan_serial(in) : kernels::scan_parallel(in);
  v.samples_run = scan.samples_run;
  v.evaluated = scan.evaluated;
  v.skipped = scan.skipped;
  if (scan.first_violation) {
    Witness w;
    w.sample = in.sample_at(*scan.first_violation);
    w.outcome = evaluate_sample(spec, p, w.sample, plan.backend, v.tolerance);
    v.witness = std::move(w);
    v.status = VerdictStatus::Violated;
  } else if (scan.evaluated == 0) {
    v.status = VerdictStatus::Inapplicable;
    v.note = "every sample was skipped";
  } else {
    v.status = VerdictStatus::HoldsOnSamples;
  }
  return v;
}

AxiomVerdict check_at_profile(const ImpactSpec& spec, Predicate p, const std::vector<double>& x,
                              const std::vector<double>& lambdas, const SamplingPlan& plan) {
  require_backend(spec, plan.backend);
  EffortProfile checked(x);
  (void)checked;
  AxiomVerdict v = blank_verdict(spec, p, plan);
  if (decomposition_predicate(p)) {
    if (auto reason = inapplicable_reason(spec, p, plan)) {
      v.status = VerdictStatus::Inapplicable;
      v.note = *reason;
      return v;
    }
  }
  std::vector<Sample> moves = sampling::moves_at(p, x, lambdas);
  for (std::size_t k = 0; k < moves.size(); ++k) {
    Sample& s = moves[k];
    s.index = k;
    const Outcome o = evaluate_sample(spec, p, s, plan.backend, v.tolerance);
    ++v.samples_run;
    if (o.kind == OutcomeKind::Skipped) {
      ++v.skipped;
      continue;
    }
    ++v.evaluated;
    if (o.kind == OutcomeKind::Violated) {
      v.status = VerdictStatus::Violated;
      v.witness = Witness{s, o};
      return v;
    }
  }
  if (v.evaluated == 0) {
    v.status = VerdictStatus::Inapplicable;
    v.note = "no applicable move at this profile";
  } else {
    v.status = VerdictStatus::HoldsOnSamples;
  }
  return v;
}

SpCpBoundary check_sp_cp_boundary(double r, double b, const SamplingPlan& plan) {
  const ImpactSpec spec = ImpactSpec::symmetric_luck(b, r);
  SpCpBoundary out;
  out.r = r;
  out.b = b;
  out.sp = check_predicate(spec, Predicate::SP, plan);
  out.cp = check_predicate(spec, Predicate::CP, plan);
  out.superadditive = check_predicate(spec, Predicate::Superadditive, plan);
  out.subadditive = check_predicate(spec, Predicate::Subadditive, plan);
  out.consistent = out.sp.status == out.superadditive.status && out.cp.status == out.subadditive.status;
  return out;
}

std::vector<CatalogueEntry> implication_catalogue() {
  std::vector<CatalogueEntry> out;
  out.push_back({"tullock", ImpactSpec::tullock(std::vector<double>{1.0, 2.0, 1.5}, 0.8)});
  out.push_back({"ratio", ImpactSpec::ratio()});
  out.push_back({"luck_tullock", ImpactSpec::power_plus_constant(std::vector<Rational>{1, 1, 1},
                                                                 std::vector<Rational>{1, 1, 1}, 1.0)});
  out.push_back({"linear_headstart", ImpactSpec::linear(std::vector<Rational>{1, 0, 2})});
  out.push_back({"symmetric_luck", ImpactSpec::symmetric_luck(Rational(1), 1.0)});
  out.push_back({"custom_exp", ImpactSpec::custom_symmetric(
                                   CustomImpact{[](double x) { return std::exp(x); }, "exp", 700.0})});
  out.push_back({"custom_log1p",
                 ImpactSpec::custom_symmetric(CustomImpact{[](double x) { return std::log1p(x); }, "log1p"})});
  return out;
}

const AxiomVerdict& FamilyImplications::verdict(Predicate p) const {
  for (const auto& v : verdicts) {
    if (v.predicate == p) return v;
  }
  throw CsfError(ErrorCode::InapplicableAxiom, "no verdict recorded for " + std::string(to_string(p)));
}

bool ImplicationReport::consistent() const {
  return std::all_of(families.begin(), families.end(), [](const auto& f) { return f.consistent(); });
}

ImplicationReport implication_suite(const SamplingPlan& plan) {
  static constexpr std::array<Predicate, 8> kProbed = {Predicate::SM,  Predicate::LCA, Predicate::HOM,
                                                       Predicate::RH,  Predicate::HRE, Predicate::DC,
                                                       Predicate::CRI, Predicate::OpponentDecreasing};
  ImplicationReport report;
  for (const auto& entry : implication_catalogue()) {
    FamilyImplications f;
    f.name = entry.name;
    f.spec_summary = entry.spec.summary();
    for (Predicate p : kProbed) f.verdicts.push_back(check_predicate(entry.spec, p, plan));
    auto holds = [&](Predicate p) { return f.verdict(p).status == VerdictStatus::HoldsOnSamples; };
    auto status = [&](Predicate p) { return f.verdict(p).status; };
    if (holds(Predicate::LCA)) f.dc_cri_agree = status(Predicate::DC) == status(Predicate::CRI);
    if (holds(Predicate::CRI)) f.hre_rh_agree = status(Predicate::HRE) == status(Predicate::RH);
    if (holds(Predicate::SM) && holds(Predicate::LCA) && holds(Predicate::HOM)) f.hom_implies_dc = holds(Predicate::DC);
    f.opponent_decreasing = status(Predicate::OpponentDecreasing) != VerdictStatus::Violated;
    report.families.push_back(std::move(f));
  }
  return report;
}

}  // namespace csf
