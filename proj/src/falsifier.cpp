#include "csf/falsifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "csf/kernels.hpp"
#include "csf/sampling.hpp"

namespace csf {

namespace {

bool any_positive(const std::vector<double>& x) {
  return std::any_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
}

/// Preconditions the sampler guarantees, re-checked for shrink candidates.
bool well_formed(Predicate p, const Sample& s) {
  if (!any_positive(s.x)) return false;
  switch (p) {
    case Predicate::RH:
    case Predicate::HRE:
      return s.x[s.i] > 0.0 && s.x[s.j] > 0.0;
    case Predicate::DC:
      return s.x[s.i] == 0.0;
    case Predicate::SM: {
      for (std::size_t k = 0; k < s.x.size(); ++k) {
        if (k != s.i && s.x[k] > 0.0) return !s.multiplicative || s.x[s.i] > 0.0;
      }
      return false;
    }
    case Predicate::OpponentDecreasing:
      return !s.multiplicative || s.x[s.i] > 0.0;
    case Predicate::DI:
      return any_positive(s.alt);
    default:
      return true;
  }
}

/// Distinct positive levels ranked onto 1, 2, 4; zeros stay zero. Returns
/// nullopt with more than three distinct positive levels.
std::optional<std::vector<double>> snap_pattern(const std::vector<double>& x) {
  std::set<double> levels;
  for (double v : x) {
    if (v > 0.0) levels.insert(v);
  }
  if (levels.size() > 3) return std::nullopt;
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] > 0.0) {
      const auto rank = std::distance(levels.begin(), levels.find(x[k]));
      out[k] = sampling::kGridLevels[static_cast<std::size_t>(rank) + 1];
    }
  }
  return out;
}

double nearest_positive_level(double v) {
  double best = 1.0;
  for (double level : {2.0, 4.0}) {
    if (std::fabs(std::log(v / level)) < std::fabs(std::log(v / best))) best = level;
  }
  return best;
}

class Shrinker {
 public:
  Shrinker(const ImpactSpec& spec, Counterexample ce) : spec_(spec), ce_(std::move(ce)) {}

  Counterexample run() {
    bool changed = true;
    for (int round = 0; changed && round < 8; ++round) {
      changed = false;
      if (auto snapped = snap_pattern(ce_.sample.x)) changed |= try_profile(*snapped);
      changed |= shrink_lambda();
      for (std::size_t k = 0; k < ce_.sample.x.size(); ++k) {
        const double v = ce_.sample.x[k];
        if (v <= 0.0) continue;
        std::vector<double> x = ce_.sample.x;
        x[k] = nearest_positive_level(v);
        changed |= try_profile(x);
      }
    }
    return ce_;
  }

 private:
  bool try_profile(const std::vector<double>& x) {
    if (x == ce_.sample.x) return false;
    Sample s = ce_.sample;
    s.x = x;
    if (ce_.predicate == Predicate::DI) s.alt[s.i] = x[s.i];
    return accept(s);
  }

  bool shrink_lambda() {
    const Predicate p = ce_.predicate;
    if (p != Predicate::HOM && p != Predicate::RH && p != Predicate::HRE) return false;
    for (double l : sampling::kGridLambdas) {
      if (ce_.sample.lambda == l) return false;
      Sample s = ce_.sample;
      s.lambda = l;
      if (accept(s)) return true;
    }
    return false;
  }

  bool accept(const Sample& s) {
    if (!well_formed(ce_.predicate, s)) return false;
    Outcome o = evaluate_sample(spec_, ce_.predicate, s, ce_.backend, ce_.tolerance);
    if (o.kind != OutcomeKind::Violated) return false;
    ce_.sample = s;
    ce_.outcome = std::move(o);
    ce_.shrunk = true;
    return true;
  }

  const ImpactSpec& spec_;
  Counterexample ce_;
};

}  // namespace

Counterexample shrink(const ImpactSpec& spec, const Counterexample& ce) { return Shrinker(spec, ce).run(); }

Outcome replay(const ImpactSpec& spec, const Counterexample& ce) {
  return evaluate_sample(spec, ce.predicate, ce.sample, ce.backend, ce.tolerance);
}

std::optional<Counterexample> falsify_predicate(const ImpactSpec& spec, Predicate p, const SamplingPlan& plan) {
  const AxiomVerdict v = check_predicate(spec, p, plan);
  if (v.status != VerdictStatus::Violated || !v.witness) return std::nullopt;
  Counterexample ce;
  ce.predicate = p;
  ce.spec_summary = spec.summary();
  ce.sample = v.witness->sample;
  ce.outcome = v.witness->outcome;
  ce.backend = v.backend;
  ce.tolerance = v.tolerance;
  return shrink(spec, ce);
}

std::optional<Counterexample> falsify(const ImpactSpec& spec, AxiomId axiom, const SamplingPlan& plan) {
  return falsify_predicate(spec, predicate_of(axiom), plan);
}

PaperExamples reproduce_paper_examples() {
  const ImpactSpec spec =
      ImpactSpec::power_plus_constant(std::vector<Rational>{1, 1, 1}, std::vector<Rational>{1, 1, 1}, 1.0);
  Sample s;
  s.x = {2.0, 1.0, 0.0};
  s.i = 0;
  s.j = 1;
  s.lambda = 2.0;

  PaperExamples out;
  auto add = [&](std::string name, Predicate p, const char* lhs, const char* rhs) {
    const auto r = kernels::evaluate_predicate<Rational>(spec, p, s, 0.0);
    ExampleCheck c;
    c.name = std::move(name);
    c.expected_lhs = lhs;
    c.expected_rhs = rhs;
    if (r.kind != OutcomeKind::Skipped) {
      c.lhs = format_rational(r.lhs);
      c.rhs = format_rational(r.rhs);
      c.pass = r.lhs == *parse_rational(lhs) && r.rhs == *parse_rational(rhs);
    } else {
      c.lhs = c.rhs = "skipped: " + r.skip_reason;
    }
    out.checks.push_back(std::move(c));
  };
  add("HOM", Predicate::HOM, "1/2", "5/9");
  add("RH", Predicate::RH, "3/2", "5/3");
  add("HRE", Predicate::HRE, "2", "2");
  out.pass = std::all_of(out.checks.begin(), out.checks.end(), [](const auto& c) { return c.pass; });
  return out;
}

}  // namespace csf
