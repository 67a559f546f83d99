#include <doctest.h>

#include <cmath>

#include "csf/axioms.hpp"
#include "csf/sampling.hpp"

using namespace csf;

namespace {

ImpactSpec luck111() {
  return ImpactSpec::power_plus_constant(std::vector<Rational>{1, 1, 1}, std::vector<Rational>{1, 1, 1}, 1.0);
}

ImpactSpec exp_spec() {
  return ImpactSpec::custom_symmetric(CustomImpact{[](double x) { return std::exp(x); }, "exp", 700.0});
}

SamplingPlan small_plan(std::size_t samples = 2000) {
  SamplingPlan plan;
  plan.samples = samples;
  return plan;
}

Sample make(std::vector<double> x, std::size_t i, std::size_t j = 0) {
  Sample s;
  s.x = std::move(x);
  s.i = i;
  s.j = j;
  return s;
}

}  // namespace

TEST_CASE("axiom names round-trip") {
  for (AxiomId a : kAllAxioms) CHECK(parse_axiom(to_string(a)) == a);
  CHECK(parse_axiom("hom") == AxiomId::HOM);
  CHECK_FALSE(parse_axiom("XYZ"));
}

TEST_CASE("grid order starts at (2,1,0) for three contestants") {
  const auto grid = sampling::grid_profiles(3);
  REQUIRE(grid.size() == 63);
  CHECK(grid.front() == std::vector<double>{2.0, 1.0, 0.0});
  CHECK(sampling::grid_profiles(9).empty());
}

TEST_CASE("luck-Tullock violates HOM and RH at the grid witness") {
  const ImpactSpec spec = luck111();
  SamplingPlan plan = small_plan();

  const AxiomVerdict hom = check_axiom(spec, AxiomId::HOM, plan);
  REQUIRE(hom.status == VerdictStatus::Violated);
  REQUIRE(hom.witness);
  CHECK(hom.witness->sample.x == std::vector<double>{2.0, 1.0, 0.0});
  CHECK(hom.witness->sample.lambda == 2.0);
  CHECK(hom.witness->outcome.lhs == doctest::Approx(0.5));
  CHECK(hom.witness->outcome.rhs == doctest::Approx(5.0 / 9.0));

  const AxiomVerdict rh = check_axiom(spec, AxiomId::RH, plan);
  REQUIRE(rh.status == VerdictStatus::Violated);
  CHECK(rh.witness->sample.x == std::vector<double>{2.0, 1.0, 0.0});
  CHECK(rh.witness->outcome.lhs == doctest::Approx(1.5));
  CHECK(rh.witness->outcome.rhs == doctest::Approx(5.0 / 3.0));

  plan.backend = Backend::ExactRational;
  const AxiomVerdict exact = check_axiom(spec, AxiomId::HOM, plan);
  REQUIRE(exact.witness);
  CHECK(exact.tolerance == 0.0);
  CHECK(exact.witness->outcome.lhs_text == "1/2");
  CHECK(exact.witness->outcome.rhs_text == "5/9");

  CHECK(check_axiom(spec, AxiomId::HRE, plan).status == VerdictStatus::HoldsOnSamples);
}

TEST_CASE("DC: Tullock holds, luck family violated") {
  const ImpactSpec two = ImpactSpec::tullock(std::vector<double>{1.0, 2.0}, 1.0);
  const AxiomVerdict vacuous = check_axiom(two, AxiomId::DC, small_plan());
  CHECK(vacuous.status == VerdictStatus::HoldsOnSamples);
  CHECK(vacuous.evaluated == 0);
  CHECK(vacuous.skipped == 2000);

  const ImpactSpec three = ImpactSpec::tullock(std::vector<double>{1.0, 2.0, 1.0}, 1.0);
  CHECK(check_axiom(three, AxiomId::DC, small_plan()).status == VerdictStatus::HoldsOnSamples);

  const AxiomVerdict dc = check_axiom(luck111(), AxiomId::DC, small_plan());
  REQUIRE(dc.status == VerdictStatus::Violated);
  CHECK(dc.witness->sample.x == std::vector<double>{2.0, 1.0, 0.0});
  CHECK(dc.witness->sample.i == 2);
  CHECK(dc.witness->sample.j == 0);
  CHECK(dc.witness->outcome.lhs == doctest::Approx(0.5));
  CHECK(dc.witness->outcome.rhs == doctest::Approx(0.6));
}

TEST_CASE("NAR point checks") {
  Sample s = make({2.0, 1.0, 0.0}, 0, 1);
  s.k = 2;
  s.share = 1.0;
  const ImpactSpec headstart = ImpactSpec::linear(std::vector<Rational>{1, 0, 2});
  const Outcome held = evaluate_sample(headstart, Predicate::NAR, s, Backend::ExactRational, 0.0);
  CHECK(held.kind == OutcomeKind::Holds);
  CHECK(held.lhs_text == "1/3");
  CHECK(held.rhs_text == "1/3");
  CHECK(check_axiom(headstart, AxiomId::NAR, small_plan()).status == VerdictStatus::HoldsOnSamples);

  Sample t = make({2.0, 1.0, 1.0}, 0, 1);
  t.k = 2;
  t.share = 1.0;
  const ImpactSpec tullock2 = ImpactSpec::tullock(std::vector<Rational>{1, 1, 1}, 2.0);
  const Outcome broken = evaluate_sample(tullock2, Predicate::NAR, t, Backend::ExactRational, 0.0);
  CHECK(broken.kind == OutcomeKind::Violated);
  CHECK(broken.lhs_text == "1/6");
  CHECK(broken.rhs_text == "1/10");
  CHECK(check_axiom(tullock2, AxiomId::NAR, small_plan()).status == VerdictStatus::Violated);
}

TEST_CASE("SP/CP point checks") {
  const Sample s = make({1.0, 1.0, 1.0}, 0, 1);

  const ImpactSpec r2 = ImpactSpec::tullock(std::vector<Rational>{1, 1, 1}, 2.0);
  const Outcome sp2 = evaluate_sample(r2, Predicate::SP, s, Backend::ExactRational, 0.0);
  CHECK(sp2.kind == OutcomeKind::Holds);
  CHECK(sp2.lhs_text == "2/3");
  CHECK(sp2.rhs_text == "4/5");
  CHECK(evaluate_sample(r2, Predicate::CP, s, Backend::ExactRational, 0.0).kind == OutcomeKind::Violated);

  const ImpactSpec half = ImpactSpec::tullock(std::vector<double>{1.0, 1.0, 1.0}, 0.5);
  const Outcome sp_half = evaluate_sample(half, Predicate::SP, s, Backend::Float64, 1e-6);
  CHECK(sp_half.kind == OutcomeKind::Violated);
  CHECK(sp_half.rhs == doctest::Approx(std::sqrt(2.0) / (std::sqrt(2.0) + 1.0)));
  CHECK(evaluate_sample(half, Predicate::CP, s, Backend::Float64, 1e-6).kind == OutcomeKind::Holds);

  const ImpactSpec luck = ImpactSpec::symmetric_luck(Rational(1), 1.0).with_size(3);
  const Outcome cp = evaluate_sample(luck, Predicate::CP, s, Backend::ExactRational, 0.0);
  CHECK(cp.kind == OutcomeKind::Holds);
  CHECK(cp.lhs_text == "2/3");
  CHECK(cp.rhs_text == "3/5");
}

TEST_CASE("HRE fails for the exponential impact") {
  Sample s = make({1.0, 2.0, 1.0}, 0, 1);
  s.lambda = 2.0;
  const Outcome o = evaluate_sample(exp_spec(), Predicate::HRE, s, Backend::Float64, 1e-6);
  CHECK(o.kind == OutcomeKind::Violated);
  const double e = std::exp(1.0);
  CHECK(o.lhs == doctest::Approx(1.0 / (e + 1.0)));
  CHECK(o.rhs == doctest::Approx(1.0 / (e * e + 1.0)));
  CHECK(check_axiom(exp_spec(), AxiomId::HRE, small_plan()).status == VerdictStatus::Violated);
}

TEST_CASE("symmetric luck passes ANY") {
  const ImpactSpec spec = ImpactSpec::symmetric_luck(1.0, 1.0);
  CHECK(check_axiom(spec, AxiomId::ANY, small_plan()).status == VerdictStatus::HoldsOnSamples);
  const Sample s = make({1.0, 2.0}, 0, 1);
  CHECK(evaluate_sample(spec, Predicate::ANY, s, Backend::Float64, 1e-9).kind == OutcomeKind::Holds);
}

TEST_CASE("opponent effort lowers p_j") {
  Sample s = make({1.0, 1.0, 1.0}, 0, 1);
  s.bump = 1.0;
  const Outcome o = evaluate_sample(luck111(), Predicate::OpponentDecreasing, s, Backend::ExactRational, 0.0);
  CHECK(o.kind == OutcomeKind::Holds);
  CHECK(o.lhs_text == "1/3");
  CHECK(o.rhs_text == "2/7");
}

TEST_CASE("PA and DI") {
  CHECK(check_axiom(luck111(), AxiomId::PA, small_plan()).status == VerdictStatus::HoldsOnSamples);
  CHECK(check_axiom(luck111(), AxiomId::DI, small_plan()).status == VerdictStatus::HoldsOnSamples);
  const ImpactSpec tullock = ImpactSpec::tullock(std::vector<double>{1.0, 2.0}, 1.0);
  const AxiomVerdict pa = check_axiom(tullock, AxiomId::PA, small_plan());
  CHECK(pa.status == VerdictStatus::Inapplicable);
  CHECK_FALSE(pa.note.empty());
  CHECK(check_axiom(exp_spec(), AxiomId::DI, small_plan()).status == VerdictStatus::Inapplicable);
}

TEST_CASE("exact backend refuses float-only specs") {
  SamplingPlan plan = small_plan();
  plan.backend = Backend::ExactRational;
  try {
    check_axiom(exp_spec(), AxiomId::SM, plan);
    FAIL("expected BackendUnavailable");
  } catch (const CsfError& e) {
    CHECK(e.code() == ErrorCode::BackendUnavailable);
  }
}

TEST_CASE("check_at_profile walks the canonical moves") {
  const AxiomVerdict v = check_at_profile(luck111(), Predicate::HOM, {2.0, 1.0, 0.0}, {2.0}, small_plan());
  REQUIRE(v.status == VerdictStatus::Violated);
  CHECK(v.witness->sample.i == 0);
  const AxiomVerdict ok = check_at_profile(luck111(), Predicate::HRE, {2.0, 1.0, 0.0}, {2.0}, small_plan());
  CHECK(ok.status == VerdictStatus::HoldsOnSamples);
}

TEST_CASE("SP/CP boundary table") {
  const SamplingPlan plan = small_plan(3000);
  struct Cell {
    double r, b;
    VerdictStatus sp, cp;
  };
  const auto H = VerdictStatus::HoldsOnSamples;
  const auto V = VerdictStatus::Violated;
  for (const Cell& c : {Cell{2.0, 0.0, H, V}, Cell{0.5, 0.0, V, H}, Cell{1.0, 0.0, H, H}, Cell{0.5, 1.0, V, H},
                        Cell{1.0, 1.0, V, H}, Cell{2.0, 1.0, V, V}}) {
    CAPTURE(c.r);
    CAPTURE(c.b);
    const SpCpBoundary out = check_sp_cp_boundary(c.r, c.b, plan);
    CHECK(out.sp.status == c.sp);
    CHECK(out.cp.status == c.cp);
    CHECK(out.consistent);
  }
}

TEST_CASE("implication suite") {
  const ImplicationReport report = implication_suite(small_plan());
  CHECK(report.consistent());
  for (const auto& f : report.families) {
    CAPTURE(f.name);
    if (f.name == "tullock" || f.name == "ratio") {
      CHECK(f.verdict(Predicate::DC).status == VerdictStatus::HoldsOnSamples);
      CHECK(f.verdict(Predicate::CRI).status == VerdictStatus::HoldsOnSamples);
    }
    if (f.name == "luck_tullock") {
      CHECK(f.verdict(Predicate::DC).status == VerdictStatus::Violated);
      CHECK(f.verdict(Predicate::CRI).status == VerdictStatus::Violated);
    }
    CHECK(f.verdict(Predicate::OpponentDecreasing).status == VerdictStatus::HoldsOnSamples);
  }
}

TEST_CASE("serial and parallel scans agree") {
  const SamplingPlan plan = small_plan(3000);
  for (const ImpactSpec& spec : {luck111(), exp_spec(), ImpactSpec::tullock(std::vector<double>{1.0, 3.0, 2.0}, 0.7)}) {
    for (AxiomId a : kAllAxioms) {
      const AxiomVerdict s = check_axiom(spec, a, plan, Execution::Serial);
      const AxiomVerdict p = check_axiom(spec, a, plan, Execution::Parallel);
      CHECK(s.status == p.status);
      CHECK(s.evaluated == p.evaluated);
      CHECK(s.skipped == p.skipped);
      CHECK(s.witness.has_value() == p.witness.has_value());
      if (s.witness && p.witness) CHECK(s.witness->sample == p.witness->sample);
    }
  }
}

TEST_CASE("plan validation") {
  SamplingPlan plan;
  plan.samples = 0;
  CHECK_THROWS_AS(plan.validate(), CsfError);
  plan = SamplingPlan{};
  plan.n_min = 1;
  CHECK_THROWS_AS(plan.validate(), CsfError);
  plan = SamplingPlan{};
  plan.fixed_lambdas = {0.0};
  CHECK_THROWS_AS(plan.validate(), CsfError);
  CHECK(SamplingPlan{}.lambda_set().size() == 6);
  CHECK(SamplingPlan{}.lambda_set() == SamplingPlan{}.lambda_set());
}
