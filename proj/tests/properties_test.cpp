#include <doctest.h>

#include <cmath>
#include <random>

#include "csf/csf.hpp"
#include "csf/falsifier.hpp"

using namespace csf;

namespace {

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); }
  bool coin(double p) { return uniform(0.0, 1.0) < p; }

  std::vector<double> profile(std::size_t n) {
    std::vector<double> x(n);
    do {
      for (double& v : x) v = coin(0.25) ? 0.0 : log_uniform(1e-3, 1e3);
    } while (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; }));
    return x;
  }

  /// Small non-negative integers, exact in both backends.
  std::vector<Rational> int_profile(std::size_t n) {
    std::vector<Rational> x(n);
    do {
      for (auto& v : x) v = static_cast<long>(index(0, 9));
    } while (std::all_of(x.begin(), x.end(), [](const Rational& v) { return v == 0; }));
    return x;
  }

  ImpactSpec luck_tullock(std::size_t n, bool integer_r, bool luck = true) {
    std::vector<Rational> a(n), b(n);
    for (auto& v : a) {
      v = Rational(static_cast<long>(index(1, 20)), static_cast<long>(index(1, 8)));
      v.canonicalize();
    }
    for (auto& v : b) {
      v = luck && !coin(0.3) ? Rational(static_cast<long>(index(0, 12)), 4) : Rational(0);
      v.canonicalize();
    }
    if (luck && std::all_of(b.begin(), b.end(), [](const Rational& q) { return q == 0; })) b[0] = 1;
    const double r = integer_r ? static_cast<double>(index(1, 3)) : uniform(0.2, 3.0);
    return ImpactSpec::power_plus_constant(a, b, r);
  }
};

constexpr int kTrials = 60;

SamplingPlan plan_of(std::size_t samples, std::uint64_t seed = 11) {
  SamplingPlan plan;
  plan.samples = samples;
  plan.seed = seed;
  return plan;
}

}  // namespace

TEST_CASE("probabilities are a distribution") {
  Gen g(1);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t n = g.index(2, 8);
    const ImpactSpec spec = g.luck_tullock(n, false);
    const auto x = g.profile(n);
    const auto p = evaluate<double>(spec, std::span<const double>(x));
    double sum = 0.0;
    for (double v : p) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    const ImpactSpec exact = g.luck_tullock(n, true);
    const auto xq = g.int_profile(n);
    Rational total = 0;
    for (const auto& v : evaluate<Rational>(exact, std::span<const Rational>(xq))) total += v;
    CHECK(total == 1);
  }
}

TEST_CASE("LCA holds exactly for logit forms") {
  Gen g(2);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t n = g.index(3, 6);
    const ImpactSpec spec = g.luck_tullock(n, true);
    const auto x = g.int_profile(n);
    Mask m = 0;
    while (count(m) < 2) m = g.rng() & full_mask(n);
    const std::span<const Rational> xs(x);
    const auto full = evaluate<Rational>(spec, xs);
    Rational share = 0;
    for (std::size_t j : members(m)) share += full[j];
    if (share == 0) continue;
    const auto sub = evaluate<Rational>(spec, m, xs);
    for (std::size_t i : members(m)) CHECK(full[i] == sub[i] * share);
  }
}

TEST_CASE("Tullock is invariant under joint scaling") {
  Gen g(3);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t n = g.index(2, 6);
    const ImpactSpec spec = g.luck_tullock(n, true, false);
    auto x = g.int_profile(n);
    const auto before = evaluate<Rational>(spec, std::span<const Rational>(x));
    Rational lambda(static_cast<long>(g.index(1, 9)), static_cast<long>(g.index(1, 9)));
    lambda.canonicalize();
    for (auto& v : x) v *= lambda;
    CHECK(evaluate<Rational>(spec, std::span<const Rational>(x)) == before);
  }
}

TEST_CASE("deviation equals the effort share and mu_i") {
  Gen g(4);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t n = g.index(2, 6);
    const ImpactSpec spec = g.luck_tullock(n, true);
    const auto x = g.int_profile(n);
    const std::span<const Rational> xs(x);
    const auto d = decompose_two_level<Rational>(spec, xs);
    Rational total = d.mu_null;
    for (const auto& m : d.mu) total += m;
    CHECK(total == 1);
    CHECK(d.mu_null > 0);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(effort_share<Rational>(spec, i, xs) == d.mu[i]);
      for (std::size_t j = 0; j < n; ++j) {
        // p_j(0, x_-i) = 0 leaves d_ij undefined.
        if (j == i || (x[j] == 0 && spec.b_exact(j) == 0)) continue;
        CHECK(deviation<Rational>(spec, i, j, xs) == d.mu[i]);
      }
      // The DI ratio depends on x_i only.
      Rational others = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) others += d.mu[j];
      }
      const Rational ratio = d.mu[i] / (1 - others);
      CHECK(ratio == spec.gain<Rational>(i, x[i]) / (spec.impact<Rational>(i, x[i]) + spec.total_luck<Rational>(n) -
                                                     spec.luck<Rational>(i)));
    }
  }
}

TEST_CASE("family members pass their axioms") {
  Gen g(5);
  const SamplingPlan plan = plan_of(1500);
  for (int t = 0; t < 8; ++t) {
    const std::size_t n = g.index(3, 6);
    const ImpactSpec luck = g.luck_tullock(n, g.coin(0.5));
    for (AxiomId a : {AxiomId::SM, AxiomId::LCA, AxiomId::HRE}) {
      CAPTURE(luck.summary());
      CAPTURE(to_string(a));
      CHECK(check_axiom(luck, a, plan).status == VerdictStatus::HoldsOnSamples);
    }
    const ImpactSpec tullock = g.luck_tullock(n, g.coin(0.5), false);
    for (AxiomId a : {AxiomId::HOM, AxiomId::RH, AxiomId::DC, AxiomId::CRI}) {
      CAPTURE(tullock.summary());
      CAPTURE(to_string(a));
      CHECK(check_axiom(tullock, a, plan).status == VerdictStatus::HoldsOnSamples);
    }
    const ImpactSpec sym = ImpactSpec::symmetric_luck(g.uniform(0.0, 3.0), g.uniform(0.2, 3.0));
    CHECK(check_axiom(sym, AxiomId::ANY, plan).status == VerdictStatus::HoldsOnSamples);
    std::vector<double> b(n);
    for (double& v : b) v = g.coin(0.3) ? 0.0 : g.uniform(0.0, 4.0);
    const ImpactSpec linear = ImpactSpec::linear(b);
    CHECK(check_axiom(linear, AxiomId::NAR, plan).status == VerdictStatus::HoldsOnSamples);
  }
}

TEST_CASE("exact backend agrees with the forward direction") {
  Gen g(6);
  SamplingPlan plan = plan_of(800);
  plan.backend = Backend::ExactRational;
  for (int t = 0; t < 4; ++t) {
    const ImpactSpec spec = g.luck_tullock(g.index(2, 5), true);
    for (AxiomId a : {AxiomId::SM, AxiomId::LCA, AxiomId::HRE, AxiomId::PA, AxiomId::DI}) {
      CAPTURE(spec.summary());
      CAPTURE(to_string(a));
      CHECK(check_axiom(spec, a, plan).status == VerdictStatus::HoldsOnSamples);
    }
  }
}

TEST_CASE("verdicts are deterministic and witnesses replay") {
  Gen g(7);
  const SamplingPlan plan = plan_of(1500, 3);
  for (int t = 0; t < 6; ++t) {
    const std::size_t n = g.index(3, 5);
    const ImpactSpec spec = g.luck_tullock(n, false);
    for (AxiomId a : kAllAxioms) {
      const AxiomVerdict v1 = check_axiom(spec, a, plan);
      const AxiomVerdict v2 = check_axiom(spec, a, plan);
      CHECK(v1.status == v2.status);
      CHECK(v1.evaluated == v2.evaluated);
      if (v1.witness) {
        REQUIRE(v2.witness);
        CHECK(v1.witness->sample == v2.witness->sample);
        const Outcome again = evaluate_sample(spec, predicate_of(a), v1.witness->sample, v1.backend, v1.tolerance);
        CHECK(again.kind == OutcomeKind::Violated);
        CHECK(again.lhs == v1.witness->outcome.lhs);
        CHECK(again.rhs == v1.witness->outcome.rhs);
        if (a != AxiomId::SM) CHECK(again.gap > v1.tolerance);
      }
      const auto ce = falsify(spec, a, plan);
      CHECK(ce.has_value() == (v1.status == VerdictStatus::Violated));
      if (ce) {
        CHECK(replay(spec, *ce).kind == OutcomeKind::Violated);
        std::size_t zeros_before = 0, zeros_after = 0;
        for (double v : v1.witness->sample.x) zeros_before += v == 0.0;
        for (double v : ce->sample.x) zeros_after += v == 0.0;
        CHECK(zeros_after == zeros_before);
      }
    }
  }
}

TEST_CASE("different seeds change the random stream only") {
  const ImpactSpec spec = ImpactSpec::tullock(std::vector<double>{1.0, 2.0, 3.0}, 2.0);
  const AxiomVerdict a = check_axiom(spec, AxiomId::NAR, plan_of(600, 1));
  const AxiomVerdict b = check_axiom(spec, AxiomId::NAR, plan_of(600, 2));
  // Both are decided on the shared grid prefix.
  REQUIRE(a.witness);
  REQUIRE(b.witness);
  CHECK(a.witness->sample == b.witness->sample);
}
