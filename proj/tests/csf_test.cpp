#include <doctest.h>

#include <cmath>

#include "csf/csf.hpp"

using namespace csf;

namespace {

ImpactSpec luck111() {
  return ImpactSpec::power_plus_constant(std::vector<Rational>{1, 1, 1}, std::vector<Rational>{1, 1, 1}, 1.0);
}

std::vector<Rational> q(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("luck-Tullock probabilities at (2,1,0) and (4,2,0)") {
  const ImpactSpec spec = luck111();
  const auto x = q({2, 1, 0});
  const auto p = evaluate<Rational>(spec, std::span<const Rational>(x));
  CHECK(p == std::vector<Rational>{Rational(1, 2), Rational(1, 3), Rational(1, 6)});

  const auto x2 = q({4, 2, 0});
  const auto p2 = evaluate<Rational>(spec, std::span<const Rational>(x2));
  CHECK(p2 == std::vector<Rational>{Rational(5, 9), Rational(1, 3), Rational(1, 9)});

  const auto pf = evaluate(spec, EffortProfile({2.0, 1.0, 0.0}));
  CHECK(pf[0] == doctest::Approx(0.5));
  CHECK(pf[1] == doctest::Approx(1.0 / 3.0));
  CHECK(pf[2] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("sub-contest restriction") {
  const ImpactSpec spec = luck111();
  const auto x = q({2, 1, 0});
  const auto p = evaluate<Rational>(spec, 0b011, std::span<const Rational>(x));
  CHECK(p == std::vector<Rational>{Rational(3, 5), Rational(2, 5), Rational(0)});

  const ImpactSpec sub = restrict(spec, 0b011);
  const auto x2 = q({2, 1});
  CHECK(evaluate<Rational>(sub, std::span<const Rational>(x2)) == std::vector<Rational>{Rational(3, 5), Rational(2, 5)});

  CHECK_THROWS_AS(evaluate<Rational>(spec, 0b001, std::span<const Rational>(x)), CsfError);
}

TEST_CASE("deviation oracle") {
  const ImpactSpec spec = luck111();
  const auto x = q({2, 1, 0});
  const std::span<const Rational> xs(x);
  CHECK(deviation<Rational>(spec, 0, 1, xs) == Rational(1, 3));
  CHECK(deviation<Rational>(spec, 1, 0, xs) == Rational(1, 6));
  const auto x2 = q({4, 2, 0});
  CHECK(deviation<Rational>(spec, 0, 1, std::span<const Rational>(x2)) == Rational(4, 9));
  CHECK(deviation<Rational>(spec, 1, 0, std::span<const Rational>(x2)) == Rational(2, 9));

  // The gain route agrees with the literal definition.
  CHECK(effort_share<Rational>(spec, 0, xs) == Rational(1, 3));
  const std::vector<double> xd{2.0, 1.0, 0.0};
  CHECK(effort_share<double>(spec, 1, std::span<const double>(xd)) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("undefined deviation for a luckless opponent at zero") {
  const ImpactSpec spec = ImpactSpec::tullock(std::vector<double>{1.0, 1.0, 1.0}, 1.0);
  const std::vector<double> x{1.0, 0.0, 2.0};
  CHECK_THROWS_AS(deviation<double>(spec, 0, 1, std::span<const double>(x)), CsfError);
  try {
    deviation<double>(spec, 0, 1, std::span<const double>(x));
  } catch (const CsfError& e) {
    CHECK(e.code() == ErrorCode::UndefinedDeviation);
  }
}

TEST_CASE("degenerate denominators") {
  const ImpactSpec spec = ImpactSpec::tullock(std::vector<double>{1.0, 1.0, 1.0}, 1.0);
  const std::vector<double> x{0.0, 0.0, 3.0};
  try {
    evaluate<double>(spec, 0b011, std::span<const double>(x));
    FAIL("expected an error");
  } catch (const CsfError& e) {
    CHECK(e.code() == ErrorCode::DegenerateDenominator);
  }
}

TEST_CASE("profile size must match a fixed-size spec") {
  const ImpactSpec spec = luck111();
  const std::vector<double> x{1.0, 2.0};
  CHECK_THROWS_AS(evaluate<double>(spec, std::span<const double>(x)), CsfError);
  CHECK_NOTHROW(evaluate<double>(ImpactSpec::ratio(), std::span<const double>(x)));
}

TEST_CASE("two-level decomposition") {
  const ImpactSpec spec = ImpactSpec::power_plus_constant(std::vector<Rational>{1, 1, 1},
                                                          {Rational(1, 2), Rational(3, 10), Rational(1, 5)}, 1.0);
  const auto x = q({2, 1, 0});
  const auto d = decompose_two_level<Rational>(spec, std::span<const Rational>(x));
  CHECK(d.mu == std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(0)});
  CHECK(d.mu_null == Rational(1, 4));
  REQUIRE(d.alpha);
  CHECK(*d.alpha == std::vector<Rational>{Rational(1), Rational(1), Rational(1)});

  const ImpactSpec spec2 = ImpactSpec::power_plus_constant(q({2, 4}), q({1, 1}), 1.0);
  CHECK(blavatskyy_params<Rational>(spec2) == std::vector<Rational>{Rational(1), Rational(2)});

  const ImpactSpec tullock = ImpactSpec::tullock(q({1, 1}), 1.0);
  try {
    blavatskyy_params<Rational>(tullock);
    FAIL("expected LucklessFamily");
  } catch (const CsfError& e) {
    CHECK(e.code() == ErrorCode::LucklessFamily);
  }
  const auto zero = q({0, 0, 0});
  CHECK_THROWS_AS(decompose_two_level<Rational>(spec, std::span<const Rational>(zero)), CsfError);
}

TEST_CASE("blavatskyy forms match the decomposition") {
  // mu_i = alpha_i x_i^r / (1 + sum alpha x^r), mu_null = 1 / (1 + sum alpha x^r)
  const ImpactSpec spec = ImpactSpec::power_plus_constant(q({2, 3, 1}), q({1, 2, 1}), 2.0);
  const auto x = q({1, 2, 5});
  const auto d = decompose_two_level<Rational>(spec, std::span<const Rational>(x));
  const auto alpha = blavatskyy_params<Rational>(spec);
  Rational s = 1;
  for (std::size_t i = 0; i < 3; ++i) s += alpha[i] * x[i] * x[i];
  for (std::size_t i = 0; i < 3; ++i) CHECK(d.mu[i] == alpha[i] * x[i] * x[i] / s);
  CHECK(d.mu_null == 1 / s);
}

TEST_CASE("family constructors validate parameters") {
  CHECK_THROWS_AS(ImpactSpec::tullock(std::vector<double>{1.0, 0.0}, 1.0), CsfError);
  CHECK_THROWS_AS(ImpactSpec::power_plus_constant(std::vector<double>{1.0, 1.0}, {-1.0, 0.0}, 1.0), CsfError);
  CHECK_THROWS_AS(ImpactSpec::tullock(std::vector<double>{1.0, 1.0}, 0.0), CsfError);
  CHECK_THROWS_AS(ImpactSpec::tullock(std::vector<double>{1.0}, 1.0), CsfError);
  // Non-monotone custom impact.
  CHECK_THROWS_AS(ImpactSpec::custom_symmetric(CustomImpact{[](double x) { return std::sin(x) + 2.0; }, "sin"}),
                  CsfError);
  CHECK_THROWS_AS(piecewise_linear({{1.0, 1.0}, {2.0, 2.0}}), CsfError);
}

TEST_CASE("exact backend availability") {
  CHECK(ImpactSpec::tullock(std::vector<double>{1.0, 1.0}, 2.0).supports(Backend::ExactRational));
  CHECK_FALSE(ImpactSpec::tullock(std::vector<double>{1.0, 1.0}, 0.5).supports(Backend::ExactRational));
  const ImpactSpec exp_spec = ImpactSpec::custom_symmetric(CustomImpact{[](double x) { return std::exp(x); }, "exp", 700.0});
  CHECK_FALSE(exp_spec.supports(Backend::ExactRational));
  const std::vector<Rational> x{1, 2};
  CHECK_THROWS_AS(evaluate<Rational>(exp_spec, std::span<const Rational>(x)), CsfError);
}

TEST_CASE("piecewise-linear custom tables") {
  const ImpactSpec spec = ImpactSpec::custom({piecewise_linear({{0, 1}, {1, 2}, {4, 3}}), piecewise_linear({{0, 0}, {2, 1}})});
  const std::vector<double> x{1.0, 2.0};
  const auto p = evaluate<double>(spec, std::span<const double>(x));
  CHECK(p[0] == doctest::Approx(2.0 / 3.0));
  const std::vector<double> far{10.0, 4.0};
  const auto pf = evaluate<double>(spec, std::span<const double>(far));
  // Extrapolated: f1(10) = 3 + 6/3 = 5, f2(4) = 2.
  CHECK(pf[0] == doctest::Approx(5.0 / 7.0));
}
