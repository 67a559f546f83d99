#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csf/contest.hpp"
#include "csf/error.hpp"
#include "csf/numeric.hpp"

namespace csf {

/// CSF families of logit form p_i = f_i(x_i) / sum_j f_j(x_j). Every
/// parametric family is a special case of f_j(x) = b_j + a_j x^r; the tag only
/// records which restriction the caller asked for.
enum class Family { PowerPlusConstant, Linear, SymmetricLuck, Tullock, Ratio, Custom };

std::string_view to_string(Family family);

/// A user-supplied impact function. Evaluations above domain_max raise
/// DomainError (e^x overflows a double long before the [0, 1e6] validation
/// range ends).
struct CustomImpact {
  std::function<double(double)> f;
  std::string name = "custom";
  double domain_max = std::numeric_limits<double>::infinity();
};

/// Monotone linear interpolation through (x, f) breakpoints, extrapolated
/// linearly past the last one. The first breakpoint must sit at x = 0.
CustomImpact piecewise_linear(std::vector<std::pair<double, double>> points);

class ImpactSpec {
 public:
  static ImpactSpec power_plus_constant(std::vector<Rational> a, std::vector<Rational> b, double r);
  static ImpactSpec power_plus_constant(const std::vector<double>& a, const std::vector<double>& b, double r);
  static ImpactSpec linear(std::vector<Rational> b);
  static ImpactSpec linear(const std::vector<double>& b);
  static ImpactSpec tullock(std::vector<Rational> a, double r);
  static ImpactSpec tullock(const std::vector<double>& a, double r);
  /// Anonymous families: valid for any contestant count.
  static ImpactSpec symmetric_luck(Rational b, double r);
  static ImpactSpec symmetric_luck(double b, double r);
  static ImpactSpec ratio();
  static ImpactSpec custom(std::vector<CustomImpact> impacts);
  static ImpactSpec custom_symmetric(CustomImpact impact);

  Family family() const { return family_; }
  bool is_custom() const { return family_ == Family::Custom; }
  /// True when the spec has one shared parameter set and accepts any n >= 2.
  bool size_generic() const { return generic_; }
  /// Contestant count, or 0 for size-generic specs.
  std::size_t size() const { return generic_ ? 0 : n_; }
  /// Concrete n-contestant copy; for fixed-size specs n must match.
  ImpactSpec with_size(std::size_t n) const;
  /// Projection of the parameters onto the members of m, re-indexed 0..|m|-1.
  ImpactSpec restricted(Mask m) const;

  double r() const { return r_; }
  std::optional<unsigned> integer_r() const { return integer_r_; }
  bool supports(Backend backend) const;
  /// Integer r and no custom evaluator: every identity can be checked exactly.
  bool exact_compatible() const { return supports(Backend::ExactRational); }

  double a(std::size_t j) const { return a_[slot(j)]; }
  double b(std::size_t j) const { return b_[slot(j)]; }
  const Rational& a_exact(std::size_t j) const { return a_q_[slot(j)]; }
  const Rational& b_exact(std::size_t j) const { return b_q_[slot(j)]; }

  template <class T>
  T a_as(std::size_t j) const {
    if constexpr (is_exact_v<T>) return a_exact(j); else return a(j);
  }
  template <class T>
  T b_as(std::size_t j) const {
    if constexpr (is_exact_v<T>) return b_exact(j); else return b(j);
  }

  /// f_j(x).
  template <class T>
  T impact(std::size_t j, const T& x) const;
  /// f_j(x) - f_j(0), computed as a_j x^r for parametric families so that a
  /// small effort against a large luck term does not cancel.
  template <class T>
  T gain(std::size_t j, const T& x) const;
  /// f_j(0).
  template <class T>
  T luck(std::size_t j) const;
  /// sum_j f_j(0) over n contestants.
  template <class T>
  T total_luck(std::size_t n) const;

  std::string summary() const;

 private:
  ImpactSpec() = default;
  void finish_parametric();
  std::size_t slot(std::size_t j) const { return generic_ ? 0 : j; }

  template <class T>
  T power(const T& x) const;
  double custom_value(std::size_t j, double x) const;

  Family family_ = Family::PowerPlusConstant;
  bool generic_ = false;
  std::size_t n_ = 0;
  std::vector<Rational> a_q_;
  std::vector<Rational> b_q_;
  std::vector<double> a_;
  std::vector<double> b_;
  double r_ = 1.0;
  std::optional<unsigned> integer_r_;
  std::vector<CustomImpact> custom_;
};

/// Grid used to spot-check custom impact functions: 0 plus 64 log-spaced
/// points in [1e-6, min(1e6, domain_max)].
std::vector<double> custom_validation_grid(double domain_max);

template <class T>
T ImpactSpec::power(const T& x) const {
  if constexpr (is_exact_v<T>) {
    if (!integer_r_) {
      throw CsfError(ErrorCode::BackendUnavailable, "exact evaluation needs a positive integer r");
    }
    return pow_integer(x, *integer_r_);
  } else {
    if (x == 0.0) return 0.0;
    if (r_ == 1.0) return x;
    return std::pow(x, r_);
  }
}

template <class T>
T ImpactSpec::impact(std::size_t j, const T& x) const {
  if (is_custom()) {
    if constexpr (is_exact_v<T>) {
      throw CsfError(ErrorCode::BackendUnavailable, "custom impact functions are float-only");
    } else {
      return custom_value(j, x);
    }
  } else {
    return T(b_as<T>(j) + a_as<T>(j) * power(x));
  }
}

template <class T>
T ImpactSpec::gain(std::size_t j, const T& x) const {
  if (is_custom()) {
    if constexpr (is_exact_v<T>) {
      throw CsfError(ErrorCode::BackendUnavailable, "custom impact functions are float-only");
    } else {
      return custom_value(j, x) - custom_value(j, 0.0);
    }
  } else {
    return T(a_as<T>(j) * power(x));
  }
}

template <class T>
T ImpactSpec::luck(std::size_t j) const {
  if (is_custom()) {
    if constexpr (is_exact_v<T>) {
      throw CsfError(ErrorCode::BackendUnavailable, "custom impact functions are float-only");
    } else {
      return custom_value(j, 0.0);
    }
  } else {
    return b_as<T>(j);
  }
}

template <class T>
T ImpactSpec::total_luck(std::size_t n) const {
  T sum = 0;
  for (std::size_t j = 0; j < n; ++j) sum += luck<T>(j);
  return sum;
}

}  // namespace csf
