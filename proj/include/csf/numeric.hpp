#pragma once

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

namespace csf {

using Rational = mpq_class;

enum class Backend { Float64, ExactRational };

std::string_view to_string(Backend backend);
std::optional<Backend> parse_backend(std::string_view text);

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline double to_double(double v) { return v; }
/// Nearest double (mpq_get_d alone truncates toward zero).
double to_double(const Rational& q);

/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double v);

/// Accepts "p/q", integers, and decimal literals with an optional exponent
/// ("0.3" -> 3/10, "1e-3" -> 1/1000). Returns nullopt on malformed text or a
/// zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

/// Interprets a double by its shortest round-trip decimal spelling, so the
/// JSON literal 0.3 becomes exactly 3/10 rather than its binary neighbour.
Rational rational_from_decimal_double(double v);

/// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& q);

/// Shortest decimal string that parses back to the same double.
std::string format_shortest(double v);

/// Six significant digits, for human-facing tables.
std::string format_short(double v);

template <class T>
T from_double(double v) {
  if constexpr (is_exact_v<T>) {
    return rational_from_double(v);
  } else {
    return v;
  }
}

/// x^k for a non-negative integer exponent, exact for rationals.
Rational pow_integer(const Rational& x, unsigned k);

template <class T>
T abs_value(const T& v) {
  if constexpr (is_exact_v<T>) {
    return abs(v);
  } else {
    return std::fabs(v);
  }
}

/// Relative gap |lhs - rhs| / max(1, |lhs|, |rhs|). The max(1, .) clamp gives
/// probabilities near zero an absolute floor.
template <class T>
double relative_gap(const T& lhs, const T& rhs) {
  T diff = abs_value(T(lhs - rhs));
  T scale = 1;
  T al = abs_value(lhs);
  T ar = abs_value(rhs);
  if (al > scale) scale = al;
  if (ar > scale) scale = ar;
  return to_double(T(diff / scale));
}

/// Signed version for one-sided predicates: positive when lhs exceeds rhs.
template <class T>
double relative_excess(const T& lhs, const T& rhs) {
  if (!(lhs > rhs)) return 0.0;
  return relative_gap(lhs, rhs);
}

}  // namespace csf
