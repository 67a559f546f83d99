#include "csf/numeric.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace csf {

std::string_view to_string(Backend backend) {
  return backend == Backend::Float64 ? "float64" : "rational";
}

std::optional<Backend> parse_backend(std::string_view text) {
  if (text == "float64") return Backend::Float64;
  if (text == "rational") return Backend::ExactRational;
  return std::nullopt;
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no rational form");
  Rational q(v);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) {
  const double d = q.get_d();
  if (!std::isfinite(d) || q == 0) return d;
  const double away = std::nextafter(d, q > 0 ? INFINITY : -INFINITY);
  if (!std::isfinite(away)) return d;
  const Rational below_gap = abs(Rational(q - Rational(d)));
  const Rational above_gap = abs(Rational(Rational(away) - q));
  return above_gap < below_gap ? away : d;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class pow10(unsigned long k) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, k);
  return out;
}

std::optional<Rational> parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) return std::nullopt;
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  long fraction_len = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) return std::nullopt;
    if (!int_part.empty() && !all_digits(int_part)) return std::nullopt;
    if (!frac_part.empty() && !all_digits(frac_part)) return std::nullopt;
    digits = std::string(int_part) + std::string(frac_part);
    fraction_len = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) return std::nullopt;
    digits = std::string(s);
  }
  Rational q{mpz_class(digits, 10)};
  long scale = exponent - fraction_len;
  if (scale > 0) {
    q *= Rational(pow10(static_cast<unsigned long>(scale)));
  } else if (scale < 0) {
    q /= Rational(pow10(static_cast<unsigned long>(-scale)));
  }
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && num.front() == '-') {
      negative = true;
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    Rational q(mpz_class(std::string(num), 10), d);
    q.canonicalize();
    if (negative) q = -q;
    return q;
  }
  return parse_decimal(text);
}

Rational rational_from_decimal_double(double v) {
  auto q = parse_rational(format_shortest(v));
  if (!q) throw std::invalid_argument("value has no decimal form");
  return *q;
}

std::string format_rational(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_shortest(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

std::string format_short(double v) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%g", v);
  return std::string(buf.data());
}

Rational pow_integer(const Rational& x, unsigned k) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), k);
  // gcd(num^k, den^k) = 1 already; no canonicalize needed.
  return Rational(num, den);
}

}  // namespace csf
