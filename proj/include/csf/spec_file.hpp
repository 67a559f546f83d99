#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csf/impact.hpp"
#include "csf/numeric.hpp"

namespace csf {

/// On-disk contest description. Keys: n, family, a, b, r, b_scalar,
/// custom_table, backend, plus optional prize valuations v and labels.
///
/// family is one of luck_tullock, tullock, linear_headstart, symmetric_luck,
/// ratio, custom_table. Numbers in a, b and b_scalar are read by their
/// decimal spelling (0.3 is 3/10), and "p/q" strings are accepted.
struct ContestSpecFile {
  std::optional<std::size_t> n;
  std::string family;
  std::vector<Rational> a;
  std::vector<Rational> b;
  double r = 1.0;
  std::optional<Rational> b_scalar;
  std::vector<std::vector<std::pair<double, double>>> custom_table;
  Backend backend = Backend::Float64;
  std::vector<double> v;
  std::vector<std::string> labels;

  /// Contestant count: n, or the length of the parameter arrays.
  std::optional<std::size_t> contestants() const;

  /// Validates and builds the spec; throws InvalidSpec.
  ImpactSpec build() const;

  /// Valuations for the game, defaulting to 1 per contestant.
  std::vector<double> valuations(std::size_t n) const;
};

ContestSpecFile parse_spec_json(const std::string& text);
ContestSpecFile load_spec_file(const std::string& path);
std::string to_json(const ContestSpecFile& file);

}  // namespace csf
