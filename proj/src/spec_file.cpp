#include "csf/spec_file.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "csf/contest.hpp"
#include "csf/error.hpp"

namespace csf {

using nlohmann::json;

namespace {

const std::set<std::string> kKeys = {"n", "family", "a", "b", "r", "b_scalar", "custom_table", "backend", "v", "labels"};
const std::set<std::string> kFamilies = {"luck_tullock", "tullock",  "linear_headstart",
                                         "symmetric_luck", "ratio", "custom_table"};

[[noreturn]] void invalid(const std::string& msg) { throw CsfError(ErrorCode::InvalidSpec, msg); }

Rational read_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) invalid(where + ": not finite");
    return rational_from_decimal_double(d);
  }
  if (j.is_string()) {
    if (auto q = parse_rational(j.get<std::string>())) return *q;
  }
  invalid(where + ": expected a number or a \"p/q\" string");
}

std::vector<Rational> read_rationals(const json& j, const std::string& key) {
  if (!j.is_array()) invalid(key + " must be an array");
  std::vector<Rational> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(read_rational(j[k], key + "[" + std::to_string(k) + "]"));
  return out;
}

double read_double(const json& j, const std::string& where) {
  if (!j.is_number()) invalid(where + " must be a number");
  const double d = j.get<double>();
  if (!std::isfinite(d)) invalid(where + ": not finite");
  return d;
}

json write_rational(const Rational& q, Backend backend) {
  if (backend == Backend::ExactRational) return format_rational(q);
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  // Plain numbers only when they read back as the same rational.
  if (rational_from_decimal_double(to_double(q)) == q) return to_double(q);
  return format_rational(q);
}

}  // namespace

std::optional<std::size_t> ContestSpecFile::contestants() const {
  if (n) return n;
  if (!a.empty()) return a.size();
  if (!b.empty()) return b.size();
  if (!custom_table.empty()) return custom_table.size();
  return std::nullopt;
}

ImpactSpec ContestSpecFile::build() const {
  const auto count = contestants();
  auto check_length = [&](const std::vector<Rational>& values, const char* key) {
    if (values.empty()) invalid(family + " requires " + key);
    if (count && values.size() != *count) invalid(std::string(key) + " has the wrong length");
  };
  if (backend == Backend::ExactRational) {
    if (family == "custom_table") invalid("the rational backend cannot evaluate custom tables");
    if (!(r == std::floor(r) && r >= 1.0 && r <= 64.0)) invalid("the rational backend requires an integer r");
  }
  if (count && (*count < 2 || *count > kMaxContestants)) invalid("n must be in [2, 64]");
  if (!labels.empty()) {
    if (count && labels.size() != *count) invalid("labels has the wrong length");
    ContestantSet checked(labels.size(), labels);
  }

  ImpactSpec spec = [&]() {
    if (family == "luck_tullock") {
      check_length(a, "a");
      check_length(b, "b");
      return ImpactSpec::power_plus_constant(a, b, r);
    }
    if (family == "tullock") {
      check_length(a, "a");
      for (const auto& q : b) {
        if (q != 0) invalid("tullock has no luck term: b must be absent or zero");
      }
      return ImpactSpec::tullock(a, r);
    }
    if (family == "linear_headstart") {
      check_length(b, "b");
      for (const auto& q : a) {
        if (q != 1) invalid("linear_headstart fixes a = 1");
      }
      if (r != 1.0) invalid("linear_headstart fixes r = 1");
      return ImpactSpec::linear(b);
    }
    if (family == "symmetric_luck") {
      if (!b_scalar) invalid("symmetric_luck requires b_scalar");
      return ImpactSpec::symmetric_luck(*b_scalar, r);
    }
    if (family == "ratio") return ImpactSpec::ratio();
    if (family == "custom_table") {
      if (custom_table.empty()) invalid("custom_table requires breakpoints");
      if (count && custom_table.size() != *count) invalid("custom_table has the wrong length");
      std::vector<CustomImpact> impacts;
      for (const auto& points : custom_table) impacts.push_back(piecewise_linear(points));
      return ImpactSpec::custom(std::move(impacts));
    }
    invalid("unknown family '" + family + "'");
  }();
  if (spec.size_generic() && n) spec = spec.with_size(*n);
  return spec;
}

std::vector<double> ContestSpecFile::valuations(std::size_t count) const {
  if (v.empty()) return std::vector<double>(count, 1.0);
  if (v.size() != count) invalid("v has the wrong length");
  return v;
}

ContestSpecFile parse_spec_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) invalid("spec must be a JSON object");
  for (const auto& item : j.items()) {
    if (!kKeys.count(item.key())) invalid("unknown key '" + item.key() + "'");
  }
  ContestSpecFile f;
  if (!j.contains("family") || !j["family"].is_string()) invalid("family is required");
  f.family = j["family"].get<std::string>();
  if (!kFamilies.count(f.family)) invalid("unknown family '" + f.family + "'");
  if (j.contains("n")) {
    if (!j["n"].is_number_unsigned()) invalid("n must be a positive integer");
    f.n = j["n"].get<std::size_t>();
  }
  if (j.contains("a")) f.a = read_rationals(j["a"], "a");
  if (j.contains("b")) f.b = read_rationals(j["b"], "b");
  if (j.contains("r")) f.r = read_double(j["r"], "r");
  if (j.contains("b_scalar")) f.b_scalar = read_rational(j["b_scalar"], "b_scalar");
  if (j.contains("backend")) {
    const auto& bj = j["backend"];
    auto parsed = bj.is_string() ? parse_backend(bj.get<std::string>()) : std::nullopt;
    if (!parsed) invalid("backend must be \"float64\" or \"rational\"");
    f.backend = *parsed;
  }
  if (j.contains("custom_table")) {
    const auto& table = j["custom_table"];
    if (!table.is_array()) invalid("custom_table must be an array");
    for (const auto& row : table) {
      if (!row.is_array()) invalid("custom_table entries must be arrays of [x, f] pairs");
      std::vector<std::pair<double, double>> points;
      for (const auto& pt : row) {
        if (!pt.is_array() || pt.size() != 2) invalid("custom_table breakpoints must be [x, f] pairs");
        points.emplace_back(read_double(pt[0], "custom_table x"), read_double(pt[1], "custom_table f"));
      }
      f.custom_table.push_back(std::move(points));
    }
  }
  if (j.contains("v")) {
    if (!j["v"].is_array()) invalid("v must be an array");
    for (const auto& vj : j["v"]) f.v.push_back(read_double(vj, "v"));
  }
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) invalid("labels must be an array");
    for (const auto& lj : j["labels"]) {
      if (!lj.is_string()) invalid("labels must be strings");
      f.labels.push_back(lj.get<std::string>());
    }
  }
  f.build();
  return f;
}

ContestSpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open spec file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_json(buffer.str());
}

std::string to_json(const ContestSpecFile& f) {
  nlohmann::ordered_json j;
  if (f.n) j["n"] = *f.n;
  j["family"] = f.family;
  auto list = [&](const std::vector<Rational>& values) {
    json arr = json::array();
    for (const auto& q : values) arr.push_back(write_rational(q, f.backend));
    return arr;
  };
  if (!f.a.empty()) j["a"] = list(f.a);
  if (!f.b.empty()) j["b"] = list(f.b);
  j["r"] = f.r;
  if (f.b_scalar) j["b_scalar"] = write_rational(*f.b_scalar, f.backend);
  if (!f.custom_table.empty()) {
    json table = json::array();
    for (const auto& points : f.custom_table) {
      json row = json::array();
      for (const auto& [x, y] : points) row.push_back({x, y});
      table.push_back(row);
    }
    j["custom_table"] = table;
  }
  j["backend"] = std::string(to_string(f.backend));
  if (!f.v.empty()) j["v"] = f.v;
  if (!f.labels.empty()) j["labels"] = f.labels;
  return j.dump(2);
}

}  // namespace csf
