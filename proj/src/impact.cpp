#include "csf/impact.hpp"

#include <algorithm>
#include <sstream>

namespace csf {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::PowerPlusConstant: return "luck_tullock";
    case Family::Linear: return "linear_headstart";
    case Family::SymmetricLuck: return "symmetric_luck";
    case Family::Tullock: return "tullock";
    case Family::Ratio: return "ratio";
    case Family::Custom: return "custom";
  }
  return "unknown";
}

namespace {

void check_size(std::size_t n) {
  if (n < 2 || n > kMaxContestants) {
    throw CsfError(ErrorCode::InvalidSpec, "contestant count must be in [2, 64], got " + std::to_string(n));
  }
}

void check_r(double r) {
  if (!std::isfinite(r) || r <= 0.0) throw CsfError(ErrorCode::InvalidSpec, "r must be a positive real");
}

std::vector<Rational> to_rationals(const std::vector<double>& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (double d : v) {
    if (!std::isfinite(d)) throw CsfError(ErrorCode::InvalidSpec, "parameters must be finite");
    out.push_back(rational_from_double(d));
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_shortest(v[i]);
  }
  return out + "]";
}

}  // namespace

std::vector<double> custom_validation_grid(double domain_max) {
  constexpr int kPoints = 64;
  const double lo = 1e-6;
  const double hi = std::min(1e6, domain_max);
  std::vector<double> grid{0.0};
  if (!(hi > lo)) return grid;
  const double step = std::log(hi / lo) / (kPoints - 1);
  for (int k = 0; k < kPoints; ++k) grid.push_back(lo * std::exp(step * k));
  grid.back() = hi;
  return grid;
}

CustomImpact piecewise_linear(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw CsfError(ErrorCode::InvalidSpec, "custom table needs at least two breakpoints");
  if (points.front().first != 0.0) throw CsfError(ErrorCode::InvalidSpec, "custom table must start at x = 0");
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& [x, f] = points[k];
    if (!std::isfinite(x) || !std::isfinite(f) || f < 0.0) {
      throw CsfError(ErrorCode::InvalidSpec, "custom table entries must be finite with f >= 0");
    }
    if (k > 0 && !(x > points[k - 1].first && f > points[k - 1].second)) {
      throw CsfError(ErrorCode::InvalidSpec, "custom table must be strictly increasing in x and f");
    }
  }
  CustomImpact out;
  out.name = "table";
  out.f = [pts = std::move(points)](double x) {
    auto it = std::upper_bound(pts.begin(), pts.end(), x,
                               [](double v, const std::pair<double, double>& p) { return v < p.first; });
    std::size_t hi = static_cast<std::size_t>(it - pts.begin());
    if (hi == 0) hi = 1;
    if (hi >= pts.size()) hi = pts.size() - 1;
    const auto& [x0, f0] = pts[hi - 1];
    const auto& [x1, f1] = pts[hi];
    return f0 + (f1 - f0) * (x - x0) / (x1 - x0);
  };
  return out;
}

void ImpactSpec::finish_parametric() {
  const std::size_t slots = generic_ ? 1 : n_;
  if (a_q_.size() != slots || b_q_.size() != slots) {
    throw CsfError(ErrorCode::InvalidSpec, "a and b must have one entry per contestant");
  }
  check_r(r_);
  a_.clear();
  b_.clear();
  for (std::size_t j = 0; j < slots; ++j) {
    a_q_[j].canonicalize();
    b_q_[j].canonicalize();
    if (a_q_[j] <= 0) throw CsfError(ErrorCode::InvalidSpec, "a_j must be positive");
    if (b_q_[j] < 0) throw CsfError(ErrorCode::InvalidSpec, "b_j must be non-negative");
    a_.push_back(to_double(a_q_[j]));
    b_.push_back(to_double(b_q_[j]));
  }
  integer_r_.reset();
  if (r_ == std::floor(r_) && r_ >= 1.0 && r_ <= 64.0) integer_r_ = static_cast<unsigned>(r_);
}

ImpactSpec ImpactSpec::power_plus_constant(std::vector<Rational> a, std::vector<Rational> b, double r) {
  check_size(a.size());
  ImpactSpec s;
  s.family_ = Family::PowerPlusConstant;
  s.n_ = a.size();
  s.a_q_ = std::move(a);
  s.b_q_ = std::move(b);
  s.r_ = r;
  s.finish_parametric();
  return s;
}

ImpactSpec ImpactSpec::power_plus_constant(const std::vector<double>& a, const std::vector<double>& b, double r) {
  return power_plus_constant(to_rationals(a), to_rationals(b), r);
}

ImpactSpec ImpactSpec::linear(std::vector<Rational> b) {
  check_size(b.size());
  ImpactSpec s;
  s.family_ = Family::Linear;
  s.n_ = b.size();
  s.a_q_.assign(s.n_, Rational(1));
  s.b_q_ = std::move(b);
  s.r_ = 1.0;
  s.finish_parametric();
  return s;
}

ImpactSpec ImpactSpec::linear(const std::vector<double>& b) { return linear(to_rationals(b)); }

ImpactSpec ImpactSpec::tullock(std::vector<Rational> a, double r) {
  check_size(a.size());
  ImpactSpec s;
  s.family_ = Family::Tullock;
  s.n_ = a.size();
  s.a_q_ = std::move(a);
  s.b_q_.assign(s.n_, Rational(0));
  s.r_ = r;
  s.finish_parametric();
  return s;
}

ImpactSpec ImpactSpec::tullock(const std::vector<double>& a, double r) { return tullock(to_rationals(a), r); }

ImpactSpec ImpactSpec::symmetric_luck(Rational b, double r) {
  ImpactSpec s;
  s.family_ = Family::SymmetricLuck;
  s.generic_ = true;
  s.a_q_ = {Rational(1)};
  s.b_q_ = {std::move(b)};
  s.r_ = r;
  s.finish_parametric();
  return s;
}

ImpactSpec ImpactSpec::symmetric_luck(double b, double r) {
  if (!std::isfinite(b)) throw CsfError(ErrorCode::InvalidSpec, "b must be finite");
  return symmetric_luck(rational_from_double(b), r);
}

ImpactSpec ImpactSpec::ratio() {
  ImpactSpec s;
  s.family_ = Family::Ratio;
  s.generic_ = true;
  s.a_q_ = {Rational(1)};
  s.b_q_ = {Rational(0)};
  s.r_ = 1.0;
  s.finish_parametric();
  return s;
}

namespace {

void validate_custom(const CustomImpact& c) {
  if (!c.f) throw CsfError(ErrorCode::InvalidSpec, "custom impact without an evaluator");
  if (!(c.domain_max > 1e-6)) throw CsfError(ErrorCode::InvalidSpec, "custom domain must extend past 1e-6");
  double prev = -1.0;
  for (double x : custom_validation_grid(c.domain_max)) {
    double v = c.f(x);
    if (!std::isfinite(v) || v < 0.0) {
      throw CsfError(ErrorCode::InvalidSpec,
                     c.name + " must be finite and non-negative (fails at x = " + format_shortest(x) + ")");
    }
    if (!(v > prev)) {
      throw CsfError(ErrorCode::InvalidSpec,
                     c.name + " must be strictly increasing (fails at x = " + format_shortest(x) + ")");
    }
    prev = v;
  }
}

}  // namespace

ImpactSpec ImpactSpec::custom(std::vector<CustomImpact> impacts) {
  check_size(impacts.size());
  for (const auto& c : impacts) validate_custom(c);
  ImpactSpec s;
  s.family_ = Family::Custom;
  s.n_ = impacts.size();
  s.custom_ = std::move(impacts);
  s.r_ = std::numeric_limits<double>::quiet_NaN();
  return s;
}

ImpactSpec ImpactSpec::custom_symmetric(CustomImpact impact) {
  validate_custom(impact);
  ImpactSpec s;
  s.family_ = Family::Custom;
  s.generic_ = true;
  s.custom_ = {std::move(impact)};
  s.r_ = std::numeric_limits<double>::quiet_NaN();
  return s;
}

ImpactSpec ImpactSpec::with_size(std::size_t n) const {
  check_size(n);
  if (!generic_) {
    if (n != n_) throw CsfError(ErrorCode::InvalidSpec, "spec is fixed to " + std::to_string(n_) + " contestants");
    return *this;
  }
  ImpactSpec s = *this;
  s.generic_ = false;
  s.n_ = n;
  if (is_custom()) {
    s.custom_.assign(n, custom_.front());
  } else {
    s.a_q_.assign(n, a_q_.front());
    s.b_q_.assign(n, b_q_.front());
    s.finish_parametric();
  }
  return s;
}

ImpactSpec ImpactSpec::restricted(Mask m) const {
  if (generic_) {
    require_subcontest(m, kMaxContestants);
    return with_size(count(m));
  }
  require_subcontest(m, n_);
  ImpactSpec s = *this;
  s.n_ = count(m);
  if (is_custom()) {
    s.custom_.clear();
    for (std::size_t j : members(m)) s.custom_.push_back(custom_[j]);
  } else {
    s.a_q_.clear();
    s.b_q_.clear();
    for (std::size_t j : members(m)) {
      s.a_q_.push_back(a_q_[j]);
      s.b_q_.push_back(b_q_[j]);
    }
    s.finish_parametric();
  }
  return s;
}

bool ImpactSpec::supports(Backend backend) const {
  if (backend == Backend::Float64) return true;
  return !is_custom() && integer_r_.has_value();
}

double ImpactSpec::custom_value(std::size_t j, double x) const {
  const CustomImpact& c = custom_[slot(j)];
  if (x > c.domain_max) {
    throw CsfError(ErrorCode::DomainError, c.name + " is only defined up to x = " + format_shortest(c.domain_max));
  }
  double v = c.f(x);
  if (!std::isfinite(v) || v < 0.0) {
    throw CsfError(ErrorCode::DomainError, c.name + " returned a non-finite or negative value");
  }
  return v;
}

std::string ImpactSpec::summary() const {
  std::ostringstream os;
  os << to_string(family_) << "(";
  if (is_custom()) {
    os << "f=";
    for (std::size_t j = 0; j < custom_.size(); ++j) os << (j ? "," : "") << custom_[j].name;
  } else {
    switch (family_) {
      case Family::Linear: os << "b=" << join(b_); break;
      case Family::Tullock: os << "a=" << join(a_) << ", r=" << format_shortest(r_); break;
      case Family::SymmetricLuck: os << "b=" << format_shortest(b_.front()) << ", r=" << format_shortest(r_); break;
      case Family::Ratio: break;
      default: os << "a=" << join(a_) << ", b=" << join(b_) << ", r=" << format_shortest(r_); break;
    }
  }
  if (generic_) os << (family_ == Family::Ratio ? "" : ", ") << "n=any";
  os << ")";
  return os.str();
}

}  // namespace csf
