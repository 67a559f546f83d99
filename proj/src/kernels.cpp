#include "csf/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <vector>

#include "csf/csf.hpp"
#include "csf/sampling.hpp"

namespace csf::kernels {

namespace {

template <class T>
std::vector<T> convert(const std::vector<double>& x) {
  std::vector<T> out;
  out.reserve(x.size());
  for (double v : x) out.push_back(from_double<T>(v));
  return out;
}

template <class T>
std::vector<T> probabilities(const ImpactSpec& spec, const std::vector<T>& x, Mask m) {
  return evaluate<T>(spec, m, std::span<const T>(x));
}

template <class T>
std::vector<T> probabilities(const ImpactSpec& spec, const std::vector<T>& x) {
  return probabilities(spec, x, full_mask(x.size()));
}

template <class T>
T sum_except(const std::vector<T>& p, std::size_t skip) {
  T s = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k != skip) s += p[k];
  }
  return s;
}

template <class T>
void set_equality(SampleResult<T>& r, T lhs, T rhs, double tol) {
  r.gap = relative_gap(lhs, rhs);
  bool violated;
  if constexpr (is_exact_v<T>) {
    violated = lhs != rhs;
  } else {
    violated = r.gap > tol;
  }
  r.kind = violated ? OutcomeKind::Violated : OutcomeKind::Holds;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
}

/// Predicate lhs <= rhs.
template <class T>
void set_at_most(SampleResult<T>& r, T lhs, T rhs, double tol) {
  r.gap = relative_excess(lhs, rhs);
  bool violated;
  if constexpr (is_exact_v<T>) {
    violated = lhs > rhs;
  } else {
    violated = r.gap > tol;
  }
  r.kind = violated ? OutcomeKind::Violated : OutcomeKind::Holds;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
}

template <class T>
std::vector<T> bumped(const std::vector<T>& x, const Sample& s) {
  std::vector<T> out = x;
  const T delta = from_double<T>(s.bump);
  if (s.multiplicative) {
    out[s.i] = x[s.i] * (T(1) + delta);
  } else {
    out[s.i] = x[s.i] + delta;
  }
  return out;
}

template <class T>
T hre_deviation(const ImpactSpec& spec, std::size_t i, std::size_t j, const std::vector<T>& x) {
  if constexpr (is_exact_v<T>) {
    return deviation<T>(spec, i, j, std::span<const T>(x));
  } else {
    (void)j;
    return effort_share<T>(spec, i, std::span<const T>(x));
  }
}

/// mu_i / (1 - sum_{j != i} mu_j). In floating point the denominator is taken
/// as mu_i + mu_null, equal by PA and free of cancellation.
template <class T>
T draw_ratio(const Decomposition<T>& d, std::size_t i) {
  if constexpr (is_exact_v<T>) {
    return d.mu[i] / (T(1) - sum_except(d.mu, i));
  } else {
    return d.mu[i] / (d.mu[i] + d.mu_null);
  }
}

template <class T>
void evaluate_into(SampleResult<T>& r, const ImpactSpec& spec, Predicate p, const Sample& s, double tol) {
  const std::vector<T> x = convert<T>(s.x);
  const std::size_t n = x.size();
  const Mask all = full_mask(n);

  switch (p) {
    case Predicate::SM: {
      const auto before = probabilities(spec, x);
      const auto after = probabilities(spec, bumped(x, s));
      const T rest_before = sum_except(before, s.i);
      const T rest_after = sum_except(after, s.i);
      if (!(rest_before > 0)) {
        r.kind = OutcomeKind::Skipped;
        r.skip_reason = "p_i = 1, SM does not constrain the sample";
        return;
      }
      r.lhs = before[s.i];
      r.rhs = after[s.i];
      r.gap = relative_excess(r.lhs, r.rhs);
      bool increased = r.lhs < r.rhs;
      if constexpr (!is_exact_v<T>) increased = increased || rest_after < rest_before;
      r.kind = increased ? OutcomeKind::Holds : OutcomeKind::Violated;
      return;
    }
    case Predicate::OpponentDecreasing: {
      const T before = probabilities(spec, x)[s.j];
      const T after = probabilities(spec, bumped(x, s))[s.j];
      if constexpr (is_exact_v<T>) {
        const bool ok = before > 0 ? after < before : !(after > before);
        r.gap = relative_excess(after, before);
        r.kind = ok ? OutcomeKind::Holds : OutcomeKind::Violated;
        r.lhs = before;
        r.rhs = after;
      } else {
        set_at_most(r, after, before, tol);
        std::swap(r.lhs, r.rhs);
      }
      return;
    }
    case Predicate::LCA: {
      const auto full = probabilities(spec, x);
      const auto sub = probabilities(spec, x, s.subset);
      T share = 0;
      for (std::size_t j : members(s.subset)) share += full[j];
      set_equality(r, full[s.i], T(sub[s.i] * share), tol);
      return;
    }
    case Predicate::HOM: {
      const T lambda = from_double<T>(s.lambda);
      std::vector<T> scaled = x;
      for (T& v : scaled) v *= lambda;
      set_equality(r, probabilities(spec, x)[s.i], probabilities(spec, scaled)[s.i], tol);
      return;
    }
    case Predicate::RH: {
      const T lambda = from_double<T>(s.lambda);
      std::vector<T> scaled = x;
      for (T& v : scaled) v *= lambda;
      const auto p0 = probabilities(spec, x);
      const auto p1 = probabilities(spec, scaled);
      set_equality(r, T(p0[s.i] / p0[s.j]), T(p1[s.i] / p1[s.j]), tol);
      return;
    }
    case Predicate::HRE: {
      const T lambda = from_double<T>(s.lambda);
      std::vector<T> scaled = x;
      for (T& v : scaled) v *= lambda;
      const T lhs = hre_deviation(spec, s.i, s.j, x) / hre_deviation(spec, s.j, s.i, x);
      const T rhs = hre_deviation(spec, s.i, s.j, scaled) / hre_deviation(spec, s.j, s.i, scaled);
      set_equality(r, lhs, rhs, tol);
      return;
    }
    case Predicate::ANY: {
      std::vector<T> swapped = x;
      std::swap(swapped[s.i], swapped[s.j]);
      set_equality(r, probabilities(spec, x)[s.i], probabilities(spec, swapped)[s.j], tol);
      return;
    }
    case Predicate::NAR: {
      const T total = x[s.i] + x[s.j];
      std::vector<T> moved = x;
      moved[s.i] = from_double<T>(s.share) * total;
      moved[s.j] = total - moved[s.i];
      set_equality(r, probabilities(spec, x)[s.k], probabilities(spec, moved)[s.k], tol);
      return;
    }
    case Predicate::DC: {
      if (x[s.i] != 0) {
        r.kind = OutcomeKind::Skipped;
        r.skip_reason = "contestant is not a dummy";
        return;
      }
      set_equality(r, probabilities(spec, x)[s.j], probabilities(spec, x, all & ~bit(s.i))[s.j], tol);
      return;
    }
    case Predicate::CRI: {
      std::vector<T> inactive = x;
      inactive[s.j] = 0;
      const T lhs = probabilities(spec, inactive)[s.i];
      const auto prob = probabilities(spec, x);
      T rest;
      if constexpr (is_exact_v<T>) {
        rest = T(1) - prob[s.j];
      } else {
        rest = sum_except(prob, s.j);
      }
      if (!(rest > 0)) {
        r.kind = OutcomeKind::Skipped;
        r.skip_reason = "p_j = 1, CRI right-hand side undefined";
        return;
      }
      set_equality(r, lhs, T(prob[s.i] / rest), tol);
      return;
    }
    case Predicate::SP:
    case Predicate::CP: {
      const auto prob = probabilities(spec, x);
      std::vector<T> merged = x;
      merged[s.i] = x[s.i] + x[s.j];
      merged[s.j] = 0;
      const T together = probabilities(spec, merged, all & ~bit(s.j))[s.i];
      const T apart = prob[s.i] + prob[s.j];
      if (p == Predicate::SP) {
        set_at_most(r, apart, together, tol);
      } else {
        set_at_most(r, together, apart, tol);
        std::swap(r.lhs, r.rhs);
      }
      return;
    }
    case Predicate::Superadditive:
    case Predicate::Subadditive: {
      const T apart = spec.impact<T>(s.i, x[s.i]) + spec.impact<T>(s.j, x[s.j]);
      const T together = spec.impact<T>(s.i, T(x[s.i] + x[s.j]));
      if (p == Predicate::Superadditive) {
        set_at_most(r, apart, together, tol);
      } else {
        set_at_most(r, together, apart, tol);
        std::swap(r.lhs, r.rhs);
      }
      return;
    }
    case Predicate::PA: {
      const auto d = decompose_two_level<T>(spec, std::span<const T>(x));
      T total = d.mu_null;
      for (const T& m : d.mu) total += m;
      set_equality(r, total, T(1), tol);
      if (!(d.mu_null > 0)) r.kind = OutcomeKind::Violated;
      return;
    }
    case Predicate::DI: {
      const std::vector<T> alt = convert<T>(s.alt);
      const auto d0 = decompose_two_level<T>(spec, std::span<const T>(x));
      const auto d1 = decompose_two_level<T>(spec, std::span<const T>(alt));
      set_equality(r, draw_ratio(d0, s.i), draw_ratio(d1, s.i), tol);
      return;
    }
  }
}

}  // namespace

template <class T>
SampleResult<T> evaluate_predicate(const ImpactSpec& spec, Predicate p, const Sample& s, double tolerance) {
  SampleResult<T> r;
  try {
    evaluate_into(r, spec, p, s, tolerance);
  } catch (const std::exception& e) {
    r = SampleResult<T>{};
    r.kind = OutcomeKind::Skipped;
    r.skip_reason = e.what();
  }
  return r;
}

template SampleResult<double> evaluate_predicate<double>(const ImpactSpec&, Predicate, const Sample&, double);
template SampleResult<Rational> evaluate_predicate<Rational>(const ImpactSpec&, Predicate, const Sample&, double);

Sample StreamInput::sample_at(std::size_t index) const {
  if (index < grid.size()) return grid[index];
  return sampling::random_sample(spec, predicate, plan, lambdas, index);
}

namespace {

OutcomeKind classify(const StreamInput& in, std::size_t index) {
  const Sample s = in.sample_at(index);
  if (s.x.empty()) return OutcomeKind::Skipped;
  if (in.backend == Backend::ExactRational) {
    return evaluate_predicate<Rational>(in.spec, in.predicate, s, in.tolerance).kind;
  }
  return evaluate_predicate<double>(in.spec, in.predicate, s, in.tolerance).kind;
}

/// Returns true when the scan is decided.
bool account(StreamScan& scan, OutcomeKind kind, std::size_t index) {
  ++scan.samples_run;
  if (kind == OutcomeKind::Skipped) {
    ++scan.skipped;
    return false;
  }
  ++scan.evaluated;
  if (kind == OutcomeKind::Violated) {
    scan.first_violation = index;
    return true;
  }
  return false;
}

}  // namespace

StreamScan scan_serial(const StreamInput& in) {
  StreamScan scan;
  const std::size_t total = in.total();
  for (std::size_t k = 0; k < total; ++k) {
    if (account(scan, classify(in, k), k)) break;
  }
  return scan;
}

StreamScan scan_parallel(const StreamInput& in, std::size_t chunk) {
  StreamScan scan;
  const std::size_t total = in.total();
  chunk = std::max<std::size_t>(chunk, 1);
  std::vector<OutcomeKind> kinds(chunk);
  for (std::size_t start = 0; start < total; start += chunk) {
    const long len = static_cast<long>(std::min(chunk, total - start));
#pragma omp parallel for schedule(dynamic, 8)
    for (long t = 0; t < len; ++t) {
      kinds[static_cast<std::size_t>(t)] = classify(in, start + static_cast<std::size_t>(t));
    }
    for (long t = 0; t < len; ++t) {
      if (account(scan, kinds[static_cast<std::size_t>(t)], start + static_cast<std::size_t>(t))) return scan;
    }
  }
  return scan;
}

}  // namespace csf::kernels
