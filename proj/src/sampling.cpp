#include "csf/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace csf::sampling {

namespace {

constexpr std::size_t kMaxGridContestants = 8;
constexpr std::array<double, 3> kBumps = {1e-3, 1.0, 10.0};

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool any_positive_except(const std::vector<double>& x, std::size_t skip) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k != skip && x[k] > 0.0) return true;
  }
  return false;
}

bool any_positive(const std::vector<double>& x) {
  return std::any_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
}

double next_level(double v) {
  if (v == 0.0) return 1.0;
  if (v == 1.0) return 2.0;
  if (v == 2.0) return 4.0;
  return 0.0;
}

}  // namespace

std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (stream * 0x632be59bd9b4e019ULL));
  h = splitmix64(h ^ index);
  return std::mt19937_64(h);
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = uniform01(rng);
  return std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)));
}

std::vector<std::vector<double>> grid_profiles(std::size_t n) {
  std::vector<std::vector<double>> out;
  if (n == 0 || n > kMaxGridContestants) return out;
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= kGridLevels.size();
  out.reserve(total - 1);
  for (std::size_t code = 1; code < total; ++code) {
    std::vector<double> x(n);
    std::size_t c = code;
    for (std::size_t k = n; k-- > 0;) {
      x[k] = kGridLevels[c % kGridLevels.size()];
      c /= kGridLevels.size();
    }
    out.push_back(std::move(x));
  }
  auto distinct = [](const std::vector<double>& x) { return std::set<double>(x.begin(), x.end()).size(); };
  std::stable_sort(out.begin(), out.end(), [&](const auto& l, const auto& r) {
    const auto dl = distinct(l);
    const auto dr = distinct(r);
    if (dl != dr) return dl > dr;
    const double ml = *std::max_element(l.begin(), l.end());
    const double mr = *std::max_element(r.begin(), r.end());
    if (ml != mr) return ml < mr;
    return l > r;
  });
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> size_range(const ImpactSpec& spec, Predicate p,
                                                              const SamplingPlan& plan) {
  const std::size_t need = min_contestants(p);
  if (!spec.size_generic()) {
    if (spec.size() < need) return std::nullopt;
    return std::make_pair(spec.size(), spec.size());
  }
  const std::size_t lo = std::max(plan.n_min, need);
  const std::size_t hi = std::min(plan.n_max, kMaxContestants);
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

std::vector<Sample> moves_at(Predicate p, const std::vector<double>& x, std::span<const double> lambdas) {
  std::vector<Sample> out;
  const std::size_t n = x.size();
  if (n < min_contestants(p) || !any_positive(x)) return out;
  auto base = [&]() {
    Sample s;
    s.x = x;
    s.from_grid = true;
    return s;
  };
  switch (p) {
    case Predicate::SM:
      for (std::size_t i = 0; i < n; ++i) {
        if (!any_positive_except(x, i)) continue;
        Sample s = base();
        s.i = i;
        s.bump = 1.0;
        out.push_back(s);
      }
      break;
    case Predicate::OpponentDecreasing:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          Sample s = base();
          s.i = i;
          s.j = j;
          s.bump = 1.0;
          out.push_back(s);
        }
      }
      break;
    case Predicate::LCA:
      for (std::size_t i = 0; i < n; ++i) {
        for (Mask m = 1; m <= full_mask(n); ++m) {
          if (!contains(m, i) || count(m) < 2) continue;
          Sample s = base();
          s.i = i;
          s.subset = m;
          out.push_back(s);
        }
      }
      break;
    case Predicate::HOM:
      for (std::size_t i = 0; i < n; ++i) {
        for (double l : lambdas) {
          Sample s = base();
          s.i = i;
          s.lambda = l;
          out.push_back(s);
        }
      }
      break;
    case Predicate::RH:
    case Predicate::HRE:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (!(x[i] > 0.0 && x[j] > 0.0)) continue;
          for (double l : lambdas) {
            Sample s = base();
            s.i = i;
            s.j = j;
            s.lambda = l;
            out.push_back(s);
          }
        }
      }
      break;
    case Predicate::ANY:
    case Predicate::SP:
    case Predicate::CP:
    case Predicate::Superadditive:
    case Predicate::Subadditive:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          Sample s = base();
          s.i = i;
          s.j = j;
          out.push_back(s);
        }
      }
      break;
    case Predicate::NAR:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          for (std::size_t k = 0; k < n; ++k) {
            if (k == i || k == j) continue;
            for (double share : {1.0, 0.0, 0.5}) {
              Sample s = base();
              s.i = i;
              s.j = j;
              s.k = k;
              s.share = share;
              out.push_back(s);
            }
          }
        }
      }
      break;
    case Predicate::DC:
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] != 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          Sample s = base();
          s.i = i;
          s.j = j;
          out.push_back(s);
        }
      }
      break;
    case Predicate::CRI:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          Sample s = base();
          s.i = i;
          s.j = j;
          out.push_back(s);
        }
      }
      break;
    case Predicate::PA:
      out.push_back(base());
      break;
    case Predicate::DI:
      for (std::size_t i = 0; i < n; ++i) {
        Sample s = base();
        s.i = i;
        s.alt = x;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != i) s.alt[k] = next_level(x[k]);
        }
        if (!any_positive(s.alt)) continue;
        out.push_back(s);
      }
      break;
  }
  return out;
}

std::vector<Sample> grid_stream(const ImpactSpec& spec, Predicate p, const SamplingPlan& plan) {
  std::vector<Sample> out;
  auto range = size_range(spec, p, plan);
  if (!range || plan.grid_samples == 0) return out;
  for (std::size_t n = range->first; n <= range->second && out.size() < plan.grid_samples; ++n) {
    for (const auto& x : grid_profiles(n)) {
      for (Sample& s : moves_at(p, x, kGridLambdas)) {
        s.index = out.size();
        out.push_back(std::move(s));
        if (out.size() >= plan.grid_samples) return out;
      }
    }
  }
  return out;
}

namespace {

double draw_effort(std::mt19937_64& rng, const SamplingPlan& plan) {
  if (uniform01(rng) < plan.zero_probability) return 0.0;
  return log_uniform(rng, plan.effort_min, plan.effort_max);
}

double draw_positive(std::mt19937_64& rng, const SamplingPlan& plan) {
  return log_uniform(rng, plan.effort_min, plan.effort_max);
}

std::vector<double> draw_profile(std::mt19937_64& rng, const SamplingPlan& plan, std::size_t n) {
  std::vector<double> x(n);
  do {
    for (double& v : x) v = draw_effort(rng, plan);
  } while (!any_positive(x));
  return x;
}

std::size_t draw_other(std::mt19937_64& rng, std::size_t n, std::size_t avoid) {
  std::size_t j = uniform_index(rng, n - 1);
  return j >= avoid ? j + 1 : j;
}

std::size_t draw_other2(std::mt19937_64& rng, std::size_t n, std::size_t a, std::size_t b) {
  std::size_t k;
  do {
    k = uniform_index(rng, n);
  } while (k == a || k == b);
  return k;
}

void ensure_other_positive(std::mt19937_64& rng, const SamplingPlan& plan, std::vector<double>& x, std::size_t i) {
  if (!any_positive_except(x, i)) x[draw_other(rng, x.size(), i)] = draw_positive(rng, plan);
}

}  // namespace

Sample random_sample(const ImpactSpec& spec, Predicate p, const SamplingPlan& plan,
                     std::span<const double> lambdas, std::size_t index) {
  // The additivity probes replay the SP/CP streams so their verdicts are
  // compared on identical samples.
  Predicate stream = p;
  if (p == Predicate::Superadditive) stream = Predicate::SP;
  if (p == Predicate::Subadditive) stream = Predicate::CP;
  auto rng = stream_engine(plan.seed, static_cast<std::uint64_t>(stream) + 1, index);
  Sample s;
  s.index = index;
  auto range = size_range(spec, p, plan);
  if (!range) return s;
  const std::size_t n = range->first + uniform_index(rng, range->second - range->first + 1);
  s.x = draw_profile(rng, plan, n);
  auto lambda = [&]() { return lambdas[uniform_index(rng, lambdas.size())]; };
  auto bump = [&]() {
    s.bump = kBumps[uniform_index(rng, kBumps.size())];
    s.multiplicative = (rng() & 1u) && s.x[s.i] > 0.0;
  };

  switch (p) {
    case Predicate::SM:
      s.i = uniform_index(rng, n);
      ensure_other_positive(rng, plan, s.x, s.i);
      bump();
      break;
    case Predicate::OpponentDecreasing:
      s.i = uniform_index(rng, n);
      s.j = draw_other(rng, n, s.i);
      bump();
      break;
    case Predicate::LCA: {
      Mask m = 0;
      do {
        m = rng() & full_mask(n);
      } while (count(m) < 2);
      s.subset = m;
      auto in = members(m);
      s.i = in[uniform_index(rng, in.size())];
      break;
    }
    case Predicate::HOM:
      s.i = uniform_index(rng, n);
      s.lambda = lambda();
      break;
    case Predicate::RH:
    case Predicate::HRE:
      s.i = uniform_index(rng, n);
      s.j = draw_other(rng, n, s.i);
      // x_i, x_j > 0 is a precondition: redraw those coordinates.
      if (s.x[s.i] == 0.0) s.x[s.i] = draw_positive(rng, plan);
      if (s.x[s.j] == 0.0) s.x[s.j] = draw_positive(rng, plan);
      s.lambda = lambda();
      break;
    case Predicate::ANY:
    case Predicate::SP:
    case Predicate::CP:
    case Predicate::Superadditive:
    case Predicate::Subadditive:
    case Predicate::CRI:
      s.i = uniform_index(rng, n);
      s.j = draw_other(rng, n, s.i);
      break;
    case Predicate::NAR: {
      s.i = uniform_index(rng, n);
      s.j = draw_other(rng, n, s.i);
      s.k = draw_other2(rng, n, s.i, s.j);
      const std::size_t mode = uniform_index(rng, 3);
      s.share = mode == 0 ? 0.0 : mode == 1 ? 1.0 : uniform01(rng);
      break;
    }
    case Predicate::DC:
      s.i = uniform_index(rng, n);
      s.j = draw_other(rng, n, s.i);
      s.x[s.i] = 0.0;
      ensure_other_positive(rng, plan, s.x, s.i);
      break;
    case Predicate::PA:
      break;
    case Predicate::DI:
      s.i = uniform_index(rng, n);
      s.alt = s.x;
      do {
        for (std::size_t k = 0; k < n; ++k) {
          if (k != s.i) s.alt[k] = draw_effort(rng, plan);
        }
      } while (!any_positive(s.alt));
      break;
  }
  return s;
}

}  // namespace csf::sampling
