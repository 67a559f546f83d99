#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace csf {

/// Contestant subsets are bitmasks over indices 0..n-1, so n is capped at 64.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxContestants = 64;

constexpr Mask full_mask(std::size_t n) {
  return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
}
constexpr bool contains(Mask m, std::size_t i) { return (m >> i) & 1u; }
constexpr Mask bit(std::size_t i) { return Mask{1} << i; }
constexpr std::size_t count(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

/// Indices of the members of m in increasing order.
std::vector<std::size_t> members(Mask m);

/// Throws InvalidSubset unless m is a subset of {0..n-1} with at least two members.
void require_subcontest(Mask m, std::size_t n);

class ContestantSet {
 public:
  explicit ContestantSet(std::size_t n, std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  Mask all() const { return full_mask(n_); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(std::size_t i) const;

 private:
  std::size_t n_;
  std::vector<std::string> labels_;
};

/// Non-negative efforts with at least one active contestant.
class EffortProfile {
 public:
  explicit EffortProfile(std::vector<double> x);

  std::size_t size() const { return x_.size(); }
  double operator[](std::size_t i) const { return x_[i]; }
  std::span<const double> values() const { return x_; }

  /// x^M, in increasing index order.
  std::vector<double> project(Mask m) const;

 private:
  std::vector<double> x_;
};

/// Parses "2,1,0" (whitespace tolerated). Throws InvalidProfile.
EffortProfile parse_profile(const std::string& text);

template <class T>
std::vector<T> project(std::span<const T> x, Mask m) {
  std::vector<T> out;
  out.reserve(count(m));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (contains(m, i)) out.push_back(x[i]);
  }
  return out;
}

}  // namespace csf
