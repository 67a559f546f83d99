#include "csf/contest.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "csf/error.hpp"

namespace csf {

std::vector<std::size_t> members(Mask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m != 0; ++i, m >>= 1) {
    if (m & 1u) out.push_back(i);
  }
  return out;
}

void require_subcontest(Mask m, std::size_t n) {
  if (n > kMaxContestants) {
    throw CsfError(ErrorCode::InvalidSubset, "at most 64 contestants are supported");
  }
  if ((m & ~full_mask(n)) != 0) {
    throw CsfError(ErrorCode::InvalidSubset, "subset names contestants outside 0.." + std::to_string(n - 1));
  }
  if (count(m) < 2) {
    throw CsfError(ErrorCode::InvalidSubset, "a sub-contest needs at least two contestants");
  }
}

ContestantSet::ContestantSet(std::size_t n, std::vector<std::string> labels)
    : n_(n), labels_(std::move(labels)) {
  if (n_ < 2 || n_ > kMaxContestants) {
    throw CsfError(ErrorCode::InvalidSpec, "contestant count must be in [2, 64]");
  }
  if (!labels_.empty()) {
    if (labels_.size() != n_) {
      throw CsfError(ErrorCode::InvalidSpec, "labels must have one entry per contestant");
    }
    std::set<std::string> unique(labels_.begin(), labels_.end());
    if (unique.size() != labels_.size()) {
      throw CsfError(ErrorCode::InvalidSpec, "labels must be unique");
    }
  }
}

std::string ContestantSet::label(std::size_t i) const {
  return labels_.empty() ? std::to_string(i + 1) : labels_.at(i);
}

EffortProfile::EffortProfile(std::vector<double> x) : x_(std::move(x)) {
  if (x_.empty()) throw CsfError(ErrorCode::InvalidProfile, "empty effort profile");
  if (x_.size() > kMaxContestants) throw CsfError(ErrorCode::InvalidProfile, "more than 64 efforts");
  bool active = false;
  for (double v : x_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw CsfError(ErrorCode::InvalidProfile, "efforts must be finite and non-negative");
    }
    active = active || v > 0.0;
  }
  if (!active) throw CsfError(ErrorCode::InvalidProfile, "at least one effort must be positive");
}

std::vector<double> EffortProfile::project(Mask m) const {
  return csf::project(values(), m);
}

EffortProfile parse_profile(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw CsfError(ErrorCode::InvalidProfile, "cannot parse effort '" + item + "'");
    }
    for (std::size_t k = used; k < item.size(); ++k) {
      if (!std::isspace(static_cast<unsigned char>(item[k]))) {
        throw CsfError(ErrorCode::InvalidProfile, "cannot parse effort '" + item + "'");
      }
    }
    out.push_back(v);
  }
  return EffortProfile(std::move(out));
}

}  // namespace csf
