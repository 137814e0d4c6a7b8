#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "signal.hpp"

namespace skewflow {

/// Family of k projector maps x -> P_k(x), k in {1..count}. Gallery families
/// are constant coordinate projectors; DSL families may depend on the signal.
class ProjectorFamily {
 public:
  using Rule = std::function<Matrix(const Signal&)>;

  ProjectorFamily() = default;
  ProjectorFamily(int dim, std::vector<Rule> rules, std::string label)
      : dim_(dim), rules_(std::move(rules)), label_(std::move(label)) {}

  /// Constant diagonal family: assign[i] in {1..count} sends coordinate i to
  /// projector assign[i]. Enables the exact log-space split path.
  static ProjectorFamily coordinate(int dim, std::vector<int> assign, std::string label);

  int count() const { return static_cast<int>(rules_.size()); }
  int dim() const { return dim_; }
  const std::string& label() const { return label_; }

  Matrix projector(int k, const Signal& x) const;  // k is 1-based

  /// Coordinate assignment when the family is a constant diagonal partition.
  const std::optional<std::vector<int>>& assignment() const { return assign_; }

 private:
  int dim_ = 0;
  std::vector<Rule> rules_;
  std::string label_;
  std::optional<std::vector<int>> assign_;
};

inline ProjectorFamily ProjectorFamily::coordinate(int dim, std::vector<int> assign,
                                                   std::string label) {
  int count = 0;
  for (int a : assign) count = std::max(count, a);
  std::vector<Rule> rules;
  for (int k = 1; k <= count; ++k) {
    Vec d(static_cast<std::size_t>(dim), 0.0);
    for (int i = 0; i < dim; ++i)
      if (assign[static_cast<std::size_t>(i)] == k) d[static_cast<std::size_t>(i)] = 1.0;
    rules.push_back([d](const Signal&) { return Matrix::diagonal(d); });
  }
  ProjectorFamily fam(dim, std::move(rules), std::move(label));
  fam.assign_ = std::move(assign);
  return fam;
}

inline Matrix ProjectorFamily::projector(int k, const Signal& x) const {
  if (k < 1 || k > count()) throw std::invalid_argument("projector index out of range");
  return rules_[static_cast<std::size_t>(k - 1)](x);
}

}  // namespace skewflow
