#pragma once

#include <cstddef>
#include <vector>

namespace probative {

/// Non-negative table over the joint states of a set of variables.
///
/// Variables are identified by their index in the owning model's node list.
/// Values are stored row-major: the last variable in the scope varies fastest,
/// which is the same layout ConditionalTable uses for (parents..., node).
/// An empty scope holds a single scalar.
class Factor {
 public:
  Factor() : values_{1.0} {}
  Factor(std::vector<std::size_t> scope, std::vector<std::size_t> cards,
         std::vector<double> values);

  static Factor constant(double value);

  const std::vector<std::size_t>& scope() const { return scope_; }
  const std::vector<std::size_t>& cards() const { return cards_; }
  const std::vector<double>& values() const { return values_; }

  bool contains(std::size_t var) const;
  double total() const;

  /// Pointwise product; the result's scope is this scope followed by the
  /// variables only the other factor has.
  Factor product(const Factor& other) const;

  /// Marginalize one variable away. No-op when the variable is not in scope.
  Factor sum_out(std::size_t var) const;

  /// Fix one variable to a state and drop it from the scope.
  Factor reduce(std::size_t var, std::size_t state) const;

 private:
  std::size_t position(std::size_t var) const;

  std::vector<std::size_t> scope_;
  std::vector<std::size_t> cards_;
  std::vector<double> values_;
};

}  // namespace probative
