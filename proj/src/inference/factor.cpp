#include "probative/factor.hpp"

#include <numeric>

#include "probative/error.hpp"

namespace probative {

Factor::Factor(std::vector<std::size_t> scope, std::vector<std::size_t> cards,
               std::vector<double> values)
    : scope_(std::move(scope)), cards_(std::move(cards)), values_(std::move(values)) {
  if (scope_.size() != cards_.size()) {
    throw Error(ErrorCode::InvalidArgument, "factor scope and cardinalities differ in length");
  }
  std::size_t size = 1;
  for (auto c : cards_) size *= c;
  if (values_.size() != size) {
    throw Error(ErrorCode::InvalidArgument, "factor value count does not match its scope");
  }
}

Factor Factor::constant(double value) {
  Factor f;
  f.values_[0] = value;
  return f;
}

bool Factor::contains(std::size_t var) const { return position(var) != scope_.size(); }

std::size_t Factor::position(std::size_t var) const {
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    if (scope_[i] == var) return i;
  }
  return scope_.size();
}

double Factor::total() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

Factor Factor::product(const Factor& other) const {
  std::vector<std::size_t> scope = scope_;
  std::vector<std::size_t> cards = cards_;
  for (std::size_t i = 0; i < other.scope_.size(); ++i) {
    if (!contains(other.scope_[i])) {
      scope.push_back(other.scope_[i]);
      cards.push_back(other.cards_[i]);
    }
  }

  // Per output variable, how far each input's flat index moves when that
  // variable steps by one (zero when the input does not mention it).
  auto strides_in = [&](const Factor& f) {
    std::vector<std::size_t> own(f.scope_.size());
    std::size_t s = 1;
    for (std::size_t i = f.scope_.size(); i-- > 0;) {
      own[i] = s;
      s *= f.cards_[i];
    }
    std::vector<std::size_t> out(scope.size(), 0);
    for (std::size_t l = 0; l < scope.size(); ++l) {
      std::size_t p = f.position(scope[l]);
      if (p != f.scope_.size()) out[l] = own[p];
    }
    return out;
  };
  const auto stride_a = strides_in(*this);
  const auto stride_b = strides_in(other);

  std::size_t size = 1;
  for (auto c : cards) size *= c;
  std::vector<double> values(size);
  std::vector<std::size_t> assignment(scope.size(), 0);
  std::size_t j = 0, k = 0;
  for (std::size_t i = 0; i < size; ++i) {
    values[i] = values_[j] * other.values_[k];
    for (std::size_t l = scope.size(); l-- > 0;) {
      if (++assignment[l] == cards[l]) {
        assignment[l] = 0;
        j -= (cards[l] - 1) * stride_a[l];
        k -= (cards[l] - 1) * stride_b[l];
      } else {
        j += stride_a[l];
        k += stride_b[l];
        break;
      }
    }
  }
  return Factor(std::move(scope), std::move(cards), std::move(values));
}

Factor Factor::sum_out(std::size_t var) const {
  const std::size_t p = position(var);
  if (p == scope_.size()) return *this;
  std::size_t inner = 1;
  for (std::size_t i = p + 1; i < cards_.size(); ++i) inner *= cards_[i];
  const std::size_t card = cards_[p];
  const std::size_t outer = values_.size() / (inner * card);

  std::vector<double> values(outer * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t s = 0; s < card; ++s) {
      const double* src = &values_[(o * card + s) * inner];
      double* dst = &values[o * inner];
      for (std::size_t in = 0; in < inner; ++in) dst[in] += src[in];
    }
  }
  auto scope = scope_;
  auto cards = cards_;
  scope.erase(scope.begin() + static_cast<std::ptrdiff_t>(p));
  cards.erase(cards.begin() + static_cast<std::ptrdiff_t>(p));
  return Factor(std::move(scope), std::move(cards), std::move(values));
}

Factor Factor::reduce(std::size_t var, std::size_t state) const {
  const std::size_t p = position(var);
  if (p == scope_.size()) return *this;
  if (state >= cards_[p]) {
    throw Error(ErrorCode::InvalidArgument, "reduce: state index out of range");
  }
  std::size_t inner = 1;
  for (std::size_t i = p + 1; i < cards_.size(); ++i) inner *= cards_[i];
  const std::size_t card = cards_[p];
  const std::size_t outer = values_.size() / (inner * card);

  std::vector<double> values(outer * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < inner; ++in) {
      values[o * inner + in] = values_[(o * card + state) * inner + in];
    }
  }
  auto scope = scope_;
  auto cards = cards_;
  scope.erase(scope.begin() + static_cast<std::ptrdiff_t>(p));
  cards.erase(cards.begin() + static_cast<std::ptrdiff_t>(p));
  return Factor(std::move(scope), std::move(cards), std::move(values));
}

}  // namespace probative
