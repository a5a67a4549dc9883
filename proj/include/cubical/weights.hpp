#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cubical/bitvector.hpp"
#include "cubical/error.hpp"

namespace cubical {

using Length = double;

/// Positive per-hyperplane weights defining the weighted combinatorial metric.
class WeightFunction {
 public:
  WeightFunction() = default;

  explicit WeightFunction(std::vector<Length> weights) : weights_(std::move(weights)) {
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
        throw Error(ErrorCode::InvariantViolation, "weight of hyperplane " + std::to_string(i) + " is not a positive finite number",
                    {std::to_string(i)});
      }
    }
  }

  static WeightFunction unit(std::size_t n) { return WeightFunction(std::vector<Length>(n, 1.0)); }

  std::size_t size() const { return weights_.size(); }
  Length operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<Length>& values() const { return weights_; }

  bool isUnit() const {
    for (auto w : weights_) {
      if (w != 1.0) return false;
    }
    return true;
  }

  /// Total weight of a hyperplane set.
  template <std::size_t W>
  Length measure(const BitVector<W>& set) const {
    Length total = 0;
    set.forEach([&](std::size_t i) { total += weights_[i]; });
    return total;
  }

  WeightFunction scaled(Length factor) const {
    std::vector<Length> w = weights_;
    for (auto& x : w) x *= factor;
    return WeightFunction(std::move(w));
  }

  friend bool operator==(const WeightFunction&, const WeightFunction&) = default;

 private:
  std::vector<Length> weights_;
};

}  // namespace cubical
