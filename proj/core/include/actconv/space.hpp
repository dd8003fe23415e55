#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace actconv {

/// A finite probability space: points 0..n-1 with weights summing to one.
/// Zero-weight points are allowed; they are null sets and every
/// distribution or norm ignores them.
class FiniteSpace {
 public:
  /// Takes already-normalized weights. Use make_space() for raw weights.
  explicit FiniteSpace(std::vector<double> weights);

  static FiniteSpace uniform(std::size_t n);

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  bool is_uniform() const { return uniform_; }
  bool in_support(std::size_t i) const { return weights_[i] > 0.0; }
  std::vector<std::size_t> support() const;

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.weights_ == b.weights_;
  }

 private:
  std::vector<double> weights_;
  bool uniform_ = false;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

/// Normalizes nonnegative weights to a probability space.
/// Throws std::invalid_argument on empty input, negative or non-finite
/// entries, or an all-zero vector.
SpacePtr make_space(std::span<const double> weights);
SpacePtr make_uniform_space(std::size_t n);

bool same_space(const SpacePtr& a, const SpacePtr& b);
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* context);

/// A real function on a finite space (an element of L^inf).
struct Vec {
  SpacePtr space;
  std::vector<double> values;

  Vec() = default;
  Vec(SpacePtr s, std::vector<double> v);

  static Vec constant(SpacePtr s, double c);
  static Vec indicator(SpacePtr s, std::span<const std::size_t> points);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// E(v) with respect to the space weights.
double expectation(const FiniteSpace& space, std::span<const double> v);
/// Weighted L^p norm; p = infinity gives the essential maximum over the support.
double lp_norm(const FiniteSpace& space, std::span<const double> v, double p);

/// Neumaier-compensated sum.
double stable_sum(std::span<const double> xs);

}  // namespace actconv
