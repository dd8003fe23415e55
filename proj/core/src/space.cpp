#include "actconv/space.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "actconv/error.hpp"

namespace actconv {

double stable_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

FiniteSpace::FiniteSpace(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("FiniteSpace: size must be at least 1");
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("FiniteSpace: weights must be finite and nonnegative");
    }
  }
  const double total = stable_sum(weights_);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("FiniteSpace: weights must sum to 1 (got " +
                                std::to_string(total) + ")");
  }
  uniform_ = true;
  for (double w : weights_) {
    if (w != weights_.front()) {
      uniform_ = false;
      break;
    }
  }
}

FiniteSpace FiniteSpace::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("FiniteSpace: size must be at least 1");
  return FiniteSpace(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

std::vector<std::size_t> FiniteSpace::support() const {
  std::vector<std::size_t> out;
  out.reserve(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] > 0.0) out.push_back(i);
  }
  return out;
}

SpacePtr make_space(std::span<const double> weights) {
  if (weights.empty()) throw std::invalid_argument("make_space: empty weight vector");
  for (double w : weights) {
    if (!std::isfinite(w)) throw std::invalid_argument("make_space: non-finite weight");
    if (w < 0.0) throw std::invalid_argument("make_space: negative weight");
  }
  const double total = stable_sum(weights);
  if (!(total > 0.0)) throw std::invalid_argument("make_space: all weights are zero");
  std::vector<double> normalized(weights.begin(), weights.end());
  for (double& w : normalized) w /= total;
  // Push the rounding residue onto the largest weight so the sum check is tight.
  std::size_t largest = 0;
  for (std::size_t i = 1; i < normalized.size(); ++i) {
    if (normalized[i] > normalized[largest]) largest = i;
  }
  const double residue = 1.0 - stable_sum(normalized);
  if (std::abs(residue) > 1e-15) normalized[largest] += residue;
  return std::make_shared<const FiniteSpace>(std::move(normalized));
}

SpacePtr make_uniform_space(std::size_t n) {
  return std::make_shared<const FiniteSpace>(FiniteSpace::uniform(n));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* context) {
  if (!same_space(a, b)) throw SpaceMismatch(std::string(context) + ": space mismatch");
}

Vec::Vec(SpacePtr s, std::vector<double> v) : space(std::move(s)), values(std::move(v)) {
  if (!space) throw std::invalid_argument("Vec: null space");
  if (values.size() != space->size()) {
    throw SpaceMismatch("Vec: length " + std::to_string(values.size()) +
                        " does not match space size " + std::to_string(space->size()));
  }
}

Vec Vec::constant(SpacePtr s, double c) {
  const auto n = s->size();
  return Vec(std::move(s), std::vector<double>(n, c));
}

Vec Vec::indicator(SpacePtr s, std::span<const std::size_t> points) {
  std::vector<double> v(s->size(), 0.0);
  for (auto p : points) {
    if (p >= v.size()) throw std::out_of_range("Vec::indicator: point out of range");
    v[p] = 1.0;
  }
  return Vec(std::move(s), std::move(v));
}

double expectation(const FiniteSpace& space, std::span<const double> v) {
  if (v.size() != space.size()) throw SpaceMismatch("expectation: length mismatch");
  std::vector<double> terms(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) terms[i] = v[i] * space.weight(i);
  return stable_sum(terms);
}

double lp_norm(const FiniteSpace& space, std::span<const double> v, double p) {
  if (v.size() != space.size()) throw SpaceMismatch("lp_norm: length mismatch");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be in [1, inf]");
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (space.in_support(i)) m = std::max(m, std::abs(v[i]));
    }
    return m;
  }
  std::vector<double> terms(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    terms[i] = space.weight(i) * (p == 1.0 ? std::abs(v[i]) : std::pow(std::abs(v[i]), p));
  }
  const double s = stable_sum(terms);
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

}  // namespace actconv
