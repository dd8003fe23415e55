#include "actconv/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "actconv/error.hpp"

namespace actconv {

std::string to_string(PointNorm norm) {
  return norm == PointNorm::Euclidean ? "euclidean" : "chebyshev";
}

PointNorm point_norm_from_string(const std::string& s) {
  if (s == "euclidean") return PointNorm::Euclidean;
  if (s == "chebyshev") return PointNorm::Chebyshev;
  throw std::invalid_argument("unknown point norm: " + s);
}

double point_distance(std::span<const double> a, std::span<const double> b, PointNorm norm) {
  double acc = 0.0;
  if (norm == PointNorm::Chebyshev) {
    for (std::size_t i = 0; i < a.size(); ++i) acc = std::max(acc, std::abs(a[i] - b[i]));
    return acc;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

EmpiricalMeasure::EmpiricalMeasure(std::size_t dim, std::vector<std::vector<double>> points,
                                   std::vector<double> masses, PointNorm norm)
    : dim_(dim), norm_(norm) {
  if (dim == 0) throw std::invalid_argument("EmpiricalMeasure: dim must be positive");
  if (points.size() != masses.size()) {
    throw std::invalid_argument("EmpiricalMeasure: points and masses differ in length");
  }
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) throw std::invalid_argument("EmpiricalMeasure: point of wrong dimension");
    if (!(masses[i] >= 0.0) || !std::isfinite(masses[i])) {
      throw std::invalid_argument("EmpiricalMeasure: masses must be finite and nonnegative");
    }
    for (double c : points[i]) {
      if (!std::isfinite(c)) throw std::invalid_argument("EmpiricalMeasure: non-finite coordinate");
    }
    if (masses[i] > 0.0) order.push_back(i);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  std::vector<double> merged;
  for (std::size_t k = 0; k < order.size();) {
    std::size_t e = k;
    merged.clear();
    while (e < order.size() && points[order[e]] == points[order[k]]) merged.push_back(masses[order[e++]]);
    coords_.insert(coords_.end(), points[order[k]].begin(), points[order[k]].end());
    masses_.push_back(stable_sum(merged));
    k = e;
  }
  const double total = stable_sum(masses_);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("EmpiricalMeasure: masses must sum to 1 (got " + std::to_string(total) + ")");
  }
}

EmpiricalMeasure EmpiricalMeasure::dirac(std::vector<double> point, PointNorm norm) {
  const auto d = point.size();
  return EmpiricalMeasure(d, {std::move(point)}, {1.0}, norm);
}

EmpiricalMeasure EmpiricalMeasure::marginal(std::span<const std::size_t> coords) const {
  if (coords.empty()) throw std::invalid_argument("marginal: no coordinates");
  std::vector<std::vector<double>> pts(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto p = point(i);
    pts[i].reserve(coords.size());
    for (auto c : coords) {
      if (c >= dim_) throw std::out_of_range("marginal: coordinate out of range");
      pts[i].push_back(p[c]);
    }
  }
  return EmpiricalMeasure(coords.size(), std::move(pts), masses_, norm_);
}

EmpiricalMeasure EmpiricalMeasure::head(std::size_t count) const {
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return marginal(idx);
}

bool operator<(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  if (a.coords_ != b.coords_) return a.coords_ < b.coords_;
  return a.masses_ < b.masses_;
}

MeasureSet::MeasureSet(std::vector<EmpiricalMeasure> members) {
  for (auto& m : members) add(std::move(m));
}

void MeasureSet::add(EmpiricalMeasure m) {
  if (!members_.empty()) {
    if (m.dim() != dim()) throw std::invalid_argument("MeasureSet: dimension mismatch");
    if (m.norm() != members_.front().norm()) throw std::invalid_argument("MeasureSet: point norm mismatch");
  }
  members_.push_back(std::move(m));
}

void MeasureSet::dedupe() {
  std::vector<std::size_t> order(members_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return members_[a] < members_[b]; });
  std::vector<bool> keep(members_.size(), true);
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (members_[order[k]] == members_[order[k - 1]]) keep[order[k]] = false;
  }
  std::vector<EmpiricalMeasure> out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (keep[i]) out.push_back(std::move(members_[i]));
  }
  members_ = std::move(out);
}

EmpiricalMeasure joint_distribution(const FiniteSpace& space,
                                    const std::vector<std::span<const double>>& columns,
                                    PointNorm norm) {
  if (columns.empty()) throw std::invalid_argument("joint_distribution: empty vector list");
  for (const auto& c : columns) {
    if (c.size() != space.size()) throw SpaceMismatch("joint_distribution: length mismatch");
  }
  std::vector<std::vector<double>> pts;
  std::vector<double> masses;
  for (std::size_t x = 0; x < space.size(); ++x) {
    if (!space.in_support(x)) continue;
    std::vector<double> p(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) p[c] = columns[c][x];
    pts.push_back(std::move(p));
    masses.push_back(space.weight(x));
  }
  return EmpiricalMeasure(columns.size(), std::move(pts), std::move(masses), norm);
}

EmpiricalMeasure joint_distribution(const std::vector<Vec>& vs, const SpacePtr& space, PointNorm norm) {
  if (vs.empty()) throw std::invalid_argument("joint_distribution: empty vector list");
  std::vector<std::span<const double>> cols;
  for (const auto& v : vs) {
    require_same_space(v.space, space, "joint_distribution");
    cols.emplace_back(v.values);
  }
  return joint_distribution(*space, cols, norm);
}

double tau(const EmpiricalMeasure& mu) {
  double best = 0.0;
  std::vector<double> terms(mu.size());
  for (std::size_t c = 0; c < mu.dim(); ++c) {
    for (std::size_t i = 0; i < mu.size(); ++i) terms[i] = mu.mass(i) * std::abs(mu.point(i)[c]);
    best = std::max(best, stable_sum(terms));
  }
  return best;
}

}  // namespace actconv
