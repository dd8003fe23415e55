#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "actconv/space.hpp"

namespace actconv {

enum class PointNorm { Euclidean, Chebyshev };

std::string to_string(PointNorm norm);
PointNorm point_norm_from_string(const std::string& s);

double point_distance(std::span<const double> a, std::span<const double> b, PointNorm norm);

/// A finitely supported probability measure on R^d. Atoms are kept sorted
/// lexicographically with duplicates merged and zero masses dropped, so two
/// measures are equal iff their atom lists are equal.
class EmpiricalMeasure {
 public:
  EmpiricalMeasure() = default;
  /// points.size() == masses.size(); every point has length dim.
  EmpiricalMeasure(std::size_t dim, std::vector<std::vector<double>> points,
                   std::vector<double> masses, PointNorm norm = PointNorm::Euclidean);

  static EmpiricalMeasure dirac(std::vector<double> point, PointNorm norm = PointNorm::Euclidean);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return masses_.size(); }
  PointNorm norm() const { return norm_; }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  double mass(std::size_t i) const { return masses_[i]; }
  const std::vector<double>& masses() const { return masses_; }

  /// Push-forward onto the listed coordinates.
  EmpiricalMeasure marginal(std::span<const std::size_t> coords) const;
  /// First `count` coordinates.
  EmpiricalMeasure head(std::size_t count) const;

  friend bool operator==(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    return a.dim_ == b.dim_ && a.norm_ == b.norm_ && a.coords_ == b.coords_ &&
           a.masses_ == b.masses_;
  }
  /// Lexicographic order on (atoms, masses); used for canonical sorting.
  friend bool operator<(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

 private:
  std::size_t dim_ = 0;
  PointNorm norm_ = PointNorm::Euclidean;
  std::vector<double> coords_;
  std::vector<double> masses_;
};

/// A nonempty finite set of measures of one dimension and point norm.
class MeasureSet {
 public:
  MeasureSet() = default;
  explicit MeasureSet(std::vector<EmpiricalMeasure> members);

  std::size_t dim() const { return members_.empty() ? 0 : members_.front().dim(); }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const EmpiricalMeasure& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<EmpiricalMeasure>& members() const { return members_; }

  void add(EmpiricalMeasure m);
  /// Drops exact duplicates; keeps first occurrences in order.
  void dedupe();

 private:
  std::vector<EmpiricalMeasure> members_;
};

/// D(v_1, ..., v_d): push-forward of the space measure under x -> (v_1(x), ..., v_d(x)).
EmpiricalMeasure joint_distribution(const std::vector<Vec>& vs, const SpacePtr& space,
                                    PointNorm norm = PointNorm::Euclidean);
EmpiricalMeasure joint_distribution(const FiniteSpace& space,
                                    const std::vector<std::span<const double>>& columns,
                                    PointNorm norm = PointNorm::Euclidean);

/// tau(mu) = max_i E|x_i|.
double tau(const EmpiricalMeasure& mu);

}  // namespace actconv
