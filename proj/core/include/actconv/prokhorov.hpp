#pragma once

#include <cstddef>

#include "actconv/measure.hpp"

namespace actconv {

struct LpOptions {
  /// Maximum atoms per measure.
  std::size_t max_atoms = 4000;
  /// A known upper bound on the distance; shrinks the candidate set.
  double upper_hint = 1.0;
};

/// Exact Levy-Prokhorov distance between two finite measures (closed balls).
/// Uses the coupling form: d <= eps iff at least 1 - eps mass can be moved
/// along pairs at distance <= eps, decided by a max-flow computation.
double lp_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const LpOptions& opts = {});

/// True iff lp_distance(mu, nu) <= eps (one flow computation).
bool lp_distance_at_most(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double eps,
                         const LpOptions& opts = {});

/// sup_{x in X} inf_{y in Y} d_LP(x, y).
double directed_hausdorff(const MeasureSet& x, const MeasureSet& y, const LpOptions& opts = {});
/// Hausdorff distance between measure sets over d_LP.
double hausdorff(const MeasureSet& x, const MeasureSet& y, const LpOptions& opts = {});

}  // namespace actconv
