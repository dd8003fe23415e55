#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "actconv/measure.hpp"
#include "actconv/operator.hpp"
#include "actconv/rng.hpp"

namespace actconv {

enum class StrategyKind {
  UniformBox,
  Rademacher,
  PartitionIndicators,
  SpectralCombos,
  StepFunctions,
  GridQuantized,
};

std::string to_string(StrategyKind s);
StrategyKind strategy_from_string(const std::string& s);

struct SamplingBudget {
  /// Test tuples drawn per strategy for each k.
  int vectors_per_k = 16;
  std::vector<StrategyKind> strategies = {StrategyKind::UniformBox, StrategyKind::Rademacher,
                                          StrategyKind::PartitionIndicators,
                                          StrategyKind::SpectralCombos};
  std::uint64_t seed = 1;
  /// Number of levels used by grid_quantized.
  int quantize_levels = 5;
  PointNorm norm = PointNorm::Euclidean;
};

/// k test functions in [-1,1] plus where they came from.
struct TestTuple {
  StrategyKind strategy;
  int index = 0;
  std::vector<std::vector<double>> vs;
};

struct Profile {
  int k = 0;
  bool extended = false;
  MeasureSet measures;
  std::string operator_id;
  SamplingBudget budget;
};

/// Tuples for every strategy of the budget, ordered by strategy then index.
/// Each tuple uses its own stream derived from (seed, k, strategy, index).
/// Throws std::invalid_argument for step_functions on a non-grid operator.
std::vector<TestTuple> generate_tuples(const Operator& op, int k, const SamplingBudget& budget);

/// D(v_1..v_k, v_1 A..v_k A), optionally with f appended as the last coordinate.
EmpiricalMeasure profile_measure(const Operator& op, const std::vector<std::vector<double>>& vs,
                                 PointNorm norm = PointNorm::Euclidean,
                                 const std::vector<double>* f = nullptr);

/// Profile from explicit tuples. Exact duplicate measures are merged unless keep_duplicates.
Profile profile_from_tuples(const Operator& op, int k, const std::vector<TestTuple>& tuples,
                            const SamplingBudget& budget, bool keep_duplicates = false);

Profile sample_profile(const Operator& op, int k, const SamplingBudget& budget);

/// Random ordered 0-1 function partitions only; every member lies in M_k.
Profile sample_partition_profile(const Operator& op, int k, const SamplingBudget& budget);

/// (2k+1)-dimensional profile of a Markov pair, same tuples as sample_profile.
Profile extended_profile(const MarkovPair& pair, int k, const SamplingBudget& budget);

/// True iff the first-k marginal is concentrated on the standard basis vectors.
bool in_partition_set(const EmpiricalMeasure& mu, int k);

struct QuotientSet {
  int k = 0;
  std::vector<Eigen::MatrixXd> matrices;
};

/// Quotient matrices M_ij = (v_i, v_j)_A over random balanced fractional partitions.
QuotientSet sample_quotients(const Operator& op, int k, const SamplingBudget& budget);

/// Hausdorff distance between quotient sets under the entrywise l1 distance.
double quotient_hausdorff(const QuotientSet& a, const QuotientSet& b);

/// A random fractional partition of the space into k cells with E(v_i) = 1/k,
/// balanced by iterative proportional fitting.
std::vector<std::vector<double>> balanced_fractional_partition(const FiniteSpace& space, int k, Rng& rng,
                                                               double alpha = 1.0);

}  // namespace actconv
