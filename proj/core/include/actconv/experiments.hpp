#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "actconv/dm.hpp"
#include "actconv/graphs.hpp"
#include "actconv/operator.hpp"
#include "actconv/profiles.hpp"

namespace actconv {

enum class Family { Hypercube, Star, Subdivision, Projective, Power, Quasirandom, Rmt };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct ExperimentConfig {
  Family family = Family::Star;
  std::vector<std::size_t> sizes;
  int k_max = 2;
  SamplingBudget budget;
  std::string output_path;
  /// Cross-search local-search steps.
  int refine_steps = 0;
  /// Base graph of the power family: "K3" or "C<n>".
  std::string base_graph = "K3";
  /// Repetitions of the random-matrix experiment.
  int reps = 10;
};

/// Throws std::invalid_argument on non-increasing sizes, k_max < 1, or a
/// size outside the family's guard.
void validate(const ExperimentConfig& cfg);

struct CurveRow {
  std::size_t size = 0;
  std::string compared_to;
  DmEstimate estimate;
  /// Family-specific exact quantity (the projective norm), NaN otherwise.
  double exact = 0.0;
  double seconds = 0.0;
};

struct CurveResult {
  Family family = Family::Star;
  std::uint64_t seed = 0;
  std::vector<CurveRow> rows;
};

// Discretized limit objects and the graph operators they are compared with.
// All of them carry layouts so test functions can be carried across spaces.

/// M(S_n) with the center in block 0 and leaves spread over (0, 1] in block 1.
OperatorPtr star_markov(std::size_t n);
/// Atom of weight 1/2 plus m cells of weight 1/(2m) on (0, 1/2]:
/// (fM)(0) = mean over the cells, (fM)(cell) = f(0).
OperatorPtr star_limit(std::size_t m);
/// M(subdivided K_n): vertices in block 0, edge midpoints w_ij in block 1.
OperatorPtr subdivision_markov(std::size_t n);
/// m vertex cells plus m(m+1)/2 unordered pair cells (diagonal included).
OperatorPtr subdivision_limit(std::size_t m);
/// A(G_q)/(q+1).
OperatorPtr projective_scaled(int q);
/// B_q = (v1^T v1 - v2^T v2) / |V(G_q)|.
OperatorPtr projective_rank_two(int q);
/// Two-block graphon with value 2 between points and lines, on the vertex space of G_q.
OperatorPtr projective_graphon(int q);
/// Constant 1/2 graphon on m uniform cells.
OperatorPtr constant_graphon(std::size_t m, double value = 0.5);
/// n x n matrix with independent uniform +-n^{-1/2} entries.
OperatorPtr random_sign_matrix(std::size_t n, std::uint64_t seed);

CurveResult run_star_curve(const ExperimentConfig& cfg);
CurveResult run_subdivision_curve(const ExperimentConfig& cfg);
CurveResult run_projective_curve(const ExperimentConfig& cfg);
CurveResult run_hypercube_curve(const ExperimentConfig& cfg);
CurveResult run_power_curve(const ExperimentConfig& cfg, const Graph& base);
CurveResult run_quasirandom(const ExperimentConfig& cfg);
/// Dispatches on cfg.family (not Rmt).
CurveResult run_curve(const ExperimentConfig& cfg);

Graph parse_base_graph(const std::string& name);

struct RmtRow {
  std::size_t n = 0;
  std::vector<double> statistics;
  double mean = 0.0;
  double stddev = 0.0;
  std::vector<double> norms;
  double norm_in_band_fraction = 0.0;
  double max_column_shift = 0.0;
  bool column_bound_holds = true;
};

struct RmtReport {
  std::uint64_t seed = 0;
  std::vector<RmtRow> rows;
};

/// Per size: `reps` pairs of independent H_n, the paired k=1 profile distance
/// between them, ||H_n||_{2->2} over the samples, and the single-column
/// perturbation bound on every sampled measure. The distance statistic uses
/// only matrix-independent strategies (spectral_combos is dropped); the column
/// check uses the full budget.
RmtReport run_rmt_concentration(const ExperimentConfig& cfg);

/// Largest lp_distance between D_H(v) and D_{H'}(v) over the sampled tuples,
/// where H' is H with column `col` resampled.
double column_perturbation_shift(const Operator& h, std::size_t col, int k, const SamplingBudget& budget);

}  // namespace actconv
