#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "actconv/graphs.hpp"
#include "actconv/measure.hpp"
#include "actconv/operator.hpp"
#include "actconv/profiles.hpp"

namespace actconv {

// Brute-force references. They share only data types with the code they
// check; every number is computed here with plain loops.

struct OracleBudget {
  std::size_t max_atoms = 15;
  std::size_t max_subsets = std::size_t{1} << 15;
  std::size_t max_enumeration = 2'000'000;
};

/// Levy-Prokhorov distance by enumerating every subset U of each measure's
/// support and scanning the candidate radii. Closed-ball convention.
double lp_distance_oracle(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const OracleBudget& budget = {});

/// ||A||_{inf->1} by enumerating all sign vectors on the support.
double inf_to_one_oracle(const Operator& op, const OracleBudget& budget = {});

/// ||A||_box by enumerating all pairs (S, T) of subsets of the support.
double cut_norm_oracle(const Operator& op, const OracleBudget& budget = {});

/// Calls fn(coloring) for each of the k^n colorings; point 0 is the fastest digit.
void for_each_coloring(std::size_t n, int k, const std::function<void(const std::vector<int>&)>& fn,
                       const OracleBudget& budget = {});

/// The exact set S'_k(A): one member per ordered partition, in coloring
/// order, duplicates kept.
Profile enumerate_partition_profile_oracle(const Operator& op, int k, const OracleBudget& budget = {});

/// Radius-1 colored star counts of every coloring, in coloring order.
std::vector<std::map<std::vector<int>, long long>> colored_star_counts(const Graph& g, int k,
                                                                       const OracleBudget& budget = {});

struct LemmaReport {
  std::string lemma;
  int trials = 0;
  int violations = 0;
  double max_ratio = 0.0;
};

/// d_LP(D(X), D(Y)) <= tau(X - Y)^{1/2} k^{3/4} on random jointly distributed pairs.
LemmaReport verify_lemma_coupdist(int trials, std::uint64_t seed);
/// d_LP(D(v), D(w)) <= m^{1/2} k^{3/4} with m = max_i ||v_i - w_i||_1.
LemmaReport verify_lemma_coupdist2(int trials, std::uint64_t seed);
/// Paired d_H(S_k(A), S_k(B)) <= ||A - B||_{inf->1}^{1/2} (2k)^{3/4}, k <= 3.
LemmaReport verify_lemma_limlem3(int trials, std::uint64_t seed);
/// Paired truncated d_M(A, B) <= 3 ||A - B||_{inf->1}^{1/2}.
LemmaReport verify_lemma_limspdm(int trials, std::uint64_t seed);

/// Dispatch by name: coupdist, coupdist2, limlem3, limspdm.
LemmaReport verify_lemma(const std::string& name, int trials, std::uint64_t seed);

}  // namespace actconv
