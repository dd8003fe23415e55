#pragma once

#include <string>
#include <utility>
#include <vector>

#include "actconv/operator.hpp"
#include "actconv/profiles.hpp"
#include "actconv/prokhorov.hpp"

namespace actconv {

enum class DmMode { Paired, CrossSearch };

std::string to_string(DmMode mode);
DmMode dm_mode_from_string(const std::string& s);

struct DmOptions {
  LpOptions lp;
  /// Cross-search only: local-search steps spent on each poorly matched measure.
  int refine_steps = 0;
};

struct DmEstimate {
  double value = 0.0;
  std::vector<std::pair<int, double>> per_k;
  int k_max = 0;
  double tail_bound = 0.0;
  DmMode mode = DmMode::Paired;
};

/// Truncated sum_{k <= k_max} 2^-k d_H(S_k(A), S_k(B)) over sampled profiles.
///
/// Paired: A and B share a space and every test tuple is evaluated on both.
/// CrossSearch: each side samples its own tuples; each side's tuples are
/// also carried to the other space through the operators' layouts
/// (nearest point), optionally followed by a local search.
DmEstimate dm_estimate(const Operator& a, const Operator& b, int k_max, const SamplingBudget& budget,
                       DmMode mode, const DmOptions& opts = {});

/// For each point of `to`, the nearest point of `from` in layout coordinates
/// (the cumulative layout is used when an operator has none).
std::vector<std::size_t> transfer_map(const Operator& from, const Operator& to);

}  // namespace actconv
