#include "actconv/dm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "actconv/error.hpp"
#include "actconv/rng.hpp"

namespace actconv {

namespace {

Layout layout_of(const Operator& op) {
  return op.layout() ? *op.layout() : Layout::cumulative(*op.space());
}

std::vector<std::vector<double>> pull(const std::vector<std::vector<double>>& vs,
                                      const std::vector<std::size_t>& map) {
  std::vector<std::vector<double>> out;
  out.reserve(vs.size());
  for (const auto& v : vs) {
    std::vector<double> w(map.size());
    for (std::size_t y = 0; y < map.size(); ++y) w[y] = v[map[y]];
    out.push_back(std::move(w));
  }
  return out;
}

// Keeps index i unless the pair (x[i], y[i]) repeats an earlier pair.
void dedupe_pairs(std::vector<EmpiricalMeasure>& x, std::vector<EmpiricalMeasure>& y) {
  std::vector<std::size_t> order(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto less = [&](std::size_t a, std::size_t b) {
    if (x[a] < x[b]) return true;
    if (x[b] < x[a]) return false;
    return y[a] < y[b];
  };
  std::stable_sort(order.begin(), order.end(), less);
  std::vector<bool> keep(x.size(), true);
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (x[order[i]] == x[order[i - 1]] && y[order[i]] == y[order[i - 1]]) keep[order[i]] = false;
  }
  std::vector<EmpiricalMeasure> nx, ny;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (keep[i]) {
      nx.push_back(std::move(x[i]));
      ny.push_back(std::move(y[i]));
    }
  }
  x = std::move(nx);
  y = std::move(ny);
}

// Hill climb on a tuple living on `op` towards the target measure.
void refine(const Operator& op, std::vector<std::vector<double>> vs, const EmpiricalMeasure& target,
            double start, int steps, std::uint64_t seed, const SamplingBudget& budget, const LpOptions& lp,
            std::vector<EmpiricalMeasure>& found) {
  Rng rng(seed);
  double cur = start;
  const std::size_t n = op.size();
  for (int s = 0; s < steps && cur > 0.0; ++s) {
    auto trial = vs;
    const std::size_t changes = 1 + rng() % std::max<std::size_t>(1, n / 8);
    for (std::size_t c = 0; c < changes; ++c) {
      auto& v = trial[rng() % trial.size()];
      auto& x = v[rng() % n];
      x = std::clamp(x + 0.5 * uniform_pm1(rng), -1.0, 1.0);
    }
    auto m = profile_measure(op, trial, budget.norm);
    if (!lp_distance_at_most(target, m, cur, lp)) continue;
    LpOptions o = lp;
    o.upper_hint = cur;
    const double d = lp_distance(target, m, o);
    if (d < cur) {
      cur = d;
      vs = std::move(trial);
      found.push_back(std::move(m));
    }
  }
}

double paired_dh(const Operator& a, const Operator& b, int k, const SamplingBudget& budget, const LpOptions& lp) {
  auto tuples = generate_tuples(a, k, budget);
  const bool spectral =
      std::find(budget.strategies.begin(), budget.strategies.end(), StrategyKind::SpectralCombos) !=
      budget.strategies.end();
  if (spectral && &a != &b) {
    SamplingBudget sb = budget;
    sb.strategies = {StrategyKind::SpectralCombos};
    for (auto& t : generate_tuples(b, k, sb)) {
      t.index += budget.vectors_per_k;
      tuples.push_back(std::move(t));
    }
  }
  std::vector<EmpiricalMeasure> x, y;
  for (const auto& t : tuples) {
    x.push_back(profile_measure(a, t.vs, budget.norm));
    y.push_back(profile_measure(b, t.vs, budget.norm));
  }
  dedupe_pairs(x, y);
  return hausdorff(MeasureSet(std::move(x)), MeasureSet(std::move(y)), lp);
}

double cross_dh(const Operator& a, const Operator& b, int k, const SamplingBudget& budget, const DmOptions& opts) {
  const auto ta = generate_tuples(a, k, budget);
  const auto tb = generate_tuples(b, k, budget);
  const auto a_to_b = transfer_map(a, b);
  const auto b_to_a = transfer_map(b, a);
  // Aligned lists: x = [own A | pulled from B], y = [pushed from A | own B].
  std::vector<std::vector<std::vector<double>>> xs, ys;
  for (const auto& t : ta) {
    xs.push_back(t.vs);
    ys.push_back(pull(t.vs, a_to_b));
  }
  for (const auto& t : tb) {
    xs.push_back(pull(t.vs, b_to_a));
    ys.push_back(t.vs);
  }
  std::vector<EmpiricalMeasure> x, y;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x.push_back(profile_measure(a, xs[i], budget.norm));
    y.push_back(profile_measure(b, ys[i], budget.norm));
  }
  if (opts.refine_steps > 0) {
    std::vector<EmpiricalMeasure> extra_x, extra_y;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = lp_distance(x[i], y[i], opts.lp);
      if (d == 0.0) continue;
      refine(b, ys[i], x[i], d, opts.refine_steps, derive_seed(budget.seed, {0x7e1, static_cast<std::uint64_t>(k), i}),
             budget, opts.lp, extra_y);
      refine(a, xs[i], y[i], d, opts.refine_steps, derive_seed(budget.seed, {0x7e2, static_cast<std::uint64_t>(k), i}),
             budget, opts.lp, extra_x);
    }
    for (auto& m : extra_x) x.push_back(std::move(m));
    for (auto& m : extra_y) y.push_back(std::move(m));
  }
  MeasureSet sx(std::move(x)), sy(std::move(y));
  return hausdorff(sx, sy, opts.lp);
}

}  // namespace

std::string to_string(DmMode mode) { return mode == DmMode::Paired ? "paired" : "cross"; }

DmMode dm_mode_from_string(const std::string& s) {
  if (s == "paired") return DmMode::Paired;
  if (s == "cross" || s == "cross_search") return DmMode::CrossSearch;
  throw std::invalid_argument("unknown dm mode: " + s);
}

std::vector<std::size_t> transfer_map(const Operator& from, const Operator& to) {
  const Layout lf = layout_of(from);
  const Layout lt = layout_of(to);
  std::vector<std::size_t> map(to.size(), 0);
  for (std::size_t y = 0; y < to.size(); ++y) {
    double best = std::numeric_limits<double>::infinity();
    bool best_same_block = false;
    for (std::size_t x = 0; x < from.size(); ++x) {
      const bool same = lf.block[x] == lt.block[y];
      if (best_same_block && !same) continue;
      const double d0 = lf.coord[x][0] - lt.coord[y][0];
      const double d1 = lf.coord[x][1] - lt.coord[y][1];
      const double d = d0 * d0 + d1 * d1;
      if ((same && !best_same_block) || d < best) {
        best = d;
        best_same_block = same;
        map[y] = x;
      }
    }
  }
  return map;
}

DmEstimate dm_estimate(const Operator& a, const Operator& b, int k_max, const SamplingBudget& budget,
                       DmMode mode, const DmOptions& opts) {
  if (k_max < 1) throw std::invalid_argument("dm_estimate: k_max must be at least 1");
  if (mode == DmMode::Paired && !same_space(a.space(), b.space())) {
    throw SpaceMismatch("dm_estimate: paired mode needs operators on the same space");
  }
  DmEstimate est;
  est.k_max = k_max;
  est.mode = mode;
  est.tail_bound = std::ldexp(1.0, -k_max);
  for (int k = 1; k <= k_max; ++k) {
    const double dh = mode == DmMode::Paired ? paired_dh(a, b, k, budget, opts.lp) : cross_dh(a, b, k, budget, opts);
    est.per_k.emplace_back(k, dh);
    est.value += std::ldexp(dh, -k);
  }
  return est;
}

}  // namespace actconv
