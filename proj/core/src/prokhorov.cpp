#include "actconv/prokhorov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "actconv/error.hpp"
#include "actconv/maxflow.hpp"

namespace actconv {

namespace {

constexpr double kCapacityScale = 1e12;
constexpr double kSlack = 1e-12;

void check_pair(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const LpOptions& opts) {
  if (mu.dim() != nu.dim()) throw std::invalid_argument("lp_distance: dimension mismatch");
  if (mu.norm() != nu.norm()) throw std::invalid_argument("lp_distance: point norm mismatch");
  if (mu.size() > opts.max_atoms || nu.size() > opts.max_atoms) {
    throw LimitExceeded("lp_distance: more than " + std::to_string(opts.max_atoms) + " atoms");
  }
}

struct PairEdge {
  double dist;
  int i;
  int j;
};

// Bipartite transport between the atoms of mu and nu; edges sorted by length.
class Transport {
 public:
  Transport(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double cutoff)
      : n1_(static_cast<int>(mu.size())), n2_(static_cast<int>(nu.size())) {
    cap1_.resize(mu.size());
    cap2_.resize(nu.size());
    std::int64_t t1 = 0;
    std::int64_t t2 = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) t1 += cap1_[i] = std::llround(mu.mass(i) * kCapacityScale);
    for (std::size_t j = 0; j < nu.size(); ++j) t2 += cap2_[j] = std::llround(nu.mass(j) * kCapacityScale);
    total_ = std::max(t1, t2);
    for (int i = 0; i < n1_; ++i) {
      for (int j = 0; j < n2_; ++j) {
        const double d = point_distance(mu.point(static_cast<std::size_t>(i)),
                                        nu.point(static_cast<std::size_t>(j)), mu.norm());
        if (d <= cutoff) edges_.push_back({d, i, j});
      }
    }
    std::sort(edges_.begin(), edges_.end(), [](const PairEdge& a, const PairEdge& b) {
      return a.dist < b.dist || (a.dist == b.dist && (a.i < b.i || (a.i == b.i && a.j < b.j)));
    });
  }

  /// 1 - (maximum mass movable along pairs at distance <= c).
  double deficiency(double c) const {
    const auto end = std::upper_bound(edges_.begin(), edges_.end(), c,
                                      [](double v, const PairEdge& e) { return v < e.dist; });
    if (end == edges_.begin()) return 1.0;
    const int source = n1_ + n2_;
    const int sink = source + 1;
    MaxFlow flow(n1_ + n2_ + 2);
    std::vector<std::size_t> deg(static_cast<std::size_t>(n1_ + n2_), 1);
    for (auto it = edges_.begin(); it != end; ++it) {
      ++deg[static_cast<std::size_t>(it->i)];
      ++deg[static_cast<std::size_t>(n1_ + it->j)];
    }
    for (int v = 0; v < n1_ + n2_; ++v) flow.reserve_edges(v, deg[static_cast<std::size_t>(v)]);
    flow.reserve_edges(source, static_cast<std::size_t>(n1_));
    flow.reserve_edges(sink, static_cast<std::size_t>(n2_));
    for (int i = 0; i < n1_; ++i) flow.add_edge(source, i, cap1_[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n2_; ++j) flow.add_edge(n1_ + j, sink, cap2_[static_cast<std::size_t>(j)]);
    for (auto it = edges_.begin(); it != end; ++it) {
      flow.add_edge(it->i, n1_ + it->j,
                    std::min(cap1_[static_cast<std::size_t>(it->i)], cap2_[static_cast<std::size_t>(it->j)]));
    }
    const std::int64_t moved = flow.run(source, sink);
    return std::max(0.0, static_cast<double>(total_ - moved) / static_cast<double>(total_));
  }

  std::vector<double> candidates(double cutoff) const {
    std::vector<double> c;
    c.reserve(edges_.size() + 2);
    c.push_back(0.0);
    for (const auto& e : edges_) {
      if (e.dist > 0.0 && e.dist != c.back()) c.push_back(e.dist);
    }
    if (cutoff > c.back()) c.push_back(cutoff);
    return c;
  }

 private:
  int n1_;
  int n2_;
  std::vector<std::int64_t> cap1_;
  std::vector<std::int64_t> cap2_;
  std::int64_t total_ = 0;
  std::vector<PairEdge> edges_;
};

double solve(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double cutoff) {
  const Transport tr(mu, nu, cutoff);
  const std::vector<double> c = tr.candidates(cutoff);
  std::vector<double> def(c.size(), -1.0);
  auto deficiency_at = [&](std::size_t i) {
    if (def[i] < 0.0) def[i] = tr.deficiency(c[i]);
    return def[i];
  };
  auto ok = [&](std::size_t i) { return deficiency_at(i) <= c[i] + kSlack; };

  if (!ok(c.size() - 1)) return -1.0;  // cutoff was not an upper bound
  // def(c) - c is strictly decreasing along the candidates: binary search the first success.
  std::size_t lo = 0;
  std::size_t hi = c.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (ok(mid)) hi = mid;
    else lo = mid + 1;
  }
  if (lo == 0) return 0.0;
  // On [c[lo-1], c[lo]) the deficiency is the constant def[lo-1] > c[lo-1].
  return std::min(c[lo], deficiency_at(lo - 1));
}

}  // namespace

double lp_distance(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const LpOptions& opts) {
  check_pair(mu, nu, opts);
  if (mu == nu) return 0.0;
  const double hint = std::clamp(opts.upper_hint, 0.0, 1.0);
  if (hint < 1.0) {
    const double r = solve(mu, nu, hint);
    if (r >= 0.0) return r;
  }
  return solve(mu, nu, 1.0);
}

bool lp_distance_at_most(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double eps,
                         const LpOptions& opts) {
  check_pair(mu, nu, opts);
  if (eps >= 1.0 || mu == nu) return true;
  if (eps < 0.0) return false;
  const Transport tr(mu, nu, eps);
  return tr.deficiency(eps) <= eps + kSlack;
}

double directed_hausdorff(const MeasureSet& x, const MeasureSet& y, const LpOptions& opts) {
  if (x.empty() || y.empty()) throw std::invalid_argument("hausdorff: empty measure set");
  if (x.dim() != y.dim()) throw std::invalid_argument("hausdorff: dimension mismatch");
  if (x[0].norm() != y[0].norm()) throw std::invalid_argument("hausdorff: point norm mismatch");
  double h = 0.0;
  const std::size_t ny = y.size();
  for (std::size_t a = 0; a < x.size(); ++a) {
    const auto& mx = x[a];
    bool exact_hit = false;
    for (const auto& my : y.members()) {
      if (mx == my) {
        exact_hit = true;
        break;
      }
    }
    if (exact_hit) continue;
    // inf over y, stopping as soon as it cannot raise h. The scan starts at
    // the same position, which is the matched member for paired profiles.
    double best = 1.0;
    for (std::size_t s = 0; s < ny; ++s) {
      const auto& my = y[(a + s) % ny];
      if (best <= h) break;
      if (best < 1.0 && !lp_distance_at_most(mx, my, best, opts)) continue;
      LpOptions o = opts;
      o.upper_hint = best;
      best = std::min(best, lp_distance(mx, my, o));
    }
    h = std::max(h, best);
  }
  return h;
}

double hausdorff(const MeasureSet& x, const MeasureSet& y, const LpOptions& opts) {
  return std::max(directed_hausdorff(x, y, opts), directed_hausdorff(y, x, opts));
}

}  // namespace actconv
