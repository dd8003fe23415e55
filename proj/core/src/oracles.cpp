#include "actconv/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "actconv/dm.hpp"
#include "actconv/error.hpp"
#include "actconv/prokhorov.hpp"
#include "actconv/rng.hpp"

namespace actconv {

namespace {

double plain_distance(std::span<const double> a, std::span<const double> b, PointNorm norm) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (norm == PointNorm::Chebyshev) acc = std::max(acc, d);
    else acc += d * d;
  }
  return norm == PointNorm::Chebyshev ? acc : std::sqrt(acc);
}

// inf { eps : mu(U) <= nu(U^eps) + eps for every U }.
double one_sided(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  const std::size_t a = mu.size();
  const std::size_t b = nu.size();
  std::vector<std::vector<double>> d(a, std::vector<double>(b));
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) d[i][j] = plain_distance(mu.point(i), nu.point(j), mu.norm());

  double worst = 0.0;
  std::vector<double> reach(b);
  for (std::size_t mask = 1; mask < (std::size_t{1} << a); ++mask) {
    double mass = 0.0;
    std::fill(reach.begin(), reach.end(), 2.0);
    for (std::size_t i = 0; i < a; ++i) {
      if (!((mask >> i) & 1U)) continue;
      mass += mu.mass(i);
      for (std::size_t j = 0; j < b; ++j) reach[j] = std::min(reach[j], d[i][j]);
    }
    double e = std::max(0.0, std::min(1.0, mass));  // eps = 1 always works
    std::vector<double> radii = reach;
    radii.push_back(0.0);
    for (double r : radii) {
      if (r > 1.0) continue;
      double covered = 0.0;
      for (std::size_t j = 0; j < b; ++j)
        if (reach[j] <= r) covered += nu.mass(j);
      e = std::min(e, std::max(r, mass - covered));
    }
    worst = std::max(worst, e);
  }
  return worst;
}

void check_enumeration(double count, const OracleBudget& budget, const char* what) {
  if (count > static_cast<double>(budget.max_enumeration)) {
    throw LimitExceeded(std::string(what) + ": enumeration of " + std::to_string(count) + " cases exceeds budget");
  }
}

std::vector<std::size_t> support_of(const Operator& op) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < op.size(); ++i)
    if (op.space()->weight(i) > 0.0) s.push_back(i);
  return s;
}

// Random [-1,1]-valued matrix on a random space; `quantized` puts values on a coarse grid
// so that atoms collide and merge.
struct RandomCloud {
  SpacePtr space;
  std::vector<std::vector<double>> cols;
};

SpacePtr random_space(Rng& rng, std::size_t n) {
  if (rng() % 2 == 0) return make_uniform_space(n);
  std::vector<double> w(n);
  for (auto& x : w) x = 0.05 + std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return make_space(w);
}

std::vector<double> random_function(Rng& rng, std::size_t n, bool quantized) {
  std::vector<double> v(n);
  for (auto& x : v) x = quantized ? static_cast<double>(static_cast<int>(rng() % 5) - 2) / 2.0 : uniform_pm1(rng);
  return v;
}

// Perturbation of v with one of several shapes: small dense noise, sign noise,
// or a few large jumps.
std::vector<double> perturb(Rng& rng, const std::vector<double>& v) {
  static constexpr double kScales[] = {0.0, 1e-3, 1e-2, 0.05, 0.2, 0.5, 1.0};
  const double s = kScales[rng() % 7];
  std::vector<double> w = v;
  switch (rng() % 3) {
    case 0:
      for (auto& x : w) x += s * uniform_pm1(rng);
      break;
    case 1:
      for (auto& x : w) x += (rng() % 2 ? s : -s);
      break;
    default:
      for (auto& x : w)
        if (rng() % 4 == 0) x += 2.0 * s * uniform_pm1(rng);
      break;
  }
  return w;
}

void record(LemmaReport& r, double lhs, double rhs) {
  ++r.trials;
  if (lhs > rhs + 1e-12) ++r.violations;
  if (rhs > 0.0) r.max_ratio = std::max(r.max_ratio, lhs / rhs);
  else if (lhs > 0.0) r.max_ratio = std::max(r.max_ratio, std::numeric_limits<double>::infinity());
}

double weighted_l1(const FiniteSpace& s, const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += s.weight(i) * std::abs(a[i] - b[i]);
  return acc;
}

OperatorPtr random_dense(Rng& rng, const SpacePtr& space, double scale) {
  const auto n = static_cast<Eigen::Index>(space->size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = scale * uniform_pm1(rng);
  return make_dense(space, std::move(a));
}

SamplingBudget lemma_budget(std::uint64_t seed) {
  SamplingBudget b;
  b.vectors_per_k = 6;
  b.strategies = {StrategyKind::UniformBox, StrategyKind::Rademacher, StrategyKind::PartitionIndicators,
                  StrategyKind::SpectralCombos, StrategyKind::GridQuantized};
  b.seed = seed;
  return b;
}

}  // namespace

double lp_distance_oracle(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const OracleBudget& budget) {
  if (mu.dim() != nu.dim()) throw std::invalid_argument("lp_distance_oracle: dimension mismatch");
  if (mu.norm() != nu.norm()) throw std::invalid_argument("lp_distance_oracle: point norm mismatch");
  if (mu.size() > budget.max_atoms || nu.size() > budget.max_atoms ||
      (std::size_t{1} << std::max(mu.size(), nu.size())) > budget.max_subsets) {
    throw LimitExceeded("lp_distance_oracle: support too large");
  }
  return std::max(one_sided(mu, nu), one_sided(nu, mu));
}

double inf_to_one_oracle(const Operator& op, const OracleBudget& budget) {
  const auto s = support_of(op);
  const std::size_t m = s.size();
  check_enumeration(std::ldexp(1.0, static_cast<int>(m)), budget, "inf_to_one_oracle");
  const Eigen::MatrixXd a = op.to_dense();
  double best = 0.0;
  std::vector<double> v(m);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    for (std::size_t i = 0; i < m; ++i) v[i] = ((mask >> i) & 1U) ? -1.0 : 1.0;
    double total = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      double y = 0.0;
      for (std::size_t r = 0; r < m; ++r) y += v[r] * a(static_cast<Eigen::Index>(s[r]), static_cast<Eigen::Index>(s[c]));
      total += op.space()->weight(s[c]) * std::abs(y);
    }
    best = std::max(best, total);
  }
  return best;
}

double cut_norm_oracle(const Operator& op, const OracleBudget& budget) {
  const auto s = support_of(op);
  const std::size_t m = s.size();
  check_enumeration(std::ldexp(1.0, static_cast<int>(2 * m)), budget, "cut_norm_oracle");
  const Eigen::MatrixXd a = op.to_dense();
  double best = 0.0;
  std::vector<double> y(m);
  for (std::size_t sm = 0; sm < (std::size_t{1} << m); ++sm) {
    for (std::size_t c = 0; c < m; ++c) {
      y[c] = 0.0;
      for (std::size_t r = 0; r < m; ++r)
        if ((sm >> r) & 1U) y[c] += a(static_cast<Eigen::Index>(s[r]), static_cast<Eigen::Index>(s[c]));
    }
    for (std::size_t tm = 0; tm < (std::size_t{1} << m); ++tm) {
      double val = 0.0;
      for (std::size_t c = 0; c < m; ++c)
        if ((tm >> c) & 1U) val += op.space()->weight(s[c]) * y[c];
      best = std::max(best, std::abs(val));
    }
  }
  return best;
}

void for_each_coloring(std::size_t n, int k, const std::function<void(const std::vector<int>&)>& fn,
                       const OracleBudget& budget) {
  if (k < 1) throw std::invalid_argument("for_each_coloring: k must be at least 1");
  check_enumeration(std::pow(static_cast<double>(k), static_cast<double>(n)), budget, "for_each_coloring");
  std::vector<int> c(n, 0);
  while (true) {
    fn(c);
    std::size_t i = 0;
    while (i < n && c[i] == k - 1) c[i++] = 0;
    if (i == n) break;
    ++c[i];
  }
}

Profile enumerate_partition_profile_oracle(const Operator& op, int k, const OracleBudget& budget) {
  const std::size_t n = op.size();
  const Eigen::MatrixXd a = op.to_dense();
  Profile p;
  p.k = k;
  p.operator_id = op.metadata();
  const auto ku = static_cast<std::size_t>(k);
  for_each_coloring(
      n, k,
      [&](const std::vector<int>& col) {
        std::vector<std::vector<double>> pts;
        std::vector<double> masses;
        for (std::size_t x = 0; x < n; ++x) {
          if (!(op.space()->weight(x) > 0.0)) continue;
          std::vector<double> pt(2 * ku, 0.0);
          pt[static_cast<std::size_t>(col[x])] = 1.0;
          for (std::size_t j = 0; j < n; ++j) pt[ku + static_cast<std::size_t>(col[j])] += a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(x));
          pts.push_back(std::move(pt));
          masses.push_back(op.space()->weight(x));
        }
        p.measures.add(EmpiricalMeasure(2 * ku, std::move(pts), std::move(masses)));
      },
      budget);
  return p;
}

std::vector<std::map<std::vector<int>, long long>> colored_star_counts(const Graph& g, int k,
                                                                       const OracleBudget& budget) {
  std::vector<std::map<std::vector<int>, long long>> out;
  for_each_coloring(
      g.n(), k,
      [&](const std::vector<int>& col) {
        std::map<std::vector<int>, long long> z;
        for (std::size_t v = 0; v < g.n(); ++v) {
          std::vector<int> t(static_cast<std::size_t>(k) + 1, 0);
          t[0] = col[v];
          for (auto u : g.neighbors(v)) ++t[1 + static_cast<std::size_t>(col[u])];
          ++z[t];
        }
        out.push_back(std::move(z));
      },
      budget);
  return out;
}

LemmaReport verify_lemma_coupdist(int trials, std::uint64_t seed) {
  LemmaReport r;
  r.lemma = "coupdist";
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_stream(seed, {0xc0d1, static_cast<std::uint64_t>(t)});
    const std::size_t n = 1 + rng() % 12;
    const std::size_t k = 1 + rng() % 3;
    const bool quantized = rng() % 3 == 0;
    // Every fourth trial is the sign-noise sweep on the uniform space.
    const bool sweep = t % 4 == 3;
    const SpacePtr space = sweep ? make_uniform_space(n) : random_space(rng, n);
    std::vector<std::vector<double>> xs, ys;
    const double eps = std::ldexp(1.0, -static_cast<int>(t % 10));
    for (std::size_t i = 0; i < k; ++i) {
      xs.push_back(random_function(rng, n, quantized));
      if (sweep) {
        std::vector<double> y = xs.back();
        for (auto& v : y) v += (rng() % 2 ? eps : -eps);
        ys.push_back(std::move(y));
      } else {
        ys.push_back(t % 50 == 0 ? xs.back() : perturb(rng, xs.back()));
      }
    }
    std::vector<std::span<const double>> cx(xs.begin(), xs.end()), cy(ys.begin(), ys.end());
    const double lhs = lp_distance(joint_distribution(*space, cx), joint_distribution(*space, cy));
    double tau_diff = 0.0;
    for (std::size_t i = 0; i < k; ++i) tau_diff = std::max(tau_diff, weighted_l1(*space, xs[i], ys[i]));
    record(r, lhs, std::sqrt(tau_diff) * std::pow(static_cast<double>(k), 0.75));
  }
  return r;
}

LemmaReport verify_lemma_coupdist2(int trials, std::uint64_t seed) {
  LemmaReport r;
  r.lemma = "coupdist2";
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_stream(seed, {0xc0d2, static_cast<std::uint64_t>(t)});
    const std::size_t n = 1 + rng() % 12;
    const std::size_t k = 1 + rng() % 3;
    const SpacePtr space = random_space(rng, n);
    std::vector<std::vector<double>> vs, ws;
    for (std::size_t i = 0; i < k; ++i) {
      vs.push_back(random_function(rng, n, rng() % 3 == 0));
      auto w = perturb(rng, vs.back());
      for (auto& x : w) x = std::clamp(x, -1.0, 1.0);
      ws.push_back(std::move(w));
    }
    std::vector<std::span<const double>> cv(vs.begin(), vs.end()), cw(ws.begin(), ws.end());
    const double lhs = lp_distance(joint_distribution(*space, cv), joint_distribution(*space, cw));
    double m = 0.0;
    for (std::size_t i = 0; i < k; ++i) m = std::max(m, weighted_l1(*space, vs[i], ws[i]));
    record(r, lhs, std::sqrt(m) * std::pow(static_cast<double>(k), 0.75));
  }
  return r;
}

namespace {

template <class Check>
LemmaReport operator_lemma(const char* name, std::uint64_t tag, int trials, std::uint64_t seed, Check check) {
  LemmaReport r;
  r.lemma = name;
  static constexpr double kScales[] = {0.0, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0};
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_stream(seed, {tag, static_cast<std::uint64_t>(t)});
    const std::size_t n = 2 + rng() % 9;
    const SpacePtr space = random_space(rng, n);
    const auto a = random_dense(rng, space, 1.0);
    const double scale = kScales[rng() % 7];
    const auto e = random_dense(rng, space, scale);
    const auto b = make_dense(space, a->to_dense() + e->to_dense());
    const double eta = inf_to_one_oracle(*e);
    check(r, *a, *b, eta, derive_seed(seed, {tag, 0xb0d9e7, static_cast<std::uint64_t>(t)}));
  }
  return r;
}

}  // namespace

LemmaReport verify_lemma_limlem3(int trials, std::uint64_t seed) {
  return operator_lemma("limlem3", 0x113, trials, seed,
                        [](LemmaReport& r, const Operator& a, const Operator& b, double eta, std::uint64_t s) {
                          const auto est = dm_estimate(a, b, 3, lemma_budget(s), DmMode::Paired);
                          double worst_lhs = 0.0;
                          double worst_rhs = 1.0;
                          double worst = -1.0;
                          for (const auto& [k, dh] : est.per_k) {
                            const double rhs = std::sqrt(eta) * std::pow(2.0 * k, 0.75);
                            const double slack = dh - rhs;
                            if (slack > worst) {
                              worst = slack;
                              worst_lhs = dh;
                              worst_rhs = rhs;
                            }
                          }
                          record(r, worst_lhs, worst_rhs);
                        });
}

LemmaReport verify_lemma_limspdm(int trials, std::uint64_t seed) {
  return operator_lemma("limspdm", 0x5bd, trials, seed,
                        [](LemmaReport& r, const Operator& a, const Operator& b, double eta, std::uint64_t s) {
                          const auto est = dm_estimate(a, b, 3, lemma_budget(s), DmMode::Paired);
                          record(r, est.value, 3.0 * std::sqrt(eta));
                        });
}

LemmaReport verify_lemma(const std::string& name, int trials, std::uint64_t seed) {
  if (name == "coupdist") return verify_lemma_coupdist(trials, seed);
  if (name == "coupdist2") return verify_lemma_coupdist2(trials, seed);
  if (name == "limlem3") return verify_lemma_limlem3(trials, seed);
  if (name == "limspdm") return verify_lemma_limspdm(trials, seed);
  throw std::invalid_argument("unknown lemma: " + name);
}

}  // namespace actconv
