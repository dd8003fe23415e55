#include "actconv/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "actconv/error.hpp"
#include "actconv/norms.hpp"

namespace actconv {

namespace {

constexpr StrategyKind kAllStrategies[] = {
    StrategyKind::UniformBox,     StrategyKind::Rademacher,    StrategyKind::PartitionIndicators,
    StrategyKind::SpectralCombos, StrategyKind::StepFunctions, StrategyKind::GridQuantized,
};

// Leading eigenvectors (or right singular vectors when A is not self-adjoint)
// of the L^2 form, as sup-normalized functions on the whole space.
std::vector<std::vector<double>> spectral_basis(const Operator& op, std::size_t count) {
  if (op.size() > kMaxDenseSpectral) {
    throw LimitExceeded("spectral_combos: operator larger than " + std::to_string(kMaxDenseSpectral));
  }
  std::vector<std::size_t> support;
  const Eigen::MatrixXd t = weighted_l2_matrix(op, &support);
  const auto m = t.rows();
  Eigen::MatrixXd vecs;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  if ((t - t.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (t + t.transpose()));
    vecs = es.eigenvectors();
    const Eigen::VectorXd ev = es.eigenvalues();
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return std::abs(ev(a)) > std::abs(ev(b)); });
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(t, Eigen::ComputeThinV);
    vecs = svd.matrixV();
  }
  std::vector<std::vector<double>> out;
  for (std::size_t c = 0; c < std::min<std::size_t>(count, static_cast<std::size_t>(m)); ++c) {
    std::vector<double> f(op.size(), 0.0);
    double sup = 0.0;
    for (std::size_t r = 0; r < support.size(); ++r) {
      const double w = op.space()->weight(support[r]);
      f[support[r]] = vecs(static_cast<Eigen::Index>(r), order[c]) / std::sqrt(w);
      sup = std::max(sup, std::abs(f[support[r]]));
    }
    if (sup > 0.0) {
      // Fix the sign so the output does not depend on the solver's choice.
      double first = 0.0;
      for (double x : f) {
        if (std::abs(x) > 1e-9 * sup) {
          first = x;
          break;
        }
      }
      const double s = first < 0.0 ? -1.0 / sup : 1.0 / sup;
      for (double& x : f) x = std::clamp(x * s, -1.0, 1.0);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<double> dirichlet(Rng& rng, int k, double alpha) {
  std::gamma_distribution<double> g(alpha, 1.0);
  std::vector<double> p(static_cast<std::size_t>(k));
  double s = 0.0;
  for (auto& x : p) s += x = g(rng) + 1e-300;
  for (auto& x : p) x /= s;
  return p;
}

std::vector<std::vector<double>> draw_tuple(const Operator& op, int k, StrategyKind strategy, int index,
                                            const SamplingBudget& budget,
                                            const std::vector<std::vector<double>>& basis) {
  const std::size_t n = op.size();
  Rng rng = make_stream(budget.seed, {static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(strategy),
                                      static_cast<std::uint64_t>(index)});
  std::vector<std::vector<double>> vs(static_cast<std::size_t>(k), std::vector<double>(n, 0.0));
  switch (strategy) {
    case StrategyKind::UniformBox:
      for (auto& v : vs)
        for (auto& x : v) x = uniform_pm1(rng);
      break;
    case StrategyKind::Rademacher:
      for (auto& v : vs)
        for (auto& x : v) x = (rng() >> 63) ? 1.0 : -1.0;
      break;
    case StrategyKind::PartitionIndicators: {
      const auto p = dirichlet(rng, k, 1.0);
      std::discrete_distribution<int> cell(p.begin(), p.end());
      for (std::size_t x = 0; x < n; ++x) vs[static_cast<std::size_t>(cell(rng))][x] = 1.0;
      break;
    }
    case StrategyKind::SpectralCombos: {
      const std::size_t r = basis.size();
      if (r == 0) break;
      const auto ku = static_cast<std::size_t>(k);
      const std::size_t pure = (r + ku - 1) / ku;
      if (static_cast<std::size_t>(index) < pure) {
        for (std::size_t i = 0; i < ku; ++i) vs[i] = basis[(static_cast<std::size_t>(index) * ku + i) % r];
        break;
      }
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (auto& v : vs) {
        std::vector<double> c(r);
        for (auto& x : c) x = gauss(rng);
        double sup = 0.0;
        for (std::size_t pt = 0; pt < n; ++pt) {
          double s = 0.0;
          for (std::size_t j = 0; j < r; ++j) s += c[j] * basis[j][pt];
          v[pt] = s;
          sup = std::max(sup, std::abs(s));
        }
        const double stretch = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
        if (sup > 0.0)
          for (auto& x : v) x = std::clamp(x * stretch / sup, -1.0, 1.0);
      }
      break;
    }
    case StrategyKind::StepFunctions: {
      const Layout lay = Layout::cumulative(*op.space());
      for (auto& v : vs) {
        const int steps = 1 + static_cast<int>(rng() % 8);
        std::vector<double> cuts(static_cast<std::size_t>(steps - 1));
        for (auto& c : cuts) c = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> vals(static_cast<std::size_t>(steps));
        for (auto& x : vals) x = uniform_pm1(rng);
        for (std::size_t pt = 0; pt < n; ++pt) {
          const auto cell = std::upper_bound(cuts.begin(), cuts.end(), lay.coord[pt][0]) - cuts.begin();
          v[pt] = vals[static_cast<std::size_t>(cell)];
        }
      }
      break;
    }
    case StrategyKind::GridQuantized: {
      const int m = std::max(1, budget.quantize_levels);
      for (auto& v : vs) {
        for (auto& x : v) {
          x = m == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(rng() % static_cast<std::uint64_t>(m)) / (m - 1);
        }
      }
      break;
    }
  }
  return vs;
}

}  // namespace

std::string to_string(StrategyKind s) {
  switch (s) {
    case StrategyKind::UniformBox: return "uniform_box";
    case StrategyKind::Rademacher: return "rademacher";
    case StrategyKind::PartitionIndicators: return "partition_indicators";
    case StrategyKind::SpectralCombos: return "spectral_combos";
    case StrategyKind::StepFunctions: return "step_functions";
    case StrategyKind::GridQuantized: return "grid_quantized";
  }
  return "unknown";
}

StrategyKind strategy_from_string(const std::string& s) {
  for (auto k : kAllStrategies) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown strategy: " + s);
}

std::vector<TestTuple> generate_tuples(const Operator& op, int k, const SamplingBudget& budget) {
  if (k < 1) throw std::invalid_argument("profile: k must be at least 1");
  if (budget.vectors_per_k < 1) throw std::invalid_argument("profile: vectors_per_k must be at least 1");
  std::vector<TestTuple> out;
  for (auto strategy : budget.strategies) {
    if (strategy == StrategyKind::StepFunctions && !op.is_graphon_grid()) {
      throw std::invalid_argument("step_functions requires a graphon-grid operator");
    }
    std::vector<std::vector<double>> basis;
    if (strategy == StrategyKind::SpectralCombos) basis = spectral_basis(op, 2 * static_cast<std::size_t>(k));
    for (int i = 0; i < budget.vectors_per_k; ++i) {
      out.push_back({strategy, i, draw_tuple(op, k, strategy, i, budget, basis)});
    }
  }
  return out;
}

EmpiricalMeasure profile_measure(const Operator& op, const std::vector<std::vector<double>>& vs,
                                 PointNorm norm, const std::vector<double>* f) {
  std::vector<std::vector<double>> images;
  images.reserve(vs.size());
  for (const auto& v : vs) images.push_back(op.apply(v));
  std::vector<std::span<const double>> cols;
  for (const auto& v : vs) cols.emplace_back(v);
  for (const auto& w : images) cols.emplace_back(w);
  if (f) cols.emplace_back(*f);
  return joint_distribution(*op.space(), cols, norm);
}

Profile profile_from_tuples(const Operator& op, int k, const std::vector<TestTuple>& tuples,
                            const SamplingBudget& budget, bool keep_duplicates) {
  Profile p;
  p.k = k;
  p.operator_id = op.metadata();
  p.budget = budget;
  for (const auto& t : tuples) {
    if (static_cast<int>(t.vs.size()) != k) throw std::invalid_argument("profile: tuple has wrong arity");
    p.measures.add(profile_measure(op, t.vs, budget.norm));
  }
  if (!keep_duplicates) p.measures.dedupe();
  return p;
}

Profile sample_profile(const Operator& op, int k, const SamplingBudget& budget) {
  return profile_from_tuples(op, k, generate_tuples(op, k, budget), budget);
}

bool in_partition_set(const EmpiricalMeasure& mu, int k) {
  if (k < 1 || mu.dim() < static_cast<std::size_t>(k)) return false;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    const auto p = mu.point(a);
    int ones = 0;
    for (int i = 0; i < k; ++i) {
      if (p[static_cast<std::size_t>(i)] == 1.0) ++ones;
      else if (p[static_cast<std::size_t>(i)] != 0.0) return false;
    }
    if (ones != 1) return false;
  }
  return true;
}

Profile sample_partition_profile(const Operator& op, int k, const SamplingBudget& budget) {
  if (k < 1) throw std::invalid_argument("profile: k must be at least 1");
  SamplingBudget b = budget;
  b.strategies = {StrategyKind::PartitionIndicators};
  if (k == 1) b.vectors_per_k = 1;
  Profile p = profile_from_tuples(op, k, generate_tuples(op, k, b), b);
  for (const auto& m : p.measures.members()) {
    if (!in_partition_set(m, k)) throw std::logic_error("partition profile member outside M_k");
  }
  return p;
}

Profile extended_profile(const MarkovPair& pair, int k, const SamplingBudget& budget) {
  const auto tuples = generate_tuples(*pair.op, k, budget);
  Profile p;
  p.k = k;
  p.extended = true;
  p.operator_id = pair.op->metadata();
  p.budget = budget;
  for (const auto& t : tuples) p.measures.add(profile_measure(*pair.op, t.vs, budget.norm, &pair.ref_fn.values));
  p.measures.dedupe();
  return p;
}

std::vector<std::vector<double>> balanced_fractional_partition(const FiniteSpace& space, int k, Rng& rng,
                                                               double alpha) {
  if (k < 1) throw std::invalid_argument("balanced_fractional_partition: k must be at least 1");
  const std::size_t n = space.size();
  const auto ku = static_cast<std::size_t>(k);
  std::vector<std::vector<double>> v(ku, std::vector<double>(n, 0.0));
  for (std::size_t x = 0; x < n; ++x) {
    const auto p = dirichlet(rng, k, alpha);
    for (std::size_t i = 0; i < ku; ++i) v[i][x] = p[i];
  }
  const double target = 1.0 / static_cast<double>(k);
  for (int it = 0; it < 200; ++it) {
    // Column step: E(v_i) = 1/k.
    for (std::size_t i = 0; i < ku; ++i) {
      const double e = expectation(space, v[i]);
      if (e > 0.0)
        for (auto& x : v[i]) x *= target / e;
    }
    // Row step: sum_i v_i = 1 pointwise.
    for (std::size_t x = 0; x < n; ++x) {
      double s = 0.0;
      for (std::size_t i = 0; i < ku; ++i) s += v[i][x];
      for (std::size_t i = 0; i < ku; ++i) v[i][x] /= s;
    }
    double err = 0.0;
    for (std::size_t i = 0; i < ku; ++i) err = std::max(err, std::abs(expectation(space, v[i]) - target));
    if (err <= 1e-10) break;
  }
  return v;
}

QuotientSet sample_quotients(const Operator& op, int k, const SamplingBudget& budget) {
  if (k < 1) throw std::invalid_argument("sample_quotients: k must be at least 1");
  static constexpr double kAlphas[] = {1.0, 0.3, 3.0};
  QuotientSet q;
  q.k = k;
  const int samples = k == 1 ? 1 : budget.vectors_per_k;
  const auto ku = static_cast<std::size_t>(k);
  for (int s = 0; s < samples; ++s) {
    Rng rng = make_stream(budget.seed, {static_cast<std::uint64_t>(k), 0x9007, static_cast<std::uint64_t>(s)});
    const auto v = balanced_fractional_partition(*op.space(), k, rng, kAlphas[s % 3]);
    std::vector<std::vector<double>> va;
    for (const auto& f : v) va.push_back(op.apply(f));
    Eigen::MatrixXd m(k, k);
    for (std::size_t i = 0; i < ku; ++i) {
      for (std::size_t j = 0; j < ku; ++j) {
        std::vector<double> terms(op.size());
        for (std::size_t x = 0; x < op.size(); ++x) terms[x] = va[i][x] * v[j][x] * op.space()->weight(x);
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = stable_sum(terms);
      }
    }
    q.matrices.push_back(std::move(m));
  }
  return q;
}

double quotient_hausdorff(const QuotientSet& a, const QuotientSet& b) {
  if (a.k != b.k) throw std::invalid_argument("quotient_hausdorff: k mismatch");
  if (a.matrices.empty() || b.matrices.empty()) throw std::invalid_argument("quotient_hausdorff: empty set");
  auto directed = [](const QuotientSet& x, const QuotientSet& y) {
    double h = 0.0;
    for (const auto& mx : x.matrices) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& my : y.matrices) best = std::min(best, (mx - my).cwiseAbs().sum());
      h = std::max(h, best);
    }
    return h;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace actconv
