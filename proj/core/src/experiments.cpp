#include "actconv/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "actconv/error.hpp"
#include "actconv/norms.hpp"
#include "actconv/prokhorov.hpp"
#include "actconv/rng.hpp"

namespace actconv {

namespace {

constexpr Family kFamilies[] = {Family::Hypercube, Family::Star,        Family::Subdivision, Family::Projective,
                                Family::Power,     Family::Quasirandom, Family::Rmt};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CurveRow compare(std::size_t size, std::string label, const Operator& a, const Operator& b, DmMode mode,
                 const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto t0 = Clock::now();
  SamplingBudget budget = cfg.budget;
  budget.seed = seed;
  DmOptions opts;
  opts.refine_steps = cfg.refine_steps;
  CurveRow row;
  row.size = size;
  row.compared_to = std::move(label);
  row.estimate = dm_estimate(a, b, cfg.k_max, budget, mode, opts);
  row.exact = std::numeric_limits<double>::quiet_NaN();
  row.seconds = seconds_since(t0);
  return row;
}

std::uint64_t row_seed(const ExperimentConfig& cfg, std::size_t size) {
  return derive_seed(cfg.budget.seed, {static_cast<std::uint64_t>(cfg.family), size});
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::Hypercube: return "hypercube";
    case Family::Star: return "star";
    case Family::Subdivision: return "subdivision";
    case Family::Projective: return "projective";
    case Family::Power: return "power";
    case Family::Quasirandom: return "quasirandom";
    case Family::Rmt: return "rmt";
  }
  return "unknown";
}

Family family_from_string(const std::string& s) {
  for (auto f : kFamilies)
    if (to_string(f) == s) return f;
  throw std::invalid_argument("unknown family: " + s);
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.k_max < 1) throw std::invalid_argument("experiment: k_max must be at least 1");
  if (cfg.sizes.empty()) throw std::invalid_argument("experiment: no sizes given");
  for (std::size_t i = 1; i < cfg.sizes.size(); ++i) {
    if (cfg.sizes[i] <= cfg.sizes[i - 1]) throw std::invalid_argument("experiment: sizes must be strictly increasing");
  }
  auto all = [&](auto pred, const char* what) {
    for (auto s : cfg.sizes)
      if (!pred(s)) throw std::invalid_argument(std::string("experiment: ") + what + ", got " + std::to_string(s));
  };
  switch (cfg.family) {
    case Family::Star: all([](std::size_t s) { return s >= 8 && s <= 512; }, "star sizes must lie in [8, 512]"); break;
    case Family::Subdivision: all([](std::size_t s) { return s >= 2 && s <= 40; }, "subdivision sizes must lie in [2, 40]"); break;
    case Family::Hypercube: all([](std::size_t s) { return s >= 1 && s <= 10; }, "hypercube dimension must lie in [1, 10]"); break;
    case Family::Projective:
      all([](std::size_t s) { return s == 2 || s == 3 || s == 5 || s == 7 || s == 11; }, "projective q must be one of 2,3,5,7,11");
      break;
    case Family::Power: all([](std::size_t s) { return s >= 1 && s <= 8; }, "power exponents must lie in [1, 8]"); break;
    case Family::Quasirandom: all([](std::size_t s) { return s >= 2 && s <= 2048; }, "quasirandom sizes must lie in [2, 2048]"); break;
    case Family::Rmt: all([](std::size_t s) { return s >= 2 && s <= 2048; }, "rmt sizes must lie in [2, 2048]"); break;
  }
}

OperatorPtr star_markov(std::size_t n) {
  const auto m = markov_op(star(n)).op;
  Layout lay;
  lay.block.assign(n, 1);
  lay.coord.assign(n, {0.0, 0.0});
  lay.block[0] = 0;
  for (std::size_t i = 1; i < n; ++i) lay.coord[i][0] = (static_cast<double>(i) - 0.5) / static_cast<double>(n - 1);
  return std::make_shared<const Operator>(m->with_layout(std::move(lay)));
}

OperatorPtr star_limit(std::size_t m) {
  if (m < 1) throw std::invalid_argument("star_limit: m must be at least 1");
  std::vector<double> w(m + 1, 0.5 / static_cast<double>(m));
  w[0] = 0.5;
  const auto space = make_space(w);
  const auto size = static_cast<Eigen::Index>(m + 1);
  Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(size, size);
  kernel.row(0).tail(size - 1).setConstant(2.0);
  kernel.col(0).tail(size - 1).setConstant(2.0);
  Layout lay;
  lay.block.assign(m + 1, 1);
  lay.coord.assign(m + 1, {0.0, 0.0});
  lay.block[0] = 0;
  for (std::size_t c = 0; c < m; ++c) lay.coord[c + 1][0] = (static_cast<double>(c) + 0.5) / static_cast<double>(m);
  const auto op = make_graphon_grid(space, std::move(kernel), "star limit m=" + std::to_string(m));
  return std::make_shared<const Operator>(op->with_layout(std::move(lay)));
}

OperatorPtr subdivision_markov(std::size_t n) {
  const auto g = subdivision_complete(n);
  const auto m = markov_op(g).op;
  Layout lay;
  lay.dims = 2;
  lay.block.assign(g.n(), 1);
  lay.coord.assign(g.n(), {0.0, 0.0});
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    lay.block[i] = 0;
    lay.coord[i] = {(static_cast<double>(i) + 0.5) / dn, 0.0};
  }
  std::size_t w = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++w)
      lay.coord[w] = {(static_cast<double>(i) + 0.5) / dn, (static_cast<double>(j) + 0.5) / dn};
  return std::make_shared<const Operator>(m->with_layout(std::move(lay)));
}

OperatorPtr subdivision_limit(std::size_t m) {
  if (m < 1) throw std::invalid_argument("subdivision_limit: m must be at least 1");
  const double dm = static_cast<double>(m);
  const std::size_t pairs = m * (m + 1) / 2;
  const std::size_t size = m + pairs;
  std::vector<double> w(size, 0.0);
  Layout lay;
  lay.dims = 2;
  lay.block.assign(size, 1);
  lay.coord.assign(size, {0.0, 0.0});
  for (std::size_t i = 0; i < m; ++i) {
    w[i] = 1.0 / (2.0 * dm);
    lay.block[i] = 0;
    lay.coord[i] = {(static_cast<double>(i) + 0.5) / dm, 0.0};
  }
  Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  std::size_t p = m;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j, ++p) {
      const bool diag = i == j;
      w[p] = diag ? 1.0 / (2.0 * dm * dm) : 1.0 / (dm * dm);
      lay.coord[p] = {(static_cast<double>(i) + 0.5) / dm, (static_cast<double>(j) + 0.5) / dm};
      const double value = diag ? 2.0 * dm : dm;
      for (std::size_t v : {i, j}) {
        kernel(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(v)) = value;
        kernel(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(p)) = value;
      }
    }
  }
  const auto op = make_graphon_grid(make_space(w), std::move(kernel), "subdivision limit m=" + std::to_string(m));
  return std::make_shared<const Operator>(op->with_layout(std::move(lay)));
}

OperatorPtr projective_scaled(int q) {
  AdjacencyScaling s;
  s.kind = ScalingKind::ByConstant;
  s.c = q + 1.0;
  return adjacency_op(projective_incidence(q), s);
}

namespace {

// +1 on points, -1 on lines.
std::vector<double> point_line_sign(int q) {
  const std::size_t half = static_cast<std::size_t>(q) * static_cast<std::size_t>(q) + static_cast<std::size_t>(q) + 1;
  std::vector<double> v(2 * half, 1.0);
  std::fill(v.begin() + static_cast<std::ptrdiff_t>(half), v.end(), -1.0);
  return v;
}

}  // namespace

OperatorPtr projective_rank_two(int q) {
  if (!is_prime(q)) throw std::invalid_argument("projective_rank_two: q must be prime");
  const auto v2 = point_line_sign(q);
  const auto n = static_cast<Eigen::Index>(v2.size());
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y)
      b(x, y) = (1.0 - v2[static_cast<std::size_t>(x)] * v2[static_cast<std::size_t>(y)]) / static_cast<double>(n);
  return make_dense(make_uniform_space(v2.size()), std::move(b), "B_" + std::to_string(q));
}

OperatorPtr projective_graphon(int q) {
  if (!is_prime(q)) throw std::invalid_argument("projective_graphon: q must be prime");
  const auto v2 = point_line_sign(q);
  const auto n = static_cast<Eigen::Index>(v2.size());
  Eigen::MatrixXd w(n, n);
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y) w(x, y) = v2[static_cast<std::size_t>(x)] != v2[static_cast<std::size_t>(y)] ? 2.0 : 0.0;
  return make_graphon_grid(make_uniform_space(v2.size()), std::move(w), "W_" + std::to_string(q));
}

OperatorPtr constant_graphon(std::size_t m, double value) {
  const auto s = static_cast<Eigen::Index>(m);
  return make_graphon_grid(make_uniform_space(m), Eigen::MatrixXd::Constant(s, s, value),
                           "constant graphon " + std::to_string(value));
}

OperatorPtr random_sign_matrix(std::size_t n, std::uint64_t seed) {
  Rng rng = make_stream(seed, {0x5167, n});
  const auto s = static_cast<Eigen::Index>(n);
  const double h = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd a(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j) a(i, j) = (rng() >> 63) ? h : -h;
  return make_dense(make_uniform_space(n), std::move(a), "H_" + std::to_string(n));
}

CurveResult run_star_curve(const ExperimentConfig& cfg) {
  validate(cfg);
  CurveResult out{Family::Star, cfg.budget.seed, {}};
  for (auto n : cfg.sizes) {
    const std::size_t m = 4 * (n - 1);
    out.rows.push_back(compare(n, "limit m=" + std::to_string(m), *star_markov(n), *star_limit(m),
                               DmMode::CrossSearch, cfg, row_seed(cfg, n)));
  }
  return out;
}

CurveResult run_subdivision_curve(const ExperimentConfig& cfg) {
  validate(cfg);
  CurveResult out{Family::Subdivision, cfg.budget.seed, {}};
  for (auto n : cfg.sizes) {
    out.rows.push_back(compare(n, "limit m=" + std::to_string(n), *subdivision_markov(n), *subdivision_limit(n),
                               DmMode::CrossSearch, cfg, row_seed(cfg, n)));
  }
  return out;
}

CurveResult run_projective_curve(const ExperimentConfig& cfg) {
  validate(cfg);
  CurveResult out{Family::Projective, cfg.budget.seed, {}};
  for (auto qs : cfg.sizes) {
    const int q = static_cast<int>(qs);
    const auto a = projective_scaled(q);
    const auto b = projective_rank_two(q);
    const double exact = norm_pq(*difference(*a, *b), 2.0, 2.0, NormMode::Exact);
    auto row = compare(qs, "B_q", *a, *b, DmMode::Paired, cfg, row_seed(cfg, qs));
    row.exact = exact;
    out.rows.push_back(std::move(row));
    out.rows.push_back(compare(qs, "graphon W", *a, *projective_graphon(q), DmMode::Paired, cfg,
                               derive_seed(row_seed(cfg, qs), {1})));
  }
  return out;
}

CurveResult run_hypercube_curve(const ExperimentConfig& cfg) {
  validate(cfg);
  CurveResult out{Family::Hypercube, cfg.budget.seed, {}};
  auto scaled = [](std::size_t d) {
    AdjacencyScaling s;
    s.kind = ScalingKind::ByConstant;
    s.c = static_cast<double>(d);
    return adjacency_op(hypercube(static_cast<int>(d)), s);
  };
  for (std::size_t i = 0; i + 1 < cfg.sizes.size(); ++i) {
    const auto d = cfg.sizes[i];
    const auto e = cfg.sizes[i + 1];
    out.rows.push_back(compare(d, "Q" + std::to_string(e), *scaled(d), *scaled(e), DmMode::CrossSearch, cfg,
                               row_seed(cfg, d)));
  }
  return out;
}

CurveResult run_power_curve(const ExperimentConfig& cfg, const Graph& base) {
  validate(cfg);
  CurveResult out{Family::Power, cfg.budget.seed, {}};
  auto scaled = [&](std::size_t i) {
    AdjacencyScaling s;
    s.kind = ScalingKind::ByNorm;
    return adjacency_op(graph_power(base, static_cast<int>(i)), s);
  };
  for (std::size_t i = 0; i + 1 < cfg.sizes.size(); ++i) {
    const auto a = cfg.sizes[i];
    const auto b = cfg.sizes[i + 1];
    out.rows.push_back(compare(a, base.name() + "^" + std::to_string(b), *scaled(a), *scaled(b), DmMode::CrossSearch,
                               cfg, row_seed(cfg, a)));
  }
  return out;
}

CurveResult run_quasirandom(const ExperimentConfig& cfg) {
  validate(cfg);
  CurveResult out{Family::Quasirandom, cfg.budget.seed, {}};
  for (auto n : cfg.sizes) {
    AdjacencyScaling s;
    s.kind = ScalingKind::ByVertexCount;
    const auto g = erdos_renyi(n, 0.5, row_seed(cfg, n));
    out.rows.push_back(compare(n, "constant 1/2 graphon", *adjacency_op(g, s), *constant_graphon(n), DmMode::Paired,
                               cfg, row_seed(cfg, n)));
  }
  return out;
}

Graph parse_base_graph(const std::string& name) {
  if (name.size() >= 2 && (name[0] == 'K' || name[0] == 'C')) {
    const auto n = static_cast<std::size_t>(std::stoul(name.substr(1)));
    return name[0] == 'K' ? complete(n) : cycle(n);
  }
  throw std::invalid_argument("unknown base graph: " + name + " (use K<n> or C<n>)");
}

CurveResult run_curve(const ExperimentConfig& cfg) {
  switch (cfg.family) {
    case Family::Star: return run_star_curve(cfg);
    case Family::Subdivision: return run_subdivision_curve(cfg);
    case Family::Projective: return run_projective_curve(cfg);
    case Family::Hypercube: return run_hypercube_curve(cfg);
    case Family::Power: return run_power_curve(cfg, parse_base_graph(cfg.base_graph));
    case Family::Quasirandom: return run_quasirandom(cfg);
    case Family::Rmt: break;
  }
  throw std::invalid_argument("run_curve: use run_rmt_concentration for the rmt family");
}

double column_perturbation_shift(const Operator& h, std::size_t col, int k, const SamplingBudget& budget) {
  Eigen::MatrixXd a = h.to_dense();
  if (col >= h.size()) throw std::out_of_range("column_perturbation_shift: column out of range");
  a.col(static_cast<Eigen::Index>(col)) *= -1.0;
  const auto h2 = make_dense(h.space(), std::move(a));
  double worst = 0.0;
  for (const auto& t : generate_tuples(h, k, budget)) {
    worst = std::max(worst, lp_distance(profile_measure(h, t.vs, budget.norm), profile_measure(*h2, t.vs, budget.norm)));
  }
  return worst;
}

RmtReport run_rmt_concentration(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.family = Family::Rmt;
  validate(c);
  if (cfg.reps < 2) throw std::invalid_argument("rmt: need at least two repetitions");
  RmtReport rep;
  rep.seed = cfg.budget.seed;
  for (auto n : cfg.sizes) {
    RmtRow row;
    row.n = n;
    for (int r = 0; r < cfg.reps; ++r) {
      const auto ru = static_cast<std::uint64_t>(r);
      const auto h1 = random_sign_matrix(n, derive_seed(cfg.budget.seed, {n, ru, 0}));
      const auto h2 = random_sign_matrix(n, derive_seed(cfg.budget.seed, {n, ru, 1}));
      SamplingBudget b = cfg.budget;
      b.seed = derive_seed(cfg.budget.seed, {n, ru, 2});
      // The bounded-difference argument needs test functions that do not
      // depend on the matrix, so spectral tuples are left out of the statistic.
      SamplingBudget fixed = b;
      std::erase(fixed.strategies, StrategyKind::SpectralCombos);
      if (fixed.strategies.empty()) fixed.strategies = {StrategyKind::UniformBox};
      const auto est = dm_estimate(*h1, *h2, 1, fixed, DmMode::Paired);
      row.statistics.push_back(est.per_k.front().second);
      row.norms.push_back(norm_pq(*h1, 2.0, 2.0, NormMode::Exact));
      if (r == 0) {
        row.max_column_shift = column_perturbation_shift(*h1, static_cast<std::size_t>(ru) % n, cfg.k_max, b);
        row.column_bound_holds = row.max_column_shift <= 1.0 / static_cast<double>(n) + 1e-12;
      }
    }
    const double cnt = static_cast<double>(row.statistics.size());
    row.mean = std::accumulate(row.statistics.begin(), row.statistics.end(), 0.0) / cnt;
    double ss = 0.0;
    for (double s : row.statistics) ss += (s - row.mean) * (s - row.mean);
    row.stddev = std::sqrt(ss / (cnt - 1.0));
    const auto in_band = std::count_if(row.norms.begin(), row.norms.end(), [](double x) { return x >= 1.8 && x <= 2.3; });
    row.norm_in_band_fraction = static_cast<double>(in_band) / static_cast<double>(row.norms.size());
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace actconv
