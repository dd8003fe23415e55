#include "actconv/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "actconv/error.hpp"
#include "actconv/norms.hpp"
#include "actconv/oracles.hpp"
#include "actconv/rng.hpp"

namespace actconv {

namespace {

void guard_vertices(double count, const char* what) {
  if (count > static_cast<double>(kMaxGraphVertices)) {
    throw LimitExceeded(std::string(what) + ": more than " + std::to_string(kMaxGraphVertices) + " vertices");
  }
}


SpacePtr stationary_space(const Graph& g) {
  if (g.edges().empty()) throw PreconditionFailed("stationary space of an edgeless graph");
  std::vector<double> w(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) w[v] = static_cast<double>(g.degree(v));
  return make_space(w);
}

SparseKernel neighbor_kernel(const Graph& g) {
  SparseKernel k;
  k.in.resize(g.n());
  for (std::size_t v = 0; v < g.n(); ++v)
    for (auto u : g.neighbors(v)) k.in[v].emplace_back(u, 1.0);
  return k;
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges, std::string name)
    : n_(n), edges_(std::move(edges)), adj_(n), name_(std::move(name)) {
  for (auto& [u, v] : edges_) {
    if (u >= n_ || v >= n_) throw std::invalid_argument("Graph: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("Graph: loops are not allowed");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw std::invalid_argument("Graph: duplicate edge");
  }
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

std::size_t Graph::max_degree() const {
  std::size_t d = 0;
  for (const auto& a : adj_) d = std::max(d, a.size());
  return d;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

Graph hypercube(int n) {
  if (n < 1) throw std::invalid_argument("hypercube: n must be at least 1");
  guard_vertices(std::ldexp(1.0, n), "hypercube");
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t x = 0; x < size; ++x)
    for (int b = 0; b < n; ++b) {
      const std::size_t y = x ^ (std::size_t{1} << b);
      if (x < y) e.emplace_back(x, y);
    }
  return Graph(size, std::move(e), "Q" + std::to_string(n));
}

Graph star(std::size_t n) {
  if (n < 2) throw std::invalid_argument("star: n must be at least 2");
  guard_vertices(static_cast<double>(n), "star");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(0, i);
  return Graph(n, std::move(e), "S" + std::to_string(n));
}

Graph subdivision_complete(std::size_t n) {
  if (n < 1) throw std::invalid_argument("subdivision_complete: n must be at least 1");
  guard_vertices(static_cast<double>(n) * static_cast<double>(n + 1) / 2.0, "subdivision_complete");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  std::size_t w = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++w) {
      e.emplace_back(i, w);
      e.emplace_back(j, w);
    }
  return Graph(w, std::move(e), "subK" + std::to_string(n));
}

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

Graph projective_incidence(int q) {
  if (!is_prime(q)) throw std::invalid_argument("projective_incidence: q must be prime");
  const double count = 2.0 * (static_cast<double>(q) * q + q + 1);
  guard_vertices(count, "projective_incidence");
  // Normalized homogeneous triples: first nonzero coordinate equals 1.
  std::vector<std::array<int, 3>> pts;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c) {
        const std::array<int, 3> t{a, b, c};
        int lead = 0;
        for (int x : t)
          if (x != 0) {
            lead = x;
            break;
          }
        if (lead == 1) pts.push_back(t);
      }
  const std::size_t m = pts.size();
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t l = 0; l < m; ++l) {
      const int dot = pts[p][0] * pts[l][0] + pts[p][1] * pts[l][1] + pts[p][2] * pts[l][2];
      if (dot % q == 0) e.emplace_back(p, m + l);
    }
  return Graph(2 * m, std::move(e), "PG2_" + std::to_string(q));
}

Graph tensor_product(const Graph& g1, const Graph& g2) {
  guard_vertices(static_cast<double>(g1.n()) * static_cast<double>(g2.n()), "tensor_product");
  const std::size_t n2 = g2.n();
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (const auto& [a, b] : g1.edges())
    for (const auto& [c, d] : g2.edges()) {
      e.emplace_back(a * n2 + c, b * n2 + d);
      e.emplace_back(a * n2 + d, b * n2 + c);
    }
  return Graph(g1.n() * n2, std::move(e), g1.name() + "x" + g2.name());
}

Graph graph_power(const Graph& g, int i) {
  if (i < 1) throw std::invalid_argument("graph_power: exponent must be at least 1");
  guard_vertices(std::pow(static_cast<double>(g.n()), i), "graph_power");
  Graph out = g;
  for (int j = 1; j < i; ++j) out = tensor_product(out, g);
  return Graph(out.n(), out.edges(), g.name() + "^" + std::to_string(i));
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("erdos_renyi: n must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi: p must lie in [0,1]");
  guard_vertices(static_cast<double>(n), "erdos_renyi");
  Rng rng = make_stream(seed, {0xe7, n});
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (u(rng) < p) e.emplace_back(i, j);
  return Graph(n, std::move(e), "G(" + std::to_string(n) + ")");
}

Graph cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle: n must be at least 3");
  guard_vertices(static_cast<double>(n), "cycle");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(e), "C" + std::to_string(n));
}

Graph complete(std::size_t n) {
  if (n < 1) throw std::invalid_argument("complete: n must be at least 1");
  guard_vertices(static_cast<double>(n), "complete");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, std::move(e), "K" + std::to_string(n));
}

OperatorPtr adjacency_op(const Graph& g, const AdjacencyScaling& scaling) {
  auto base = make_sparse(make_uniform_space(g.n()), neighbor_kernel(g), "A(" + g.name() + ")");
  switch (scaling.kind) {
    case ScalingKind::None:
      return base;
    case ScalingKind::ByVertexCount:
      return make_scaled(base, 1.0 / static_cast<double>(g.n()), "A(" + g.name() + ")/n");
    case ScalingKind::ByConstant:
      if (scaling.c == 0.0) throw std::invalid_argument("adjacency_op: zero scaling constant");
      return make_scaled(base, 1.0 / scaling.c, "A(" + g.name() + ")/" + std::to_string(scaling.c));
    case ScalingKind::ByNorm: {
      if (g.edges().empty()) throw PreconditionFailed("adjacency_op: norm scaling of an edgeless graph");
      const bool exact = (scaling.p == 2.0 && scaling.q == 2.0 && g.n() <= kMaxDenseSpectral) ||
                         (std::isinf(scaling.p) && scaling.q == 1.0 && g.n() <= kMaxExactEnumeration);
      const double nrm = norm_pq(*base, scaling.p, scaling.q, exact ? NormMode::Exact : NormMode::Heuristic);
      return make_scaled(base, 1.0 / nrm, "A(" + g.name() + ")/norm");
    }
  }
  return base;
}

StationaryOp markov_op(const Graph& g) {
  const SpacePtr space = stationary_space(g);
  SparseKernel k = neighbor_kernel(g);
  k.divisor.resize(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) k.divisor[v] = g.degree(v) == 0 ? 1.0 : static_cast<double>(g.degree(v));
  return {make_sparse(space, std::move(k), "M(" + g.name() + ")"), space};
}

OperatorPtr laplace_op(const Graph& g) {
  SparseKernel k;
  k.in.resize(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (g.degree(v) > 0) k.in[v].emplace_back(v, static_cast<double>(g.degree(v)));
    for (auto u : g.neighbors(v)) k.in[v].emplace_back(u, -1.0);
  }
  return make_sparse(make_uniform_space(g.n()), std::move(k), "L(" + g.name() + ")");
}

StationaryOp degree_weighted_op(const Graph& g) {
  const SpacePtr space = stationary_space(g);
  SparseKernel k;
  k.in.resize(g.n());
  for (std::size_t v = 0; v < g.n(); ++v)
    for (auto u : g.neighbors(v)) k.in[v].emplace_back(u, static_cast<double>(g.degree(u)));
  return {make_sparse(space, std::move(k), "F(" + g.name() + ")"), space};
}

Vec normalized_degree(const Graph& g, const SpacePtr& space) {
  if (space->size() != g.n()) throw SpaceMismatch("normalized_degree: space size mismatch");
  if (g.edges().empty()) throw PreconditionFailed("normalized_degree: edgeless graph");
  const double avg = 2.0 * static_cast<double>(g.edges().size()) / static_cast<double>(g.n());
  std::vector<double> v(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) v[i] = static_cast<double>(g.degree(i)) / avg;
  return Vec(space, std::move(v));
}

UniformMapReport check_uniform_map(const UniformMap& m) {
  UniformMapReport r;
  const Graph& s = m.source;
  const Graph& t = m.target;
  if (m.map.size() != s.n()) {
    r.homomorphism = r.uniform = false;
    r.violations.push_back("map length differs from source vertex count");
    return r;
  }
  for (std::size_t v = 0; v < s.n(); ++v) {
    if (m.map[v] >= t.n()) {
      r.homomorphism = r.uniform = false;
      r.violations.push_back("vertex " + std::to_string(v) + " maps outside the target");
      return r;
    }
  }
  for (const auto& [u, v] : s.edges()) {
    if (!t.has_edge(m.map[u], m.map[v])) {
      r.homomorphism = false;
      r.violations.push_back("edge (" + std::to_string(u) + "," + std::to_string(v) + ") is not mapped to an edge");
    }
  }
  std::vector<int> pre(t.n(), 0);
  for (auto y : m.map) ++pre[y];
  r.a = pre.empty() ? 0 : pre[0];
  for (std::size_t y = 0; y < t.n(); ++y) {
    if (pre[y] != r.a) {
      r.uniform = false;
      r.violations.push_back("preimage of " + std::to_string(y) + " has size " + std::to_string(pre[y]));
    }
  }
  if (m.a != 0 && m.a != r.a) {
    r.uniform = false;
    r.violations.push_back("declared a = " + std::to_string(m.a) + " but observed " + std::to_string(r.a));
  }
  bool b_set = false;
  for (std::size_t v = 0; v < s.n(); ++v) {
    for (auto w : t.neighbors(m.map[v])) {
      int hits = 0;
      for (auto u : s.neighbors(v))
        if (m.map[u] == w) ++hits;
      if (!b_set) {
        r.b = hits;
        b_set = true;
      } else if (hits != r.b) {
        r.uniform = false;
        r.violations.push_back("vertex " + std::to_string(v) + " sends " + std::to_string(hits) +
                               " neighbors to " + std::to_string(w));
      }
    }
  }
  if (m.b != 0 && m.b != r.b) {
    r.uniform = false;
    r.violations.push_back("declared b = " + std::to_string(m.b) + " but observed " + std::to_string(r.b));
  }
  if (!r.uniform) {
    if (r.violations.size() > 64) r.violations.resize(64);
  }
  return r;
}

bool pullback_profile_check(const UniformMap& m, const std::vector<std::vector<std::vector<double>>>& tuples) {
  const auto rep = check_uniform_map(m);
  if (!rep.clean() || rep.b == 0) return false;
  const auto a1 = adjacency_op(m.target);
  const auto a2 = make_scaled(adjacency_op(m.source), 1.0 / rep.b);
  for (const auto& vs : tuples) {
    std::vector<std::vector<double>> pulled;
    for (const auto& v : vs) {
      if (v.size() != m.target.n()) throw std::invalid_argument("pullback_profile_check: tuple length mismatch");
      std::vector<double> w(m.source.n());
      for (std::size_t x = 0; x < w.size(); ++x) w[x] = v[m.map[x]];
      pulled.push_back(std::move(w));
    }
    const auto mu = profile_measure(*a1, vs);
    const auto nu = profile_measure(*a2, pulled);
    if (mu.size() != nu.size()) return false;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const auto p = mu.point(i);
      const auto q = nu.point(i);
      if (!std::equal(p.begin(), p.end(), q.begin())) return false;
      if (std::abs(mu.mass(i) - nu.mass(i)) > 1e-12) return false;
    }
  }
  return true;
}

UniformMap power_projection(const Graph& g, int i) {
  UniformMap m;
  m.target = g;
  m.source = graph_power(g, i);
  std::size_t rest = 1;
  for (int j = 1; j < i; ++j) rest *= g.n();
  m.map.resize(m.source.n());
  for (std::size_t x = 0; x < m.source.n(); ++x) m.map[x] = x / rest;
  return m;
}

UniformMap hypercube_pair_xor_map(int mdim) {
  UniformMap m;
  m.target = hypercube(mdim);
  m.source = hypercube(2 * mdim);
  m.map.resize(m.source.n());
  const int src_bits = 2 * mdim;
  // Coordinate c of an index with b bits sits at bit (b - 1 - c).
  auto coord = [](std::size_t x, int bits, int c) { return (x >> (bits - 1 - c)) & 1U; };
  for (std::size_t x = 0; x < m.source.n(); ++x) {
    std::size_t y = 0;
    for (int j = 0; j < mdim; ++j) {
      const std::size_t bit = coord(x, src_bits, 2 * j) ^ coord(x, src_bits, 2 * j + 1);
      y |= bit << (mdim - 1 - j);
    }
    m.map[x] = y;
  }
  m.a = 1 << mdim;
  m.b = 2;
  return m;
}

UniformMap identity_map(const Graph& g) {
  UniformMap m;
  m.source = g;
  m.target = g;
  m.map.resize(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) m.map[i] = i;
  m.a = 1;
  m.b = 1;
  return m;
}

ColoredStarDistribution colored_star_stats(const Graph& g, const std::vector<int>& coloring, int k, int d) {
  if (coloring.size() != g.n()) throw std::invalid_argument("colored_star_stats: coloring length mismatch");
  if (k < 1) throw std::invalid_argument("colored_star_stats: k must be at least 1");
  if (g.max_degree() > static_cast<std::size_t>(d)) {
    throw PreconditionFailed("colored_star_stats: maximum degree exceeds " + std::to_string(d));
  }
  ColoredStarDistribution out;
  out.d = d;
  out.k = k;
  const double w = 1.0 / static_cast<double>(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (coloring[v] < 0 || coloring[v] >= k) throw std::invalid_argument("colored_star_stats: color out of range");
    StarType t(static_cast<std::size_t>(k) + 1, 0);
    t[0] = coloring[v];
    for (auto u : g.neighbors(v)) ++t[1 + static_cast<std::size_t>(coloring[u])];
    out.weights[t] += w;
  }
  return out;
}

BijectionReport star_profile_bijection_check(const Graph& g, int k, int d) {
  if (g.max_degree() > static_cast<std::size_t>(d)) {
    throw PreconditionFailed("star_profile_bijection_check: maximum degree exceeds " + std::to_string(d));
  }
  BijectionReport rep;
  const auto profile = enumerate_partition_profile_oracle(*adjacency_op(g), k);
  const auto stars = colored_star_counts(g, k);
  const auto n = static_cast<double>(g.n());
  const auto ku = static_cast<std::size_t>(k);
  // alpha: (e_i, c_1..c_k) -> star with root color i and c_j neighbors of color j.
  std::set<std::map<StarType, long long>> image, target;
  rep.colorings = stars.size();
  for (std::size_t c = 0; c < stars.size(); ++c) {
    const auto& mu = profile.measures[c];
    std::map<StarType, long long> mapped;
    bool integral = true;
    for (std::size_t a = 0; a < mu.size(); ++a) {
      const auto p = mu.point(a);
      StarType t(ku + 1, 0);
      int root = -1;
      for (std::size_t i = 0; i < ku; ++i)
        if (p[i] == 1.0) root = static_cast<int>(i);
      t[0] = root;
      for (std::size_t i = 0; i < ku; ++i) {
        const double v = p[ku + i];
        t[1 + i] = static_cast<int>(std::llround(v));
        if (v != std::round(v)) integral = false;
      }
      const double cnt = mu.mass(a) * n;
      if (std::abs(cnt - std::round(cnt)) > 1e-9) integral = false;
      mapped[t] += std::llround(cnt);
    }
    if (!integral || mapped != stars[c]) rep.per_coloring_equal = false;
    image.insert(std::move(mapped));
    target.insert(stars[c]);
  }
  rep.sets_equal = image == target;
  rep.distinct = target.size();
  return rep;
}

}  // namespace actconv
