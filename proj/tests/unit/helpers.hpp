#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "actconv/graphs.hpp"
#include "actconv/measure.hpp"
#include "actconv/operator.hpp"
#include "actconv/rng.hpp"

namespace testing {

using namespace actconv;

// Random measure with atoms on a coarse grid so that ties between pairwise
// distances actually occur.
inline EmpiricalMeasure random_measure(Rng& rng, std::size_t dim, std::size_t max_atoms,
                                       PointNorm norm = PointNorm::Euclidean) {
  std::uniform_int_distribution<std::size_t> count(1, max_atoms);
  std::uniform_int_distribution<int> grid(-4, 4);
  std::uniform_real_distribution<double> mass(0.05, 1.0);
  const std::size_t n = count(rng);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  std::vector<double> m(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& x : pts[i]) x = grid(rng) / 8.0;
    m[i] = mass(rng);
    total += m[i];
  }
  for (auto& x : m) x /= total;
  return EmpiricalMeasure(dim, std::move(pts), std::move(m), norm);
}

inline SpacePtr random_space(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w(n);
  for (auto& x : w) x = u(rng);
  return make_space(w);
}

inline OperatorPtr random_dense(Rng& rng, SpacePtr space, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const auto n = static_cast<Eigen::Index>(space->size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = u(rng);
  return make_dense(std::move(space), std::move(a));
}

inline std::vector<double> random_vector(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// Connected graph: a random spanning tree plus extra random edges.
inline Graph random_connected_graph(Rng& rng, std::size_t n, double extra_p) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    edges.emplace_back(parent(rng), v);
  }
  std::bernoulli_distribution coin(extra_p);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      bool present = false;
      for (const auto& e : edges) present = present || (e.first == u && e.second == v) || (e.first == v && e.second == u);
      if (!present && coin(rng)) edges.emplace_back(u, v);
    }
  return Graph(n, std::move(edges));
}

// Random graph with maximum degree at most d.
inline Graph random_bounded_degree_graph(Rng& rng, std::size_t n, std::size_t d) {
  std::vector<std::size_t> deg(n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (deg[u] < d && deg[v] < d && coin(rng)) {
        edges.emplace_back(u, v);
        ++deg[u];
        ++deg[v];
      }
  return Graph(n, std::move(edges));
}

}  // namespace testing
