#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "actconv/operator.hpp"

namespace actconv {

/// Upper bound on generated vertex counts (2^n, n^i, ...).
inline constexpr std::size_t kMaxGraphVertices = std::size_t{1} << 22;

/// A finite simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  /// Edges are normalized to (min, max) and sorted; loops, duplicates and
  /// out-of-range endpoints throw std::invalid_argument.
  Graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges, std::string name = {});

  std::size_t n() const { return n_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::string& name() const { return name_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const { return adj_[v].size(); }
  std::size_t max_degree() const;
  bool has_edge(std::size_t u, std::size_t v) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::string name_;
};

/// Q_n on {0,1}^n; coordinate 0 is the most significant bit of the index.
Graph hypercube(int n);
/// Star on n vertices with center 0.
Graph star(std::size_t n);
/// K_n with every edge subdivided: vertices 0..n-1, then w_ij (i < j) in lexicographic order.
Graph subdivision_complete(std::size_t n);
/// Point-line incidence graph of PG(2,q), q prime: points first, then lines.
Graph projective_incidence(int q);
/// Tensor product G1 x G2; vertex (a, b) has index a * |V(G2)| + b.
Graph tensor_product(const Graph& g1, const Graph& g2);
/// i-fold tensor power; the first factor is the most significant digit.
Graph graph_power(const Graph& g, int i);
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);
Graph cycle(std::size_t n);
Graph complete(std::size_t n);

bool is_prime(int q);

enum class ScalingKind { None, ByVertexCount, ByNorm, ByConstant };

struct AdjacencyScaling {
  ScalingKind kind = ScalingKind::None;
  double p = 2.0;
  double q = 2.0;
  double c = 1.0;
};

/// A(G) on the uniform space, divided as requested.
OperatorPtr adjacency_op(const Graph& g, const AdjacencyScaling& scaling = {});

struct StationaryOp {
  OperatorPtr op;
  SpacePtr space;
};

/// Random-walk kernel M(G) on the stationary space (weights d(i)/2|E|).
StationaryOp markov_op(const Graph& g);
/// L(G) on the uniform space.
OperatorPtr laplace_op(const Graph& g);
/// F(G): (vF)(i) = sum_{j ~ i} v(j) d(j), on the stationary space.
StationaryOp degree_weighted_op(const Graph& g);
/// Degree divided by the average degree, as a function on `space`.
Vec normalized_degree(const Graph& g, const SpacePtr& space);

struct UniformMap {
  Graph source;
  Graph target;
  std::vector<std::size_t> map;
  int a = 0;
  int b = 0;
};

struct UniformMapReport {
  bool homomorphism = true;
  bool uniform = true;
  /// Observed constants (0 when not constant).
  int a = 0;
  int b = 0;
  std::vector<std::string> violations;

  bool clean() const { return homomorphism && uniform && violations.empty(); }
};

/// Verifies the three uniformity conditions exhaustively. The declared a and b
/// are checked when nonzero.
UniformMapReport check_uniform_map(const UniformMap& m);

/// Checks D_{A(target)}({v_i}) = D_{A(source)/b}({v_i o f}) for every tuple
/// (functions on the target). Atom positions must agree exactly; masses to 1e-12.
bool pullback_profile_check(const UniformMap& m, const std::vector<std::vector<std::vector<double>>>& tuples);

/// Projection of G^i onto its first coordinate.
UniformMap power_projection(const Graph& g, int i);
/// Q_{2m} -> Q_m, y_j = x_{2j} xor x_{2j+1}; a (2^m, 2)-uniform map.
UniformMap hypercube_pair_xor_map(int m);
UniformMap identity_map(const Graph& g);

/// Radius-1 colored star: root color followed by the count of neighbors of each color.
using StarType = std::vector<int>;

struct ColoredStarDistribution {
  int d = 0;
  int k = 0;
  std::map<StarType, double> weights;
};

ColoredStarDistribution colored_star_stats(const Graph& g, const std::vector<int>& coloring, int k, int d);

struct BijectionReport {
  bool per_coloring_equal = true;
  bool sets_equal = true;
  std::size_t colorings = 0;
  std::size_t distinct = 0;

  bool ok() const { return per_coloring_equal && sets_equal; }
};

/// Enumerates all k-colorings, maps the exact partition profile of A(G)
/// through the bijection alpha, and compares with Z_{k,1}(G).
BijectionReport star_profile_bijection_check(const Graph& g, int k, int d = 3);

}  // namespace actconv
