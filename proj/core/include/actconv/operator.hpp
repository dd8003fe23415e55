#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "actconv/space.hpp"

namespace actconv {

class Operator;
using OperatorPtr = std::shared_ptr<const Operator>;

/// Stored matrix with the row-vector convention (vA)(i) = sum_j v(j) a(j, i).
struct DenseKernel {
  Eigen::MatrixXd a;
};

/// Sparse kernel stored by target: (vA)(i) = (sum_{(j,a) in in[i]} a * v(j)) / divisor[i].
/// The divisor keeps random-walk kernels exactly 1-regular in floating point.
struct SparseKernel {
  std::vector<std::vector<std::pair<std::size_t, double>>> in;
  std::vector<double> divisor;  // empty means all ones
};

/// c * inner.
struct ScaledKernel {
  OperatorPtr inner;
  double scale = 1.0;
};

/// Step kernel over weighted cells: (vA)(x) = sum_y v(y) w(y, x) weight(y).
struct GraphonGrid {
  Eigen::MatrixXd w;
};

enum class OperatorKind { Dense, Sparse, Scaled, GraphonGrid };

/// Positions of the points of a space inside a continuum picture of the
/// object (block id plus up to two coordinates in [0,1]). Used to transfer
/// test functions between discretizations of the same limit.
struct Layout {
  std::vector<int> block;
  std::vector<std::array<double, 2>> coord;
  int dims = 1;

  /// Points placed along [0,1] in index order at the midpoints of their
  /// cumulative-weight intervals.
  static Layout cumulative(const FiniteSpace& space);
};

/// A P-operator on a finite probability space. Immutable after construction.
class Operator {
 public:
  using Kernel = std::variant<DenseKernel, SparseKernel, ScaledKernel, GraphonGrid>;

  Operator(SpacePtr space, Kernel kernel, std::string metadata = {});

  const SpacePtr& space() const { return space_; }
  std::size_t size() const { return space_->size(); }
  OperatorKind kind() const;
  const Kernel& kernel() const { return kernel_; }
  const std::string& metadata() const { return metadata_; }

  const std::optional<Layout>& layout() const { return layout_; }
  Operator with_layout(Layout layout) const;
  Operator with_metadata(std::string metadata) const;

  /// v -> vA. Lengths must equal the space size.
  void apply_into(std::span<const double> v, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> v) const;

  /// Matrix a with (vA)(i) = sum_j v(j) a(j, i).
  Eigen::MatrixXd to_dense() const;

  /// True when the kernel is a graphon grid (step-function strategies apply).
  bool is_graphon_grid() const;

 private:
  SpacePtr space_;
  Kernel kernel_;
  std::string metadata_;
  std::optional<Layout> layout_;
};

/// Applies op to v; throws SpaceMismatch when v lives elsewhere.
Vec apply(const Operator& op, const Vec& v);

OperatorPtr make_dense(SpacePtr space, Eigen::MatrixXd a, std::string metadata = {});
OperatorPtr make_sparse(SpacePtr space, SparseKernel kernel, std::string metadata = {});
OperatorPtr make_scaled(OperatorPtr inner, double scale, std::string metadata = {});
OperatorPtr make_graphon_grid(SpacePtr space, Eigen::MatrixXd w, std::string metadata = {});
OperatorPtr make_identity(SpacePtr space);
OperatorPtr make_zero(SpacePtr space);

/// Dense a - b (same space required).
OperatorPtr difference(const Operator& a, const Operator& b);

/// A^psi: the operator relabeled by the permutation perm (new point i is
/// old point perm[i]); requires perm to preserve the weights.
OperatorPtr relabel(const Operator& op, std::span<const std::size_t> perm);

/// A Markov graphop together with a reference function on the same space.
struct MarkovPair {
  OperatorPtr op;
  Vec ref_fn;

  MarkovPair(OperatorPtr o, Vec f);
};

}  // namespace actconv
