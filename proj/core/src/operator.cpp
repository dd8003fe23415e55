#include "actconv/operator.hpp"

#include <stdexcept>
#include <string>

#include "actconv/error.hpp"

namespace actconv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_square(const Eigen::MatrixXd& m, std::size_t n, const char* what) {
  if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n) {
    throw std::invalid_argument(std::string(what) + ": matrix must be " + std::to_string(n) +
                                "x" + std::to_string(n));
  }
}

}  // namespace

Layout Layout::cumulative(const FiniteSpace& space) {
  Layout out;
  out.dims = 1;
  out.block.assign(space.size(), 0);
  out.coord.resize(space.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    out.coord[i] = {acc + 0.5 * space.weight(i), 0.0};
    acc += space.weight(i);
  }
  return out;
}

Operator::Operator(SpacePtr space, Kernel kernel, std::string metadata)
    : space_(std::move(space)), kernel_(std::move(kernel)), metadata_(std::move(metadata)) {
  if (!space_) throw std::invalid_argument("Operator: null space");
  const auto n = space_->size();
  std::visit(overloaded{
                 [&](const DenseKernel& k) { check_square(k.a, n, "dense operator"); },
                 [&](const SparseKernel& k) {
                   if (k.in.size() != n) throw std::invalid_argument("sparse operator: size mismatch");
                   if (!k.divisor.empty() && k.divisor.size() != n) {
                     throw std::invalid_argument("sparse operator: divisor size mismatch");
                   }
                   for (const auto& row : k.in) {
                     for (const auto& [j, a] : row) {
                       if (j >= n) throw std::invalid_argument("sparse operator: index out of range");
                     }
                   }
                 },
                 [&](const ScaledKernel& k) {
                   if (!k.inner) throw std::invalid_argument("scaled operator: null inner operator");
                   require_same_space(k.inner->space(), space_, "scaled operator");
                 },
                 [&](const GraphonGrid& k) { check_square(k.w, n, "graphon grid"); },
             },
             kernel_);
}

OperatorKind Operator::kind() const {
  return static_cast<OperatorKind>(kernel_.index());
}

bool Operator::is_graphon_grid() const {
  if (std::holds_alternative<GraphonGrid>(kernel_)) return true;
  if (const auto* s = std::get_if<ScaledKernel>(&kernel_)) return s->inner->is_graphon_grid();
  return false;
}

Operator Operator::with_layout(Layout layout) const {
  if (layout.block.size() != size() || layout.coord.size() != size()) {
    throw std::invalid_argument("Operator::with_layout: layout size mismatch");
  }
  Operator copy = *this;
  copy.layout_ = std::move(layout);
  return copy;
}

Operator Operator::with_metadata(std::string metadata) const {
  Operator copy = *this;
  copy.metadata_ = std::move(metadata);
  return copy;
}

void Operator::apply_into(std::span<const double> v, std::span<double> out) const {
  const auto n = size();
  if (v.size() != n || out.size() != n) throw SpaceMismatch("Operator::apply: length mismatch");
  std::visit(overloaded{
                 [&](const DenseKernel& k) {
                   Eigen::Map<const Eigen::VectorXd> vin(v.data(), static_cast<Eigen::Index>(n));
                   Eigen::Map<Eigen::VectorXd> vout(out.data(), static_cast<Eigen::Index>(n));
                   vout.noalias() = k.a.transpose() * vin;
                 },
                 [&](const SparseKernel& k) {
                   for (std::size_t i = 0; i < n; ++i) {
                     double s = 0.0;
                     for (const auto& [j, a] : k.in[i]) s += a * v[j];
                     out[i] = k.divisor.empty() ? s : s / k.divisor[i];
                   }
                 },
                 [&](const ScaledKernel& k) {
                   k.inner->apply_into(v, out);
                   for (auto& x : out) x *= k.scale;
                 },
                 [&](const GraphonGrid& k) {
                   const auto& w = space_->weights();
                   std::vector<double> vw(n);
                   for (std::size_t y = 0; y < n; ++y) vw[y] = v[y] * w[y];
                   Eigen::Map<const Eigen::VectorXd> vin(vw.data(), static_cast<Eigen::Index>(n));
                   Eigen::Map<Eigen::VectorXd> vout(out.data(), static_cast<Eigen::Index>(n));
                   vout.noalias() = k.w.transpose() * vin;
                 },
             },
             kernel_);
}

std::vector<double> Operator::apply(std::span<const double> v) const {
  std::vector<double> out(size());
  apply_into(v, out);
  return out;
}

Eigen::MatrixXd Operator::to_dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  return std::visit(overloaded{
                        [&](const DenseKernel& k) -> Eigen::MatrixXd { return k.a; },
                        [&](const SparseKernel& k) -> Eigen::MatrixXd {
                          Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
                          for (Eigen::Index i = 0; i < n; ++i) {
                            const double d = k.divisor.empty() ? 1.0 : k.divisor[i];
                            for (const auto& [j, x] : k.in[i]) a(static_cast<Eigen::Index>(j), i) += x / d;
                          }
                          return a;
                        },
                        [&](const ScaledKernel& k) -> Eigen::MatrixXd {
                          return k.scale * k.inner->to_dense();
                        },
                        [&](const GraphonGrid& k) -> Eigen::MatrixXd {
                          Eigen::MatrixXd a = k.w;
                          for (Eigen::Index y = 0; y < n; ++y) a.row(y) *= space_->weight(y);
                          return a;
                        },
                    },
                    kernel_);
}

Vec apply(const Operator& op, const Vec& v) {
  require_same_space(op.space(), v.space, "apply");
  return Vec(op.space(), op.apply(v.values));
}

OperatorPtr make_dense(SpacePtr space, Eigen::MatrixXd a, std::string metadata) {
  return std::make_shared<const Operator>(std::move(space), DenseKernel{std::move(a)},
                                          std::move(metadata));
}

OperatorPtr make_sparse(SpacePtr space, SparseKernel kernel, std::string metadata) {
  return std::make_shared<const Operator>(std::move(space), std::move(kernel), std::move(metadata));
}

OperatorPtr make_scaled(OperatorPtr inner, double scale, std::string metadata) {
  auto space = inner->space();
  if (metadata.empty()) metadata = inner->metadata() + " * " + std::to_string(scale);
  Operator out(std::move(space), ScaledKernel{std::move(inner), scale}, std::move(metadata));
  return std::make_shared<const Operator>(std::move(out));
}

OperatorPtr make_graphon_grid(SpacePtr space, Eigen::MatrixXd w, std::string metadata) {
  return std::make_shared<const Operator>(std::move(space), GraphonGrid{std::move(w)},
                                          std::move(metadata));
}

OperatorPtr make_identity(SpacePtr space) {
  const auto n = static_cast<Eigen::Index>(space->size());
  return make_dense(std::move(space), Eigen::MatrixXd::Identity(n, n), "identity");
}

OperatorPtr make_zero(SpacePtr space) {
  const auto n = static_cast<Eigen::Index>(space->size());
  return make_dense(std::move(space), Eigen::MatrixXd::Zero(n, n), "zero");
}

OperatorPtr difference(const Operator& a, const Operator& b) {
  require_same_space(a.space(), b.space(), "difference");
  return make_dense(a.space(), a.to_dense() - b.to_dense(),
                    "(" + a.metadata() + ") - (" + b.metadata() + ")");
}

OperatorPtr relabel(const Operator& op, std::span<const std::size_t> perm) {
  const auto n = op.size();
  if (perm.size() != n) throw std::invalid_argument("relabel: permutation size mismatch");
  std::vector<bool> seen(n, false);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (perm[i] >= n || seen[perm[i]]) throw std::invalid_argument("relabel: not a permutation");
    seen[perm[i]] = true;
    w[i] = op.space()->weight(perm[i]);
    if (w[i] != op.space()->weight(i)) {
      throw std::invalid_argument("relabel: permutation is not measure preserving");
    }
  }
  const Eigen::MatrixXd a = op.to_dense();
  Eigen::MatrixXd b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          a(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j]));
    }
  }
  return make_dense(op.space(), std::move(b), op.metadata() + " relabeled");
}

MarkovPair::MarkovPair(OperatorPtr o, Vec f) : op(std::move(o)), ref_fn(std::move(f)) {
  if (!op) throw std::invalid_argument("MarkovPair: null operator");
  require_same_space(op->space(), ref_fn.space, "MarkovPair");
}

}  // namespace actconv
