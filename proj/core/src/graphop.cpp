#include "actconv/graphop.hpp"

#include <algorithm>
#include <cmath>

#include "actconv/error.hpp"
#include "actconv/norms.hpp"

namespace actconv {

namespace {

// F(x, y) = (1_x, 1_y)_A = a(x, y) weight(y), zero off the support.
Eigen::MatrixXd form_matrix(const Operator& op) {
  Eigen::MatrixXd f = op.to_dense();
  const auto n = f.rows();
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) {
      const double wx = op.space()->weight(static_cast<std::size_t>(x));
      const double wy = op.space()->weight(static_cast<std::size_t>(y));
      f(x, y) = (wx > 0.0 && wy > 0.0) ? f(x, y) * wy : 0.0;
    }
  }
  return f;
}

}  // namespace

PropertyReport check_properties(const Operator& op, double tol) {
  PropertyReport r;
  const auto& space = *op.space();
  const Eigen::MatrixXd f = form_matrix(op);
  const double fscale = std::max(1.0, f.cwiseAbs().maxCoeff());
  r.self_adjoint_deviation = (f - f.transpose()).cwiseAbs().maxCoeff();
  r.self_adjoint = r.self_adjoint_deviation <= tol * fscale;

  const Eigen::MatrixXd t = weighted_l2_matrix(op);
  if (t.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (t + t.transpose()), Eigen::EigenvaluesOnly);
    r.min_quadratic_form = es.eigenvalues()(0);
  }
  r.positive = r.min_quadratic_form >= -tol;

  const Eigen::MatrixXd a = op.to_dense();
  r.positivity_preserving = true;
  for (std::size_t x = 0; x < space.size() && r.positivity_preserving; ++x) {
    if (!space.in_support(x)) continue;
    for (std::size_t y = 0; y < space.size(); ++y) {
      if (space.in_support(y) && a(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) < -tol) {
        std::vector<double> w(space.size(), 0.0);
        w[x] = 1.0;
        r.witness = std::move(w);
        r.positivity_preserving = false;
        break;
      }
    }
  }

  const auto deg = op.apply(std::vector<double>(space.size(), 1.0));
  const double c = expectation(space, deg);
  for (std::size_t x = 0; x < space.size(); ++x) {
    if (space.in_support(x)) r.regularity_deviation = std::max(r.regularity_deviation, std::abs(deg[x] - c));
  }
  if (r.regularity_deviation <= tol * std::max(1.0, std::abs(c))) r.regular_constant = c;

  r.is_graphop = r.positivity_preserving && r.self_adjoint;
  r.is_markov_graphop = r.is_graphop && r.regular_constant && std::abs(*r.regular_constant - 1.0) <= tol;
  return r;
}

MeasureRep measure_rep(const Operator& op) {
  const auto props = check_properties(op, 1e-9);
  if (!props.is_graphop) throw PreconditionFailed("measure_rep: operator is not a graphop");
  MeasureRep rep;
  rep.space = op.space();
  rep.nu = form_matrix(op);
  rep.marginal.resize(op.size());
  for (Eigen::Index x = 0; x < rep.nu.rows(); ++x) {
    std::vector<double> terms(static_cast<std::size_t>(rep.nu.cols()));
    for (Eigen::Index y = 0; y < rep.nu.cols(); ++y) terms[static_cast<std::size_t>(y)] = rep.nu(x, y);
    rep.marginal[static_cast<std::size_t>(x)] = stable_sum(terms);
  }
  rep.degree_fn = Vec(op.space(), op.apply(std::vector<double>(op.size(), 1.0)));
  return rep;
}

OperatorPtr rebuild_from_measure(const MeasureRep& rep) {
  const auto n = rep.nu.rows();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index y = 0; y < n; ++y) {
    const double w = rep.space->weight(static_cast<std::size_t>(y));
    if (w > 0.0) a.col(y) = rep.nu.col(y) / w;
  }
  return make_dense(rep.space, std::move(a), "rebuilt from measure");
}

std::vector<std::optional<EmpiricalMeasure>> fiber_measures(const MeasureRep& rep) {
  const auto n = static_cast<std::size_t>(rep.nu.rows());
  std::vector<std::optional<EmpiricalMeasure>> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (!(rep.marginal[x] > 0.0)) continue;
    std::vector<std::vector<double>> pts;
    std::vector<double> masses;
    for (std::size_t y = 0; y < n; ++y) {
      const double m = rep.nu(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
      if (m > 0.0) {
        pts.push_back({static_cast<double>(y)});
        masses.push_back(m);
      }
    }
    const double total = stable_sum(masses);
    for (auto& m : masses) m /= total;
    const double residue = 1.0 - stable_sum(masses);
    if (!masses.empty()) *std::max_element(masses.begin(), masses.end()) += residue;
    out[x] = EmpiricalMeasure(1, std::move(pts), std::move(masses));
  }
  return out;
}

EmpiricalMeasure degree_distribution(const MeasureRep& rep) {
  return joint_distribution({rep.degree_fn}, rep.space);
}

double edge_density(const MeasureRep& rep) { return expectation(*rep.space, rep.degree_fn.values); }

}  // namespace actconv
