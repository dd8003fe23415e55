#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "actconv/measure.hpp"
#include "actconv/operator.hpp"

namespace actconv {

struct PropertyReport {
  bool self_adjoint = false;
  double self_adjoint_deviation = 0.0;
  bool positive = false;
  /// Smallest eigenvalue of the symmetrized form (v,v)_A on the unit L^2 sphere.
  double min_quadratic_form = 0.0;
  bool positivity_preserving = false;
  /// A nonnegative v with a negative entry in vA, when one exists.
  std::optional<std::vector<double>> witness;
  /// c = E(1A), present when 1A is constant within tol.
  std::optional<double> regular_constant;
  double regularity_deviation = 0.0;
  bool is_graphop = false;
  bool is_markov_graphop = false;
};

PropertyReport check_properties(const Operator& op, double tol = 1e-9);

/// The symmetric measure nu({x} x {y}) = (1_x, 1_y)_A of a graphop.
struct MeasureRep {
  SpacePtr space;
  Eigen::MatrixXd nu;
  std::vector<double> marginal;
  Vec degree_fn;

  double total_mass() const { return nu.sum(); }
};

/// Throws PreconditionFailed unless op is a graphop at tolerance 1e-9.
MeasureRep measure_rep(const Operator& op);

/// The graphop determined by nu: (fA)(x) = sum_y f(y) nu(y, x) / weight(x).
OperatorPtr rebuild_from_measure(const MeasureRep& rep);

/// Row x of nu normalized by marginal(x); nullopt where marginal(x) = 0.
std::vector<std::optional<EmpiricalMeasure>> fiber_measures(const MeasureRep& rep);
EmpiricalMeasure degree_distribution(const MeasureRep& rep);
double edge_density(const MeasureRep& rep);

}  // namespace actconv
