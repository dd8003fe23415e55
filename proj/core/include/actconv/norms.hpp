#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "actconv/operator.hpp"

namespace actconv {

enum class NormMode { Exact, Heuristic };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Largest space size for which sign-vector / subset enumeration is allowed.
inline constexpr std::size_t kMaxExactEnumeration = 22;
/// Largest space size for dense spectral computations.
inline constexpr std::size_t kMaxDenseSpectral = 4096;

struct HeuristicOptions {
  int starts = 16;
  int iterations = 200;
  std::uint64_t seed = 0x5eed;
  /// Extra starting vectors (e.g. maximizers found for another (p,q) pair).
  std::vector<std::vector<double>> warm_starts;
};

struct NormResult {
  double value = 0.0;
  /// A maximizing (or best found) input vector.
  std::vector<double> argmax;
};

/// ||A||_{p->q} = sup ||vA||_q / ||v||_p with weight-aware norms.
/// Exact mode: (inf,1) by sign-vector enumeration (support size <= 22) or
/// (2,2) via the spectral norm of D^{1/2} A^T D^{-1/2} on the support.
/// Heuristic mode: multi-start nonlinear power iteration; a lower bound.
double norm_pq(const Operator& op, double p, double q, NormMode mode,
               const HeuristicOptions& opts = {});
NormResult norm_pq_detailed(const Operator& op, double p, double q, NormMode mode,
                            const HeuristicOptions& opts = {});

/// ||A||_box = sup_{S,T} |(1_S, 1_T)_A|. Exact mode enumerates S and takes
/// the optimal T for each S; heuristic mode alternates best responses.
double cut_norm(const Operator& op, NormMode mode, const HeuristicOptions& opts = {});

/// (f,g)_A = E((fA) g).
double bilinear_form(const Operator& op, const Vec& f, const Vec& g);
double bilinear_form(const Operator& op, std::span<const double> f, std::span<const double> g);

/// D^{1/2} A^T D^{-1/2} restricted to the support of the space, i.e. the
/// operator in an orthonormal basis of L^2(Omega, mu). Returns the support too.
Eigen::MatrixXd weighted_l2_matrix(const Operator& op, std::vector<std::size_t>* support = nullptr);

/// Eigenvalues of a self-adjoint operator on L^2(mu), ascending.
/// Throws PreconditionFailed if the weighted matrix is not symmetric within tol.
std::vector<double> self_adjoint_spectrum(const Operator& op, double tol = 1e-9);

}  // namespace actconv
