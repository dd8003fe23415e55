#include "actconv/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "actconv/error.hpp"
#include "actconv/rng.hpp"

namespace actconv {

namespace {

struct SupportView {
  std::vector<std::size_t> idx;
  std::vector<double> w;
  Eigen::MatrixXd a;  // a(j, i) restricted to support rows and columns
};

SupportView support_view(const Operator& op) {
  SupportView s;
  s.idx = op.space()->support();
  const auto m = static_cast<Eigen::Index>(s.idx.size());
  const Eigen::MatrixXd full = op.to_dense();
  s.a.resize(m, m);
  s.w.resize(s.idx.size());
  for (Eigen::Index r = 0; r < m; ++r) {
    s.w[static_cast<std::size_t>(r)] = op.space()->weight(s.idx[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < m; ++c) {
      s.a(r, c) = full(static_cast<Eigen::Index>(s.idx[static_cast<std::size_t>(r)]),
                       static_cast<Eigen::Index>(s.idx[static_cast<std::size_t>(c)]));
    }
  }
  return s;
}

double weighted_norm(const std::vector<double>& w, const Eigen::VectorXd& v, double p) {
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double x = std::abs(v(i));
    s += w[static_cast<std::size_t>(i)] * (p == 1.0 ? x : std::pow(x, p));
  }
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

void check_exponents(double p, double q) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw std::invalid_argument("norm_pq: p and q must lie in [1, inf]");
}

std::vector<double> to_full(const SupportView& s, std::size_t n, const Eigen::VectorXd& v) {
  std::vector<double> out(n, 0.0);
  for (std::size_t r = 0; r < s.idx.size(); ++r) out[s.idx[r]] = v(static_cast<Eigen::Index>(r));
  return out;
}

NormResult exact_inf_to_one(const Operator& op) {
  const SupportView s = support_view(op);
  const std::size_t m = s.idx.size();
  if (m > kMaxExactEnumeration) {
    throw LimitExceeded("norm_pq: exact (inf,1) needs support size <= " +
                        std::to_string(kMaxExactEnumeration) + ", got " + std::to_string(m));
  }
  const auto mi = static_cast<Eigen::Index>(m);
  // y = vA over support columns; start at v = (1,...,1); v(0) stays +1 (|.| is even).
  Eigen::VectorXd v = Eigen::VectorXd::Ones(mi);
  Eigen::VectorXd y = s.a.transpose() * v;
  auto objective = [&](const Eigen::VectorXd& yy) {
    double t = 0.0;
    for (Eigen::Index i = 0; i < mi; ++i) t += s.w[static_cast<std::size_t>(i)] * std::abs(yy(i));
    return t;
  };
  double best = objective(y);
  Eigen::VectorXd best_v = v;
  if (m > 1) {
    const std::uint64_t count = std::uint64_t{1} << (m - 1);
    for (std::uint64_t g = 1; g < count; ++g) {
      // Gray code step flips bit ctz(g) of the free coordinates 1..m-1.
      const auto bit = static_cast<Eigen::Index>(__builtin_ctzll(g)) + 1;
      y.noalias() -= (2.0 * v(bit)) * s.a.row(bit).transpose();
      v(bit) = -v(bit);
      const double val = objective(y);
      if (val > best) {
        best = val;
        best_v = v;
      }
    }
  }
  return {best, to_full(s, op.size(), best_v)};
}

NormResult exact_two_to_two(const Operator& op) {
  std::vector<std::size_t> support;
  const Eigen::MatrixXd t = weighted_l2_matrix(op, &support);
  if (t.rows() == 0) return {0.0, std::vector<double>(op.size(), 0.0)};
  Eigen::BDCSVD<Eigen::MatrixXd> bdc(t, Eigen::ComputeThinV);
  const double sigma = bdc.singularValues()(0);
  // Maximizing input in L^2 coordinates is the top right singular vector;
  // map back with D^{-1/2}.
  Eigen::VectorXd u = bdc.matrixV().col(0);
  std::vector<double> v(op.size(), 0.0);
  for (std::size_t r = 0; r < support.size(); ++r) {
    v[support[r]] = u(static_cast<Eigen::Index>(r)) / std::sqrt(op.space()->weight(support[r]));
  }
  return {sigma, std::move(v)};
}

// Best response of <g, v> over the weighted unit p-ball.
Eigen::VectorXd dual_vertex(const Eigen::VectorXd& g, const std::vector<double>& w, double p) {
  const Eigen::Index m = g.size();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
  if (std::isinf(p)) {
    for (Eigen::Index j = 0; j < m; ++j) v(j) = g(j) < 0.0 ? -1.0 : 1.0;
    return v;
  }
  if (p == 1.0) {
    Eigen::Index best = 0;
    double best_val = -1.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double val = std::abs(g(j)) / w[static_cast<std::size_t>(j)];
      if (val > best_val) {
        best_val = val;
        best = j;
      }
    }
    v(best) = (g(best) < 0.0 ? -1.0 : 1.0) / w[static_cast<std::size_t>(best)];
    return v;
  }
  const double pstar = p / (p - 1.0);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double mag = std::pow(std::abs(g(j)) / w[static_cast<std::size_t>(j)], pstar - 1.0);
    v(j) = g(j) < 0.0 ? -mag : mag;
  }
  const double nv = weighted_norm(w, v, p);
  if (nv > 0.0) v /= nv;
  return v;
}

NormResult heuristic_norm(const Operator& op, double p, double q, const HeuristicOptions& opts) {
  const SupportView s = support_view(op);
  const auto m = static_cast<Eigen::Index>(s.idx.size());
  if (m == 0) return {0.0, std::vector<double>(op.size(), 0.0)};

  auto ratio = [&](const Eigen::VectorXd& v) {
    const double nv = weighted_norm(s.w, v, p);
    if (!(nv > 0.0)) return 0.0;
    const Eigen::VectorXd y = s.a.transpose() * v;
    return weighted_norm(s.w, y, q) / nv;
  };
  auto gradient = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd dy = Eigen::VectorXd::Zero(m);
    if (std::isinf(q)) {
      Eigen::Index imax = 0;
      y.cwiseAbs().maxCoeff(&imax);
      dy(imax) = y(imax) < 0.0 ? -1.0 : 1.0;
    } else {
      for (Eigen::Index i = 0; i < m; ++i) {
        const double a = std::abs(y(i));
        const double mag = q == 1.0 ? 1.0 : std::pow(a, q - 1.0);
        dy(i) = s.w[static_cast<std::size_t>(i)] * (y(i) < 0.0 ? -mag : (y(i) > 0.0 ? mag : 0.0));
      }
    }
    return Eigen::VectorXd(s.a * dy);
  };

  std::vector<Eigen::VectorXd> starts;
  starts.emplace_back(Eigen::VectorXd::Ones(m));
  for (const auto& ws : opts.warm_starts) {
    if (ws.size() != op.size()) throw std::invalid_argument("norm_pq: warm start has wrong length");
    Eigen::VectorXd v(m);
    for (Eigen::Index r = 0; r < m; ++r) v(r) = ws[s.idx[static_cast<std::size_t>(r)]];
    starts.push_back(std::move(v));
  }
  for (int st = 0; st < opts.starts; ++st) {
    Rng rng = make_stream(opts.seed, {static_cast<std::uint64_t>(st)});
    Eigen::VectorXd v(m);
    for (Eigen::Index r = 0; r < m; ++r) v(r) = uniform_pm1(rng);
    starts.push_back(std::move(v));
  }

  double best = 0.0;
  Eigen::VectorXd best_v = Eigen::VectorXd::Zero(m);
  for (auto v : starts) {
    double cur = ratio(v);
    if (cur > best) {
      best = cur;
      best_v = v;
    }
    for (int it = 0; it < opts.iterations; ++it) {
      const Eigen::VectorXd y = s.a.transpose() * v;
      const Eigen::VectorXd g = gradient(y);
      if (g.cwiseAbs().maxCoeff() == 0.0) break;
      Eigen::VectorXd next = dual_vertex(g, s.w, p);
      const double val = ratio(next);
      if (!(val > cur * (1.0 + 1e-14))) {
        if (val > cur) {
          cur = val;
          v = next;
        }
        break;
      }
      cur = val;
      v = std::move(next);
    }
    if (cur > best) {
      best = cur;
      best_v = v;
    }
  }
  return {best, to_full(s, op.size(), best_v)};
}

}  // namespace

Eigen::MatrixXd weighted_l2_matrix(const Operator& op, std::vector<std::size_t>* support) {
  const auto idx = op.space()->support();
  const auto m = static_cast<Eigen::Index>(idx.size());
  const Eigen::MatrixXd a = op.to_dense();
  Eigen::MatrixXd t(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double wi = std::sqrt(op.space()->weight(idx[static_cast<std::size_t>(i)]));
    for (Eigen::Index j = 0; j < m; ++j) {
      const double wj = std::sqrt(op.space()->weight(idx[static_cast<std::size_t>(j)]));
      t(i, j) = wi * a(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]),
                       static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)])) /
                wj;
    }
  }
  if (support) *support = idx;
  return t;
}

NormResult norm_pq_detailed(const Operator& op, double p, double q, NormMode mode,
                            const HeuristicOptions& opts) {
  check_exponents(p, q);
  if (mode == NormMode::Exact) {
    if (std::isinf(p) && q == 1.0) return exact_inf_to_one(op);
    if (p == 2.0 && q == 2.0) {
      if (op.size() > kMaxDenseSpectral) {
        throw LimitExceeded("norm_pq: exact (2,2) limited to size " + std::to_string(kMaxDenseSpectral));
      }
      return exact_two_to_two(op);
    }
    throw std::invalid_argument("norm_pq: exact mode supports only (inf,1) and (2,2)");
  }
  return heuristic_norm(op, p, q, opts);
}

double norm_pq(const Operator& op, double p, double q, NormMode mode, const HeuristicOptions& opts) {
  return norm_pq_detailed(op, p, q, mode, opts).value;
}

double cut_norm(const Operator& op, NormMode mode, const HeuristicOptions& opts) {
  const SupportView s = support_view(op);
  const std::size_t m = s.idx.size();
  const auto mi = static_cast<Eigen::Index>(m);
  auto best_t = [&](const Eigen::VectorXd& y) {
    double pos = 0.0;
    double neg = 0.0;
    for (Eigen::Index x = 0; x < mi; ++x) {
      const double c = s.w[static_cast<std::size_t>(x)] * y(x);
      if (c > 0.0) pos += c;
      else neg -= c;
    }
    return std::max(pos, neg);
  };
  if (mode == NormMode::Exact) {
    if (m > kMaxExactEnumeration) {
      throw LimitExceeded("cut_norm: exact mode needs support size <= " +
                          std::to_string(kMaxExactEnumeration));
    }
    // y = 1_S A over the support, S walked in Gray-code order from the empty set.
    Eigen::VectorXd y = Eigen::VectorXd::Zero(mi);
    std::vector<bool> in_s(m, false);
    double best = 0.0;
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t g = 1; g < count; ++g) {
      const auto bit = static_cast<std::size_t>(__builtin_ctzll(g));
      const double sign = in_s[bit] ? -1.0 : 1.0;
      in_s[bit] = !in_s[bit];
      y.noalias() += sign * s.a.row(static_cast<Eigen::Index>(bit)).transpose();
      best = std::max(best, best_t(y));
    }
    return best;
  }
  // Alternating best responses between S and T.
  double best = 0.0;
  for (int st = 0; st < std::max(1, opts.starts); ++st) {
    Rng rng = make_stream(opts.seed, {static_cast<std::uint64_t>(st), 0xc07});
    Eigen::VectorXd ind_s(mi);
    for (Eigen::Index j = 0; j < mi; ++j) ind_s(j) = (rng() & 1U) ? 1.0 : 0.0;
    double cur = -1.0;
    for (int it = 0; it < opts.iterations; ++it) {
      const Eigen::VectorXd y = s.a.transpose() * ind_s;
      Eigen::VectorXd pos_t(mi), neg_t(mi);
      double pos = 0.0;
      double neg = 0.0;
      for (Eigen::Index x = 0; x < mi; ++x) {
        const double c = s.w[static_cast<std::size_t>(x)] * y(x);
        pos_t(x) = c > 0.0 ? 1.0 : 0.0;
        neg_t(x) = c < 0.0 ? 1.0 : 0.0;
        if (c > 0.0) pos += c;
        else neg -= c;
      }
      const double val = std::max(pos, neg);
      if (!(val > cur)) break;
      cur = val;
      const Eigen::VectorXd ind_t = pos >= neg ? pos_t : neg_t;
      const double sgn = pos >= neg ? 1.0 : -1.0;
      // Best S against T: points whose row has the right sign against w*1_T.
      Eigen::VectorXd wt(mi);
      for (Eigen::Index x = 0; x < mi; ++x) wt(x) = s.w[static_cast<std::size_t>(x)] * ind_t(x);
      const Eigen::VectorXd d = s.a * wt;
      for (Eigen::Index j = 0; j < mi; ++j) ind_s(j) = sgn * d(j) > 0.0 ? 1.0 : 0.0;
    }
    best = std::max(best, cur);
  }
  return best;
}

double bilinear_form(const Operator& op, std::span<const double> f, std::span<const double> g) {
  if (f.size() != op.size() || g.size() != op.size()) {
    throw SpaceMismatch("bilinear_form: length mismatch");
  }
  const auto fa = op.apply(f);
  std::vector<double> terms(fa.size());
  for (std::size_t x = 0; x < fa.size(); ++x) terms[x] = fa[x] * g[x] * op.space()->weight(x);
  return stable_sum(terms);
}

double bilinear_form(const Operator& op, const Vec& f, const Vec& g) {
  require_same_space(op.space(), f.space, "bilinear_form");
  require_same_space(op.space(), g.space, "bilinear_form");
  return bilinear_form(op, std::span<const double>(f.values), std::span<const double>(g.values));
}

std::vector<double> self_adjoint_spectrum(const Operator& op, double tol) {
  if (op.size() > kMaxDenseSpectral) throw LimitExceeded("self_adjoint_spectrum: operator too large");
  const Eigen::MatrixXd t = weighted_l2_matrix(op);
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  if ((t - t.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw PreconditionFailed("self_adjoint_spectrum: operator is not self-adjoint");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (t + t.transpose()), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace actconv
