#include <cmath>

#include "actconv/experiments.hpp"
#include "actconv/graphop.hpp"
#include "actconv/norms.hpp"
#include "doctest.h"

using namespace actconv;
using doctest::Approx;

namespace {

ExperimentConfig quick(Family f, std::vector<std::size_t> sizes) {
  ExperimentConfig c;
  c.family = f;
  c.sizes = std::move(sizes);
  c.k_max = 2;
  c.budget.vectors_per_k = 4;
  return c;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("config validation") {
    CHECK_THROWS_AS(validate(quick(Family::Star, {16, 8})), std::invalid_argument);
    CHECK_THROWS_AS(validate(quick(Family::Star, {4})), std::invalid_argument);
    CHECK_THROWS_AS(validate(quick(Family::Star, {})), std::invalid_argument);
    CHECK_THROWS_AS(validate(quick(Family::Hypercube, {11})), std::invalid_argument);
    CHECK_THROWS_AS(validate(quick(Family::Projective, {4})), std::invalid_argument);
    CHECK_THROWS_AS(validate(quick(Family::Subdivision, {41})), std::invalid_argument);
    CHECK_THROWS_AS(validate(quick(Family::Rmt, {4096})), std::invalid_argument);
    auto bad_k = quick(Family::Star, {8});
    bad_k.k_max = 0;
    CHECK_THROWS_AS(validate(bad_k), std::invalid_argument);
    CHECK_NOTHROW(validate(quick(Family::Projective, {2, 3, 5, 7, 11})));
    CHECK(family_from_string(to_string(Family::Quasirandom)) == Family::Quasirandom);
  }

  TEST_CASE("star limit is a markov graphop with the right weights") {
    const auto lim = star_limit(12);
    CHECK(lim->space()->weight(0) == 0.5);
    CHECK(lim->space()->weight(5) == Approx(1.0 / 24).epsilon(1e-15));
    const auto r = check_properties(*lim);
    CHECK(r.is_markov_graphop);
    std::vector<double> v(13, 0.0);
    v[0] = 3;
    for (std::size_t i = 1; i < 13; ++i) v[i] = static_cast<double>(i);
    const auto out = lim->apply(v);
    CHECK(out[0] == Approx(6.5));
    for (std::size_t i = 1; i < 13; ++i) CHECK(out[i] == Approx(3.0));

    const auto m = star_markov(9);
    CHECK(m->space()->weight(0) == Approx(0.5).epsilon(1e-15));
    CHECK(m->space()->weight(3) == Approx(1.0 / 16).epsilon(1e-15));
  }

  TEST_CASE("subdivision limit is a markov graphop") {
    const auto lim = subdivision_limit(5);
    CHECK(lim->size() == 5 + 15);
    CHECK(check_properties(*lim).is_markov_graphop);
    CHECK(check_properties(*subdivision_markov(5)).is_markov_graphop);
  }

  TEST_CASE("projective operators") {
    const auto a = projective_scaled(2);
    const auto b = projective_rank_two(2);
    const auto w = projective_graphon(2);
    // B_q and the two-block graphon act identically
    const Eigen::MatrixXd db = b->to_dense();
    const Eigen::MatrixXd dw = w->to_dense();
    CHECK((db - dw).cwiseAbs().maxCoeff() <= 1e-15);
    const double nrm = norm_pq(*difference(*a, *b), 2, 2, NormMode::Exact);
    CHECK(nrm == Approx(std::sqrt(2.0) / 3).epsilon(1e-12));
  }

  TEST_CASE("self distances are zero") {
    SamplingBudget b;
    b.vectors_per_k = 4;
    const auto lim = star_limit(20);
    CHECK(dm_estimate(*lim, *lim, 1, b, DmMode::Paired).value == 0.0);
  }

  TEST_CASE("curves are reproducible") {
    const auto cfg = quick(Family::Star, {8, 16});
    const auto a = run_curve(cfg);
    const auto b = run_curve(cfg);
    REQUIRE(a.rows.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(a.rows[i].estimate.value == b.rows[i].estimate.value);
      CHECK(a.rows[i].estimate.value >= 0.0);
      CHECK(a.rows[i].estimate.per_k == b.rows[i].estimate.per_k);
    }
  }

  TEST_CASE("every family runs") {
    CHECK(run_curve(quick(Family::Hypercube, {2, 3, 4})).rows.size() == 2);
    CHECK(run_curve(quick(Family::Power, {1, 2})).rows.size() == 1);
    CHECK(run_curve(quick(Family::Subdivision, {3, 4})).rows.size() == 2);
    CHECK(run_curve(quick(Family::Quasirandom, {8, 16})).rows.size() == 2);
    const auto proj = run_curve(quick(Family::Projective, {2, 3}));
    REQUIRE(proj.rows.size() == 4);
    CHECK(proj.rows[0].exact == Approx(std::sqrt(2.0) / 3).epsilon(1e-12));
    CHECK(std::isnan(proj.rows[1].exact));
    CHECK_THROWS_AS(run_curve(quick(Family::Rmt, {8})), std::invalid_argument);
  }

  TEST_CASE("random sign matrices") {
    const auto h = random_sign_matrix(16, 3);
    const Eigen::MatrixXd d = h->to_dense();
    CHECK((d.cwiseAbs().array() - 0.25).abs().maxCoeff() == 0.0);
    CHECK((random_sign_matrix(16, 3)->to_dense() - d).isZero(0));
  }

  TEST_CASE("column perturbation moves each measure by at most 1/n") {
    SamplingBudget b;
    b.vectors_per_k = 4;
    for (std::size_t n : {64, 128}) {
      const auto h = random_sign_matrix(n, 7);
      for (int k = 1; k <= 2; ++k) CHECK(column_perturbation_shift(*h, 5, k, b) <= 1.0 / static_cast<double>(n) + 1e-12);
    }
  }

  TEST_CASE("rmt report shape") {
    auto cfg = quick(Family::Rmt, {16, 32});
    cfg.reps = 3;
    const auto r = run_rmt_concentration(cfg);
    REQUIRE(r.rows.size() == 2);
    for (const auto& row : r.rows) {
      CHECK(row.statistics.size() == 3);
      CHECK(row.norms.size() == 3);
      CHECK(row.column_bound_holds);
      CHECK(row.stddev >= 0.0);
    }
  }

  TEST_CASE("base graph names") {
    CHECK(parse_base_graph("K3").n() == 3);
    CHECK(parse_base_graph("C5").edges().size() == 5);
    CHECK_THROWS_AS(parse_base_graph("Q3"), std::invalid_argument);
  }
}
