#include <cmath>

#include "actconv/error.hpp"
#include "actconv/graphop.hpp"
#include "actconv/graphs.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace actconv;
using doctest::Approx;

TEST_SUITE("graphop") {
  TEST_CASE("adjacency operators are graphops") {
    auto rng = make_stream(61, {1});
    for (int t = 0; t < 10; ++t) {
      const auto g = testing::random_connected_graph(rng, 3 + static_cast<std::size_t>(t), 0.3);
      const auto r = check_properties(*adjacency_op(g));
      CHECK(r.is_graphop);
      CHECK(r.self_adjoint);
      CHECK(r.positivity_preserving);
    }
  }

  TEST_CASE("markov graphop") {
    const auto r = check_properties(*markov_op(complete(2)).op);
    CHECK(r.is_markov_graphop);
    REQUIRE(r.regular_constant);
    CHECK(*r.regular_constant == 1.0);
  }

  TEST_CASE("negative entries give a witness") {
    Eigen::MatrixXd a(2, 2);
    a << 0, -1, -1, 0;
    const auto r = check_properties(*make_dense(make_uniform_space(2), a));
    CHECK_FALSE(r.positivity_preserving);
    CHECK_FALSE(r.is_graphop);
    REQUIRE(r.witness);
    CHECK(*r.witness == std::vector<double>{1, 0});
  }

  TEST_CASE("laplacian is positive but not positivity preserving") {
    const auto r = check_properties(*laplace_op(cycle(5)));
    CHECK(r.positive);
    CHECK(r.self_adjoint);
    CHECK(r.min_quadratic_form >= -1e-12);
    CHECK_FALSE(r.positivity_preserving);
  }

  TEST_CASE("non self-adjoint operators are detected") {
    Eigen::MatrixXd a(2, 2);
    a << 0, 1, 0, 0;
    const auto r = check_properties(*make_dense(make_uniform_space(2), a));
    CHECK_FALSE(r.self_adjoint);
    CHECK(r.self_adjoint_deviation > 0.1);
    CHECK_THROWS_AS(measure_rep(*make_dense(make_uniform_space(2), a)), PreconditionFailed);
  }

  TEST_CASE("measure representation") {
    const auto rep = measure_rep(*adjacency_op(complete(2)));
    CHECK(rep.nu(0, 0) == 0);
    CHECK(rep.nu(0, 1) == 0.5);
    CHECK(rep.nu(1, 0) == 0.5);
    CHECK(rep.total_mass() == 1.0);
    CHECK(edge_density(rep) == 1.0);

    const auto zero = measure_rep(*make_zero(make_uniform_space(3)));
    CHECK(zero.nu.isZero(0));

    auto rng = make_stream(62, {1});
    const auto g = testing::random_connected_graph(rng, 9, 0.3);
    const auto m = markov_op(g);
    const auto mr = measure_rep(*m.op);
    for (std::size_t x = 0; x < g.n(); ++x) CHECK(mr.marginal[x] == Approx(m.space->weight(x)).epsilon(1e-14));
    for (const auto& f : fiber_measures(mr)) {
      REQUIRE(f);
      double s = 0.0;
      for (double w : f->masses()) s += w;
      CHECK(s == Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("degree distribution") {
    const auto rep = measure_rep(*adjacency_op(star(4)));
    CHECK(degree_distribution(rep) == EmpiricalMeasure(1, {{1.0}, {3.0}}, {0.75, 0.25}));
  }

  TEST_CASE("rebuild from the measure reproduces the operator") {
    auto rng = make_stream(63, {1});
    for (int t = 0; t < 5; ++t) {
      const auto g = testing::random_connected_graph(rng, 4 + static_cast<std::size_t>(t), 0.4);
      for (const auto& op : {adjacency_op(g), markov_op(g).op, degree_weighted_op(g).op}) {
        const auto back = rebuild_from_measure(measure_rep(*op));
        for (int p = 0; p < 10; ++p) {
          const auto v = testing::random_vector(rng, g.n());
          const auto a = op->apply(v);
          const auto b = back->apply(v);
          for (std::size_t i = 0; i < g.n(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-10);
        }
      }
    }
  }

  TEST_CASE("null points have no fiber") {
    const std::vector<double> w{1, 0, 1};
    const auto s = make_space(w);
    const auto rep = measure_rep(*make_graphon_grid(s, Eigen::MatrixXd::Ones(3, 3)));
    const auto f = fiber_measures(rep);
    CHECK(f[0].has_value());
    CHECK_FALSE(f[1].has_value());
  }
}
