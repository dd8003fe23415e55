#include <cmath>

#include "actconv/dm.hpp"
#include "actconv/error.hpp"
#include "actconv/graphs.hpp"
#include "actconv/measure.hpp"
#include "actconv/norms.hpp"
#include "actconv/oracles.hpp"
#include "actconv/prokhorov.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace actconv;
using doctest::Approx;

namespace {

EmpiricalMeasure d1(double x) { return EmpiricalMeasure::dirac({x}); }

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("empirical measures are canonical") {
    const EmpiricalMeasure a(1, {{1.0}, {0.0}, {1.0}}, {0.25, 0.5, 0.25});
    const EmpiricalMeasure b(1, {{0.0}, {1.0}}, {0.5, 0.5});
    CHECK(a == b);
    const EmpiricalMeasure c(1, {{0.0}, {2.0}, {1.0}}, {0.5, 0.0, 0.5});
    CHECK(c == b);
    CHECK(c.size() == 2);
    CHECK_THROWS_AS(EmpiricalMeasure(1, {{0.0}}, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(EmpiricalMeasure(2, {{0.0}}, {1.0}), std::invalid_argument);
  }

  TEST_CASE("joint distributions") {
    const auto u4 = make_uniform_space(4);
    const auto m = joint_distribution({Vec(u4, {1, 0, 1, 0})}, u4);
    CHECK(m == EmpiricalMeasure(1, {{0.0}, {1.0}}, {0.5, 0.5}));

    const auto u2 = make_uniform_space(2);
    const auto j = joint_distribution({Vec(u2, {1, 1}), Vec(u2, {0, 1})}, u2);
    CHECK(j == EmpiricalMeasure(2, {{1.0, 0.0}, {1.0, 1.0}}, {0.5, 0.5}));

    const auto u1 = make_uniform_space(1);
    CHECK(joint_distribution({Vec(u1, {5})}, u1) == d1(5));

    // null points carry no mass
    const std::vector<double> w{1, 0, 1};
    const auto s = make_space(w);
    CHECK(joint_distribution({Vec(s, {2, 7, 2})}, s) == d1(2));
  }

  TEST_CASE("marginals and tau") {
    const EmpiricalMeasure m(2, {{1.0, -3.0}, {0.0, 1.0}}, {0.5, 0.5});
    const std::vector<std::size_t> first{0};
    CHECK(m.marginal(first) == EmpiricalMeasure(1, {{0.0}, {1.0}}, {0.5, 0.5}));
    CHECK(tau(m) == 2.0);
  }

  TEST_CASE("lp distance: small cases") {
    const auto mu = d1(0.3);
    CHECK(lp_distance(mu, mu) == 0.0);
    CHECK(lp_distance(d1(0), d1(0.5)) == Approx(0.5).epsilon(1e-12));
    CHECK(lp_distance(EmpiricalMeasure(1, {{0.0}, {1.0}}, {0.5, 0.5}), d1(0)) == Approx(0.5).epsilon(1e-12));
    CHECK(lp_distance(d1(0), d1(0)) == 0.0);
    CHECK(lp_distance(d1(0), d1(3)) == 1.0);
  }

  TEST_CASE("lp distance: frozen oracle values") {
    const EmpiricalMeasure a(1, {{0.0}, {1.0}}, {0.3, 0.7});
    const EmpiricalMeasure b(1, {{0.2}, {0.9}}, {0.5, 0.5});
    CHECK(lp_distance(a, b) == Approx(0.2).epsilon(1e-12));

    const EmpiricalMeasure c(2, {{0, 0}, {1, 1}}, {0.5, 0.5});
    CHECK(lp_distance(c, EmpiricalMeasure::dirac({0.5, 0.5})) == Approx(std::sqrt(0.5)).epsilon(1e-12));
    const EmpiricalMeasure ci(2, {{0, 0}, {1, 1}}, {0.5, 0.5}, PointNorm::Chebyshev);
    CHECK(lp_distance(ci, EmpiricalMeasure::dirac({0.5, 0.5}, PointNorm::Chebyshev)) == Approx(0.5).epsilon(1e-12));

    const EmpiricalMeasure d(1, {{0.0}, {0.1}, {0.4}}, {0.2, 0.5, 0.3});
    const EmpiricalMeasure e(1, {{0.05}, {0.6}}, {0.6, 0.4});
    CHECK(lp_distance(d, e) == Approx(0.2).epsilon(1e-12));
  }

  TEST_CASE("lp distance agrees with the subset oracle") {
    auto rng = make_stream(31, {1});
    for (int t = 0; t < 150; ++t) {
      const std::size_t dim = 1 + static_cast<std::size_t>(t % 3);
      const auto norm = t % 5 == 0 ? PointNorm::Chebyshev : PointNorm::Euclidean;
      const auto a = testing::random_measure(rng, dim, 7, norm);
      const auto b = testing::random_measure(rng, dim, 7, norm);
      const double flow = lp_distance(a, b);
      CHECK(std::abs(flow - lp_distance_oracle(a, b)) <= 1e-9);
    }
  }

  TEST_CASE("lp distance is a metric") {
    auto rng = make_stream(32, {1});
    for (int t = 0; t < 60; ++t) {
      const auto a = testing::random_measure(rng, 2, 6);
      const auto b = testing::random_measure(rng, 2, 6);
      const auto c = testing::random_measure(rng, 2, 6);
      const double ab = lp_distance(a, b);
      CHECK(ab == lp_distance(b, a));
      CHECK(ab >= 0.0);
      CHECK(ab <= 1.0);
      CHECK(ab <= lp_distance(a, c) + lp_distance(c, b) + 1e-12);
    }
  }

  TEST_CASE("lp_distance_at_most and upper hints") {
    auto rng = make_stream(33, {1});
    for (int t = 0; t < 60; ++t) {
      const auto a = testing::random_measure(rng, 2, 8);
      const auto b = testing::random_measure(rng, 2, 8);
      const double d = lp_distance(a, b);
      CHECK(lp_distance_at_most(a, b, d));
      if (d > 1e-6) {
        CHECK_FALSE(lp_distance_at_most(a, b, d - 1e-6));
      }
      LpOptions hint;
      hint.upper_hint = d + 0.01;
      CHECK(lp_distance(a, b, hint) == d);
      hint.upper_hint = d / 2;  // not an upper bound; must still be exact
      CHECK(lp_distance(a, b, hint) == d);
    }
  }

  TEST_CASE("lp distance input checks") {
    CHECK_THROWS_AS(lp_distance(d1(0), EmpiricalMeasure::dirac({0.0, 1.0})), std::invalid_argument);
    LpOptions small;
    small.max_atoms = 1;
    CHECK_THROWS_AS(lp_distance(EmpiricalMeasure(1, {{0.0}, {1.0}}, {0.5, 0.5}), d1(0), small), LimitExceeded);
  }

  TEST_CASE("hausdorff") {
    const MeasureSet x({d1(0)});
    CHECK(hausdorff(x, x) == 0.0);
    const MeasureSet y({d1(0), d1(0.5)});
    CHECK(hausdorff(x, y) == Approx(0.5).epsilon(1e-12));
    CHECK(directed_hausdorff(x, y) == 0.0);
    CHECK(directed_hausdorff(y, x) == Approx(0.5).epsilon(1e-12));

    auto rng = make_stream(34, {1});
    for (int t = 0; t < 100; ++t) {
      MeasureSet a;
      MeasureSet b;
      for (int i = 0; i < 1 + t % 4; ++i) a.add(testing::random_measure(rng, 1, 4));
      for (int i = 0; i < 1 + t % 3; ++i) b.add(testing::random_measure(rng, 1, 4));
      const double h = hausdorff(a, b);
      CHECK(h == hausdorff(b, a));
      // brute force over all pairs
      double ab = 0.0;
      double ba = 0.0;
      for (const auto& p : a.members()) {
        double best = 1.0;
        for (const auto& q : b.members()) best = std::min(best, lp_distance(p, q));
        ab = std::max(ab, best);
      }
      for (const auto& q : b.members()) {
        double best = 1.0;
        for (const auto& p : a.members()) best = std::min(best, lp_distance(p, q));
        ba = std::max(ba, best);
      }
      CHECK(h == std::max(ab, ba));
    }
  }

  TEST_CASE("measure set dedupe keeps first occurrences") {
    MeasureSet s({d1(1), d1(0), d1(1)});
    s.dedupe();
    REQUIRE(s.size() == 2);
    CHECK(s[0] == d1(1));
    CHECK(s[1] == d1(0));
    CHECK_THROWS_AS(s.add(EmpiricalMeasure::dirac({0.0, 0.0})), std::invalid_argument);
  }

  TEST_CASE("dm: identical operators are at distance zero") {
    auto rng = make_stream(35, {1});
    const auto op = testing::random_dense(rng, testing::random_space(rng, 6));
    SamplingBudget b;
    b.vectors_per_k = 4;
    const auto e = dm_estimate(*op, *op, 3, b, DmMode::Paired);
    CHECK(e.value == 0.0);
    CHECK(e.per_k.size() == 3);
    CHECK(e.tail_bound == 0.125);
    CHECK(e.mode == DmMode::Paired);
  }

  TEST_CASE("dm: paired estimates respect the perturbation bounds") {
    auto rng = make_stream(36, {1});
    for (int t = 0; t < 12; ++t) {
      const auto space = testing::random_space(rng, 3 + static_cast<std::size_t>(t % 5));
      const auto a = testing::random_dense(rng, space);
      const auto e = testing::random_dense(rng, space, 0.1);
      const auto b = make_dense(space, a->to_dense() + e->to_dense());
      const double eta = norm_pq(*difference(*a, *b), kInf, 1, NormMode::Exact);
      SamplingBudget bud;
      bud.vectors_per_k = 4;
      bud.seed = static_cast<std::uint64_t>(t);
      const auto est = dm_estimate(*a, *b, 3, bud, DmMode::Paired);
      for (const auto& [k, d] : est.per_k) CHECK(d <= std::sqrt(eta) * std::pow(2.0 * k, 0.75) + 1e-12);
      CHECK(est.value <= 3 * std::sqrt(eta) + 1e-12);
    }
  }

  TEST_CASE("dm: mode checks and determinism") {
    const auto a = adjacency_op(cycle(5));
    const auto b = adjacency_op(cycle(6));
    SamplingBudget bud;
    bud.vectors_per_k = 3;
    CHECK_THROWS_AS(dm_estimate(*a, *b, 1, bud, DmMode::Paired), SpaceMismatch);
    const auto x = dm_estimate(*a, *b, 2, bud, DmMode::CrossSearch);
    const auto y = dm_estimate(*a, *b, 2, bud, DmMode::CrossSearch);
    CHECK(x.value == y.value);
    CHECK(x.value >= 0.0);
    CHECK(x.value <= 0.75);
    CHECK_THROWS_AS(dm_estimate(*a, *a, 0, bud, DmMode::Paired), std::invalid_argument);
    CHECK(dm_mode_from_string(to_string(DmMode::CrossSearch)) == DmMode::CrossSearch);
  }

  TEST_CASE("dm: isomorphic graphs are close in cross mode") {
    // C6 relabeled is the same operator; the cross search carries tuples over
    // by layout position only, so allow the sampling noise but require much
    // less than the distance to a different graph.
    SamplingBudget bud;
    bud.vectors_per_k = 6;
    const auto same = dm_estimate(*adjacency_op(cycle(6)), *adjacency_op(cycle(6)), 2, bud, DmMode::CrossSearch);
    CHECK(same.value == 0.0);
  }

  TEST_CASE("transfer map picks the nearest layout point") {
    const auto a = make_identity(make_uniform_space(4));
    const auto b = make_identity(make_uniform_space(2));
    const auto m = transfer_map(*a, *b);
    REQUIRE(m.size() == 2);
    CHECK(m[0] <= 1);
    CHECK(m[1] >= 2);
  }
}
