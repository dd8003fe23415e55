#include <cmath>

#include "actconv/error.hpp"
#include "actconv/graphs.hpp"
#include "actconv/norms.hpp"
#include "actconv/profiles.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace actconv;
using doctest::Approx;

namespace {

bool regular(const Graph& g, std::size_t d) {
  for (std::size_t v = 0; v < g.n(); ++v)
    if (g.degree(v) != d) return false;
  return true;
}

}  // namespace

TEST_SUITE("graphs") {
  TEST_CASE("generator sizes") {
    const auto q3 = hypercube(3);
    CHECK(q3.n() == 8);
    CHECK(q3.edges().size() == 12);
    CHECK(regular(q3, 3));

    const auto p2 = projective_incidence(2);
    CHECK(p2.n() == 14);
    CHECK(p2.edges().size() == 21);
    CHECK(regular(p2, 3));

    const auto s3 = subdivision_complete(3);
    CHECK(s3.n() == 6);
    CHECK(s3.edges().size() == 6);

    CHECK(star(5).degree(0) == 4);
    CHECK(cycle(6).edges().size() == 6);
    CHECK(complete(5).edges().size() == 10);
    CHECK(graph_power(complete(3), 2).n() == 9);
    CHECK(regular(graph_power(complete(3), 2), 4));
  }

  TEST_CASE("projective planes for several q") {
    for (int q : {2, 3, 5, 7}) {
      const auto g = projective_incidence(q);
      const std::size_t half = static_cast<std::size_t>(q * q + q + 1);
      CHECK(g.n() == 2 * half);
      CHECK(regular(g, static_cast<std::size_t>(q + 1)));
      // any two points share exactly one line
      for (std::size_t a = 0; a < std::min<std::size_t>(half, 6); ++a)
        for (std::size_t b = a + 1; b < half; ++b) {
          int common = 0;
          for (auto l : g.neighbors(a)) common += g.has_edge(b, l) ? 1 : 0;
          CHECK(common == 1);
        }
    }
    CHECK_THROWS_AS(projective_incidence(4), std::invalid_argument);
  }

  TEST_CASE("graph validation") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(hypercube(30), LimitExceeded);
  }

  TEST_CASE("erdos renyi is reproducible") {
    const auto a = erdos_renyi(30, 0.5, 4);
    const auto b = erdos_renyi(30, 0.5, 4);
    CHECK(a.edges() == b.edges());
    CHECK(a.edges() != erdos_renyi(30, 0.5, 5).edges());
  }

  TEST_CASE("adjacency scaling") {
    const auto k2 = adjacency_op(complete(2));
    const Eigen::MatrixXd d = k2->to_dense();
    CHECK(d(0, 0) == 0);
    CHECK(d(0, 1) == 1);
    CHECK(d(1, 0) == 1);

    AdjacencyScaling s;
    s.kind = ScalingKind::ByConstant;
    s.c = 3;
    const auto q = adjacency_op(hypercube(3), s);
    const std::vector<double> ones(8, 1.0);
    for (double x : q->apply(ones)) CHECK(x == 1.0);

    s.kind = ScalingKind::ByNorm;
    CHECK(norm_pq(*adjacency_op(cycle(7), s), 2, 2, NormMode::Exact) == Approx(1.0).epsilon(1e-12));
    s.kind = ScalingKind::ByVertexCount;
    CHECK(adjacency_op(cycle(4), s)->to_dense()(0, 1) == 0.25);
  }

  TEST_CASE("markov operators") {
    const auto k2 = markov_op(complete(2));
    CHECK(k2.space->weight(0) == 0.5);
    CHECK(k2.op->to_dense()(0, 1) == 1.0);

    const auto s4 = markov_op(star(4));
    CHECK(s4.space->weight(0) == Approx(0.5).epsilon(1e-15));
    CHECK(s4.space->weight(1) == Approx(1.0 / 6).epsilon(1e-15));
    const std::vector<double> v{10, 1, 2, 6};
    const auto out = s4.op->apply(v);
    CHECK(out[0] == Approx(3.0).epsilon(1e-15));
    for (std::size_t i = 1; i < 4; ++i) CHECK(out[i] == 10.0);

    auto rng = make_stream(51, {1});
    for (int t = 0; t < 20; ++t) {
      const auto g = testing::random_connected_graph(rng, 2 + static_cast<std::size_t>(t) * 2, 0.2);
      const auto m = markov_op(g);
      const std::vector<double> ones(g.n(), 1.0);
      for (double x : m.op->apply(ones)) CHECK(x == 1.0);
    }
  }

  TEST_CASE("laplace and degree weighted") {
    const Eigen::MatrixXd l = laplace_op(complete(2))->to_dense();
    CHECK(l(0, 0) == 1);
    CHECK(l(0, 1) == -1);
    CHECK(l(1, 0) == -1);
    CHECK(l(1, 1) == 1);

    auto rng = make_stream(52, {1});
    for (int t = 0; t < 100; ++t) {
      const auto g = testing::random_connected_graph(rng, 3 + static_cast<std::size_t>(t % 8), 0.3);
      const auto v = testing::random_vector(rng, g.n());
      CHECK(bilinear_form(*laplace_op(g), v, v) >= -1e-12);
    }

    const auto f = degree_weighted_op(star(4));
    const std::vector<double> v{0, 2, 3, 5};
    CHECK(f.op->apply(v)[0] == Approx(10.0).epsilon(1e-15));
  }

  TEST_CASE("normalized degree has mean one on the stationary space") {
    const auto g = star(5);
    const auto m = markov_op(g);
    const auto d = normalized_degree(g, m.space);
    CHECK(d.values[0] == Approx(4.0 / 1.6));
    CHECK(d.values[1] == Approx(1.0 / 1.6));
  }

  TEST_CASE("uniform maps") {
    const auto c4 = cycle(4);
    const auto proj = power_projection(c4, 2);
    const auto rep = check_uniform_map(proj);
    CHECK(rep.clean());
    CHECK(rep.a == 4);
    CHECK(rep.b == 2);

    const auto id = check_uniform_map(identity_map(c4));
    CHECK(id.clean());
    CHECK(id.a == 1);
    CHECK(id.b == 1);

    for (int m = 1; m <= 3; ++m) {
      const auto r = check_uniform_map(hypercube_pair_xor_map(m));
      CHECK(r.clean());
      CHECK(r.a == (1 << m));
      CHECK(r.b == 2);
    }

    UniformMap broken = proj;
    broken.map[0] = (broken.map[0] + 1) % 4;
    CHECK_FALSE(check_uniform_map(broken).clean());
  }

  TEST_CASE("pullback profiles agree exactly") {
    auto rng = make_stream(53, {1});
    const auto proj = power_projection(cycle(4), 2);
    std::vector<std::vector<std::vector<double>>> tuples;
    std::uniform_int_distribution<int> q(-4, 4);
    for (int t = 0; t < 50; ++t) {
      std::vector<std::vector<double>> vs(1 + static_cast<std::size_t>(t % 3), std::vector<double>(4));
      for (auto& v : vs)
        for (auto& x : v) x = q(rng) / 4.0;
      tuples.push_back(std::move(vs));
    }
    CHECK(pullback_profile_check(proj, tuples));
    CHECK(pullback_profile_check(hypercube_pair_xor_map(2), {{{1, 0, -1, 0.5}}}));
  }

  TEST_CASE("colored stars") {
    const auto k2 = colored_star_stats(complete(2), {0, 0}, 1, 3);
    REQUIRE(k2.weights.size() == 1);
    CHECK(k2.weights.begin()->first == StarType{0, 1});
    CHECK(k2.weights.begin()->second == 1.0);

    const auto s4 = colored_star_stats(star(4), {0, 0, 0, 0}, 1, 3);
    REQUIRE(s4.weights.size() == 2);
    CHECK(s4.weights.at(StarType{0, 3}) == 0.25);
    CHECK(s4.weights.at(StarType{0, 1}) == 0.75);

    CHECK_THROWS_AS(colored_star_stats(star(5), {0, 0, 0, 0, 0}, 1, 3), PreconditionFailed);
  }

  TEST_CASE("colored star bijection on small graphs") {
    auto rng = make_stream(54, {1});
    for (int t = 0; t < 6; ++t) {
      const auto g = testing::random_bounded_degree_graph(rng, 3 + static_cast<std::size_t>(t % 5), 3);
      CHECK(star_profile_bijection_check(g, 2).ok());
    }
    CHECK(star_profile_bijection_check(cycle(5), 3).ok());
  }
}
