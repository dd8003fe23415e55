#include <sstream>

#include "actconv/io.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace actconv;

TEST_SUITE("io") {
  TEST_CASE("dense csv round trip") {
    Eigen::MatrixXd a(2, 3);
    a << 0.1, -2, 1.0 / 3, 4e-20, 5, 6;
    std::stringstream ss;
    write_dense_csv(ss, a);
    std::stringstream in("# comment\n\n" + ss.str());
    CHECK(read_dense_csv(in) == a);
    std::stringstream ragged("1,2\n3\n");
    CHECK_THROWS_AS(read_dense_csv(ragged), std::invalid_argument);
    std::stringstream junk("1,x\n");
    CHECK_THROWS_AS(read_dense_csv(junk), std::invalid_argument);
  }

  TEST_CASE("sparse json") {
    std::stringstream in(R"({"n": 3, "weights": [1, 1, 2], "entries": [[0, 1, 2.5], [2, 0, -1], [0, 1, 0.5]]})");
    const auto op = read_sparse_json(in);
    const Eigen::MatrixXd d = op->to_dense();
    CHECK(d(0, 1) == 3.0);
    CHECK(d(2, 0) == -1.0);
    CHECK(op->space()->weight(2) == 0.5);
    std::stringstream again(sparse_to_json(*op));
    CHECK(read_sparse_json(again)->to_dense() == d);

    std::stringstream bad(R"({"n": 2, "entries": [[0, 5, 1]]})");
    CHECK_THROWS_AS(read_sparse_json(bad), std::invalid_argument);
    std::stringstream broken("{");
    CHECK_THROWS_AS(read_sparse_json(broken), std::invalid_argument);
  }

  TEST_CASE("measure json round trip") {
    auto rng = make_stream(81, {1});
    for (int t = 0; t < 20; ++t) {
      const auto m = testing::random_measure(rng, 3, 6, t % 2 ? PointNorm::Chebyshev : PointNorm::Euclidean);
      CHECK(measure_from_json(measure_to_json(m)) == m);
    }
    CHECK_THROWS_AS(measure_from_json(R"({"dim": 1, "atoms": [[[0], 0.5]]})"), std::invalid_argument);
  }

  TEST_CASE("profile bundle round trip") {
    SamplingBudget b;
    b.vectors_per_k = 3;
    b.strategies = {StrategyKind::Rademacher, StrategyKind::UniformBox};
    const auto p = sample_profile(*adjacency_op(cycle(5)), 2, b);
    const auto q = profile_from_json(profile_to_json(p));
    CHECK(q.k == 2);
    CHECK(q.operator_id == p.operator_id);
    CHECK(q.budget.strategies == b.strategies);
    REQUIRE(q.measures.size() == p.measures.size());
    for (std::size_t i = 0; i < p.measures.size(); ++i) CHECK(q.measures[i] == p.measures[i]);
  }

  TEST_CASE("dm csv has a summary line") {
    DmEstimate e;
    e.per_k = {{1, 0.25}, {2, 0.5}};
    e.value = 0.25;
    e.k_max = 2;
    e.tail_bound = 0.25;
    std::stringstream ss;
    write_dm_csv(ss, e, 42);
    CHECK(ss.str() == "k,d_H,weight\n1,0.25,0.5\n2,0.5,0.25\n# dm=0.25,tail_bound=0.25,mode=paired,seed=42\n");
  }

  TEST_CASE("graph formats") {
    const auto g = projective_incidence(2);
    std::stringstream csv;
    write_edge_list_csv(csv, g);
    CHECK(read_edge_list_csv(csv).edges() == g.edges());
    const auto h = graph_from_json(graph_to_json(g));
    CHECK(h.n() == g.n());
    CHECK(h.edges() == g.edges());
    std::stringstream isolated("0,1\n");
    CHECK(read_edge_list_csv(isolated, 4).n() == 4);
    std::stringstream loop("1,1\n");
    CHECK_THROWS_AS(read_edge_list_csv(loop), std::invalid_argument);
  }

  TEST_CASE("measure rep csv") {
    const auto rep = measure_rep(*adjacency_op(complete(2)));
    std::stringstream ss;
    write_measure_rep_csv(ss, rep);
    CHECK(ss.str() == "x,y,mass\n0,1,0.5\n1,0,0.5\nx,marginal,degree\n0,0.5,1\n1,0.5,1\n");
  }

  TEST_CASE("lemma report json") {
    LemmaReport r{"limlem3", 10, 0, 0.5};
    CHECK(lemma_report_to_json(r) == R"({"lemma":"limlem3","max_ratio":0.5,"trials":10,"violations":0})");
  }

  TEST_CASE("config round trip") {
    ExperimentConfig c;
    c.family = Family::Subdivision;
    c.sizes = {4, 8};
    c.k_max = 3;
    c.budget.seed = 77;
    c.refine_steps = 2;
    const auto d = config_from_json(config_to_json(c));
    CHECK(d.family == c.family);
    CHECK(d.sizes == c.sizes);
    CHECK(d.k_max == 3);
    CHECK(d.budget.seed == 77);
    CHECK(d.refine_steps == 2);
    CHECK_THROWS_AS(config_from_json(R"({"family": "moon"})"), std::invalid_argument);
  }
}
