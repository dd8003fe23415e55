#include <cmath>

#include "actconv/error.hpp"
#include "actconv/graphs.hpp"
#include "actconv/norms.hpp"
#include "actconv/oracles.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace actconv;
using doctest::Approx;

TEST_SUITE("oracles") {
  TEST_CASE("lp oracle small cases") {
    CHECK(lp_distance_oracle(EmpiricalMeasure::dirac({0.0}), EmpiricalMeasure::dirac({0.5})) == Approx(0.5));
    CHECK(lp_distance_oracle(EmpiricalMeasure(1, {{0.0}, {1.0}}, {0.5, 0.5}), EmpiricalMeasure::dirac({0.0})) ==
          Approx(0.5));
    CHECK(lp_distance_oracle(EmpiricalMeasure::dirac({0.0}), EmpiricalMeasure::dirac({3.0})) == 1.0);
  }

  TEST_CASE("oracle budgets are enforced") {
    OracleBudget tight;
    tight.max_atoms = 2;
    const EmpiricalMeasure three(1, {{0.0}, {1.0}, {2.0}}, {0.2, 0.3, 0.5});
    CHECK_THROWS_AS(lp_distance_oracle(three, three, tight), LimitExceeded);
    CHECK_THROWS_AS(inf_to_one_oracle(*make_identity(make_uniform_space(30))), LimitExceeded);
    CHECK_THROWS_AS(for_each_coloring(40, 3, [](const std::vector<int>&) {}), LimitExceeded);
  }

  TEST_CASE("norm oracles match the exact fast paths") {
    auto rng = make_stream(71, {1});
    for (int t = 0; t < 20; ++t) {
      const auto op = testing::random_dense(rng, testing::random_space(rng, 2 + static_cast<std::size_t>(t % 6)));
      CHECK(inf_to_one_oracle(*op) == Approx(norm_pq(*op, kInf, 1, NormMode::Exact)).epsilon(1e-12));
      CHECK(cut_norm_oracle(*op) == Approx(cut_norm(*op, NormMode::Exact)).epsilon(1e-12));
    }
  }

  TEST_CASE("coloring order") {
    std::vector<std::vector<int>> seen;
    for_each_coloring(2, 2, [&](const std::vector<int>& c) { seen.push_back(c); });
    REQUIRE(seen.size() == 4);
    CHECK(seen[0] == std::vector<int>{0, 0});
    CHECK(seen[1] == std::vector<int>{1, 0});
    CHECK(seen[2] == std::vector<int>{0, 1});
    CHECK(seen[3] == std::vector<int>{1, 1});
  }

  TEST_CASE("colored star counts") {
    const auto counts = colored_star_counts(star(3), 1);
    REQUIRE(counts.size() == 1);
    CHECK(counts[0].at({0, 2}) == 1);
    CHECK(counts[0].at({0, 1}) == 2);
  }

  TEST_CASE("lemma suites report no violations") {
    for (const char* name : {"coupdist", "coupdist2", "limlem3", "limspdm"}) {
      const auto r = verify_lemma(name, 15, 5);
      CHECK(r.lemma == name);
      CHECK(r.trials == 15);
      CHECK(r.violations == 0);
      CHECK(r.max_ratio <= 1.0);
    }
    CHECK_THROWS_AS(verify_lemma("nope", 1, 1), std::invalid_argument);
  }
}
