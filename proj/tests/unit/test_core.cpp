#include <cmath>
#include <limits>

#include "actconv/error.hpp"
#include "actconv/graphs.hpp"
#include "actconv/norms.hpp"
#include "actconv/operator.hpp"
#include "actconv/space.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace actconv;
using doctest::Approx;

TEST_SUITE("core") {
  TEST_CASE("space normalization") {
    const std::vector<double> ones{1, 1, 1, 1};
    const auto s = make_space(ones);
    CHECK(s->size() == 4);
    CHECK(s->is_uniform());
    for (std::size_t i = 0; i < 4; ++i) CHECK(s->weight(i) == 0.25);

    const std::vector<double> star_deg{3, 1, 1, 1};
    const auto st = make_space(star_deg);
    CHECK(st->weight(0) == Approx(0.5).epsilon(1e-15));
    for (std::size_t i = 1; i < 4; ++i) CHECK(st->weight(i) == Approx(1.0 / 6).epsilon(1e-15));

    const std::vector<double> holes{2, 0, 2};
    const auto h = make_space(holes);
    CHECK(h->weight(0) == 0.5);
    CHECK(h->weight(1) == 0.0);
    CHECK(h->weight(2) == 0.5);
    CHECK(h->support() == std::vector<std::size_t>{0, 2});
  }

  TEST_CASE("space rejects bad weights") {
    const std::vector<double> empty;
    const std::vector<double> negative{1, -1};
    const std::vector<double> zeros{0, 0};
    const std::vector<double> nan{1, std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(make_space(empty), std::invalid_argument);
    CHECK_THROWS_AS(make_space(negative), std::invalid_argument);
    CHECK_THROWS_AS(make_space(zeros), std::invalid_argument);
    CHECK_THROWS_AS(make_space(nan), std::invalid_argument);
  }

  TEST_CASE("expectation and norms ignore null points") {
    const std::vector<double> w{2, 0, 2};
    const auto s = make_space(w);
    const std::vector<double> v{1, 100, -3};
    CHECK(expectation(*s, v) == -1.0);
    CHECK(lp_norm(*s, v, 1.0) == 2.0);
    CHECK(lp_norm(*s, v, kInf) == 3.0);
    CHECK(lp_norm(*s, v, 2.0) == Approx(std::sqrt(5.0)));
  }

  TEST_CASE("apply: identity, permutation, graphon") {
    const auto two = make_uniform_space(2);
    const auto id = make_identity(two);
    const std::vector<double> v{0.3, -0.8};
    CHECK(id->apply(v) == v);

    const auto k2 = adjacency_op(complete(2));
    const std::vector<double> e0{1, 0};
    CHECK(k2->apply(e0) == std::vector<double>{0, 1});

    const auto g = make_graphon_grid(make_uniform_space(4), Eigen::MatrixXd::Ones(4, 4));
    const std::vector<double> alt{1, 0, 1, 0};
    for (double x : g->apply(alt)) CHECK(x == 0.5);
  }

  TEST_CASE("apply checks the space") {
    const auto op = make_identity(make_uniform_space(3));
    const Vec wrong(make_uniform_space(2), {1, 2});
    CHECK_THROWS_AS(apply(*op, wrong), SpaceMismatch);
    const std::vector<double> short_v{1, 2};
    CHECK_THROWS(op->apply(short_v));
  }

  TEST_CASE("kernels agree with their dense form") {
    auto rng = make_stream(11, {1});
    for (int t = 0; t < 20; ++t) {
      const auto n = static_cast<std::size_t>(2 + t % 7);
      const auto s = testing::random_space(rng, n);
      Eigen::MatrixXd w = Eigen::MatrixXd::Random(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      const auto grid = make_graphon_grid(s, w);
      const auto scaled = make_scaled(grid, -0.5);
      const Eigen::MatrixXd dense = scaled->to_dense();
      const auto v = testing::random_vector(rng, n);
      const auto out = scaled->apply(v);
      for (std::size_t i = 0; i < n; ++i) {
        double ref = 0.0;
        for (std::size_t j = 0; j < n; ++j) ref += v[j] * dense(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
        CHECK(out[i] == Approx(ref).epsilon(1e-12));
        double direct = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          direct += v[j] * w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) * s->weight(j);
        CHECK(out[i] == Approx(-0.5 * direct).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("relabel preserves the action up to the permutation") {
    auto rng = make_stream(12, {1});
    const auto op = testing::random_dense(rng, make_uniform_space(5));
    const std::vector<std::size_t> perm{3, 0, 4, 1, 2};
    const auto r = relabel(*op, perm);
    const auto v = testing::random_vector(rng, 5);
    // new point i is old point perm[i]
    std::vector<double> old_v(5);
    for (std::size_t i = 0; i < 5; ++i) old_v[perm[i]] = v[i];
    const auto old_out = op->apply(old_v);
    const auto new_out = r->apply(v);
    for (std::size_t i = 0; i < 5; ++i) CHECK(new_out[i] == Approx(old_out[perm[i]]));
  }

  TEST_CASE("bilinear form") {
    const auto k2 = adjacency_op(complete(2));
    const std::vector<double> f{1, 0};
    const std::vector<double> g{0, 1};
    CHECK(bilinear_form(*k2, f, g) == 0.5);
    const std::vector<double> zero{0, 0};
    CHECK(bilinear_form(*k2, zero, g) == 0.0);

    const auto l = laplace_op(complete(2));
    const std::vector<double> pm{1, -1};
    CHECK(l->apply(pm) == std::vector<double>{2, -2});
    CHECK(bilinear_form(*l, pm, pm) == 2.0);
  }

  TEST_CASE("difference needs a shared space") {
    const auto a = make_identity(make_uniform_space(2));
    const auto b = make_identity(make_uniform_space(3));
    CHECK_THROWS_AS(difference(*a, *b), SpaceMismatch);
  }
}

TEST_SUITE("norms") {
  TEST_CASE("small exact values") {
    const auto id = make_identity(make_uniform_space(2));
    CHECK(norm_pq(*id, 2, 2, NormMode::Exact) == Approx(1.0).epsilon(1e-12));

    const auto j = make_dense(make_uniform_space(2), Eigen::MatrixXd::Constant(2, 2, 0.5));
    CHECK(norm_pq(*j, kInf, 1, NormMode::Exact) == Approx(1.0).epsilon(1e-12));

    CHECK(cut_norm(*make_zero(make_uniform_space(3)), NormMode::Exact) == 0.0);
    // S = T = {1, 2}: (1, 1)_A = E(1A) = 1.
    CHECK(cut_norm(*adjacency_op(complete(2)), NormMode::Exact) == Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("frozen values on a 3x3 matrix") {
    Eigen::MatrixXd a(3, 3);
    a << 1, -2, 0.5, 0.3, 0, -1, -0.7, 1.5, 2;
    const auto u = make_dense(make_uniform_space(3), a);
    CHECK(norm_pq(*u, kInf, 1, NormMode::Exact) == Approx(2.6666666666666661).epsilon(1e-12));
    CHECK(cut_norm(*u, NormMode::Exact) == Approx(1.1666666666666665).epsilon(1e-12));
    CHECK(norm_pq(*u, 2, 2, NormMode::Exact) == Approx(3.024066336924325).epsilon(1e-12));

    const std::vector<double> w{0.5, 0.3, 0.2};
    const auto s = make_dense(make_space(w), a);
    CHECK(norm_pq(*s, kInf, 1, NormMode::Exact) == Approx(2.55).epsilon(1e-12));
    CHECK(cut_norm(*s, NormMode::Exact) == Approx(0.85).epsilon(1e-12));
    CHECK(norm_pq(*s, 2, 2, NormMode::Exact) == Approx(3.257361117025812).epsilon(1e-12));
  }

  TEST_CASE("heuristic never exceeds exact and finds it on small matrices") {
    auto rng = make_stream(21, {1});
    for (int t = 0; t < 25; ++t) {
      const auto op = testing::random_dense(rng, testing::random_space(rng, 2 + static_cast<std::size_t>(t % 8)));
      for (auto [p, q] : {std::pair{kInf, 1.0}, std::pair{2.0, 2.0}}) {
        const double ex = norm_pq(*op, p, q, NormMode::Exact);
        const double he = norm_pq(*op, p, q, NormMode::Heuristic);
        CHECK(he <= ex * (1 + 1e-9));
        CHECK(he >= 0.9 * ex);
      }
      const double cx = cut_norm(*op, NormMode::Exact);
      CHECK(cut_norm(*op, NormMode::Heuristic) <= cx * (1 + 1e-9));
    }
  }

  TEST_CASE("cut norm sandwich on random 8x8 matrices") {
    auto rng = make_stream(22, {1});
    for (int t = 0; t < 50; ++t) {
      const auto op = testing::random_dense(rng, make_uniform_space(8));
      const double c = cut_norm(*op, NormMode::Exact);
      const double i1 = norm_pq(*op, kInf, 1, NormMode::Exact);
      CHECK(c <= i1);
      CHECK(i1 <= 4 * c);
    }
  }

  TEST_CASE("exact enumeration has a size limit") {
    const auto big = make_identity(make_uniform_space(kMaxExactEnumeration + 1));
    CHECK_THROWS_AS(norm_pq(*big, kInf, 1, NormMode::Exact), LimitExceeded);
    CHECK_THROWS_AS(cut_norm(*big, NormMode::Exact), LimitExceeded);
  }

  TEST_CASE("self-adjoint spectrum") {
    const auto ev = self_adjoint_spectrum(*adjacency_op(complete(3)));
    REQUIRE(ev.size() == 3);
    CHECK(ev[0] == Approx(-1));
    CHECK(ev[1] == Approx(-1));
    CHECK(ev[2] == Approx(2));
    Eigen::MatrixXd a(2, 2);
    a << 0, 1, 0, 0;
    CHECK_THROWS_AS(self_adjoint_spectrum(*make_dense(make_uniform_space(2), a)), PreconditionFailed);
  }
}
