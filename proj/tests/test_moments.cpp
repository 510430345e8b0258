#include <doctest.h>

#include <random>

#include "occupancy/moments.hpp"
#include "test_support.hpp"

using namespace occupancy;

TEST_CASE("pgf at z = 1 is the all-ones vector") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t s = 1 + rng() % 6;
    const auto p = testing::random_chain(rng, s);
    const auto pair = lift(p, testing::random_subset(rng, s));
    const auto h = pgf_eval(pair, rng() % 40, 1.0);
    CHECK((h.values.array() - 1.0).abs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("pgf of the two-state chain after one step") {
  const auto pair = lift(testing::two_state(0.2, 0.4), SubsetMask::from_indices(2, {0}));
  const auto h = pgf_eval(pair, 1, 0.5);
  CHECK(std::abs(h.values(0) - 0.6) < 1e-15);
  CHECK(pgf_eval(pair, 0, 0.3).values == Vector::Ones(2));
}

TEST_CASE("pgf at z = 0 is the k = 0 column") {
  const auto p = testing::three_state();
  const auto u = SubsetMask::from_indices(3, {1});
  const auto t = occupancy_distribution(p, u, 7);
  const auto h = pgf_eval(lift(p, u), 7, 0.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(h.values(Eigen::Index(i)) - t(i, 0)) <= 1e-15);
}

TEST_CASE("pgf outside [0,1] is still the polynomial") {
  const auto p = testing::three_state();
  const auto u = SubsetMask::from_indices(3, {0, 2});
  const auto t = occupancy_distribution(p, u, 6);
  const auto h = pgf_eval(lift(p, u), 6, -1.5);
  for (std::size_t i = 0; i < 3; ++i) {
    double poly = 0.0;
    for (std::size_t k = 0; k <= 6; ++k) poly += t(i, k) * std::pow(-1.5, double(k));
    CHECK(std::abs(h.values(Eigen::Index(i)) - poly) <= 1e-12);
  }
}

TEST_CASE("property: pgf equals the DP polynomial on the z grid") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t s = 1 + rng() % 6;
    const std::size_t n = rng() % 51;
    const auto p = testing::random_chain(rng, s);
    const auto u = testing::random_subset(rng, s);
    const auto t = occupancy_distribution(p, u, n);
    const auto pair = lift(p, u);
    for (double z : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const auto h = pgf_eval(pair, n, z);
      for (std::size_t i = 0; i < s; ++i) {
        double poly = 0.0;
        for (std::size_t k = n + 1; k-- > 0;) poly = poly * z + t(i, k);
        CHECK(std::abs(h.values(Eigen::Index(i)) - poly) <= 1e-12);
        CHECK(h.values(Eigen::Index(i)) >= -1e-15);
        CHECK(h.values(Eigen::Index(i)) <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("expected occupancy of the two-state chain") {
  const auto p = testing::two_state(0.2, 0.4);
  const auto pair = lift(p, SubsetMask::from_indices(2, {0}));
  const auto e1 = expected_occupancy(p, pair, 1);
  CHECK(std::abs(e1(0) - 0.8) < 1e-15);
  CHECK(std::abs(e1(1) - 0.4) < 1e-15);
  // 0.24 * 1 + 0.64 * 2 from the enumerated pmf.
  CHECK(std::abs(expected_occupancy(p, pair, 2)(0) - 1.52) < 1e-14);
}

TEST_CASE("U = S gives e(n) = n") {
  const auto p = testing::three_state();
  const auto pair = lift(p, SubsetMask::full(3));
  for (std::size_t n = 1; n <= 20; ++n)
    CHECK((expected_occupancy(p, pair, n).array() - double(n)).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("property: mean identity and bounds") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t s = 1 + rng() % 6;
    const std::size_t n = 1 + rng() % 50;
    const auto p = testing::random_chain(rng, s);
    const auto u = testing::random_subset(rng, s);
    const auto e = expected_occupancy(p, lift(p, u), n);
    const auto moments = table_moments(occupancy_distribution(p, u, n));
    CHECK((e - moments.mean).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(e.minCoeff() >= 0.0);
    CHECK(e.maxCoeff() <= double(n) + 1e-10);
    CHECK(moments.variance.minCoeff() >= 0.0);
  }
}

TEST_CASE("expected cost") {
  const auto p = testing::two_state(0.2, 0.4);
  const auto ones = expected_cost(p, CostFunction({1.0, 1.0}), 7);
  CHECK((ones.array() - 7.0).abs().maxCoeff() <= 1e-12);

  const auto u = SubsetMask::from_indices(2, {0});
  const auto ind = expected_cost(p, CostFunction::indicator(u), 2);
  CHECK(std::abs(ind(0) - 1.52) < 1e-14);

  const auto two = expected_cost(p, CostFunction({2.0, 0.0}), 1);
  CHECK(std::abs(two(0) - 1.6) < 1e-15);
  CHECK(std::abs(two(1) - 0.8) < 1e-15);

  CHECK_THROWS_AS(CostFunction({1.0, std::nan("")}), ChainError);
  CHECK_THROWS_AS(expected_cost(p, CostFunction({1.0}), 2), ChainError);
}

TEST_CASE("property: indicator cost equals expected occupancy") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t s = 1 + rng() % 6;
    const std::size_t n = 1 + rng() % 50;
    const auto p = testing::random_chain(rng, s);
    const auto u = testing::random_subset(rng, s);
    const auto cost = expected_cost(p, CostFunction::indicator(u), n);
    const auto e = expected_occupancy(p, lift(p, u), n);
    CHECK((cost - e).cwiseAbs().maxCoeff() <= 1e-12);
  }
}
