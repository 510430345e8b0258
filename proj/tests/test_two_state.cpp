#include <doctest.h>

#include "occupancy/occupancy_dp.hpp"
#include "occupancy/two_state.hpp"
#include "test_support.hpp"

using namespace occupancy;
using namespace occupancy::two_state;

namespace {

OccupancyTable dp_table(double p, double q, std::size_t n) {
  return occupancy_distribution(testing::two_state(p, q), SubsetMask::from_indices(2, {0}), n);
}

std::vector<double> grid() {
  std::vector<double> g;
  for (int i = 1; i <= 9; ++i) g.push_back(i / 10.0);
  return g;
}

}  // namespace

TEST_CASE("parameters must lie in the open unit interval") {
  CHECK_THROWS_AS(TwoStateParams(0.0, 0.5), ParameterError);
  CHECK_THROWS_AS(TwoStateParams(0.5, 1.0), ParameterError);
  CHECK_THROWS_AS(TwoStateParams(-0.1, 0.5), ParameterError);
  const TwoStateParams s(0.2, 0.4);
  CHECK(s.r() == 1.0 - 0.2 - 0.4);
  CHECK_FALSE(s.binomial());
  CHECK(TwoStateParams(0.3, 0.7).binomial());
  CHECK_THROWS_AS(TwoStateParams::from_matrix(testing::three_state()), ParameterError);
  CHECK(TwoStateParams::from_matrix(testing::two_state(0.2, 0.4)).q() == 0.4);
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1.0);
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(50, 25) == 126410606437752.0);
  CHECK(binomial(3, 4) == 0.0);
}

TEST_CASE("g1_closed spot values") {
  const TwoStateParams s(0.2, 0.4);
  CHECK(std::abs(g1_closed(s, 2, 0) - 0.36) < 1e-15);
  // 0.288 from exact enumeration of the 8 length-3 paths started in state 1.
  CHECK(std::abs(g1_closed(s, 3, 2) - 0.288) < 1e-15);
  CHECK(std::abs(g1_closed(TwoStateParams(0.3, 0.7), 2, 1) - 0.42) < 1e-15);
  CHECK_THROWS_AS(g1_closed(s, 3, 4), IndexOutOfRange);
}

TEST_CASE("g0_closed spot values") {
  const TwoStateParams s(0.2, 0.4);
  CHECK(std::abs(g0_closed(s, 3, 3) - 0.512) < 1e-15);
  CHECK(std::abs(g0_closed(s, 3, 0) - 0.072) < 1e-15);
  CHECK(std::abs(g0_closed(s, 2, 1) - 0.24) < 1e-15);
  CHECK_THROWS_AS(g0_closed(s, 2, 3), IndexOutOfRange);
}

TEST_CASE("swap symmetry spot values") {
  const TwoStateParams s(0.2, 0.4);
  CHECK(std::abs(swap_symmetry(s, 3, 3) - 0.512) < 1e-15);
  const TwoStateParams iid(0.3, 0.7);
  for (std::size_t k = 0; k <= 6; ++k)
    CHECK(std::abs(swap_symmetry(iid, 6, k) - g0_closed(iid, 6, k)) < 1e-15);
  for (std::size_t k = 0; k <= 5; ++k) {
    CHECK(std::abs(swap_symmetry(s, 5, k) - g0_closed(s, 5, k)) <= 1e-9);
    CHECK(std::abs(g0_closed(s, 5, k) - dp_table(0.2, 0.4, 5)(0, k)) <= 1e-9);
  }
}

TEST_CASE("proof coefficients") {
  const TwoStateParams s(0.2, 0.4);
  CHECK(std::abs(proof_coefficients(s, 3, 0).a[0] - 0.64) < 1e-15);
  const auto pc = proof_coefficients(s, 2, 4);
  CHECK(std::abs(pc.a[2] - 0.16) < 1e-15);
  CHECK(std::abs(pc.b[1] - 0.72) < 1e-15);
  CHECK(pc.a.size() == 3);
  CHECK(pc.b.size() == 5);
  CHECK(pc.c.size() == 5);
  CHECK_THROWS_AS(proof_coefficients(s, 0, 3), IndexOutOfRange);
}

TEST_CASE("property: a_i split form equals the (1 - i p / k) form") {
  for (double p : grid()) {
    for (double q : grid()) {
      const TwoStateParams s(p, q);
      for (std::size_t k = 1; k <= 12; ++k) {
        const auto pc = proof_coefficients(s, k, 0);
        for (std::size_t i = 0; i <= k; ++i) {
          const double factored = binomial(k, i) * (1.0 - double(i) / double(k) * p) *
                                  std::pow(1.0 - p, double(k) - 1.0 - double(i)) *
                                  std::pow(-s.r(), double(i));
          CHECK(std::abs(pc.a[i] - factored) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("property: c_i(k) = g1(i + k, k) and matches DP") {
  for (double p : grid()) {
    for (double q : grid()) {
      const TwoStateParams s(p, q);
      const auto layers = occupancy_trajectory(testing::two_state(p, q),
                                               SubsetMask::from_indices(2, {0}), 30);
      for (std::size_t k = 1; k <= 10; ++k) {
        const auto pc = proof_coefficients(s, k, 30 - k);
        for (std::size_t i = 0; i + k <= 30; ++i) {
          CHECK(std::abs(pc.c[i] - g1_closed(s, i + k, k)) <= 1e-9);
          CHECK(std::abs(pc.c[i] - layers[i + k](1, k)) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("G0 from G1 series") {
  const TwoStateParams s(0.2, 0.4);
  CHECK(std::abs(g0_from_g1_series(s, 0, 3)[0] - 1.0) < 1e-15);
  CHECK(std::abs(g0_from_g1_series(s, 1, 3)[0] - 0.8) < 1e-15);
  const auto g0 = g0_from_g1_series(s, 2, 5);
  const auto layers = occupancy_trajectory(testing::two_state(0.2, 0.4),
                                           SubsetMask::from_indices(2, {0}), 7);
  for (std::size_t m = 0; m <= 5; ++m) CHECK(std::abs(g0[m] - layers[m + 2](0, 2)) <= 1e-9);
}

TEST_CASE("property: closed forms against DP on the grid") {
  for (double p : grid()) {
    for (double q : grid()) {
      const TwoStateParams s(p, q);
      const auto layers = occupancy_trajectory(testing::two_state(p, q),
                                               SubsetMask::from_indices(2, {0}), 50);
      for (std::size_t n = 1; n <= 50; ++n) {
        double sum0 = 0.0, sum1 = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
          const double g0 = g0_closed(s, n, k);
          const double g1 = g1_closed(s, n, k);
          sum0 += g0;
          sum1 += g1;
          CHECK(std::abs(g0 - layers[n](0, k)) <= 1e-9);
          CHECK(std::abs(g1 - layers[n](1, k)) <= 1e-9);
          CHECK(std::abs(g0 - g1_closed(s.swapped(), n, n - k)) <= 1e-9);
        }
        CHECK(std::abs(sum0 - 1.0) <= 1e-9);
        CHECK(std::abs(sum1 - 1.0) <= 1e-9);
      }
    }
  }
}

TEST_CASE("binomial case is state independent") {
  for (double p : grid()) {
    const double q = 1.0 - p;
    if (q <= 0.0 || q >= 1.0) continue;
    const TwoStateParams s(p, q);
    REQUIRE(s.binomial());
    for (std::size_t n = 1; n <= 50; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        const double expected = binomial(n, k) * std::pow(q, double(k)) * std::pow(p, double(n - k));
        CHECK(std::abs(g0_closed(s, n, k) - expected) <= 1e-12);
        CHECK(std::abs(g1_closed(s, n, k) - expected) <= 1e-12);
      }
    }
  }
}

TEST_CASE("cancellation warning threshold") {
  CHECK(cancellation_warning(TwoStateParams(0.02, 0.03), 41));
  CHECK_FALSE(cancellation_warning(TwoStateParams(0.02, 0.03), 40));
  CHECK_FALSE(cancellation_warning(TwoStateParams(0.2, 0.4), 100));
}
