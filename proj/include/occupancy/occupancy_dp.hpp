#ifndef OCCUPANCY_OCCUPANCY_DP_HPP
#define OCCUPANCY_OCCUPANCY_DP_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "occupancy/chain.hpp"

namespace occupancy {

/// g_i(n,k) = Pr(N_n = k | X_0 = i) for one horizon n. Rows are states in
/// the caller's original order, columns are k = 0..n.
class OccupancyTable {
 public:
  OccupancyTable() = default;
  OccupancyTable(std::size_t horizon, Matrix values,
                 std::vector<std::string> labels)
      : horizon_(horizon), values_(std::move(values)), labels_(std::move(labels)) {}

  std::size_t horizon() const { return horizon_; }
  std::size_t states() const { return static_cast<std::size_t>(values_.rows()); }
  double operator()(std::size_t state, std::size_t k) const {
    return values_(static_cast<Eigen::Index>(state), static_cast<Eigen::Index>(k));
  }
  const Matrix& values() const { return values_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::size_t horizon_ = 0;
  Matrix values_;
  std::vector<std::string> labels_;
};

/// Forward recursion g(n,k) = A g(n-1,k-1) + B g(n-1,k), with the edges
/// g(n,n) = A^n 1 and g(n,0) = B^n 1 falling out of the same sweep.
/// n = 0 yields the convention table g_i(0,0) = 1.
OccupancyTable occupancy_distribution(const StochasticMatrix& p,
                                      const SubsetMask& u, std::size_t n);

/// Same recursion, keeping every layer: element m is the table for horizon m,
/// for m = 0..n.
std::vector<OccupancyTable> occupancy_trajectory(const StochasticMatrix& p,
                                                 const SubsetMask& u,
                                                 std::size_t n);

/// (A^n 1, B^n 1) in original state order, by repeated matrix-vector products.
std::pair<Vector, Vector> corner_vectors(const LiftedPair& pair, std::size_t n);

}  // namespace occupancy

#endif  // OCCUPANCY_OCCUPANCY_DP_HPP
