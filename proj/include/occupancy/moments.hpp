#ifndef OCCUPANCY_MOMENTS_HPP
#define OCCUPANCY_MOMENTS_HPP

#include <cstddef>
#include <vector>

#include "occupancy/chain.hpp"
#include "occupancy/occupancy_dp.hpp"

namespace occupancy {

/// H_i(n,z) = E[z^{N_n} | X_0 = i], original state order.
struct PgfEvaluation {
  std::size_t horizon = 0;
  double z = 0.0;
  Vector values;
};

/// Iterates H <- (B + zA) H from the all-ones vector. Any real z is
/// accepted since H(n, .) is a polynomial.
PgfEvaluation pgf_eval(const LiftedPair& pair, std::size_t n, double z);

/// e(n) = P e(n-1) + A 1 with e(1) = A 1.
Vector expected_occupancy(const StochasticMatrix& p, const LiftedPair& pair,
                          std::size_t n);

/// Per-state cost f(i) for F_n = sum_{m=1}^n f(X_m).
class CostFunction {
 public:
  /// Throws ChainError(NonFinite) on NaN or infinite entries.
  explicit CostFunction(std::vector<double> values);
  static CostFunction indicator(const SubsetMask& u);

  std::size_t size() const { return static_cast<std::size_t>(f_.size()); }
  const Vector& values() const { return f_; }

 private:
  Vector f_;
};

/// E[F_n | X_0 = i] = sum_{m=1}^n (P^m f)_i.
Vector expected_cost(const StochasticMatrix& p, const CostFunction& f, std::size_t n);

struct OccupancyMoments {
  Vector mean;
  Vector variance;
};

/// Mean and variance of N_n per state, read off a distribution table.
OccupancyMoments table_moments(const OccupancyTable& table);

}  // namespace occupancy

#endif  // OCCUPANCY_MOMENTS_HPP
