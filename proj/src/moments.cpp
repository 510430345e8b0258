#include "occupancy/moments.hpp"

#include <cmath>

namespace occupancy {

PgfEvaluation pgf_eval(const LiftedPair& pair, std::size_t n, double z) {
  const Matrix step = pair.b + z * pair.a;
  Vector h = Vector::Ones(static_cast<Eigen::Index>(pair.size()));
  for (std::size_t m = 0; m < n; ++m) h = step * h;
  return {n, z, to_original_order(h, pair.order)};
}

Vector expected_occupancy(const StochasticMatrix& p, const LiftedPair& pair,
                          std::size_t n) {
  const Vector visit = to_original_order(
      pair.a * Vector::Ones(static_cast<Eigen::Index>(pair.size())), pair.order);
  if (n == 0) return Vector::Zero(visit.size());
  Vector e = visit;
  for (std::size_t m = 1; m < n; ++m) e = p.matrix() * e + visit;
  return e;
}

CostFunction::CostFunction(std::vector<double> values)
    : f_(Eigen::Map<const Vector>(values.data(),
                                  static_cast<Eigen::Index>(values.size()))) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ChainError(ChainErrorKind::NonFinite,
                       "cost of state " + std::to_string(i) + " is not finite", i);
    }
  }
}

CostFunction CostFunction::indicator(const SubsetMask& u) {
  std::vector<double> f(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) f[i] = u.contains(i) ? 1.0 : 0.0;
  return CostFunction(std::move(f));
}

Vector expected_cost(const StochasticMatrix& p, const CostFunction& f, std::size_t n) {
  if (f.size() != p.size()) {
    throw ChainError(ChainErrorKind::DimensionMismatch,
                     "cost function has " + std::to_string(f.size()) +
                         " entries for a " + std::to_string(p.size()) +
                         "-state chain");
  }
  Vector term = f.values();
  Vector total = Vector::Zero(term.size());
  for (std::size_t m = 0; m < n; ++m) {
    term = p.matrix() * term;
    total += term;
  }
  return total;
}

OccupancyMoments table_moments(const OccupancyTable& table) {
  const auto cols = static_cast<Eigen::Index>(table.horizon() + 1);
  const Vector k = Vector::LinSpaced(cols, 0.0, static_cast<double>(cols - 1));
  const Vector mean = table.values() * k;
  const Vector second = table.values() * k.cwiseProduct(k);
  return {mean, (second - mean.cwiseProduct(mean)).cwiseMax(0.0)};
}

}  // namespace occupancy
