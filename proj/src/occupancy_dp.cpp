#include "occupancy/occupancy_dp.hpp"

namespace occupancy {
namespace {

// Works in the U-first ordering; column k of `layer` holds g(m,k).
class LayerSweep {
 public:
  explicit LayerSweep(const LiftedPair& pair)
      : pair_(pair), layer_(Matrix::Ones(static_cast<Eigen::Index>(pair.size()), 1)) {}

  void step() {
    const Eigen::Index m = layer_.cols();  // current horizon + 1
    Matrix next(layer_.rows(), m + 1);
    // Empty or full U: N_n is forced, keep the point mass exact.
    if (pair_.u_size == 0 || pair_.u_size == pair_.size()) {
      next.setZero();
      next.col(pair_.u_size == 0 ? 0 : m).setOnes();
      layer_ = std::move(next);
      return;
    }
    next.col(0) = pair_.b * layer_.col(0);
    for (Eigen::Index k = 1; k < m; ++k)
      next.col(k) = pair_.a * layer_.col(k - 1) + pair_.b * layer_.col(k);
    next.col(m) = pair_.a * layer_.col(m - 1);
    layer_ = std::move(next);
  }

  OccupancyTable table(const std::vector<std::string>& labels) const {
    Matrix out(layer_.rows(), layer_.cols());
    for (std::size_t pos = 0; pos < pair_.order.size(); ++pos)
      out.row(static_cast<Eigen::Index>(pair_.order[pos])) =
          layer_.row(static_cast<Eigen::Index>(pos));
    return OccupancyTable(static_cast<std::size_t>(layer_.cols() - 1),
                          std::move(out), labels);
  }

 private:
  const LiftedPair& pair_;
  Matrix layer_;
};

}  // namespace

OccupancyTable occupancy_distribution(const StochasticMatrix& p,
                                      const SubsetMask& u, std::size_t n) {
  const LiftedPair pair = lift(p, u);
  LayerSweep sweep(pair);
  for (std::size_t m = 0; m < n; ++m) sweep.step();
  return sweep.table(p.labels());
}

std::vector<OccupancyTable> occupancy_trajectory(const StochasticMatrix& p,
                                                 const SubsetMask& u,
                                                 std::size_t n) {
  const LiftedPair pair = lift(p, u);
  LayerSweep sweep(pair);
  std::vector<OccupancyTable> layers;
  layers.reserve(n + 1);
  layers.push_back(sweep.table(p.labels()));
  for (std::size_t m = 0; m < n; ++m) {
    sweep.step();
    layers.push_back(sweep.table(p.labels()));
  }
  return layers;
}

std::pair<Vector, Vector> corner_vectors(const LiftedPair& pair, std::size_t n) {
  Vector top = Vector::Ones(static_cast<Eigen::Index>(pair.size()));
  Vector bottom = top;
  for (std::size_t m = 0; m < n; ++m) {
    top = pair.a * top;
    bottom = pair.b * bottom;
  }
  return {to_original_order(top, pair.order), to_original_order(bottom, pair.order)};
}

}  // namespace occupancy
