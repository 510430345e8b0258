#ifndef OCCUPANCY_SERIES_HPP
#define OCCUPANCY_SERIES_HPP

#include <cstddef>
#include <vector>

#include "occupancy/chain.hpp"
#include "occupancy/occupancy_dp.hpp"

namespace occupancy {

/// Truncated power series in t with matrix coefficients. Treated formally:
/// coefficients above `order()` are dropped by every operation.
/// Coefficient matrices may be rectangular but all share one shape.
class MatrixSeries {
 public:
  MatrixSeries(std::size_t rows, std::size_t cols, std::size_t order);
  explicit MatrixSeries(std::vector<Matrix> coeffs);

  static MatrixSeries identity(std::size_t dim, std::size_t order);
  /// c + 0 t + 0 t^2 + ...
  static MatrixSeries constant(const Matrix& c, std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  std::size_t rows() const { return static_cast<std::size_t>(coeffs_.front().rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(coeffs_.front().cols()); }

  const Matrix& operator[](std::size_t m) const { return coeffs_.at(m); }
  Matrix& operator[](std::size_t m) { return coeffs_.at(m); }
  const std::vector<Matrix>& coeffs() const { return coeffs_; }

  /// Drops coefficients above `order` (no-op if already at or below it).
  MatrixSeries truncated(std::size_t order) const;

 private:
  std::vector<Matrix> coeffs_;
};

/// Vector-valued series. For the output of gf_coefficients, coefficient m
/// of state i is g_i(m + k, k).
struct VectorSeries {
  std::size_t k = 0;
  std::vector<Vector> coeffs;

  std::size_t order() const { return coeffs.size() - 1; }
};

/// Result order is min of the operand orders; throws DimensionMismatch.
MatrixSeries series_add(const MatrixSeries& x, const MatrixSeries& y);
MatrixSeries series_sub(const MatrixSeries& x, const MatrixSeries& y);
/// Naive O(T^2) Cauchy product of matrix coefficients.
MatrixSeries series_mul(const MatrixSeries& x, const MatrixSeries& y);
/// Series times series-of-vectors, truncated at min order.
std::vector<Vector> series_apply(const MatrixSeries& x, const std::vector<Vector>& v);

inline MatrixSeries operator+(const MatrixSeries& x, const MatrixSeries& y) {
  return series_add(x, y);
}
inline MatrixSeries operator-(const MatrixSeries& x, const MatrixSeries& y) {
  return series_sub(x, y);
}
inline MatrixSeries operator*(const MatrixSeries& x, const MatrixSeries& y) {
  return series_mul(x, y);
}

/// Neumann series sum_{m=0}^{order} b^m t^m, i.e. (I - b t)^{-1} mod t^{order+1}.
MatrixSeries resolvent(const Matrix& b, std::size_t order);

/// First `order + 1` coefficients of G(t,k) = [(I-Bt)^{-1} A]^k (I-Bt)^{-1} 1,
/// built from the full lifted pair. Output is in original state order.
VectorSeries gf_coefficients(const StochasticMatrix& p, const SubsetMask& u,
                             std::size_t k, std::size_t order);

/// Same series via the reduced form [[V,0],[W,0]] V^{k-1}, where
///   V = P_UU + t P_UU^c (I - t P_U^cU^c)^{-1} P_U^cU,
///   W = (I - t P_U^cU^c)^{-1} P_U^cU.
/// Only |U|-sized series are powered, so this is the cheaper route when
/// U is small. Requires k >= 1 and both U and U^c nonempty (EmptyBlock).
VectorSeries vw_reduction(const BlockDecomposition& blocks, std::size_t k,
                          std::size_t order);

/// g(n,k) for every k = 0..n at a single horizon, by reading coefficient
/// n-k off G(t,k) with truncation order n-k.
OccupancyTable gf_distribution(const StochasticMatrix& p, const SubsetMask& u,
                               std::size_t n);

}  // namespace occupancy

#endif  // OCCUPANCY_SERIES_HPP
