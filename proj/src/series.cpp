#include "occupancy/series.hpp"

#include <algorithm>
#include <string>

namespace occupancy {
namespace {

void require_same_shape(const MatrixSeries& x, const MatrixSeries& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw ChainError(ChainErrorKind::DimensionMismatch,
                     "series shapes differ: " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + " vs " +
                         std::to_string(y.rows()) + "x" + std::to_string(y.cols()));
  }
}

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

// Coefficientwise c * v_m for a constant matrix c.
std::vector<Vector> constant_apply(const Matrix& c, const std::vector<Vector>& v) {
  std::vector<Vector> out;
  out.reserve(v.size());
  for (const auto& vm : v) out.emplace_back(c * vm);
  return out;
}

}  // namespace

MatrixSeries::MatrixSeries(std::size_t rows, std::size_t cols, std::size_t order)
    : coeffs_(order + 1, Matrix::Zero(idx(rows), idx(cols))) {}

MatrixSeries::MatrixSeries(std::vector<Matrix> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw ChainError(ChainErrorKind::DimensionMismatch,
                     "a series needs at least the constant coefficient");
  }
  for (const auto& c : coeffs_) {
    if (c.rows() != coeffs_.front().rows() || c.cols() != coeffs_.front().cols()) {
      throw ChainError(ChainErrorKind::DimensionMismatch,
                       "series coefficients must share one shape");
    }
  }
}

MatrixSeries MatrixSeries::identity(std::size_t dim, std::size_t order) {
  return constant(Matrix::Identity(idx(dim), idx(dim)), order);
}

MatrixSeries MatrixSeries::constant(const Matrix& c, std::size_t order) {
  MatrixSeries s(static_cast<std::size_t>(c.rows()), static_cast<std::size_t>(c.cols()),
                 order);
  s.coeffs_[0] = c;
  return s;
}

MatrixSeries MatrixSeries::truncated(std::size_t order) const {
  if (order >= this->order()) return *this;
  return MatrixSeries(std::vector<Matrix>(coeffs_.begin(),
                                          coeffs_.begin() + idx(order) + 1));
}

MatrixSeries series_add(const MatrixSeries& x, const MatrixSeries& y) {
  require_same_shape(x, y);
  const std::size_t order = std::min(x.order(), y.order());
  MatrixSeries out(x.rows(), x.cols(), order);
  for (std::size_t m = 0; m <= order; ++m) out[m] = x[m] + y[m];
  return out;
}

MatrixSeries series_sub(const MatrixSeries& x, const MatrixSeries& y) {
  require_same_shape(x, y);
  const std::size_t order = std::min(x.order(), y.order());
  MatrixSeries out(x.rows(), x.cols(), order);
  for (std::size_t m = 0; m <= order; ++m) out[m] = x[m] - y[m];
  return out;
}

MatrixSeries series_mul(const MatrixSeries& x, const MatrixSeries& y) {
  if (x.cols() != y.rows()) {
    throw ChainError(ChainErrorKind::DimensionMismatch,
                     "cannot multiply series with " + std::to_string(x.cols()) +
                         " columns by series with " + std::to_string(y.rows()) +
                         " rows");
  }
  const std::size_t order = std::min(x.order(), y.order());
  MatrixSeries out(x.rows(), y.cols(), order);
  for (std::size_t m = 0; m <= order; ++m)
    for (std::size_t j = 0; j <= m; ++j) out[m].noalias() += x[j] * y[m - j];
  return out;
}

std::vector<Vector> series_apply(const MatrixSeries& x, const std::vector<Vector>& v) {
  if (v.empty() || static_cast<std::size_t>(v.front().size()) != x.cols()) {
    throw ChainError(ChainErrorKind::DimensionMismatch,
                     "vector series does not match series column count");
  }
  const std::size_t order = std::min(x.order(), v.size() - 1);
  std::vector<Vector> out(order + 1, Vector::Zero(idx(x.rows())));
  for (std::size_t m = 0; m <= order; ++m)
    for (std::size_t j = 0; j <= m; ++j) out[m].noalias() += x[j] * v[m - j];
  return out;
}

MatrixSeries resolvent(const Matrix& b, std::size_t order) {
  MatrixSeries s = MatrixSeries::identity(static_cast<std::size_t>(b.rows()), order);
  for (std::size_t m = 1; m <= order; ++m) s[m].noalias() = b * s[m - 1];
  return s;
}

VectorSeries gf_coefficients(const StochasticMatrix& p, const SubsetMask& u,
                             std::size_t k, std::size_t order) {
  const LiftedPair pair = lift(p, u);
  const MatrixSeries res = resolvent(pair.b, order);
  const Vector ones = Vector::Ones(idx(pair.size()));

  std::vector<Vector> g;
  g.reserve(order + 1);
  for (std::size_t m = 0; m <= order; ++m) g.emplace_back(res[m] * ones);
  for (std::size_t step = 0; step < k; ++step)
    g = series_apply(res, constant_apply(pair.a, g));

  VectorSeries out;
  out.k = k;
  out.coeffs.reserve(g.size());
  for (const auto& gm : g) out.coeffs.push_back(to_original_order(gm, pair.order));
  return out;
}

VectorSeries vw_reduction(const BlockDecomposition& blocks, std::size_t k,
                          std::size_t order) {
  if (k == 0) {
    throw ChainError(ChainErrorKind::EmptyBlock,
                     "the reduced form needs k >= 1; use gf_coefficients for k = 0");
  }
  if (blocks.u_size() == 0 || blocks.uc_size() == 0) {
    throw ChainError(ChainErrorKind::EmptyBlock,
                     "the reduced form needs both U and its complement nonempty; "
                     "use gf_coefficients");
  }
  const std::size_t nu = blocks.u_size();
  const std::size_t nc = blocks.uc_size();
  const MatrixSeries rc = resolvent(blocks.pucuc, order);

  MatrixSeries v(nu, nu, order);
  MatrixSeries w(nc, nu, order);
  std::vector<Vector> x(order + 1);
  v[0] = blocks.puu;
  x[0] = Vector::Ones(idx(nu));
  const Vector ones_c = Vector::Ones(idx(nc));
  for (std::size_t m = 0; m <= order; ++m) {
    w[m].noalias() = rc[m] * blocks.pucu;
    if (m >= 1) {
      const Matrix left = blocks.puuc * rc[m - 1];
      v[m].noalias() = left * blocks.pucu;
      x[m].noalias() = left * ones_c;
    }
  }

  // U rows of (I - Bt)^{-1} 1, then V^{k-1} applied to it.
  for (std::size_t step = 1; step < k; ++step) x = series_apply(v, x);
  const std::vector<Vector> gu = series_apply(v, x);
  const std::vector<Vector> gc = series_apply(w, x);

  VectorSeries out;
  out.k = k;
  for (std::size_t m = 0; m <= order; ++m) {
    Vector stacked(idx(nu + nc));
    stacked << gu[m], gc[m];
    out.coeffs.push_back(to_original_order(stacked, blocks.order));
  }
  return out;
}

OccupancyTable gf_distribution(const StochasticMatrix& p, const SubsetMask& u,
                               std::size_t n) {
  Matrix values(idx(p.size()), idx(n + 1));
  for (std::size_t k = 0; k <= n; ++k) {
    const VectorSeries g = gf_coefficients(p, u, k, n - k);
    values.col(idx(k)) = g.coeffs[n - k];
  }
  return OccupancyTable(n, std::move(values), p.labels());
}

}  // namespace occupancy
