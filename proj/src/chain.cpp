#include "occupancy/chain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace occupancy {

StochasticMatrix validate_matrix(const std::vector<std::vector<double>>& entries,
                                 double tolerance,
                                 std::vector<std::string> labels) {
  const std::size_t n = entries.size();
  if (n == 0) {
    throw ChainError(ChainErrorKind::Empty, "transition matrix has no states");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i].size() != n) {
      std::ostringstream msg;
      msg << "transition matrix is not square: row " << i << " has "
          << entries[i].size() << " entries, expected " << n;
      throw ChainError(ChainErrorKind::NonSquare, msg.str(), i);
    }
  }
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  } else if (labels.size() != n) {
    throw ChainError(ChainErrorKind::LabelCountMismatch,
                     "got " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(n) + " states");
  }

  Matrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = entries[i][j];
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "entry (" << i << "," << j << ") is not finite";
        throw ChainError(ChainErrorKind::NonFinite, msg.str(), i, j, v);
      }
      if (v < 0.0) {
        std::ostringstream msg;
        msg << "entry (" << i << "," << j << ") is negative: " << v;
        throw ChainError(ChainErrorKind::NegativeEntry, msg.str(), i, j, v);
      }
      p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      sum += v;
    }
    if (!(std::abs(sum - 1.0) <= tolerance)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "row " << i << " sums to " << sum << ", not 1";
      throw ChainError(ChainErrorKind::RowSumOutOfTolerance, msg.str(), i, 0, sum);
    }
    if (sum != 1.0) p.row(static_cast<Eigen::Index>(i)) /= sum;
  }
  return StochasticMatrix(std::move(p), std::move(labels));
}

SubsetMask SubsetMask::from_indices(std::size_t size,
                                    std::span<const std::size_t> indices) {
  std::vector<bool> members(size, false);
  for (std::size_t i : indices) {
    if (i >= size) {
      throw ChainError(ChainErrorKind::StateOutOfRange,
                       "subset member " + std::to_string(i) +
                           " is not a state of a " + std::to_string(size) +
                           "-state chain",
                       i);
    }
    members[i] = true;
  }
  return SubsetMask(std::move(members));
}

std::size_t SubsetMask::count() const {
  return static_cast<std::size_t>(
      std::count(members_.begin(), members_.end(), true));
}

BlockDecomposition decompose(const StochasticMatrix& p, const SubsetMask& u) {
  const std::size_t n = p.size();
  if (u.size() != n) {
    throw ChainError(ChainErrorKind::MaskLengthMismatch,
                     "subset mask has length " + std::to_string(u.size()) +
                         " but the chain has " + std::to_string(n) + " states");
  }
  std::vector<std::size_t> in_u;
  std::vector<std::size_t> in_uc;
  for (std::size_t i = 0; i < n; ++i) (u.contains(i) ? in_u : in_uc).push_back(i);

  auto block = [&](const std::vector<std::size_t>& rows,
                   const std::vector<std::size_t>& cols) {
    Matrix m(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            p(rows[r], cols[c]);
    return m;
  };

  BlockDecomposition d;
  d.puu = block(in_u, in_u);
  d.puuc = block(in_u, in_uc);
  d.pucu = block(in_uc, in_u);
  d.pucuc = block(in_uc, in_uc);
  d.order = in_u;
  d.order.insert(d.order.end(), in_uc.begin(), in_uc.end());
  return d;
}

Matrix BlockDecomposition::permuted() const {
  const auto nu = static_cast<Eigen::Index>(u_size());
  const auto nc = static_cast<Eigen::Index>(uc_size());
  Matrix m(nu + nc, nu + nc);
  m.topLeftCorner(nu, nu) = puu;
  m.topRightCorner(nu, nc) = puuc;
  m.bottomLeftCorner(nc, nu) = pucu;
  m.bottomRightCorner(nc, nc) = pucuc;
  return m;
}

Matrix BlockDecomposition::reassemble() const {
  const Matrix perm = permuted();
  Matrix m(perm.rows(), perm.cols());
  for (Eigen::Index r = 0; r < perm.rows(); ++r)
    for (Eigen::Index c = 0; c < perm.cols(); ++c)
      m(static_cast<Eigen::Index>(order[r]), static_cast<Eigen::Index>(order[c])) =
          perm(r, c);
  return m;
}

LiftedPair lift(const BlockDecomposition& blocks) {
  const auto nu = static_cast<Eigen::Index>(blocks.u_size());
  const auto nc = static_cast<Eigen::Index>(blocks.uc_size());
  LiftedPair pair;
  pair.a = Matrix::Zero(nu + nc, nu + nc);
  pair.b = Matrix::Zero(nu + nc, nu + nc);
  pair.a.topLeftCorner(nu, nu) = blocks.puu;
  pair.a.bottomLeftCorner(nc, nu) = blocks.pucu;
  pair.b.topRightCorner(nu, nc) = blocks.puuc;
  pair.b.bottomRightCorner(nc, nc) = blocks.pucuc;
  pair.u_size = blocks.u_size();
  pair.order = blocks.order;
  return pair;
}

Vector to_original_order(const Vector& permuted,
                         std::span<const std::size_t> order) {
  Vector out(permuted.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    out(static_cast<Eigen::Index>(order[pos])) =
        permuted(static_cast<Eigen::Index>(pos));
  return out;
}

Vector to_permuted_order(const Vector& original,
                         std::span<const std::size_t> order) {
  Vector out(original.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    out(static_cast<Eigen::Index>(pos)) =
        original(static_cast<Eigen::Index>(order[pos]));
  return out;
}

}  // namespace occupancy
