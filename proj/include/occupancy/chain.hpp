#ifndef OCCUPANCY_CHAIN_HPP
#define OCCUPANCY_CHAIN_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace occupancy {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kRowSumTolerance = 1e-9;

enum class ChainErrorKind {
  NonSquare,
  Empty,
  NegativeEntry,
  NonFinite,
  RowSumOutOfTolerance,
  LabelCountMismatch,
  MaskLengthMismatch,
  StateOutOfRange,
  EmptyBlock,
  DimensionMismatch,
};

/// Raised for every malformed chain, subset or dimension. `row()` and
/// `col()` locate the offending entry where that makes sense; `value()`
/// carries e.g. the offending row sum.
class ChainError : public std::invalid_argument {
 public:
  ChainError(ChainErrorKind kind, std::string what, std::size_t row = 0,
             std::size_t col = 0, double value = 0.0)
      : std::invalid_argument(std::move(what)),
        kind_(kind), row_(row), col_(col), value_(value) {}

  ChainErrorKind kind() const { return kind_; }
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }
  double value() const { return value_; }

 private:
  ChainErrorKind kind_;
  std::size_t row_;
  std::size_t col_;
  double value_;
};

/// Validated row-stochastic transition matrix P with state labels.
class StochasticMatrix {
 public:
  std::size_t size() const { return static_cast<std::size_t>(p_.rows()); }
  const Matrix& matrix() const { return p_; }
  double operator()(std::size_t i, std::size_t j) const {
    return p_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  friend StochasticMatrix validate_matrix(const std::vector<std::vector<double>>&,
                                          double, std::vector<std::string>);
  StochasticMatrix(Matrix p, std::vector<std::string> labels)
      : p_(std::move(p)), labels_(std::move(labels)) {}

  Matrix p_;
  std::vector<std::string> labels_;
};

/// Checks squareness, entry signs and row sums. Rows within `tolerance`
/// of 1 are renormalized; empty `labels` default to "0", "1", ...
StochasticMatrix validate_matrix(const std::vector<std::vector<double>>& entries,
                                 double tolerance = kRowSumTolerance,
                                 std::vector<std::string> labels = {});

/// The target subset U as one flag per state.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::vector<bool> members) : members_(std::move(members)) {}

  static SubsetMask from_indices(std::size_t size,
                                 std::span<const std::size_t> indices);
  static SubsetMask from_indices(std::size_t size,
                                 std::initializer_list<std::size_t> indices) {
    return from_indices(size, std::span<const std::size_t>(indices.begin(),
                                                           indices.size()));
  }
  static SubsetMask empty(std::size_t size) {
    return SubsetMask(std::vector<bool>(size, false));
  }
  static SubsetMask full(std::size_t size) {
    return SubsetMask(std::vector<bool>(size, true));
  }

  std::size_t size() const { return members_.size(); }
  bool contains(std::size_t i) const { return members_.at(i); }
  std::size_t count() const;
  const std::vector<bool>& members() const { return members_; }

 private:
  std::vector<bool> members_;
};

/// P split into its four U / U^c blocks. `order[pos]` is the original
/// index of the state sitting at position `pos` of the U-first ordering.
struct BlockDecomposition {
  Matrix puu;
  Matrix puuc;
  Matrix pucu;
  Matrix pucuc;
  std::vector<std::size_t> order;

  std::size_t u_size() const { return static_cast<std::size_t>(puu.rows()); }
  std::size_t uc_size() const { return static_cast<std::size_t>(pucuc.rows()); }
  std::size_t size() const { return order.size(); }

  /// P in the U-first ordering.
  Matrix permuted() const;
  /// P in the caller's original ordering.
  Matrix reassemble() const;
};

BlockDecomposition decompose(const StochasticMatrix& p, const SubsetMask& u);

/// A keeps the columns of the permuted P that lead into U, B the columns
/// that lead into U^c; a + b is the permuted P.
struct LiftedPair {
  Matrix a;
  Matrix b;
  std::size_t u_size = 0;
  std::vector<std::size_t> order;

  std::size_t size() const { return order.size(); }
};

LiftedPair lift(const BlockDecomposition& blocks);

inline LiftedPair lift(const StochasticMatrix& p, const SubsetMask& u) {
  return lift(decompose(p, u));
}

/// Maps a vector in U-first ordering back to the original state order.
Vector to_original_order(const Vector& permuted,
                         std::span<const std::size_t> order);
/// Maps a vector in original order into U-first ordering.
Vector to_permuted_order(const Vector& original,
                         std::span<const std::size_t> order);

}  // namespace occupancy

#endif  // OCCUPANCY_CHAIN_HPP
