#ifndef OCCUPANCY_TWO_STATE_HPP
#define OCCUPANCY_TWO_STATE_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "occupancy/chain.hpp"

namespace occupancy::two_state {

/// Below this |r| the chain is treated as i.i.d. and the binomial branch is
/// used.
inline constexpr double kBinomialThreshold = 1e-14;

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Two-state chain P = [[1-p, p], [q, 1-q]] with r = 1 - p - q.
class TwoStateParams {
 public:
  /// Rejects p or q outside the open interval (0, 1).
  TwoStateParams(double p, double q);

  /// Reads p = P(0,1), q = P(1,0) off a 2x2 chain.
  static TwoStateParams from_matrix(const StochasticMatrix& m);

  double p() const { return p_; }
  double q() const { return q_; }
  double r() const { return r_; }
  bool binomial() const;
  TwoStateParams swapped() const { return TwoStateParams(q_, p_); }

 private:
  double p_;
  double q_;
  double r_;
};

/// Pr(N_n = k | X_0 = 1) for U = {0}.
double g1_closed(const TwoStateParams& params, std::size_t n, std::size_t k);

/// Pr(N_n = k | X_0 = 0) for U = {0}.
double g0_closed(const TwoStateParams& params, std::size_t n, std::size_t k);

/// g1_closed with p and q exchanged at n - k. Counting visits to state 1
/// instead of state 0 turns k into n - k, so this reproduces g0_closed.
double swap_symmetry(const TwoStateParams& params, std::size_t n, std::size_t k);

/// True where the alternating sum is expected to lose digits.
bool cancellation_warning(const TwoStateParams& params, std::size_t n);

/// Coefficient arrays from the generating-function derivation for fixed k:
///   (1 - rt)(1 - p - rt)^{k-1} = sum_i a_i t^i,
///   q / (1 - (1-q)t)^{k+1}    = sum_i b_i t^i,
///   c = a * b (so c_i = g_1(i + k, k)).
struct ProofCoefficients {
  std::size_t k = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
};

/// k >= 1. The a_i use the split form C(k,i) - p C(k-1,i-1), independent of
/// the (1 - (i/k) p) factor used by the closed forms.
ProofCoefficients proof_coefficients(const TwoStateParams& params, std::size_t k,
                                     std::size_t order);

/// Coefficients of G_0(t,k) obtained from those of G_1(t,k): multiplies by
/// (1 - p - rt)/q for k >= 1 and by (1 - rt) for k = 0, where the G_1 series
/// is 1/(1 - (1-q)t) and carries no factor q. Entry m is g_0(m + k, k).
std::vector<double> g0_from_g1_series(const TwoStateParams& params, std::size_t k,
                                      std::size_t order);

/// C(n, k) by multiplicative recurrence; 0 when k > n.
double binomial(std::size_t n, std::size_t k);

}  // namespace occupancy::two_state

#endif  // OCCUPANCY_TWO_STATE_HPP
