#include "occupancy/two_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace occupancy::two_state {
namespace {

// The alternating sums in the closed forms carry terms many orders of
// magnitude above their result (about 1e14 at p = q = 0.1, n = 50), so
// they are accumulated with a 113-bit significand.
using Wide = boost::multiprecision::cpp_bin_float_quad;

Wide wide_pow(Wide base, long long e) {
  if (e < 0) return 1 / wide_pow(base, -e);
  Wide out = 1;
  for (; e > 0; e >>= 1, base *= base)
    if (e & 1) out *= base;
  return out;
}

Wide wide_binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Wide c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

void check_index(std::size_t n, std::size_t k) {
  if (k > n) {
    throw IndexOutOfRange("occupancy count " + std::to_string(k) +
                          " exceeds horizon " + std::to_string(n));
  }
}

double ipow(double base, long long e) { return std::pow(base, static_cast<double>(e)); }

double binomial_pmf(const TwoStateParams& s, std::size_t n, std::size_t k) {
  return binomial(n, k) * ipow(s.q(), static_cast<long long>(k)) *
         ipow(s.p(), static_cast<long long>(n - k));
}

}  // namespace

TwoStateParams::TwoStateParams(double p, double q) : p_(p), q_(q), r_(1.0 - p - q) {
  if (!(p > 0.0 && p < 1.0) || !(q > 0.0 && q < 1.0)) {
    throw ParameterError("two-state closed form needs p and q in (0, 1), got p=" +
                         std::to_string(p) + ", q=" + std::to_string(q));
  }
}

TwoStateParams TwoStateParams::from_matrix(const StochasticMatrix& m) {
  if (m.size() != 2) {
    throw ParameterError("closed form is only available for 2-state chains, got " +
                         std::to_string(m.size()) + " states");
  }
  return TwoStateParams(m(0, 1), m(1, 0));
}

bool TwoStateParams::binomial() const { return std::abs(r_) < kBinomialThreshold; }

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i)
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

double g1_closed(const TwoStateParams& s, std::size_t n, std::size_t k) {
  check_index(n, k);
  if (s.binomial()) return binomial_pmf(s, n, k);
  if (k == 0) return ipow(1.0 - s.q(), static_cast<long long>(n));

  const Wide p = s.p();
  const Wide q = s.q();
  const Wide neg_r = p + q - 1;
  const auto ll = [](std::size_t x) { return static_cast<long long>(x); };
  // The prefactor (1-p)^{2k-1-n} is folded into each term's (1-p)^{n-k-j},
  // leaving (1-p)^{k-1-j}; the exponent is >= -1 so nothing overflows.
  Wide sum = 0;
  for (std::size_t j = 0; j <= std::min(k, n - k); ++j) {
    sum += wide_binomial(k, j) * wide_binomial(n - j, n - k - j) *
           (1 - Wide(j) / k * p) * wide_pow(1 - p, ll(k) - 1 - ll(j)) *
           wide_pow(1 - q, ll(n - k - j)) * wide_pow(neg_r, ll(j));
  }
  return static_cast<double>(q * sum);
}

double g0_closed(const TwoStateParams& s, std::size_t n, std::size_t k) {
  check_index(n, k);
  if (s.binomial()) return binomial_pmf(s, n, k);
  if (k == n) return ipow(1.0 - s.p(), static_cast<long long>(n));

  const Wide p = s.p();
  const Wide q = s.q();
  const Wide neg_r = p + q - 1;
  const auto ll = [](std::size_t x) { return static_cast<long long>(x); };
  const std::size_t free_steps = n - k;
  // (1-q)^{n-(2k+1)} folded into (1-q)^{k-j} as for g1_closed.
  Wide sum = 0;
  for (std::size_t j = 0; j <= std::min(k, free_steps); ++j) {
    sum += wide_binomial(free_steps, j) * wide_binomial(n - j, k - j) *
           (1 - Wide(j) / free_steps * q) * wide_pow(1 - q, ll(free_steps) - 1 - ll(j)) *
           wide_pow(1 - p, ll(k - j)) * wide_pow(neg_r, ll(j));
  }
  return static_cast<double>(p * sum);
}

double swap_symmetry(const TwoStateParams& s, std::size_t n, std::size_t k) {
  check_index(n, k);
  return g1_closed(s.swapped(), n, n - k);
}

bool cancellation_warning(const TwoStateParams& s, std::size_t n) {
  return std::abs(s.r()) > 0.9 && n > 40;
}

ProofCoefficients proof_coefficients(const TwoStateParams& s, std::size_t k,
                                     std::size_t order) {
  if (k == 0) throw IndexOutOfRange("proof coefficients are defined for k >= 1");
  const Wide p = s.p();
  const Wide q = s.q();
  const Wide neg_r = p + q - 1;
  const auto ll = [](std::size_t x) { return static_cast<long long>(x); };

  // Same cancellation as the closed forms: b grows like C(k+i, i) while a
  // alternates in sign, so c is convolved in wide precision.
  std::vector<Wide> a(k + 1), b(order + 1);
  a[0] = wide_pow(1 - p, ll(k) - 1);
  a[k] = wide_pow(neg_r, ll(k));
  for (std::size_t i = 1; i < k; ++i) {
    a[i] = (wide_binomial(k, i) - p * wide_binomial(k - 1, i - 1)) *
           wide_pow(1 - p, ll(k) - 1 - ll(i)) * wide_pow(neg_r, ll(i));
  }
  for (std::size_t i = 0; i <= order; ++i)
    b[i] = wide_binomial(k + i, i) * q * wide_pow(1 - q, ll(i));

  ProofCoefficients pc;
  pc.k = k;
  for (const auto& x : a) pc.a.push_back(static_cast<double>(x));
  for (const auto& x : b) pc.b.push_back(static_cast<double>(x));
  pc.c.reserve(order + 1);
  for (std::size_t i = 0; i <= order; ++i) {
    Wide c = 0;
    for (std::size_t j = 0; j <= std::min(i, k); ++j) c += a[j] * b[i - j];
    pc.c.push_back(static_cast<double>(c));
  }
  return pc;
}

std::vector<double> g0_from_g1_series(const TwoStateParams& s, std::size_t k,
                                      std::size_t order) {
  std::vector<double> g1;
  double lead = 0.0;
  if (k == 0) {
    // G_1(t,0) = 1/(1 - (1-q)t) and G_0(t,0) = (1 - rt) G_1(t,0).
    g1.resize(order + 1);
    for (std::size_t m = 0; m <= order; ++m)
      g1[m] = std::pow(1.0 - s.q(), static_cast<double>(m));
    lead = 1.0;
  } else {
    g1 = proof_coefficients(s, k, order).c;
    lead = (1.0 - s.p()) / s.q();
  }
  const double slope = k == 0 ? -s.r() : -s.r() / s.q();
  std::vector<double> g0(order + 1);
  for (std::size_t m = 0; m <= order; ++m)
    g0[m] = lead * g1[m] + (m > 0 ? slope * g1[m - 1] : 0.0);
  return g0;
}

}  // namespace occupancy::two_state
