#ifndef OCCUPANCY_ORACLE_HPP
#define OCCUPANCY_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "occupancy/chain.hpp"

namespace occupancy {

inline constexpr std::size_t kMaxEnumeratedPaths = 10'000'000;

/// Samples per independently seeded shard; the shard layout, and hence the
/// tally, does not depend on how many workers run.
inline constexpr std::size_t kSimShardSize = 1 << 16;

/// Generator recorded in simulation metadata.
inline constexpr std::string_view kGeneratorName =
    "mt19937_64 (per-shard seeds from splitmix64)";

class TooManyPaths : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Exact pmf of N_n from X_0 = start, summing all |S|^n trajectories.
/// Throws TooManyPaths when |S|^n exceeds kMaxEnumeratedPaths.
std::vector<double> enumerate_paths(const StochasticMatrix& p, const SubsetMask& u,
                                    std::size_t n, std::size_t start);

struct SimConfig {
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  std::size_t start_state = 0;
  std::size_t workers = 1;
};

struct EmpiricalDistribution {
  std::vector<std::uint64_t> counts;
  std::uint64_t samples = 0;

  double frequency(std::size_t k) const {
    return static_cast<double>(counts.at(k)) / static_cast<double>(samples);
  }
};

/// Draws cfg.samples trajectories of length n by inverse-CDF sampling.
/// Bit-reproducible for a fixed seed regardless of cfg.workers.
EmpiricalDistribution simulate(const StochasticMatrix& p, const SubsetMask& u,
                               std::size_t n, const SimConfig& cfg);

}  // namespace occupancy

#endif  // OCCUPANCY_ORACLE_HPP
