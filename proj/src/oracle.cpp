#include "occupancy/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <string>
#include <thread>

namespace occupancy {
namespace {

class PathEnumerator {
 public:
  PathEnumerator(const StochasticMatrix& p, const SubsetMask& u, std::size_t n)
      : p_(p), u_(u), n_(n), pmf_(n + 1, 0.0) {}

  std::vector<double> run(std::size_t start) {
    visit(start, 0, 0, 1.0);
    return pmf_;
  }

 private:
  void visit(std::size_t state, std::size_t depth, std::size_t hits, double prob) {
    if (depth == n_) {
      pmf_[hits] += prob;
      return;
    }
    for (std::size_t next = 0; next < p_.size(); ++next) {
      const double w = p_(state, next);
      if (w == 0.0) continue;
      visit(next, depth + 1, hits + (u_.contains(next) ? 1 : 0), prob * w);
    }
  }

  const StochasticMatrix& p_;
  const SubsetMask& u_;
  std::size_t n_;
  std::vector<double> pmf_;
};

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t shard_seed(std::uint64_t seed, std::size_t shard) {
  std::uint64_t state = seed;
  const std::uint64_t base = splitmix64(state);
  state = base + 0xd1b54a32d192ed03ULL * static_cast<std::uint64_t>(shard);
  return splitmix64(state);
}

struct RowSampler {
  // cdf[i][j] = P(i,0) + ... + P(i,j), last entry pinned to 1.
  std::vector<std::vector<double>> cdf;
  std::vector<std::vector<bool>> positive;

  explicit RowSampler(const StochasticMatrix& p) {
    const std::size_t n = p.size();
    cdf.assign(n, std::vector<double>(n));
    positive.assign(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        acc += p(i, j);
        cdf[i][j] = acc;
        positive[i][j] = p(i, j) > 0.0;
      }
      cdf[i][n - 1] = 1.0;
    }
  }

  // First state j with u <= cdf(j) that can actually be reached; a u landing
  // exactly on a bin edge goes to the lower index.
  std::size_t draw(std::size_t from, double u) const {
    const auto& row = cdf[from];
    for (std::size_t j = 0; j < row.size(); ++j)
      if (positive[from][j] && u <= row[j]) return j;
    for (std::size_t j = row.size(); j-- > 0;)
      if (positive[from][j]) return j;
    return from;
  }
};

void run_shard(const RowSampler& sampler, const SubsetMask& u, std::size_t n,
               std::size_t start, std::uint64_t seed, std::size_t samples,
               std::vector<std::uint64_t>& counts) {
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t state = start;
    std::size_t hits = 0;
    for (std::size_t m = 0; m < n; ++m) {
      const double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      state = sampler.draw(state, draw);
      hits += u.contains(state) ? 1 : 0;
    }
    ++counts[hits];
  }
}

}  // namespace

std::vector<double> enumerate_paths(const StochasticMatrix& p, const SubsetMask& u,
                                    std::size_t n, std::size_t start) {
  if (u.size() != p.size()) {
    throw ChainError(ChainErrorKind::MaskLengthMismatch,
                     "subset mask length does not match the chain");
  }
  if (start >= p.size()) {
    throw ChainError(ChainErrorKind::StateOutOfRange,
                     "start state " + std::to_string(start) + " out of range", start);
  }
  double paths = 1.0;
  for (std::size_t m = 0; m < n; ++m) {
    paths *= static_cast<double>(p.size());
    if (paths > static_cast<double>(kMaxEnumeratedPaths)) {
      throw TooManyPaths(std::to_string(p.size()) + "^" + std::to_string(n) +
                         " paths exceed the enumeration limit of " +
                         std::to_string(kMaxEnumeratedPaths));
    }
  }
  return PathEnumerator(p, u, n).run(start);
}

EmpiricalDistribution simulate(const StochasticMatrix& p, const SubsetMask& u,
                               std::size_t n, const SimConfig& cfg) {
  if (cfg.samples == 0) throw std::invalid_argument("simulation needs at least one sample");
  if (u.size() != p.size()) {
    throw ChainError(ChainErrorKind::MaskLengthMismatch,
                     "subset mask length does not match the chain");
  }
  if (cfg.start_state >= p.size()) {
    throw ChainError(ChainErrorKind::StateOutOfRange,
                     "start state " + std::to_string(cfg.start_state) + " out of range",
                     cfg.start_state);
  }

  const RowSampler sampler(p);
  const std::size_t shards = (cfg.samples + kSimShardSize - 1) / kSimShardSize;
  std::vector<std::vector<std::uint64_t>> tallies(
      shards, std::vector<std::uint64_t>(n + 1, 0));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t s = next++; s < shards; s = next++) {
      const std::size_t begin = s * kSimShardSize;
      const std::size_t count = std::min(kSimShardSize, cfg.samples - begin);
      run_shard(sampler, u, n, cfg.start_state, shard_seed(cfg.seed, s), count,
                tallies[s]);
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(cfg.workers, 1, shards);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  EmpiricalDistribution out;
  out.counts.assign(n + 1, 0);
  out.samples = cfg.samples;
  for (const auto& t : tallies)
    for (std::size_t k = 0; k <= n; ++k) out.counts[k] += t[k];
  return out;
}

}  // namespace occupancy
