#pragma once

#include <list>
#include <map>
#include <memory>
#include <mutex>

#include "ddfl/types.hpp"

namespace ddfl {

// Zone z is active iff it hosts at least one open facility; the resulting
// bitmask selects the demand distribution the decision induces.
DistributionId activation_mask(const Instance& inst, const std::vector<int>& x);
inline DistributionId identify_distribution(const Instance& inst, const std::vector<int>& x) {
  return activation_mask(inst, x);
}

struct DistParams {
  double mu;
  double sigma;
};

// Shifted demand parameters in rank space: bit n-1 of rank_bits says whether
// the customer's n-th nearest zone is active. Rank weights are 0.5^n for the
// mean and 0.4^n for the spread; the four demand types combine them as
//   A: every active rank shifts mean up / spread down,
//   B: only the nearest-ranked zone (n = 1) matters,
//   C: only the best active rank matters,
//   D: rank 1 shifts up as in A, ranks >= 2 shift the opposite way.
// Weights shrink geometrically, so the mean stays > mu/2 and the spread
// stays positive for every pattern.
DistParams rank_shift_params(double mu, double sigma, std::uint32_t rank_bits, int n_zones,
                             DemandType t);

// Same, for a concrete customer and distribution (translates the zone mask
// through the customer's zone_rank permutation).
DistParams dist_params(const Instance& inst, int customer, DistributionId d);

struct ScenarioSet {
  DistributionId id;
  Mat xi;    // |J| x |S|, xi(j,s) >= 0
  Vec prob;  // length |S|, uniform 1/|S|
};

// Owns the common random numbers and the lazily built scenario sets.
// One uniform draw u_{js} per (customer, scenario) is shared by every
// distribution, so scenario demands are coupled across distributions:
// xi(j,s) is the inverse truncated-normal CDF of the same u under each
// distribution's parameters. Built sets live in a bounded LRU cache.
class DemandModel {
 public:
  explicit DemandModel(const Instance& inst, std::size_t cache_capacity = 4096);

  const Instance& instance() const { return *inst_; }

  std::shared_ptr<const ScenarioSet> scenarios(DistributionId d) const;

  double empirical_mean(DistributionId d, int customer) const;

  // max over all 2^|Z| distributions of the empirical mean of customer j's
  // demand. Exact by enumeration of distinct parameter patterns (types B, C
  // and D reduce to 2, |Z|+1 and 2^|Z| candidates); type A uses the
  // all-zones-active pattern, which maximizes the mean and minimizes the
  // spread simultaneously.
  const Vec& max_empirical_means() const;

  double uniform(int customer, int scenario) const { return uniforms_(customer, scenario); }

 private:
  double pattern_mean(int customer, std::uint32_t rank_bits) const;

  const Instance* inst_;
  Mat uniforms_;  // |J| x |S| common random numbers
  std::size_t cache_capacity_;

  mutable std::mutex mutex_;
  mutable std::list<std::pair<std::uint32_t, std::shared_ptr<const ScenarioSet>>> lru_;
  mutable std::map<std::uint32_t, decltype(lru_)::iterator> by_mask_;
  mutable Vec max_means_;  // empty until first use
};

}  // namespace ddfl
