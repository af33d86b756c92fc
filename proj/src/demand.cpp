#include "ddfl/demand.hpp"

#include <cmath>

#include "ddfl/rng.hpp"
#include "ddfl/stats.hpp"

namespace ddfl {

DistributionId activation_mask(const Instance& inst, const std::vector<int>& x) {
  if (static_cast<int>(x.size()) != inst.n_facilities())
    throw std::invalid_argument("activation_mask: |x| != |facilities|");
  std::uint32_t mask = 0;
  for (int z = 0; z < inst.n_zones(); ++z)
    for (int i : inst.zones[z])
      if (x[i] > 0) {
        mask |= (1u << z);
        break;
      }
  return DistributionId{mask};
}

DistParams rank_shift_params(double mu, double sigma, std::uint32_t rank_bits, int n_zones,
                             DemandType t) {
  double mu_shift = 0.0;    // accumulated fraction of mu
  double sig_shift = 0.0;   // accumulated fraction of sigma
  double aw = 1.0, bw = 1.0;
  switch (t) {
    case DemandType::A:
      for (int n = 1; n <= n_zones; ++n) {
        aw *= 0.5;
        bw *= 0.4;
        if ((rank_bits >> (n - 1)) & 1u) {
          mu_shift += aw;
          sig_shift += bw;
        }
      }
      break;
    case DemandType::B:
      if (rank_bits & 1u) {
        mu_shift = 0.5;
        sig_shift = 0.4;
      }
      break;
    case DemandType::C:
      for (int n = 1; n <= n_zones; ++n) {
        aw *= 0.5;
        bw *= 0.4;
        if ((rank_bits >> (n - 1)) & 1u) {
          mu_shift = aw;
          sig_shift = bw;
          break;
        }
      }
      break;
    case DemandType::D:
      for (int n = 1; n <= n_zones; ++n) {
        aw *= 0.5;
        bw *= 0.4;
        if ((rank_bits >> (n - 1)) & 1u) {
          if (n == 1) {
            mu_shift += aw;
            sig_shift += bw;
          } else {
            mu_shift -= aw;
            sig_shift -= bw;
          }
        }
      }
      break;
  }
  return {mu * (1.0 + mu_shift), sigma * (1.0 - sig_shift)};
}

DistParams dist_params(const Instance& inst, int customer, DistributionId d) {
  const CustomerSpec& c = inst.customers[customer];
  std::uint32_t rank_bits = 0;
  for (int n = 0; n < inst.n_zones(); ++n)
    if (d.contains(c.zone_rank[n])) rank_bits |= (1u << n);
  return rank_shift_params(c.mu, c.sigma, rank_bits, inst.n_zones(), inst.demand_type);
}

DemandModel::DemandModel(const Instance& inst, std::size_t cache_capacity)
    : inst_(&inst), cache_capacity_(cache_capacity) {
  const int nj = inst.n_customers();
  const int ns = inst.scenarios_per_distribution;
  uniforms_.resize(nj, ns);
  for (int j = 0; j < nj; ++j)
    for (int s = 0; s < ns; ++s)
      uniforms_(j, s) = rng_open01_at(inst.seed, kStreamScenarioUniforms,
                                      static_cast<std::uint64_t>(j) * ns + s);
}

std::shared_ptr<const ScenarioSet> DemandModel::scenarios(DistributionId d) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto hit = by_mask_.find(d.mask);
  if (hit != by_mask_.end()) {
    lru_.splice(lru_.begin(), lru_, hit->second);
    return hit->second->second;
  }

  const int nj = inst_->n_customers();
  const int ns = inst_->scenarios_per_distribution;
  auto set = std::make_shared<ScenarioSet>();
  set->id = d;
  set->xi.resize(nj, ns);
  set->prob = Vec::Constant(ns, 1.0 / ns);
  for (int j = 0; j < nj; ++j) {
    const DistParams pr = dist_params(*inst_, j, d);
    for (int s = 0; s < ns; ++s)
      set->xi(j, s) = truncnorm_inverse_cdf(uniforms_(j, s), pr.mu, pr.sigma);
  }

  lru_.emplace_front(d.mask, set);
  by_mask_[d.mask] = lru_.begin();
  if (lru_.size() > cache_capacity_) {
    by_mask_.erase(lru_.back().first);
    lru_.pop_back();
  }
  return set;
}

double DemandModel::empirical_mean(DistributionId d, int customer) const {
  const DistParams pr = dist_params(*inst_, customer, d);
  const int ns = inst_->scenarios_per_distribution;
  double acc = 0.0;
  for (int s = 0; s < ns; ++s)
    acc += truncnorm_inverse_cdf(uniforms_(customer, s), pr.mu, pr.sigma);
  return acc / ns;
}

double DemandModel::pattern_mean(int customer, std::uint32_t rank_bits) const {
  const CustomerSpec& c = inst_->customers[customer];
  const DistParams pr =
      rank_shift_params(c.mu, c.sigma, rank_bits, inst_->n_zones(), inst_->demand_type);
  const int ns = inst_->scenarios_per_distribution;
  double acc = 0.0;
  for (int s = 0; s < ns; ++s)
    acc += truncnorm_inverse_cdf(uniforms_(customer, s), pr.mu, pr.sigma);
  return acc / ns;
}

const Vec& DemandModel::max_empirical_means() const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (max_means_.size() > 0) return max_means_;

  const int nj = inst_->n_customers();
  const int nz = inst_->n_zones();
  const std::uint32_t full = (nz >= 32) ? ~0u : ((1u << nz) - 1u);
  max_means_.resize(nj);

  // Every zone mask maps to a rank-space bit pattern through the customer's
  // zone_rank permutation, bijectively, so maximizing over distributions
  // equals maximizing over rank patterns. Distinct patterns with equal
  // parameters are the only redundancy, which the per-type reductions below
  // remove.
  for (int j = 0; j < nj; ++j) {
    double best = 0.0;
    switch (inst_->demand_type) {
      case DemandType::A:
        best = pattern_mean(j, full);
        break;
      case DemandType::B:
        best = std::max(pattern_mean(j, 0u), pattern_mean(j, 1u));
        break;
      case DemandType::C: {
        best = pattern_mean(j, 0u);
        for (int n = 0; n < nz; ++n) best = std::max(best, pattern_mean(j, 1u << n));
        break;
      }
      case DemandType::D: {
        for (std::uint32_t bits = 0; bits <= full; ++bits)
          best = std::max(best, pattern_mean(j, bits));
        break;
      }
    }
    max_means_(j) = best;
  }
  return max_means_;
}

}  // namespace ddfl
