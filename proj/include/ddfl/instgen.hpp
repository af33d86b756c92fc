#pragma once

#include "ddfl/rng.hpp"
#include "ddfl/types.hpp"

namespace ddfl {

struct GenParams {
  int n_facilities = 10;
  int n_customers = 50;
  int n_zones = 5;
  int scenarios_per_distribution = 50;
  DemandType demand_type = DemandType::A;
  int config = 1;
  std::uint64_t seed = 0;
};

struct CostConfig {
  double capacity_per_customer;  // C_i = this * |J|
  double opening_per_customer;   // F_i = this * |J|
  double revenue;                // R_ij, constant
};

// Seven calibrations; id in 1..7. 1 is the reference point, 2-3 vary
// capacity, 4-5 vary opening cost, 6-7 vary revenue.
CostConfig cost_config(int id);

// Lloyd's algorithm with k-means++ seeding drawn from `rng`, at most 100
// rounds, and empty-cluster repair (the point farthest from its own centroid
// moves into the empty cluster, donors keep at least one member). Returns
// the cluster index per point. Distance ties go to the lower cluster index,
// making the result a deterministic function of (points, k, rng state).
std::vector<int> cluster_points(const Mat& xy, int k, Rng& rng);

// Ranks zones for one position by ascending centroid distance, ties to the
// lower zone index. centroids is |Z| x 2.
std::vector<int> rank_zones(double x, double y, const Mat& centroids);

// Mean member position per zone; |Z| x 2. Recomputable from a saved
// instance, which is what keeps zone_rank verifiable after a round trip.
Mat zone_centroids(const Instance& inst);

// Deterministic seeded generation:
//   customers uniform on [0,100]^2, mu ~ U[10,50], sigma/mu ~ U[0.05,0.35];
//   one facility in the 10x10 box (clipped to the region) around each of the
//   three largest-mu customers, the rest uniform on the centered 60x60 box;
//   zones from cluster_points; ranks from zone_centroids; costs from config.
Instance generate_instance(const GenParams& p);

}  // namespace ddfl
