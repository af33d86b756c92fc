#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddfl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Thrown on malformed instance files or invariant violations; the message
// carries the offending field path (e.g. "customers[3].zone_rank").
class InstanceError : public std::runtime_error {
 public:
  explicit InstanceError(const std::string& what) : std::runtime_error(what) {}
};

enum class DemandType { A, B, C, D };

DemandType demand_type_from_string(const std::string& s);
std::string to_string(DemandType t);

// Identifies one member of the finite distribution family: bit z is set iff
// zone z contains at least one open facility. A |Z|-zone instance therefore
// has exactly 2^|Z| distributions, mask 0 being the all-closed base case.
struct DistributionId {
  std::uint32_t mask = 0;

  bool contains(int zone) const { return (mask >> zone) & 1u; }
  int active_count() const { return std::popcount(mask); }

  friend bool operator==(DistributionId a, DistributionId b) { return a.mask == b.mask; }
  friend bool operator<(DistributionId a, DistributionId b) { return a.mask < b.mask; }
};

struct FacilitySpec {
  double x = 0.0;
  double y = 0.0;
  int zone = 0;
};

struct CustomerSpec {
  double x = 0.0;
  double y = 0.0;
  double mu = 0.0;     // base demand mean
  double sigma = 0.0;  // base demand stddev
  // zone_rank[n] is the index of the (n+1)-th closest zone centroid; a
  // permutation of 0..|Z|-1. Rank order drives the demand shift weights.
  std::vector<int> zone_rank;
};

struct Instance {
  std::vector<FacilitySpec> facilities;
  std::vector<CustomerSpec> customers;
  // zones[z] lists the facility indices of zone z; the sets partition
  // 0..|I|-1 and agree with facilities[i].zone.
  std::vector<std::vector<int>> zones;
  Vec fixed_cost;           // F_i, length |I|
  Vec capacity;             // C_i, length |I|
  Mat revenue;              // R(i,j), |I| x |J|, per-unit revenue
  DemandType demand_type = DemandType::A;
  int scenarios_per_distribution = 1;
  std::uint64_t seed = 0;
  int config = 1;  // generator configuration id, 1..7

  int n_facilities() const { return static_cast<int>(facilities.size()); }
  int n_customers() const { return static_cast<int>(customers.size()); }
  int n_zones() const { return static_cast<int>(zones.size()); }
  std::uint32_t n_distributions() const { return 1u << n_zones(); }

  // Rebuilds `zones` from facilities[i].zone. For programmatic construction;
  // the loader always calls it.
  void rebuild_zones();

  // Throws InstanceError naming the first violated field. Checks: partition
  // structure, zone_rank permutations, positive capacities/costs, revenue
  // shape and sign, mu in [10,50], sigma/mu in [0.05,0.35], config in 1..7.
  void validate() const;

  bool operator==(const Instance& o) const;
};

enum class SolveStatus { Optimal, TimeLimit, Infeasible };

std::string to_string(SolveStatus s);

// gap% = 100 * |bound - incumbent| / (1e-10 + |incumbent|)
double optimality_gap_percent(double bound, double incumbent);

struct SolveReport {
  std::vector<int> incumbent;  // x_i in {0,1}, empty if no feasible point found
  double objective = 0.0;      // min orientation: sum_i F_i x_i - expected revenue
  double best_bound = 0.0;
  double gap_percent = 0.0;
  double wall_time_s = 0.0;
  std::int64_t iterations = 0;  // separation rounds (L-shaped) / 0 otherwise
  std::int64_t cuts_total = 0;
  std::int64_t bnb_nodes = 0;
  std::map<std::uint32_t, int> cuts_per_distribution;
  SolveStatus status = SolveStatus::Optimal;
};

}  // namespace ddfl
