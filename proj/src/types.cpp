#include "ddfl/types.hpp"

#include <algorithm>
#include <cmath>

namespace ddfl {

DemandType demand_type_from_string(const std::string& s) {
  if (s == "A") return DemandType::A;
  if (s == "B") return DemandType::B;
  if (s == "C") return DemandType::C;
  if (s == "D") return DemandType::D;
  throw InstanceError("demand_type: expected one of A,B,C,D, got \"" + s + "\"");
}

std::string to_string(DemandType t) {
  switch (t) {
    case DemandType::A: return "A";
    case DemandType::B: return "B";
    case DemandType::C: return "C";
    case DemandType::D: return "D";
  }
  return "?";
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::TimeLimit: return "TimeLimit";
    case SolveStatus::Infeasible: return "Infeasible";
  }
  return "?";
}

double optimality_gap_percent(double bound, double incumbent) {
  return 100.0 * std::abs(bound - incumbent) / (1e-10 + std::abs(incumbent));
}

void Instance::rebuild_zones() {
  int nz = 0;
  for (const auto& f : facilities) nz = std::max(nz, f.zone + 1);
  zones.assign(nz, {});
  for (int i = 0; i < n_facilities(); ++i) {
    int z = facilities[i].zone;
    if (z < 0) throw InstanceError("facilities[" + std::to_string(i) + "].zone: negative");
    zones[z].push_back(i);
  }
}

void Instance::validate() const {
  const int ni = n_facilities();
  const int nj = n_customers();
  const int nz = n_zones();
  if (ni == 0) throw InstanceError("facilities: empty");
  if (nj == 0) throw InstanceError("customers: empty");
  if (nz == 0) throw InstanceError("zones: empty");
  if (nz > 31) throw InstanceError("zones: more than 31 zones unsupported");

  // Partition check: every facility in exactly one zone, no empty zone.
  std::vector<int> hit(ni, 0);
  for (int z = 0; z < nz; ++z) {
    if (zones[z].empty())
      throw InstanceError("zones[" + std::to_string(z) + "]: zones not a partition (empty zone)");
    for (int i : zones[z]) {
      if (i < 0 || i >= ni)
        throw InstanceError("zones[" + std::to_string(z) + "]: facility index out of range");
      if (hit[i]++)
        throw InstanceError("zones[" + std::to_string(z) + "]: zones not a partition (facility " +
                            std::to_string(i) + " appears twice)");
      if (facilities[i].zone != z)
        throw InstanceError("facilities[" + std::to_string(i) +
                            "].zone: disagrees with zone membership sets");
    }
  }
  for (int i = 0; i < ni; ++i)
    if (!hit[i])
      throw InstanceError("zones: zones not a partition (facility " + std::to_string(i) +
                          " unassigned)");

  if (fixed_cost.size() != ni) throw InstanceError("F: length != |facilities|");
  if (capacity.size() != ni) throw InstanceError("C: length != |facilities|");
  if (revenue.rows() != ni || revenue.cols() != nj)
    throw InstanceError("R: shape != |facilities| x |customers|");
  for (int i = 0; i < ni; ++i) {
    const std::string fi = "facilities[" + std::to_string(i) + "]";
    if (!std::isfinite(facilities[i].x) || !std::isfinite(facilities[i].y))
      throw InstanceError(fi + ": non-finite coordinate");
    if (!(fixed_cost(i) > 0.0)) throw InstanceError("F[" + std::to_string(i) + "]: must be > 0");
    if (!(capacity(i) > 0.0)) throw InstanceError("C[" + std::to_string(i) + "]: must be > 0");
  }
  for (int i = 0; i < ni; ++i)
    for (int j = 0; j < nj; ++j)
      if (!(revenue(i, j) >= 0.0) || !std::isfinite(revenue(i, j)))
        throw InstanceError("R[" + std::to_string(i) + "][" + std::to_string(j) +
                            "]: must be finite and >= 0");

  for (int j = 0; j < nj; ++j) {
    const std::string cj = "customers[" + std::to_string(j) + "]";
    const CustomerSpec& c = customers[j];
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) throw InstanceError(cj + ": non-finite coordinate");
    if (!(c.mu >= 10.0 && c.mu <= 50.0)) throw InstanceError(cj + ".mu: outside [10,50]");
    if (!(c.sigma > 0.0)) throw InstanceError(cj + ".sigma: must be > 0");
    const double ratio = c.sigma / c.mu;
    if (ratio < 0.05 - 1e-12 || ratio > 0.35 + 1e-12)
      throw InstanceError(cj + ".sigma: sigma/mu outside [0.05,0.35]");
    if (static_cast<int>(c.zone_rank.size()) != nz)
      throw InstanceError(cj + ".zone_rank: length != |zones|");
    std::vector<int> seen(nz, 0);
    for (int z : c.zone_rank) {
      if (z < 0 || z >= nz || seen[z]++)
        throw InstanceError(cj + ".zone_rank: not a permutation of 0..|zones|-1");
    }
  }

  if (scenarios_per_distribution < 1)
    throw InstanceError("scenarios_per_distribution: must be >= 1");
  if (config < 1 || config > 7) throw InstanceError("config: outside 1..7");
}

bool Instance::operator==(const Instance& o) const {
  auto fac_eq = [](const FacilitySpec& a, const FacilitySpec& b) {
    return a.x == b.x && a.y == b.y && a.zone == b.zone;
  };
  auto cus_eq = [](const CustomerSpec& a, const CustomerSpec& b) {
    return a.x == b.x && a.y == b.y && a.mu == b.mu && a.sigma == b.sigma &&
           a.zone_rank == b.zone_rank;
  };
  if (facilities.size() != o.facilities.size() || customers.size() != o.customers.size())
    return false;
  for (std::size_t i = 0; i < facilities.size(); ++i)
    if (!fac_eq(facilities[i], o.facilities[i])) return false;
  for (std::size_t j = 0; j < customers.size(); ++j)
    if (!cus_eq(customers[j], o.customers[j])) return false;
  return zones == o.zones && fixed_cost == o.fixed_cost && capacity == o.capacity &&
         revenue == o.revenue && demand_type == o.demand_type &&
         scenarios_per_distribution == o.scenarios_per_distribution && seed == o.seed &&
         config == o.config;
}

}  // namespace ddfl
