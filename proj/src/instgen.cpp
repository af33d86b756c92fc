#include "ddfl/instgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ddfl {

CostConfig cost_config(int id) {
  switch (id) {
    case 1: return {15.0, 500.0, 400.0};
    case 2: return {12.5, 500.0, 400.0};
    case 3: return {17.5, 500.0, 400.0};
    case 4: return {15.0, 250.0, 400.0};
    case 5: return {15.0, 750.0, 400.0};
    case 6: return {15.0, 500.0, 200.0};
    case 7: return {15.0, 500.0, 600.0};
  }
  throw InstanceError("config: outside 1..7");
}

namespace {

double sq_dist(const Mat& xy, int p, const Mat& centers, int c) {
  const double dx = xy(p, 0) - centers(c, 0);
  const double dy = xy(p, 1) - centers(c, 1);
  return dx * dx + dy * dy;
}

// k-means++: first center uniform, later ones weighted by squared distance
// to the nearest chosen center. Zero total weight (duplicate points) falls
// back to the lowest-index point that is not already a center.
Mat seed_centers(const Mat& xy, int k, Rng& rng) {
  const int n = static_cast<int>(xy.rows());
  Mat centers(k, 2);
  std::vector<int> chosen;
  chosen.push_back(static_cast<int>(rng.below(n)));
  centers.row(0) = xy.row(chosen[0]);
  Vec d2 = Vec::Constant(n, std::numeric_limits<double>::infinity());
  for (int c = 1; c < k; ++c) {
    for (int p = 0; p < n; ++p) d2(p) = std::min(d2(p), sq_dist(xy, p, centers, c - 1));
    const double total = d2.sum();
    int pick = -1;
    if (total > 0.0) {
      const double r = rng.next_open01() * total;
      double acc = 0.0;
      for (int p = 0; p < n; ++p) {
        acc += d2(p);
        if (acc > r) {
          pick = p;
          break;
        }
      }
      if (pick < 0) pick = n - 1;  // r landed on the rounding tail
    } else {
      for (int p = 0; p < n && pick < 0; ++p)
        if (std::find(chosen.begin(), chosen.end(), p) == chosen.end()) pick = p;
      if (pick < 0) pick = 0;
    }
    chosen.push_back(pick);
    centers.row(c) = xy.row(pick);
  }
  return centers;
}

}  // namespace

std::vector<int> cluster_points(const Mat& xy, int k, Rng& rng) {
  const int n = static_cast<int>(xy.rows());
  if (k < 1 || k > n) throw InstanceError("zones: need 1 <= |Z| <= |facilities|");
  Mat centers = seed_centers(xy, k, rng);
  std::vector<int> assign(n, -1), prev;

  for (int round = 0; round < 100; ++round) {
    prev = assign;
    for (int p = 0; p < n; ++p) {
      int best = 0;
      double bestd = sq_dist(xy, p, centers, 0);
      for (int c = 1; c < k; ++c) {
        const double d = sq_dist(xy, p, centers, c);
        if (d < bestd) {
          bestd = d;
          best = c;
        }
      }
      assign[p] = best;
    }

    // Empty-cluster repair: donate the globally farthest point whose cluster
    // keeps at least one other member.
    std::vector<int> count(k, 0);
    for (int a : assign) ++count[a];
    for (int c = 0; c < k; ++c) {
      while (count[c] == 0) {
        int far = -1;
        double fard = -1.0;
        for (int p = 0; p < n; ++p) {
          if (count[assign[p]] < 2) continue;
          const double d = sq_dist(xy, p, centers, assign[p]);
          if (d > fard) {
            fard = d;
            far = p;
          }
        }
        if (far < 0) break;  // k == n and all singletons; cannot happen with count[c]==0
        --count[assign[far]];
        assign[far] = c;
        ++count[c];
      }
    }

    if (assign == prev) break;
    for (int c = 0; c < k; ++c) centers.row(c).setZero();
    std::vector<int> m(k, 0);
    for (int p = 0; p < n; ++p) {
      centers.row(assign[p]) += xy.row(p);
      ++m[assign[p]];
    }
    for (int c = 0; c < k; ++c) centers.row(c) /= std::max(m[c], 1);
  }
  return assign;
}

std::vector<int> rank_zones(double x, double y, const Mat& centroids) {
  const int k = static_cast<int>(centroids.rows());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> d(k);
  for (int c = 0; c < k; ++c) {
    const double dx = x - centroids(c, 0);
    const double dy = y - centroids(c, 1);
    d[c] = dx * dx + dy * dy;
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
  return order;
}

Mat zone_centroids(const Instance& inst) {
  Mat cen = Mat::Zero(inst.n_zones(), 2);
  for (int z = 0; z < inst.n_zones(); ++z) {
    for (int i : inst.zones[z]) {
      cen(z, 0) += inst.facilities[i].x;
      cen(z, 1) += inst.facilities[i].y;
    }
    cen.row(z) /= static_cast<double>(inst.zones[z].size());
  }
  return cen;
}

Instance generate_instance(const GenParams& p) {
  if (p.n_facilities < 1) throw InstanceError("facilities: need at least 1");
  if (p.n_customers < 1) throw InstanceError("customers: need at least 1");
  if (p.n_zones < 1 || p.n_zones > p.n_facilities)
    throw InstanceError("zones: need 1 <= |Z| <= |facilities|");
  if (p.scenarios_per_distribution < 1)
    throw InstanceError("scenarios_per_distribution: must be >= 1");
  const CostConfig cc = cost_config(p.config);

  Instance inst;
  inst.demand_type = p.demand_type;
  inst.scenarios_per_distribution = p.scenarios_per_distribution;
  inst.seed = p.seed;
  inst.config = p.config;

  Rng pos_rng(p.seed, kStreamCustomerPosition);
  Rng mean_rng(p.seed, kStreamCustomerMean);
  Rng spread_rng(p.seed, kStreamCustomerSpread);
  for (int j = 0; j < p.n_customers; ++j) {
    CustomerSpec c;
    c.x = pos_rng.uniform(0.0, 100.0);
    c.y = pos_rng.uniform(0.0, 100.0);
    c.mu = mean_rng.uniform(10.0, 50.0);
    c.sigma = c.mu * spread_rng.uniform(0.05, 0.35);
    inst.customers.push_back(c);
  }

  // The three demand-heaviest customers each anchor one facility inside the
  // surrounding 10x10 box (clipped to the region); the rest spread over the
  // central 60x60 box.
  std::vector<int> by_mu(p.n_customers);
  std::iota(by_mu.begin(), by_mu.end(), 0);
  std::stable_sort(by_mu.begin(), by_mu.end(),
                   [&](int a, int b) { return inst.customers[a].mu > inst.customers[b].mu; });
  const int anchors = std::min(3, std::min(p.n_facilities, p.n_customers));

  Rng fac_rng(p.seed, kStreamFacilityPosition);
  Mat fxy(p.n_facilities, 2);
  for (int i = 0; i < p.n_facilities; ++i) {
    FacilitySpec f;
    if (i < anchors) {
      const CustomerSpec& c = inst.customers[by_mu[i]];
      f.x = fac_rng.uniform(std::max(0.0, c.x - 5.0), std::min(100.0, c.x + 5.0));
      f.y = fac_rng.uniform(std::max(0.0, c.y - 5.0), std::min(100.0, c.y + 5.0));
    } else {
      f.x = fac_rng.uniform(20.0, 80.0);
      f.y = fac_rng.uniform(20.0, 80.0);
    }
    fxy(i, 0) = f.x;
    fxy(i, 1) = f.y;
    inst.facilities.push_back(f);
  }

  Rng cluster_rng(p.seed, kStreamClusterSeeding);
  const std::vector<int> zone_of = cluster_points(fxy, p.n_zones, cluster_rng);
  for (int i = 0; i < p.n_facilities; ++i) inst.facilities[i].zone = zone_of[i];
  inst.rebuild_zones();

  const Mat cen = zone_centroids(inst);
  for (auto& c : inst.customers) c.zone_rank = rank_zones(c.x, c.y, cen);

  const double nj = static_cast<double>(p.n_customers);
  inst.fixed_cost = Vec::Constant(p.n_facilities, cc.opening_per_customer * nj);
  inst.capacity = Vec::Constant(p.n_facilities, cc.capacity_per_customer * nj);
  inst.revenue = Mat::Constant(p.n_facilities, p.n_customers, cc.revenue);

  inst.validate();
  return inst;
}

}  // namespace ddfl
