#include "ddfl/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace ddfl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Labels {
  // parent of a facility is the customer it was labeled from, and vice
  // versa; -1 marks unlabeled / the search root.
  std::vector<int> fac_parent;
  std::vector<int> cus_parent;
};

}  // namespace

TransportSolution solve_transport(const Mat& revenue, const Vec& capacity, const Vec& demand) {
  const int ni = static_cast<int>(revenue.rows());
  const int nj = static_cast<int>(revenue.cols());
  if (capacity.size() != ni || demand.size() != nj)
    throw std::invalid_argument("solve_transport: shape mismatch");

  TransportSolution sol;
  sol.flow = Mat::Zero(ni, nj);
  sol.u = Vec::Zero(nj);
  sol.v = Vec::Zero(ni);

  const double rmax = (ni && nj) ? revenue.maxCoeff() : 0.0;
  const double qmax = std::max(ni ? capacity.maxCoeff() : 0.0, nj ? demand.maxCoeff() : 0.0);
  const double tol_dual = 1e-9 * (1.0 + rmax);   // dual values / tightness
  const double tol_qty = 1e-11 * (1.0 + qmax);   // flow / residual quantities

  std::vector<char> open(ni, 0);
  bool any_open = false;
  for (int i = 0; i < ni; ++i) {
    open[i] = capacity(i) > tol_qty;
    any_open |= open[i];
  }

  Vec unmet = demand;
  Vec spare = capacity;
  if (any_open)
    for (int j = 0; j < nj; ++j) {
      double best = 0.0;
      for (int i = 0; i < ni; ++i)
        if (open[i]) best = std::max(best, revenue(i, j));
      sol.u(j) = best;
    }

  Labels lb;
  // Safety valve; every iteration below either augments (revenue strictly
  // up) or adjusts duals (dual objective strictly down), so this is never
  // hit in practice.
  long guard = 40000L * (ni + nj + 1);

  for (int jstar = 0; jstar < nj; ++jstar) {
    while (unmet(jstar) > tol_qty && sol.u(jstar) > tol_dual) {
      if (--guard < 0) throw std::runtime_error("solve_transport: iteration guard tripped");

      lb.fac_parent.assign(ni, -1);
      lb.cus_parent.assign(nj, -1);
      std::vector<char> cus_labeled(nj, 0), fac_labeled(ni, 0);
      cus_labeled[jstar] = 1;
      std::deque<std::pair<char, int>> queue;  // ('c', j) or ('f', i)
      queue.emplace_back('c', jstar);

      int end_fac = -1;          // facility endpoint with spare capacity
      int end_cus = -1;          // customer endpoint with zero dual
      while (!queue.empty() && end_fac < 0 && end_cus < 0) {
        auto [kind, idx] = queue.front();
        queue.pop_front();
        if (kind == 'c') {
          for (int i = 0; i < ni && end_fac < 0; ++i) {
            if (!open[i] || fac_labeled[i]) continue;
            if (sol.u(idx) + sol.v(i) - revenue(i, idx) <= tol_dual) {
              fac_labeled[i] = 1;
              lb.fac_parent[i] = idx;
              if (spare(i) > tol_qty) {
                end_fac = i;
              } else {
                queue.emplace_back('f', i);
              }
            }
          }
        } else {
          for (int j = 0; j < nj && end_cus < 0; ++j) {
            if (cus_labeled[j] || sol.flow(idx, j) <= tol_qty) continue;
            if (sol.u(j) <= tol_dual) {
              lb.cus_parent[j] = idx;
              end_cus = j;
            } else {
              cus_labeled[j] = 1;
              lb.cus_parent[j] = idx;
              queue.emplace_back('c', j);
            }
          }
        }
      }

      if (end_fac >= 0 || end_cus >= 0) {
        // Bottleneck, walking the alternating path back to jstar.
        double delta = unmet(jstar);
        if (end_fac >= 0) delta = std::min(delta, spare(end_fac));
        {
          int i = (end_fac >= 0) ? end_fac : lb.cus_parent[end_cus];
          if (end_cus >= 0) delta = std::min(delta, sol.flow(i, end_cus));
          int j = lb.fac_parent[i];
          while (j != jstar) {
            const int ip = lb.cus_parent[j];
            delta = std::min(delta, sol.flow(ip, j));
            i = ip;
            j = lb.fac_parent[i];
          }
        }
        // Every arc on the path was filtered to exceed tol_qty, so the
        // bottleneck is strictly positive.
        if (delta <= tol_qty) throw std::runtime_error("solve_transport: zero bottleneck");
        // Apply: +delta on tight arcs toward jstar, -delta on reverse arcs.
        int i = (end_fac >= 0) ? end_fac : lb.cus_parent[end_cus];
        if (end_cus >= 0) {
          sol.flow(i, end_cus) -= delta;
          unmet(end_cus) += delta;
        } else {
          spare(i) -= delta;
        }
        int j = lb.fac_parent[i];
        while (true) {
          sol.flow(i, j) += delta;
          if (j == jstar) break;
          const int ip = lb.cus_parent[j];
          sol.flow(ip, j) -= delta;
          i = ip;
          j = lb.fac_parent[i];
        }
        unmet(jstar) -= delta;
      } else {
        // No augmenting path: shift duals across the labeled cut.
        double delta = kInf;
        for (int j = 0; j < nj; ++j)
          if (cus_labeled[j]) delta = std::min(delta, sol.u(j));
        for (int j = 0; j < nj; ++j) {
          if (!cus_labeled[j]) continue;
          for (int i = 0; i < ni; ++i)
            if (open[i] && !fac_labeled[i])
              delta = std::min(delta, sol.u(j) + sol.v(i) - revenue(i, j));
        }
        if (!(delta > 0.0) || !std::isfinite(delta))
          throw std::runtime_error("solve_transport: stalled dual adjustment");
        for (int j = 0; j < nj; ++j)
          if (cus_labeled[j]) sol.u(j) = std::max(0.0, sol.u(j) - delta);
        for (int i = 0; i < ni; ++i)
          if (fac_labeled[i]) sol.v(i) += delta;
      }
    }
  }

  // Zero-capacity rows never entered the network; give them the smallest
  // feasible dual so u_j + v_i >= R_ij holds for every pair.
  for (int i = 0; i < ni; ++i) {
    if (open[i]) continue;
    double need = 0.0;
    for (int j = 0; j < nj; ++j) need = std::max(need, revenue(i, j) - sol.u(j));
    sol.v(i) = need;
  }

  double obj = 0.0;
  for (int j = 0; j < nj; ++j)
    for (int i = 0; i < ni; ++i) obj += revenue(i, j) * sol.flow(i, j);
  sol.objective = obj;
  return sol;
}

TransportSolution solve_transport_scenario(const Instance& inst, const std::vector<int>& x,
                                           const ScenarioSet& scen, int s) {
  Vec cap(inst.n_facilities());
  for (int i = 0; i < inst.n_facilities(); ++i) cap(i) = x[i] ? inst.capacity(i) : 0.0;
  return solve_transport(inst.revenue, cap, scen.xi.col(s));
}

double expected_second_stage(const Instance& inst, const std::vector<int>& x,
                             const ScenarioSet& scen) {
  double acc = 0.0;
  for (int s = 0; s < scen.xi.cols(); ++s)
    acc += scen.prob(s) * solve_transport_scenario(inst, x, scen, s).objective;
  return acc;
}

}  // namespace ddfl
