#pragma once

#include "ddfl/demand.hpp"
#include "ddfl/linmodel.hpp"

namespace ddfl {

// Deterministic equivalent with every distribution's scenario block built
// in. Binary pattern selectors delta_d are tied to the zone indicators by
//
//   |Z| delta_d - sum_{z in Z_d} y_z + sum_{z not in Z_d} y_z <= |Z| - |Z_d|
//   sum_{z in Z_d} y_z - sum_{z not in Z_d} y_z - delta_d <= |Z_d| - 1
//
// so at integral y exactly the matching pattern has delta_d = 1. Allocation
// w carries the per-scenario flows; the collected allocation h = w * delta_d
// is linearized with big-M rows, M = min(demand, capacity), and only h earns
// revenue. Row layout: 2|Z| linking, 2|D| selector, then per (d, s) the |J|
// demand rows, |I| capacity rows and 3|I||J| linearization rows.
struct ExtensiveModel {
  LinearModel model;
  int nx = 0, nz = 0, nd = 0, ns = 0;
  int y0 = 0, delta0 = 0, w0 = 0, h0 = 0;  // x variables start at 0

  std::int64_t block(int d, int s, int i, int j) const {
    return ((static_cast<std::int64_t>(d) * ns + s) * nx + i) * model_nj + j;
  }
  std::int64_t w_index(int d, int s, int i, int j) const { return w0 + block(d, s, i, j); }
  std::int64_t h_index(int d, int s, int i, int j) const { return h0 + block(d, s, i, j); }

  int model_nj = 0;
};

// Throws std::invalid_argument once 2^|Z| |S| |I| |J| exceeds 5e6.
ExtensiveModel build_extensive(const Instance& inst, const DemandModel& demand);

SolveReport solve_extensive(const Instance& inst, const DemandModel& demand,
                            double gap_tol = 1e-4, double time_limit_s = kInfinity);

}  // namespace ddfl
