#pragma once

#include "ddfl/demand.hpp"
#include "ddfl/types.hpp"

namespace ddfl {

// Optimal primal/dual pair of the per-scenario allocation problem
//
//   max sum_ij R_ij w_ij
//   s.t. sum_i w_ij <= demand_j   [u_j >= 0]
//        sum_j w_ij <= cap_i      [v_i >= 0]
//        w >= 0
//
// which is the recourse program in standard form min{ -R.w : W w <= h(x) }:
// the technology part only moves cap_i = C_i x_i onto the right-hand side,
// so dual feasibility (u_j + v_i >= R_ij) is independent of x. That makes
// (u, v) reusable as coefficients of bounding functions in x, which is what
// the decomposition cuts are built from. w = 0 is always feasible, so there
// is no feasibility subproblem.
struct TransportSolution {
  Mat flow;  // |I| x |J|
  Vec u;     // customer duals
  Vec v;     // facility duals (minimal feasible value for zero-capacity rows)
  double objective = 0.0;
};

// Primal-dual method: keep (u,v) feasible and flow complementary, then
// alternate augmenting on tight arcs with dual adjustments over the labeled
// cut. Augmenting paths may end at a facility with spare capacity or at a
// customer whose dual is zero (service to it is simply reduced). Runs in
// O(passes * |I| |J|) with small constants at the sizes used here.
TransportSolution solve_transport(const Mat& revenue, const Vec& capacity, const Vec& demand);

// Convenience wrapper: capacities C_i x_i, demands from one scenario column.
TransportSolution solve_transport_scenario(const Instance& inst, const std::vector<int>& x,
                                           const ScenarioSet& scen, int s);

// prob-weighted sum of per-scenario optima, accumulated in scenario order
// (deterministic reduction regardless of any caller-side parallelism).
double expected_second_stage(const Instance& inst, const std::vector<int>& x,
                             const ScenarioSet& scen);

}  // namespace ddfl
