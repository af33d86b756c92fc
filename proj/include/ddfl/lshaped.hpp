#pragma once

#include <functional>

#include "ddfl/demand.hpp"
#include "ddfl/linmodel.hpp"

namespace ddfl {

// One separation event: the master proposed (x, mu), the candidate's
// distribution d was identified and its expectation evaluated. `bound` is
// the master objective at that candidate (node relaxation value in the
// single-tree mode, round optimum in the iterative mode).
struct SeparationTrace {
  std::int64_t iter = 0;
  std::uint32_t d_mask = 0;
  double expected = 0.0;
  double mu = 0.0;
  double bound = 0.0;
};

struct LShapedOptions {
  bool valid_inequality = false;
  bool iterative = false;  // re-solve the master per round instead of one tree
  double eps_cut = 1e-6;   // violation threshold, scaled by 1 + |E|
  double gap_tol = 1e-4;
  double time_limit_s = kInfinity;
  std::function<void(const SeparationTrace&)> trace;
};

// Upper bound on the expected second-stage value of any first stage: each
// unit of customer j's demand earns at most max_i R_ij, and its expected
// demand is at most the max empirical mean over distributions.
double second_stage_upper_bound(const Instance& inst, const DemandModel& demand);

// sum_i F_i x_i - E[Q(x)] with the expectation evaluated exactly over the
// scenario set of the distribution x activates.
double evaluate_first_stage(const Instance& inst, const DemandModel& demand,
                            const std::vector<int>& x);

// Decomposition solver. The master carries x, the zone indicators y tied to
// x by linking rows, and one aggregate second-stage variable mu in [0, U].
// Optimality cuts are distribution-specific:
//
//   mu <= a0 + sum_i a_i x_i + U * (|Z_d| - sum_{z in Z_d} y_z + sum_{z not in Z_d} y_z)
//
// with (a0, a) aggregated from per-scenario allocation duals. The y-slack
// deactivates the cut (adds at least U) whenever the activation pattern
// differs from d, which keeps it valid under every other distribution.
SolveReport solve_lshaped(const Instance& inst, const DemandModel& demand,
                          const LShapedOptions& opts = {});

}  // namespace ddfl
