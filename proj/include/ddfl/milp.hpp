#pragma once

#include "ddfl/linmodel.hpp"

namespace ddfl {

// Branch and bound over one persistent SimplexSolver: node changes are
// variable bound updates and every node restart is a warm dual-simplex
// solve. Lazy cuts from MilpOptions::lazy_cut are appended globally; open
// node bounds computed before a cut remain valid relaxation bounds.
// Interval propagation runs on every node before its LP: row min-activities
// prune infeasible nodes outright and tighten integer bounds, which is what
// keeps big-M linked indicator variables from being branched one by one.
//
// After a branch the round-up child is solved immediately (it differs from
// its parent by one bound change, so the warm start stays local); backtracks
// pick the open node with the smallest relaxation bound, FIFO on ties.
// Branching picks the most fractional integer variable (lowest index on
// ties). Fully deterministic for a fixed model and option set.
MilpResult solve_milp(const LinearModel& model, const MilpOptions& opts = {});

}  // namespace ddfl
