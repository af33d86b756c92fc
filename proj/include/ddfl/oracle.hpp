#pragma once

#include "ddfl/demand.hpp"

namespace ddfl {

// Exhaustive enumeration of all 2^|I| first-stage decisions, each evaluated
// exactly through the scenario expectation of the distribution it activates.
// Masks are scanned ascending (bit i of the mask is x_i) and only strict
// improvements replace the incumbent, so the reported minimizer is the
// lowest qualifying mask. Evaluation is chunked across threads; the chunk
// results are merged in mask order, which keeps the outcome identical to a
// serial scan. Refuses |I| > 20.
SolveReport exhaustive_oracle(const Instance& inst, const DemandModel& demand);

}  // namespace ddfl
