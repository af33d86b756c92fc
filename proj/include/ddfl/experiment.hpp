#pragma once

#include <string>
#include <vector>

#include "ddfl/demand.hpp"
#include "ddfl/lshaped.hpp"

namespace ddfl {

// One solver run plus the labels the benchmark aggregates over.
struct RunRecord {
  std::string instance;  // file stem or synthetic label
  std::string method;    // lshaped | extensive | oracle
  bool vi = false;
  int n_facilities = 0;
  int n_zones = 0;
  DemandType demand_type = DemandType::A;
  SolveReport report;
};

// CSV columns: instance,method,vi,status,objective,bound,gap_pct,time_s,iters,cuts,nodes
std::string run_csv_header();
std::string run_csv_row(const RunRecord& r);

// Mode of the per-distribution cut counts, restricted to distributions that
// received at least one cut; ties resolve to the smaller count, 0 when no
// cuts were added.
int cuts_mode(const SolveReport& rep);

// Aggregated benchmark lines, grouped by (|I|, demand type) and then by
// (|Z|, demand type). Gap and node averages run over all rows of a group;
// the solved-only time average excludes TimeLimit rows since mixed-in
// timeouts overstate the typical solve.
std::vector<std::string> aggregate_csv(const std::vector<RunRecord>& runs);

// Endogeneity value protocol: (i) solve the instance with all facilities
// merged into one zone (demand reacts only to "anything open", the
// exogenous approximation), (ii) price that first stage under the true
// zone-dependent model, (iii) solve the true model, and report the percent
// uplift 100 (fixed - ddu) / |fixed| in profit terms. Dominance fixed >= ddu
// holds whenever the true solve is exact, because it optimizes over a
// superset; run_compare asserts it up to the solver tolerances in use.
struct CompareResult {
  std::vector<int> x_simplified;
  double simplified_objective = 0.0;  // under the merged single-zone model
  double fixed_objective = 0.0;       // same x priced by the true model
  double ddu_objective = 0.0;
  double uplift_percent = 0.0;
  SolveStatus simplified_status = SolveStatus::Optimal;
  SolveStatus ddu_status = SolveStatus::Optimal;
};

Instance merged_single_zone(const Instance& inst);
CompareResult run_compare(const Instance& inst, const LShapedOptions& opts = {});

std::string compare_csv_header();
std::string compare_csv_row(const std::string& instance, const CompareResult& c);

}  // namespace ddfl
