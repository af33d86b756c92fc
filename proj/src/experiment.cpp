#include "ddfl/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace ddfl {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string run_csv_header() {
  return "instance,method,vi,status,objective,bound,gap_pct,time_s,iters,cuts,nodes";
}

std::string run_csv_row(const RunRecord& r) {
  std::string s = r.instance + "," + r.method + "," + (r.vi ? "1" : "0") + "," +
                  to_string(r.report.status);
  s += "," + fmt("%.17g", r.report.objective);
  s += "," + fmt("%.17g", r.report.best_bound);
  s += "," + fmt("%.17g", r.report.gap_percent);
  s += "," + fmt("%.3f", r.report.wall_time_s);
  s += "," + std::to_string(r.report.iterations);
  s += "," + std::to_string(r.report.cuts_total);
  s += "," + std::to_string(r.report.bnb_nodes);
  return s;
}

int cuts_mode(const SolveReport& rep) {
  if (rep.cuts_per_distribution.empty()) return 0;
  std::map<int, int> freq;
  for (const auto& [mask, count] : rep.cuts_per_distribution) ++freq[count];
  int best_count = 0, best_freq = 0;
  for (const auto& [count, f] : freq)
    if (f > best_freq) {  // map order makes ties resolve to the smaller count
      best_freq = f;
      best_count = count;
    }
  return best_count;
}

std::vector<std::string> aggregate_csv(const std::vector<RunRecord>& runs) {
  struct Acc {
    int n = 0, feas = 0, below_half = 0, solved = 0, mode_one = 0;
    double gap = 0.0, time_all = 0.0, time_solved = 0.0;
    double nodes = 0.0, cuts = 0.0;
  };
  // key: (family, size, demand type), family 0 groups by |I|, 1 by |Z|
  std::map<std::tuple<int, int, int>, Acc> groups;
  for (const RunRecord& r : runs) {
    for (int fam = 0; fam < 2; ++fam) {
      const int size = fam == 0 ? r.n_facilities : r.n_zones;
      Acc& a = groups[{fam, size, static_cast<int>(r.demand_type)}];
      ++a.n;
      if (!r.report.incumbent.empty()) ++a.feas;
      a.gap += r.report.gap_percent;
      if (r.report.gap_percent < 0.5) ++a.below_half;
      a.time_all += r.report.wall_time_s;
      if (r.report.status == SolveStatus::Optimal) {
        ++a.solved;
        a.time_solved += r.report.wall_time_s;
      }
      a.nodes += static_cast<double>(r.report.bnb_nodes);
      a.cuts += static_cast<double>(r.report.cuts_total);
      if (cuts_mode(r.report) == 1) ++a.mode_one;
    }
  }
  std::vector<std::string> out;
  out.push_back(
      "group,size,demand_type,runs,feas,avg_gap_pct,below_half,avg_time_all_s,"
      "avg_time_solved_s,avg_nodes,avg_cuts,mode_one_runs");
  for (const auto& [key, a] : groups) {
    const auto& [fam, size, dt] = key;
    std::string s = std::string(fam == 0 ? "facilities" : "zones") + "," +
                    std::to_string(size) + "," +
                    to_string(static_cast<DemandType>(dt));
    s += "," + std::to_string(a.n);
    s += "," + std::to_string(a.feas);
    s += "," + fmt("%.6g", a.gap / a.n);
    s += "," + std::to_string(a.below_half);
    s += "," + fmt("%.3f", a.time_all / a.n);
    s += "," + (a.solved ? fmt("%.3f", a.time_solved / a.solved) : std::string("nan"));
    s += "," + fmt("%.1f", a.nodes / a.n);
    s += "," + fmt("%.1f", a.cuts / a.n);
    s += "," + std::to_string(a.mode_one);
    out.push_back(std::move(s));
  }
  return out;
}

Instance merged_single_zone(const Instance& inst) {
  Instance m = inst;
  for (auto& f : m.facilities) f.zone = 0;
  m.rebuild_zones();
  for (auto& c : m.customers) c.zone_rank = {0};
  m.validate();
  return m;
}

CompareResult run_compare(const Instance& inst, const LShapedOptions& opts) {
  CompareResult out;
  const Instance simp = merged_single_zone(inst);
  DemandModel simp_demand(simp);
  SolveReport srep = solve_lshaped(simp, simp_demand, opts);
  out.simplified_status = srep.status;
  if (srep.incumbent.empty())
    throw std::runtime_error("run_compare: simplified solve produced no incumbent");
  out.x_simplified = srep.incumbent;
  out.simplified_objective = srep.objective;

  DemandModel demand(inst);
  out.fixed_objective = evaluate_first_stage(inst, demand, out.x_simplified);

  SolveReport drep = solve_lshaped(inst, demand, opts);
  out.ddu_status = drep.status;
  if (drep.incumbent.empty())
    throw std::runtime_error("run_compare: true-model solve produced no incumbent");
  out.ddu_objective = drep.objective;
  out.uplift_percent =
      100.0 * (out.fixed_objective - out.ddu_objective) / (1e-10 + std::abs(out.fixed_objective));

  if (out.simplified_status == SolveStatus::Optimal && out.ddu_status == SolveStatus::Optimal) {
    // the true solve optimizes over a superset, so up to its own
    // tolerances its optimum cannot be worse than the fixed evaluation
    const double slack =
        (opts.gap_tol + opts.eps_cut) * (1e-10 + std::abs(out.ddu_objective)) + 1e-9;
    if (out.fixed_objective - out.ddu_objective < -slack)
      throw std::runtime_error("run_compare: dominance violated beyond solver tolerance");
  }
  return out;
}

std::string compare_csv_header() {
  return "instance,simplified_objective,fixed_objective,ddu_objective,uplift_pct";
}

std::string compare_csv_row(const std::string& instance, const CompareResult& c) {
  std::string s = instance;
  s += "," + fmt("%.17g", c.simplified_objective);
  s += "," + fmt("%.17g", c.fixed_objective);
  s += "," + fmt("%.17g", c.ddu_objective);
  s += "," + fmt("%.17g", c.uplift_percent);
  return s;
}

}  // namespace ddfl
