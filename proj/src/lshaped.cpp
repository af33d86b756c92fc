#include "ddfl/lshaped.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "ddfl/milp.hpp"
#include "ddfl/transport.hpp"

namespace ddfl {

namespace {

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Master {
  LinearModel model;
  int nx = 0, nz = 0;
  int mu_index = 0;
  double upper = 0.0;
};

Master build_master(const Instance& inst, const DemandModel& demand, bool vi) {
  Master m;
  m.nx = inst.n_facilities();
  m.nz = inst.n_zones();
  m.upper = second_stage_upper_bound(inst, demand);
  for (int i = 0; i < m.nx; ++i) m.model.add_var(0.0, 1.0, inst.fixed_cost(i), true);
  for (int z = 0; z < m.nz; ++z) m.model.add_var(0.0, 1.0, 0.0, true);
  m.mu_index = m.model.add_var(0.0, m.upper, -1.0, false);

  // y_z = 1 exactly when zone z hosts an open facility
  for (int z = 0; z < m.nz; ++z) {
    std::vector<RowTerm> up, down;
    for (int i : inst.zones[z]) up.push_back({i, 1.0});
    up.push_back({m.nx + z, -static_cast<double>(inst.zones[z].size())});
    m.model.add_row(std::move(up), Rel::LE, 0.0);
    down.push_back({m.nx + z, 1.0});
    for (int i : inst.zones[z]) down.push_back({i, -1.0});
    m.model.add_row(std::move(down), Rel::LE, 0.0);
  }

  if (vi) {
    // mu <= sum_i [sum_j R_ij min(C_i, maxmean_j)] x_i; served units per
    // open i never beat either cap, and expected demand never beats the
    // max empirical mean, so this holds under every distribution.
    const Vec& mm = demand.max_empirical_means();
    std::vector<RowTerm> row{{m.mu_index, 1.0}};
    for (int i = 0; i < m.nx; ++i) {
      double cap = 0.0;
      for (int j = 0; j < inst.n_customers(); ++j)
        cap += inst.revenue(i, j) * std::min(inst.capacity(i), mm(j));
      row.push_back({i, -cap});
    }
    m.model.add_row(std::move(row), Rel::LE, 0.0);
  }
  return m;
}

struct Separation {
  DistributionId d{0};
  double expected = 0.0;
  double a0 = 0.0;
  Vec a;
};

Separation separate(const Instance& inst, const DemandModel& demand,
                    const std::vector<int>& x) {
  Separation out;
  out.d = activation_mask(inst, x);
  auto scen = demand.scenarios(out.d);
  const int ns = static_cast<int>(scen->prob.size());
  out.a = Vec::Zero(inst.n_facilities());
  for (int s = 0; s < ns; ++s) {
    TransportSolution sol = solve_transport_scenario(inst, x, *scen, s);
    const double p = scen->prob(s);
    out.expected += p * sol.objective;
    out.a0 += p * sol.u.dot(scen->xi.col(s));
    out.a += p * sol.v.cwiseProduct(inst.capacity);
  }
  return out;
}

CutRow make_cut(const Master& m, const Instance& inst, const Separation& sep) {
  CutRow cut;
  cut.rel = Rel::LE;
  cut.terms.push_back({m.mu_index, 1.0});
  for (int i = 0; i < m.nx; ++i) cut.terms.push_back({i, -sep.a(i)});
  int zd = 0;
  for (int z = 0; z < m.nz; ++z) {
    if (sep.d.contains(z)) {
      cut.terms.push_back({m.nx + z, m.upper});
      ++zd;
    } else {
      cut.terms.push_back({m.nx + z, -m.upper});
    }
  }
  cut.rhs = sep.a0 + m.upper * zd;
  return cut;
}

}  // namespace

double second_stage_upper_bound(const Instance& inst, const DemandModel& demand) {
  const Vec& mm = demand.max_empirical_means();
  double u = 0.0;
  for (int j = 0; j < inst.n_customers(); ++j)
    u += inst.revenue.col(j).maxCoeff() * mm(j);
  return u;
}

double evaluate_first_stage(const Instance& inst, const DemandModel& demand,
                            const std::vector<int>& x) {
  const DistributionId d = activation_mask(inst, x);
  auto scen = demand.scenarios(d);
  double fixed = 0.0;
  for (int i = 0; i < inst.n_facilities(); ++i) fixed += inst.fixed_cost(i) * x[i];
  return fixed - expected_second_stage(inst, x, *scen);
}

SolveReport solve_lshaped(const Instance& inst, const DemandModel& demand,
                          const LShapedOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  Master master = build_master(inst, demand, opts.valid_inequality);

  SolveReport rep;
  std::int64_t iter = 0;
  std::map<std::uint32_t, std::vector<std::pair<double, Vec>>> seen;

  // Shared by both modes. Returns the cut to append, or nullopt when the
  // candidate's mu is honest for its own distribution.
  auto try_separate = [&](const Vec& full, double bound_now) -> std::optional<CutRow> {
    std::vector<int> x(master.nx);
    for (int i = 0; i < master.nx; ++i) x[i] = full(i) > 0.5 ? 1 : 0;
    Separation sep = separate(inst, demand, x);
    const double mu = full(master.mu_index);
    ++iter;
    if (opts.trace) opts.trace({iter, sep.d.mask, sep.expected, mu, bound_now});
    if (mu - sep.expected <= opts.eps_cut * (1.0 + std::abs(mu))) return std::nullopt;
    auto& prior = seen[sep.d.mask];
    for (const auto& pr : prior)
      if (pr.first == sep.a0 && pr.second == sep.a) {
        // The exact row is already in the master. A large residual violation
        // means the cut logic is broken; a tiny one is the arithmetic floor
        // of the master LP, and the candidate is as good as cuts can make it.
        if (mu - sep.expected > 1e-4 * (1.0 + std::abs(mu)))
          throw std::runtime_error("solve_lshaped: duplicate cut still violated");
        return std::nullopt;
      }
    prior.emplace_back(sep.a0, sep.a);
    ++rep.cuts_total;
    ++rep.cuts_per_distribution[sep.d.mask];
    return make_cut(master, inst, sep);
  };

  std::vector<int> best_x;
  double best_bound = -master.upper;
  SolveStatus status = SolveStatus::Optimal;
  std::int64_t nodes = 0;

  if (!opts.iterative) {
    MilpOptions mo;
    mo.gap_tol = opts.gap_tol;
    mo.time_limit_s = opts.time_limit_s;
    mo.lazy_cut = [&](const Vec& full) {
      double fx = 0.0;
      for (int i = 0; i < master.nx; ++i) fx += inst.fixed_cost(i) * full(i);
      return try_separate(full, fx - full(master.mu_index));
    };
    MilpResult res = solve_milp(master.model, mo);
    nodes = res.nodes;
    if (res.status == MilpStatus::Infeasible)
      throw std::runtime_error("solve_lshaped: master infeasible");
    if (res.status == MilpStatus::TimeLimit) status = SolveStatus::TimeLimit;
    best_bound = res.bound;
    if (res.x.size() > 0) {
      best_x.resize(master.nx);
      for (int i = 0; i < master.nx; ++i) best_x[i] = res.x(i) > 0.5 ? 1 : 0;
    }
  } else {
    LinearModel work = master.model;
    for (;;) {
      const double remaining = opts.time_limit_s - elapsed_s(t0);
      if (remaining <= 0.0) {
        status = SolveStatus::TimeLimit;
        break;
      }
      MilpOptions mo;
      mo.gap_tol = opts.gap_tol;
      mo.time_limit_s = remaining;
      MilpResult res = solve_milp(work, mo);
      nodes += res.nodes;
      if (res.status == MilpStatus::Infeasible)
        throw std::runtime_error("solve_lshaped: master infeasible");
      best_bound = res.bound;
      if (res.x.size() > 0) {
        best_x.resize(master.nx);
        for (int i = 0; i < master.nx; ++i) best_x[i] = res.x(i) > 0.5 ? 1 : 0;
      }
      if (res.status == MilpStatus::TimeLimit) {
        status = SolveStatus::TimeLimit;
        break;
      }
      auto cut = try_separate(res.x, res.objective);
      if (!cut.has_value()) break;
      work.add_row(cut->terms, cut->rel, cut->rhs);
    }
  }

  rep.iterations = iter;
  rep.bnb_nodes = nodes;
  rep.best_bound = best_bound;
  rep.status = status;
  if (!best_x.empty()) {
    rep.incumbent = best_x;
    rep.objective = evaluate_first_stage(inst, demand, best_x);
    rep.gap_percent = optimality_gap_percent(best_bound, rep.objective);
  }
  rep.wall_time_s = elapsed_s(t0);
  return rep;
}

}  // namespace ddfl
