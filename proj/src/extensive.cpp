#include "ddfl/extensive.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ddfl/milp.hpp"

namespace ddfl {

ExtensiveModel build_extensive(const Instance& inst, const DemandModel& demand) {
  ExtensiveModel em;
  em.nx = inst.n_facilities();
  em.model_nj = inst.n_customers();
  em.nz = inst.n_zones();
  em.nd = static_cast<int>(inst.n_distributions());
  em.ns = inst.scenarios_per_distribution;

  const double cells = static_cast<double>(em.nd) * em.ns * em.nx * em.model_nj;
  if (cells > 5e6)
    throw std::invalid_argument("build_extensive: model too large (2^|Z| |S| |I| |J| > 5e6)");

  const int nI = em.nx, nJ = em.model_nj;
  LinearModel& m = em.model;
  for (int i = 0; i < nI; ++i) m.add_var(0.0, 1.0, inst.fixed_cost(i), true);
  em.y0 = m.n_vars();
  for (int z = 0; z < em.nz; ++z) m.add_var(0.0, 1.0, 0.0, true);
  em.delta0 = m.n_vars();
  for (int d = 0; d < em.nd; ++d) m.add_var(0.0, 1.0, 0.0, true);

  // scenario sets for every distribution, pinned for the builder's lifetime
  std::vector<std::shared_ptr<const ScenarioSet>> sets(em.nd);
  for (int d = 0; d < em.nd; ++d) sets[d] = demand.scenarios(DistributionId{(std::uint32_t)d});

  auto bigm = [&](int d, int s, int i, int j) {
    return std::min(sets[d]->xi(j, s), inst.capacity(i));
  };

  em.w0 = m.n_vars();
  for (int d = 0; d < em.nd; ++d)
    for (int s = 0; s < em.ns; ++s)
      for (int i = 0; i < nI; ++i)
        for (int j = 0; j < nJ; ++j) m.add_var(0.0, bigm(d, s, i, j), 0.0, false);
  em.h0 = m.n_vars();
  for (int d = 0; d < em.nd; ++d)
    for (int s = 0; s < em.ns; ++s) {
      const double p = sets[d]->prob(s);
      for (int i = 0; i < nI; ++i)
        for (int j = 0; j < nJ; ++j)
          m.add_var(0.0, bigm(d, s, i, j), -p * inst.revenue(i, j), false);
    }

  for (int z = 0; z < em.nz; ++z) {
    std::vector<RowTerm> up, down;
    for (int i : inst.zones[z]) up.push_back({i, 1.0});
    up.push_back({em.y0 + z, -static_cast<double>(inst.zones[z].size())});
    m.add_row(std::move(up), Rel::LE, 0.0);
    down.push_back({em.y0 + z, 1.0});
    for (int i : inst.zones[z]) down.push_back({i, -1.0});
    m.add_row(std::move(down), Rel::LE, 0.0);
  }

  for (int d = 0; d < em.nd; ++d) {
    const DistributionId id{(std::uint32_t)d};
    const int zd = id.active_count();
    std::vector<RowTerm> sel{{em.delta0 + d, static_cast<double>(em.nz)}};
    std::vector<RowTerm> force;
    for (int z = 0; z < em.nz; ++z) {
      const double sgn = id.contains(z) ? -1.0 : 1.0;
      sel.push_back({em.y0 + z, sgn});
      force.push_back({em.y0 + z, -sgn});
    }
    force.push_back({em.delta0 + d, -1.0});
    m.add_row(std::move(sel), Rel::LE, static_cast<double>(em.nz - zd));
    m.add_row(std::move(force), Rel::LE, static_cast<double>(zd - 1));
  }

  for (int d = 0; d < em.nd; ++d)
    for (int s = 0; s < em.ns; ++s) {
      for (int j = 0; j < nJ; ++j) {
        std::vector<RowTerm> row;
        for (int i = 0; i < nI; ++i) row.push_back({(int)em.w_index(d, s, i, j), 1.0});
        m.add_row(std::move(row), Rel::LE, sets[d]->xi(j, s));
      }
      for (int i = 0; i < nI; ++i) {
        std::vector<RowTerm> row;
        for (int j = 0; j < nJ; ++j) row.push_back({(int)em.w_index(d, s, i, j), 1.0});
        row.push_back({i, -inst.capacity(i)});
        m.add_row(std::move(row), Rel::LE, 0.0);
      }
      for (int i = 0; i < nI; ++i)
        for (int j = 0; j < nJ; ++j) {
          const int w = (int)em.w_index(d, s, i, j), h = (int)em.h_index(d, s, i, j);
          const double M = bigm(d, s, i, j);
          m.add_row({{h, 1.0}, {w, -1.0}}, Rel::LE, 0.0);
          m.add_row({{h, 1.0}, {em.delta0 + d, -M}}, Rel::LE, 0.0);
          m.add_row({{w, 1.0}, {h, -1.0}, {em.delta0 + d, M}}, Rel::LE, M);
        }
    }

  return em;
}

SolveReport solve_extensive(const Instance& inst, const DemandModel& demand, double gap_tol,
                            double time_limit_s) {
  const auto t0 = std::chrono::steady_clock::now();
  ExtensiveModel em = build_extensive(inst, demand);
  MilpOptions mo;
  mo.gap_tol = gap_tol;
  mo.time_limit_s = time_limit_s;
  MilpResult res = solve_milp(em.model, mo);

  SolveReport rep;
  rep.bnb_nodes = res.nodes;
  rep.best_bound = res.bound;
  switch (res.status) {
    case MilpStatus::Optimal: rep.status = SolveStatus::Optimal; break;
    case MilpStatus::TimeLimit: rep.status = SolveStatus::TimeLimit; break;
    case MilpStatus::Infeasible:
      throw std::runtime_error("solve_extensive: model infeasible");
  }
  if (res.x.size() > 0) {
    rep.incumbent.resize(em.nx);
    for (int i = 0; i < em.nx; ++i) rep.incumbent[i] = res.x(i) > 0.5 ? 1 : 0;
    rep.objective = res.objective;
    rep.gap_percent = optimality_gap_percent(rep.best_bound, rep.objective);
  }
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace ddfl
