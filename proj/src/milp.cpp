#include "ddfl/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "ddfl/simplex.hpp"

namespace ddfl {

namespace {

struct BoundFix {
  int var;
  double lo, hi;
};

struct Node {
  double bound;
  std::int64_t id;
  std::vector<BoundFix> fixes;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

// rows normalized to <= for interval propagation
struct PropRow {
  std::vector<RowTerm> terms;
  double rhs;
};

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

MilpResult solve_milp(const LinearModel& model, const MilpOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = model.n_vars();
  std::vector<int> int_vars;
  for (int j = 0; j < n; ++j)
    if (model.is_int[j]) {
      if (!std::isfinite(model.lo[j]) || !std::isfinite(model.hi[j]))
        throw std::invalid_argument("solve_milp: integer variable with infinite bound");
      int_vars.push_back(j);
    }

  SimplexSolver solver(model);
  const double flip = model.sense == Sense::Maximize ? -1.0 : 1.0;

  std::vector<PropRow> prop_rows;
  for (int r = 0; r < model.n_rows(); ++r) {
    if (model.rels[r] != Rel::GE) prop_rows.push_back({model.rows[r], model.rhs[r]});
    if (model.rels[r] != Rel::LE) {
      PropRow neg{model.rows[r], -model.rhs[r]};
      for (auto& t : neg.terms) t.coef = -t.coef;
      prop_rows.push_back(std::move(neg));
    }
  }

  // interval propagation over the working bounds: a row's minimum activity
  // either proves the node infeasible outright or implies bounds on single
  // variables, rounded inward for the integer ones. Runs to a fixpoint so
  // chains of implications (a fixed binary forcing another) resolve without
  // touching the LP.
  std::vector<double> wlo, whi;
  auto propagate = [&]() -> bool {
    for (int round = 0; round < 50; ++round) {
      bool changed = false;
      for (const auto& row : prop_rows) {
        double act = 0.0;
        int inf_cnt = 0;
        for (const auto& t : row.terms) {
          const double c = t.coef > 0.0 ? t.coef * wlo[t.var] : t.coef * whi[t.var];
          if (std::isfinite(c)) act += c;
          else ++inf_cnt;
        }
        const double tol = 1e-9 * (1.0 + std::abs(row.rhs));
        if (inf_cnt == 0 && act > row.rhs + tol) return false;
        if (inf_cnt > 0) continue;
        for (const auto& t : row.terms) {
          if (!model.is_int[t.var]) continue;
          const double own = t.coef > 0.0 ? t.coef * wlo[t.var] : t.coef * whi[t.var];
          const double r = (row.rhs - (act - own)) / t.coef;
          if (t.coef > 0.0) {
            const double nh = std::floor(r + 1e-6);
            if (nh < whi[t.var] - 0.5) {
              whi[t.var] = nh;
              changed = true;
            }
          } else {
            const double nl = std::ceil(r - 1e-6);
            if (nl > wlo[t.var] + 0.5) {
              wlo[t.var] = nl;
              changed = true;
            }
          }
          if (wlo[t.var] > whi[t.var] + 0.5) return false;
        }
      }
      if (!changed) break;
    }
    return true;
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  open.push({-kInfinity, 0, {}});
  std::int64_t next_id = 1;

  bool have_inc = false;
  double inc_obj = kInfinity;  // minimize orientation
  Vec inc_x;
  std::int64_t nodes = 0, cb_rounds = 0;
  MilpStatus status = MilpStatus::Optimal;
  double best_open = -kInfinity;

  std::vector<int> touched;
  // restore every previously altered column, install the node's working
  // bounds, and return false when propagation already closes the node
  auto apply_node = [&](const Node& nd) -> bool {
    wlo = model.lo;
    whi = model.hi;
    for (const auto& f : nd.fixes) {
      wlo[f.var] = f.lo;
      whi[f.var] = f.hi;
    }
    if (!propagate()) return false;
    for (int v : touched) solver.set_var_bounds(v, model.lo[v], model.hi[v]);
    touched.clear();
    for (int j : int_vars)
      if (wlo[j] != model.lo[j] || whi[j] != model.hi[j]) {
        solver.set_var_bounds(j, wlo[j], whi[j]);
        touched.push_back(j);
      }
    return true;
  };

  // after a branch the round-up child is processed immediately so successive
  // LP solves differ by one bound change; the queue keeps best-first order
  // for backtracking
  std::optional<Node> dive;
  while (dive.has_value() || !open.empty()) {
    best_open = open.empty() ? kInfinity : open.top().bound;
    if (dive) best_open = std::min(best_open, dive->bound);
    if (have_inc &&
        std::abs(inc_obj - best_open) <= opts.gap_tol * (1e-10 + std::abs(inc_obj)))
      break;
    if (elapsed_s(t0) > opts.time_limit_s) {
      status = MilpStatus::TimeLimit;
      break;
    }

    Node nd;
    if (dive) {
      nd = std::move(*dive);
      dive.reset();
    } else {
      nd = open.top();
      open.pop();
    }
    if (have_inc && nd.bound >= inc_obj - 1e-12 * (1.0 + std::abs(inc_obj))) continue;

    if (!apply_node(nd)) {
      ++nodes;
      continue;
    }
    LpStatus st = solver.optimize();
    ++nodes;
    if (st == LpStatus::Infeasible) continue;
    if (st == LpStatus::Unbounded) throw std::runtime_error("solve_milp: unbounded relaxation");
    double obj = solver.objective();

    bool revalidated = false;
    for (;;) {
      if (have_inc && obj >= inc_obj - 1e-12 * (1.0 + std::abs(inc_obj))) break;

      int frac_var = -1;
      double frac_score = -1.0;
      for (int j : int_vars) {
        const double v = solver.var_value(j);
        const double dist = std::abs(v - std::round(v));
        if (dist <= opts.int_tol) continue;
        const double fr = v - std::floor(v);
        const double sc = std::min(fr, 1.0 - fr);
        if (sc > frac_score) {
          frac_score = sc;
          frac_var = j;
        }
      }

      if (frac_var >= 0) {
        const double v = solver.var_value(frac_var);
        // the round-up child is the dive target: on tied bounds the subtree
        // with the variable set to 1 is explored first, which makes exact
        // objective ties land on the same x as an ascending enumeration
        Node up{obj, next_id++, nd.fixes};
        up.fixes.push_back({frac_var, std::ceil(v), whi[frac_var]});
        Node down{obj, next_id++, nd.fixes};
        down.fixes.push_back({frac_var, wlo[frac_var], std::floor(v)});
        dive = std::move(up);
        open.push(std::move(down));
        break;
      }

      // integral point; drift gate before it can become the incumbent
      if (!revalidated) {
        double scale = 1.0;
        for (double b : model.rhs) scale = std::max(scale, std::abs(b));
        if (solver.max_violation() > 1e-6 * scale) {
          revalidated = true;
          solver.reset_basis();
          st = solver.optimize();
          if (st == LpStatus::Infeasible) break;
          if (st == LpStatus::Unbounded)
            throw std::runtime_error("solve_milp: unbounded relaxation");
          obj = solver.objective();
          continue;  // integrality can change after the clean resolve
        }
      }

      if (opts.lazy_cut) {
        Vec x = solver.structural_values();
        for (int j : int_vars) x(j) = std::round(x(j));
        ++cb_rounds;
        if (cb_rounds > 200000) throw std::runtime_error("solve_milp: lazy cut loop runaway");
        auto cut = opts.lazy_cut(x);
        if (cut.has_value()) {
          solver.add_row(cut->terms, cut->rel, cut->rhs);
          if (cut->rel != Rel::GE) prop_rows.push_back({cut->terms, cut->rhs});
          if (cut->rel != Rel::LE) {
            PropRow neg{cut->terms, -cut->rhs};
            for (auto& t : neg.terms) t.coef = -t.coef;
            prop_rows.push_back(std::move(neg));
          }
          st = solver.optimize();
          if (st == LpStatus::Infeasible) break;
          if (st == LpStatus::Unbounded)
            throw std::runtime_error("solve_milp: unbounded relaxation");
          obj = solver.objective();
          continue;
        }
      }

      Vec x = solver.structural_values();
      for (int j : int_vars) x(j) = std::round(x(j));
      if (!have_inc || obj < inc_obj) {
        have_inc = true;
        inc_obj = obj;
        inc_x = x;
      }
      break;
    }
  }

  MilpResult res;
  res.nodes = nodes;
  res.callback_rounds = cb_rounds;
  const bool frontier = dive.has_value() || !open.empty();
  double bound_min;
  if (status == MilpStatus::TimeLimit) {
    bound_min = frontier ? best_open : inc_obj;
  } else if (!frontier) {
    bound_min = inc_obj;
    if (!have_inc) {
      res.status = MilpStatus::Infeasible;
      return res;
    }
  } else {
    bound_min = best_open;
  }
  res.status = have_inc ? status : (status == MilpStatus::TimeLimit ? MilpStatus::TimeLimit
                                                                    : MilpStatus::Infeasible);
  if (have_inc) {
    res.x = inc_x;
    res.objective = flip * inc_obj;
  }
  res.bound = flip * bound_min;
  return res;
}

void write_lp_format(const LinearModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_lp_format: cannot open " + path);
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  auto terms_of = [&](const std::vector<RowTerm>& ts) {
    std::string s;
    for (const auto& t : ts) {
      if (t.coef >= 0.0)
        s += " + " + num(t.coef);
      else
        s += " - " + num(-t.coef);
      s += " x" + std::to_string(t.var);
    }
    return s.empty() ? std::string(" 0 x0") : s;
  };

  out << (m.sense == Sense::Maximize ? "Maximize" : "Minimize") << "\n obj:";
  std::vector<RowTerm> ot;
  for (int j = 0; j < m.n_vars(); ++j)
    if (m.obj[j] != 0.0) ot.push_back({j, m.obj[j]});
  out << terms_of(ot) << "\nSubject To\n";
  for (int r = 0; r < m.n_rows(); ++r) {
    out << " c" << r << ":" << terms_of(m.rows[r]);
    switch (m.rels[r]) {
      case Rel::LE: out << " <= "; break;
      case Rel::GE: out << " >= "; break;
      case Rel::EQ: out << " = "; break;
    }
    out << num(m.rhs[r]) << "\n";
  }
  out << "Bounds\n";
  for (int j = 0; j < m.n_vars(); ++j) {
    const bool lf = std::isfinite(m.lo[j]), hf = std::isfinite(m.hi[j]);
    if (lf && hf && m.lo[j] == m.hi[j])
      out << " x" << j << " = " << num(m.lo[j]) << "\n";
    else if (lf && hf)
      out << " " << num(m.lo[j]) << " <= x" << j << " <= " << num(m.hi[j]) << "\n";
    else if (lf)
      out << " x" << j << " >= " << num(m.lo[j]) << "\n";
    else if (hf)
      out << " -inf <= x" << j << " <= " << num(m.hi[j]) << "\n";
    else
      out << " x" << j << " free\n";
  }
  bool any_bin = false, any_gen = false;
  for (int j = 0; j < m.n_vars(); ++j)
    if (m.is_int[j]) (m.lo[j] == 0.0 && m.hi[j] == 1.0 ? any_bin : any_gen) = true;
  if (any_bin) {
    out << "Binaries\n";
    for (int j = 0; j < m.n_vars(); ++j)
      if (m.is_int[j] && m.lo[j] == 0.0 && m.hi[j] == 1.0) out << " x" << j;
    out << "\n";
  }
  if (any_gen) {
    out << "Generals\n";
    for (int j = 0; j < m.n_vars(); ++j)
      if (m.is_int[j] && !(m.lo[j] == 0.0 && m.hi[j] == 1.0)) out << " x" << j;
    out << "\n";
  }
  out << "End\n";
}

}  // namespace ddfl
