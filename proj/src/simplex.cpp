#include "ddfl/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ddfl {

namespace {

constexpr double kTolPivot = 1e-9;
constexpr double kTolStep = 1e-10;

bool finite(double v) { return std::isfinite(v); }

}  // namespace

SimplexSolver::SimplexSolver(const LinearModel& model) {
  n_ = model.n_vars();
  m_ = model.n_rows();
  sense_ = model.sense;
  const double flip = sense_ == Sense::Maximize ? -1.0 : 1.0;
  cost_.resize(n_);
  for (int j = 0; j < n_; ++j) cost_[j] = flip * model.obj[j];
  lo_ = model.lo;
  hi_ = model.hi;
  row_rel_ = model.rels;
  row_rhs_ = model.rhs;
  for (int j = 0; j < n_; ++j)
    if (!(lo_[j] <= hi_[j] + 1e-12)) throw std::invalid_argument("simplex: crossed bounds");
  cost_scale_ = 1.0;
  for (double c : cost_) cost_scale_ = std::max(cost_scale_, std::abs(c));

  std::vector<int> cnt(n_, 0);
  for (const auto& row : model.rows)
    for (const auto& t : row) {
      if (t.var < 0 || t.var >= n_) throw std::invalid_argument("simplex: bad column index");
      ++cnt[t.var];
    }
  col_start_.assign(n_ + 1, 0);
  for (int j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + cnt[j];
  col_row_.resize(col_start_[n_]);
  col_val_.resize(col_start_[n_]);
  std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
  for (int r = 0; r < m_; ++r)
    for (const auto& t : model.rows[r]) {
      col_row_[fill[t.var]] = r;
      col_val_[fill[t.var]] = t.coef;
      ++fill[t.var];
    }
  col_extra_.assign(n_, {});

  cap_ = std::max(m_, 16);
  binv_ = Mat::Zero(cap_, cap_);
  xb_ = Vec::Zero(cap_);
}

double SimplexSolver::col_lo(int j) const {
  if (j < n_) return lo_[j];
  switch (row_rel_[j - n_]) {
    case Rel::GE: return -kInfinity;
    default: return 0.0;  // LE and EQ slacks sit at or above zero
  }
}

double SimplexSolver::col_hi(int j) const {
  if (j < n_) return hi_[j];
  switch (row_rel_[j - n_]) {
    case Rel::LE: return kInfinity;
    default: return 0.0;
  }
}

double SimplexSolver::feas_tol_col(int j) const {
  double s = 0.0;
  if (j < n_) {
    if (finite(lo_[j])) s = std::max(s, std::abs(lo_[j]));
    if (finite(hi_[j])) s = std::max(s, std::abs(hi_[j]));
  } else {
    s = std::abs(row_rhs_[j - n_]);
  }
  return 1e-9 * (1.0 + s);
}

void SimplexSolver::grow_capacity(int rows) {
  if (rows <= cap_) return;
  int newcap = std::max(cap_ * 2, rows);
  Mat nb = Mat::Zero(newcap, newcap);
  nb.topLeftCorner(m_, m_) = binv_.topLeftCorner(m_, m_);
  binv_.swap(nb);
  xb_.conservativeResize(newcap);
  cap_ = newcap;
}

void SimplexSolver::install_slack_basis() {
  basic_.resize(m_);
  pos_.assign(n_ + m_, -1);
  state_.assign(n_ + m_, kAtLower);
  nb_val_.assign(n_ + m_, 0.0);
  for (int j = 0; j < n_; ++j) {
    const bool lf = finite(lo_[j]), hf = finite(hi_[j]);
    if (lf && hf) {
      state_[j] = cost_[j] < 0.0 ? kAtUpper : kAtLower;
      nb_val_[j] = state_[j] == kAtUpper ? hi_[j] : lo_[j];
    } else if (lf) {
      state_[j] = kAtLower;
      nb_val_[j] = lo_[j];
    } else if (hf) {
      state_[j] = kAtUpper;
      nb_val_[j] = hi_[j];
    } else {
      state_[j] = kFree;
      nb_val_[j] = 0.0;
    }
  }
  for (int r = 0; r < m_; ++r) {
    basic_[r] = n_ + r;
    pos_[n_ + r] = r;
    state_[n_ + r] = kBasic;
  }
  binv_.topLeftCorner(m_, m_).setIdentity();
  for (int r = 0; r < m_; ++r) xb_(r) = row_rhs_[r];
  for (int j = 0; j < n_; ++j) {
    const double v = nb_val_[j];
    if (v == 0.0) continue;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) xb_(col_row_[k]) -= col_val_[k] * v;
    for (const auto& e : col_extra_[j]) xb_(e.first) -= e.second * v;
  }
  basis_fresh_ = true;
  degen_run_ = 0;
  bland_ = false;
}

void SimplexSolver::ftran(int j, Vec& d) const {
  d = Vec::Zero(m_);
  if (j >= n_) {
    d = binv_.col(j - n_).head(m_);
    return;
  }
  for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
    d += col_val_[k] * binv_.col(col_row_[k]).head(m_);
  for (const auto& e : col_extra_[j]) d += e.second * binv_.col(e.first).head(m_);
}

void SimplexSolver::pivot_row_alpha(int r, Vec& alpha) const {
  Eigen::RowVectorXd w = binv_.row(r).head(m_);
  alpha = Vec::Zero(n_ + m_);
  for (int j = 0; j < n_; ++j) {
    double s = 0.0;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) s += col_val_[k] * w(col_row_[k]);
    for (const auto& e : col_extra_[j]) s += e.second * w(e.first);
    alpha(j) = s;
  }
  alpha.segment(n_, m_) = w.transpose();
}

void SimplexSolver::compute_duals(Vec& y) const {
  Vec cb(m_);
  for (int r = 0; r < m_; ++r) cb(r) = col_cost(basic_[r]);
  y.noalias() = binv_.topLeftCorner(m_, m_).transpose() * cb;
}

void SimplexSolver::reduced_costs(const Vec& y, Vec& rc) const {
  rc.resize(n_ + m_);
  for (int j = 0; j < n_; ++j) {
    double s = cost_[j];
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) s -= y(col_row_[k]) * col_val_[k];
    for (const auto& e : col_extra_[j]) s -= y(e.first) * e.second;
    rc(j) = s;
  }
  rc.segment(n_, m_) = -y.head(m_);
}

void SimplexSolver::apply_pivot(int r, int entering, const Vec& d) {
  const double piv = d(r);
  if (std::abs(piv) < 1e-12) throw std::runtime_error("simplex: vanishing pivot");
  Eigen::RowVectorXd pr = binv_.row(r).head(m_) / piv;
  // column-wise rank-1 update; columns where row r is exactly zero are
  // untouched, which keeps early pivots on a near-identity inverse cheap
  for (int k = 0; k < m_; ++k) {
    const double prk = pr(k);
    if (prk == 0.0) continue;
    binv_.col(k).head(m_) -= prk * d;
  }
  binv_.row(r).head(m_) = pr;
  const int p = basic_[r];
  pos_[p] = -1;
  basic_[r] = entering;
  pos_[entering] = r;
  state_[entering] = kBasic;
  ++pivots_;
}

bool SimplexSolver::primal_feasible() const {
  for (int r = 0; r < m_; ++r) {
    const int j = basic_[r];
    const double tol = feas_tol_col(j);
    if (xb_(r) < col_lo(j) - tol || xb_(r) > col_hi(j) + tol) return false;
  }
  return true;
}

double SimplexSolver::dual_feasibility_violation() const {
  Vec y, rc;
  compute_duals(y);
  reduced_costs(y, rc);
  double worst = 0.0;
  for (int j = 0; j < total_cols(); ++j) {
    if (state_[j] == kBasic) continue;
    if (!(col_hi(j) - col_lo(j) > 0.0)) continue;  // fixed columns never enter
    double v = 0.0;
    if (state_[j] == kAtLower) v = std::max(0.0, -rc(j));
    else if (state_[j] == kAtUpper) v = std::max(0.0, rc(j));
    else v = std::abs(rc(j));
    worst = std::max(worst, v);
  }
  return worst;
}

// Bounded-variable primal simplex. phase_one drives a piecewise-linear
// infeasibility objective whose gradient is -1/+1 on out-of-bound basics;
// blocking events there include an infeasible basic reaching its violated
// bound. Ratio selection is Harris-flavored: a first pass sets the allowed
// step with per-column tolerance slack, a second pass picks the largest
// pivot magnitude inside that window. Bland's rule takes over after a run
// of degenerate steps and releases once progress resumes.
LpStatus SimplexSolver::primal_simplex(bool phase_one) {
  const std::int64_t pivot_cap = pivots_ + 200000 + 200LL * (m_ + n_);
  Vec y, rc, d;
  struct Event {
    int r;
    double t;
    double absd;
    double bound;
    bool to_lower;
  };
  std::vector<Event> events;
  for (;;) {
    if (pivots_ > pivot_cap) throw std::runtime_error("simplex: pivot limit exceeded");

    double tol_rc;
    if (phase_one) {
      Vec g(m_);
      bool any = false;
      for (int r = 0; r < m_; ++r) {
        const int j = basic_[r];
        const double tol = feas_tol_col(j);
        if (xb_(r) < col_lo(j) - tol) {
          g(r) = -1.0;
          any = true;
        } else if (xb_(r) > col_hi(j) + tol) {
          g(r) = 1.0;
          any = true;
        } else {
          g(r) = 0.0;
        }
      }
      if (!any) return LpStatus::Optimal;
      y.noalias() = binv_.topLeftCorner(m_, m_).transpose() * g;
      rc.resize(n_ + m_);
      for (int j = 0; j < n_; ++j) {
        double s = 0.0;
        for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) s -= y(col_row_[k]) * col_val_[k];
        for (const auto& e : col_extra_[j]) s -= y(e.first) * e.second;
        rc(j) = s;
      }
      rc.segment(n_, m_) = -y.head(m_);
      tol_rc = 1e-9 * 2.0;
    } else {
      compute_duals(y);
      reduced_costs(y, rc);
      tol_rc = 1e-9 * (1.0 + cost_scale_);
    }

    int q = -1, qdir = 0;
    double best = tol_rc;
    for (int j = 0; j < total_cols(); ++j) {
      if (state_[j] == kBasic) continue;
      if (!(col_hi(j) - col_lo(j) > 0.0)) continue;
      double viol = 0.0;
      int dir = 0;
      if (state_[j] == kAtLower) {
        if (rc(j) < -tol_rc) {
          viol = -rc(j);
          dir = 1;
        }
      } else if (state_[j] == kAtUpper) {
        if (rc(j) > tol_rc) {
          viol = rc(j);
          dir = -1;
        }
      } else {
        if (std::abs(rc(j)) > tol_rc) {
          viol = std::abs(rc(j));
          dir = rc(j) < 0.0 ? 1 : -1;
        }
      }
      if (dir == 0) continue;
      if (bland_) {
        q = j;
        qdir = dir;
        break;
      }
      if (viol > best) {
        best = viol;
        q = j;
        qdir = dir;
      }
    }
    if (q == -1) {
      if (phase_one) return LpStatus::Infeasible;  // infeasibility cannot decrease
      return LpStatus::Optimal;
    }

    ftran(q, d);
    const double sigma = qdir;

    events.clear();
    double t_limit = kInfinity;
    for (int r = 0; r < m_; ++r) {
      const double g = sigma * d(r);
      if (std::abs(g) <= kTolPivot) continue;
      const int bj = basic_[r];
      const double lob = col_lo(bj), hib = col_hi(bj), tol = feas_tol_col(bj);
      double bound;
      bool to_lower;
      if (phase_one) {
        const bool below = xb_(r) < lob - tol, above = xb_(r) > hib + tol;
        if (g > 0.0) {
          if (below) continue;  // already past the lower bound and worsening is unblocked here
          bound = above ? hib : lob;
          to_lower = !above;
        } else {
          if (above) continue;
          bound = below ? lob : hib;
          to_lower = below;
        }
      } else {
        bound = g > 0.0 ? lob : hib;
        to_lower = g > 0.0;
      }
      if (!finite(bound)) continue;
      double t = (xb_(r) - bound) / g;
      if (t < 0.0) t = 0.0;
      events.push_back({r, t, std::abs(d(r)), bound, to_lower});
      t_limit = std::min(t_limit, t + tol / std::abs(g));
    }

    double t_range = kInfinity;
    if (finite(col_lo(q)) && finite(col_hi(q))) t_range = col_hi(q) - col_lo(q);

    if (events.empty()) {
      if (!finite(t_range)) {
        if (phase_one) throw std::runtime_error("simplex: unbounded infeasibility direction");
        return LpStatus::Unbounded;
      }
      // bound flip, no basis change
      xb_.head(m_) -= (sigma * t_range) * d;
      state_[q] = state_[q] == kAtLower ? kAtUpper : kAtLower;
      nb_val_[q] = state_[q] == kAtUpper ? col_hi(q) : col_lo(q);
      ++pivots_;
      if (t_range <= kTolStep) {
        if (++degen_run_ > 10 * (m_ + n_)) bland_ = true;
      } else {
        degen_run_ = 0;
        bland_ = false;
      }
      continue;
    }

    const Event* pick = nullptr;
    if (bland_) {
      double tmin = kInfinity;
      for (const auto& e : events) tmin = std::min(tmin, e.t);
      for (const auto& e : events)
        if (e.t <= tmin && (pick == nullptr || e.r < pick->r)) pick = &e;
    } else {
      for (const auto& e : events) {
        if (e.t > t_limit) continue;
        if (pick == nullptr || e.absd > pick->absd + 1e-15 ||
            (std::abs(e.absd - pick->absd) <= 1e-15 && e.r < pick->r))
          pick = &e;
      }
    }

    if (pick == nullptr || pick->t >= t_range) {
      // entering variable traverses its whole range first
      xb_.head(m_) -= (sigma * t_range) * d;
      state_[q] = state_[q] == kAtLower ? kAtUpper : kAtLower;
      nb_val_[q] = state_[q] == kAtUpper ? col_hi(q) : col_lo(q);
      ++pivots_;
      if (t_range <= kTolStep) {
        if (++degen_run_ > 10 * (m_ + n_)) bland_ = true;
      } else {
        degen_run_ = 0;
        bland_ = false;
      }
      continue;
    }

    const double t = pick->t;
    const double enter_from = state_[q] == kFree ? 0.0 : nb_val_[q];
    xb_.head(m_) -= (sigma * t) * d;
    const int p = basic_[pick->r];
    state_[p] = pick->to_lower ? kAtLower : kAtUpper;
    nb_val_[p] = pick->bound;
    const int pr = pick->r;
    apply_pivot(pr, q, d);
    xb_(pr) = enter_from + sigma * t;
    if (t <= kTolStep) {
      if (++degen_run_ > 10 * (m_ + n_)) bland_ = true;
    } else {
      degen_run_ = 0;
      bland_ = false;
    }
  }
}

// Dual simplex from a dual-feasible basis; repairs primal bound violations
// introduced by branch bound changes or appended cut rows. Entering choice
// minimizes |rc|/|alpha| over admissible columns so reduced-cost signs are
// preserved; ties prefer the largest pivot element. Reduced costs are kept
// incrementally (one rank-1 pass per pivot instead of a fresh dual solve)
// and refreshed periodically to cap drift; the leaving row is scored by
// squared violation over a Devex weight.
LpStatus SimplexSolver::dual_simplex() {
  const std::int64_t pivot_cap = pivots_ + 200000 + 200LL * (m_ + n_);
  Vec y, rc, d, alpha;
  Vec devex = Vec::Ones(m_);
  int refresh = 0;
  for (;;) {
    if (pivots_ > pivot_cap) throw std::runtime_error("simplex: pivot limit exceeded");
    if (refresh == 0) {
      compute_duals(y);
      reduced_costs(y, rc);
      refresh = 64;
    }
    --refresh;

    int r = -1;
    double worst = 0.0;
    for (int rr = 0; rr < m_; ++rr) {
      const int j = basic_[rr];
      const double tol = feas_tol_col(j);
      const double v = std::max(col_lo(j) - xb_(rr), xb_(rr) - col_hi(j));
      if (v <= tol) continue;
      if (bland_) {
        r = rr;
        break;
      }
      const double score = v * v / devex(rr);
      if (score > worst) {
        worst = score;
        r = rr;
      }
    }
    if (r == -1) return LpStatus::Optimal;

    const int leave = basic_[r];
    const bool below = xb_(r) < col_lo(leave);
    const double target = below ? col_lo(leave) : col_hi(leave);

    pivot_row_alpha(r, alpha);

    int q = -1;
    double best_key = kInfinity, best_abs = 0.0;
    for (int j = 0; j < total_cols(); ++j) {
      if (state_[j] == kBasic) continue;
      if (!(col_hi(j) - col_lo(j) > 0.0)) continue;
      const double a = alpha(j);
      if (std::abs(a) <= kTolPivot) continue;
      bool ok;
      if (state_[j] == kFree) {
        ok = true;
      } else if (below) {
        ok = (state_[j] == kAtLower && a < 0.0) || (state_[j] == kAtUpper && a > 0.0);
      } else {
        ok = (state_[j] == kAtLower && a > 0.0) || (state_[j] == kAtUpper && a < 0.0);
      }
      if (!ok) continue;
      const double key = std::abs(rc(j)) / std::abs(a);
      if (bland_) {
        // strictly smallest ratio, first index wins ties
        if (q == -1 || key < best_key) {
          q = j;
          best_key = key;
        }
        continue;
      }
      if (key < best_key - 1e-12 * (1.0 + best_key) ||
          (key <= best_key + 1e-12 * (1.0 + best_key) && std::abs(a) > best_abs)) {
        q = j;
        best_key = key;
        best_abs = std::abs(a);
      }
    }
    if (q == -1) return LpStatus::Infeasible;

    ftran(q, d);
    const double dr = d(r);
    if (std::abs(dr) <= kTolPivot) throw std::runtime_error("simplex: inconsistent pivot row");
    const double rcq = rc(q);

    const double wr = devex(r);
    for (int i = 0; i < m_; ++i) {
      const double di = d(i);
      if (di == 0.0 || i == r) continue;
      const double cand = (di / dr) * (di / dr) * wr;
      if (cand > devex(i)) devex(i) = cand;
    }
    devex(r) = std::max(wr / (dr * dr), 1.0);
    if (devex(r) > 1e10) devex.setOnes();

    const double ratio = rcq / dr;
    rc -= ratio * alpha;
    rc(q) = 0.0;
    rc(leave) = -ratio;

    const double delta = (xb_(r) - target) / dr;
    const double enter_from = state_[q] == kFree ? 0.0 : nb_val_[q];
    xb_.head(m_) -= delta * d;
    state_[leave] = below ? kAtLower : kAtUpper;
    nb_val_[leave] = target;
    apply_pivot(r, q, d);
    xb_(r) = enter_from + delta;

    if (std::abs(rcq) <= 1e-9 * (1.0 + cost_scale_)) {
      if (++degen_run_ > 10 * (m_ + n_)) bland_ = true;
    } else {
      degen_run_ = 0;
      bland_ = false;
    }
  }
}

LpStatus SimplexSolver::optimize() {
  if (!basis_fresh_) install_slack_basis();
  if (primal_feasible()) return primal_simplex(false);
  if (dual_feasibility_violation() <= 1e-7 * (1.0 + cost_scale_)) {
    LpStatus st = dual_simplex();
    if (st != LpStatus::Optimal) return st;
    return primal_simplex(false);  // polish residual reduced-cost drift
  }
  LpStatus st = primal_simplex(true);
  if (st != LpStatus::Optimal) return LpStatus::Infeasible;
  return primal_simplex(false);
}

double SimplexSolver::objective() const {
  double s = 0.0;
  for (int r = 0; r < m_; ++r) s += col_cost(basic_[r]) * xb_(r);
  for (int j = 0; j < n_; ++j)
    if (state_[j] != kBasic && state_[j] != kFree) s += cost_[j] * nb_val_[j];
  return s;
}

double SimplexSolver::var_value(int var) const {
  if (pos_[var] >= 0) return xb_(pos_[var]);
  return state_[var] == kFree ? 0.0 : nb_val_[var];
}

Vec SimplexSolver::structural_values() const {
  Vec x(n_);
  for (int j = 0; j < n_; ++j) x(j) = var_value(j);
  return x;
}

Vec SimplexSolver::row_duals() const {
  Vec y;
  compute_duals(y);
  return y;
}

double SimplexSolver::max_violation() const {
  Vec act = Vec::Zero(m_);
  double worst = 0.0;
  for (int j = 0; j < n_; ++j) {
    const double v = var_value(j);
    if (finite(lo_[j])) worst = std::max(worst, lo_[j] - v);
    if (finite(hi_[j])) worst = std::max(worst, v - hi_[j]);
    if (v == 0.0) continue;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) act(col_row_[k]) += col_val_[k] * v;
    for (const auto& e : col_extra_[j]) act(e.first) += e.second * v;
  }
  for (int r = 0; r < m_; ++r) {
    const double resid = act(r) - row_rhs_[r];
    switch (row_rel_[r]) {
      case Rel::LE: worst = std::max(worst, resid); break;
      case Rel::GE: worst = std::max(worst, -resid); break;
      case Rel::EQ: worst = std::max(worst, std::abs(resid)); break;
    }
  }
  return worst;
}

void SimplexSolver::reset_basis() { basis_fresh_ = false; }

void SimplexSolver::set_var_bounds(int var, double lower, double upper) {
  if (var < 0 || var >= n_) throw std::invalid_argument("simplex: bad variable");
  if (!(lower <= upper + 1e-12)) throw std::invalid_argument("simplex: crossed bounds");
  lo_[var] = lower;
  hi_[var] = upper;
  if (!basis_fresh_) return;
  if (pos_[var] >= 0) return;  // basic: the next optimize() repairs any violation

  State ns = state_[var];
  double nv;
  if (ns == kAtLower) {
    if (finite(lower)) {
      nv = lower;
    } else if (finite(upper)) {
      ns = kAtUpper;
      nv = upper;
    } else {
      ns = kFree;
      nv = 0.0;
    }
  } else if (ns == kAtUpper) {
    if (finite(upper)) {
      nv = upper;
    } else if (finite(lower)) {
      ns = kAtLower;
      nv = lower;
    } else {
      ns = kFree;
      nv = 0.0;
    }
  } else {
    if (!finite(lower) && !finite(upper)) return;
    if (finite(lower)) {
      ns = kAtLower;
      nv = lower;
    } else {
      ns = kAtUpper;
      nv = upper;
    }
  }
  const double old = state_[var] == kFree ? 0.0 : nb_val_[var];
  if (nv != old) {
    Vec d;
    ftran(var, d);
    xb_.head(m_) -= (nv - old) * d;
  }
  state_[var] = ns;
  nb_val_[var] = nv;
}

int SimplexSolver::add_row(const std::vector<RowTerm>& terms, Rel rel, double rhs) {
  const int r_new = m_;
  for (const auto& t : terms)
    if (t.var < 0 || t.var >= n_) throw std::invalid_argument("simplex: bad column index");

  double act = 0.0;
  if (basis_fresh_)
    for (const auto& t : terms) act += t.coef * var_value(t.var);

  row_rel_.push_back(rel);
  row_rhs_.push_back(rhs);
  for (const auto& t : terms) col_extra_[t.var].push_back({r_new, t.coef});

  grow_capacity(m_ + 1);
  if (basis_fresh_) {
    Eigen::RowVectorXd w = Eigen::RowVectorXd::Zero(m_);
    for (const auto& t : terms)
      if (pos_[t.var] >= 0) w += t.coef * binv_.row(pos_[t.var]).head(m_);
    binv_.row(r_new).head(m_) = -w;
    binv_.col(r_new).head(m_).setZero();
    binv_(r_new, r_new) = 1.0;
    xb_(r_new) = rhs - act;
    basic_.push_back(n_ + r_new);
    pos_.push_back(r_new);
    state_.push_back(kBasic);
    nb_val_.push_back(0.0);
  }
  ++m_;
  return r_new;
}

LpResult solve_lp(const LinearModel& model) {
  SimplexSolver s(model);
  LpStatus st = s.optimize();
  if (st == LpStatus::Optimal) {
    double scale = 1.0;
    for (double b : model.rhs) scale = std::max(scale, std::abs(b));
    if (s.max_violation() > 1e-6 * scale) {
      s.reset_basis();
      st = s.optimize();
      if (st == LpStatus::Optimal && s.max_violation() > 1e-6 * scale)
        throw std::runtime_error("solve_lp: residual check failed twice");
    }
  }
  LpResult res;
  res.status = st;
  if (st == LpStatus::Optimal) {
    res.x = s.structural_values();
    res.row_dual = s.row_duals();
    res.objective = model.sense == Sense::Maximize ? -s.objective() : s.objective();
  }
  return res;
}

}  // namespace ddfl
