#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ddfl/linmodel.hpp"
#include "ddfl/types.hpp"

namespace ddfl {

// Revised bounded-variable simplex over a dense explicitly maintained basis
// inverse. Columns n..n+m-1 are row slacks: a_r x + s_r = rhs_r with
//   LE: s in [0, inf),  GE: s in (-inf, 0],  EQ: s == 0.
// The solver always minimizes; a Maximize model is loaded with negated
// costs and the caller flips the reported objective.
//
// Warm restarts: set_var_bounds and add_row keep the basis inverse valid
// and neither disturbs reduced costs, so optimize() after a branch bound
// change or a new cut row runs dual simplex from the previous basis.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearModel& model);

  void set_var_bounds(int var, double lower, double upper);
  int add_row(const std::vector<RowTerm>& terms, Rel rel, double rhs);

  LpStatus optimize();

  // Valid after optimize() returned Optimal. objective() is the minimize
  // orientation value; callers that loaded a Maximize model negate it.
  double objective() const;
  double var_value(int var) const;
  Vec structural_values() const;
  Vec row_duals() const;

  // Largest violation of rows or variable bounds at the current point,
  // measured against the original (unscaled) data.
  double max_violation() const;

  // Discard the basis; the next optimize() restarts from a slack basis.
  void reset_basis();

  std::int64_t pivots() const { return pivots_; }
  int num_rows() const { return m_; }
  int num_structurals() const { return n_; }

 private:
  enum State : char { kBasic, kAtLower, kAtUpper, kFree };

  int n_ = 0;  // structural columns
  int m_ = 0;  // rows (grows as cuts arrive)
  Sense sense_ = Sense::Minimize;

  // Structural columns: compressed sparse from the loaded model, plus
  // per-column append lists for rows added afterwards.
  std::vector<int> col_start_;
  std::vector<int> col_row_;
  std::vector<double> col_val_;
  std::vector<std::vector<std::pair<int, double>>> col_extra_;
  std::vector<double> cost_;  // minimize orientation
  std::vector<double> lo_, hi_;
  std::vector<Rel> row_rel_;
  std::vector<double> row_rhs_;
  double cost_scale_ = 1.0;

  // binv_ holds the inverse in the top-left m x m block of a capacity
  // padded square matrix so appended rows avoid full reallocation.
  Mat binv_;
  int cap_ = 0;
  Vec xb_;
  std::vector<int> basic_;      // row -> column
  std::vector<int> pos_;        // column -> basis row, -1 when nonbasic
  std::vector<State> state_;    // column -> state
  std::vector<double> nb_val_;  // column -> value while nonbasic
  bool basis_fresh_ = false;

  std::int64_t pivots_ = 0;
  int degen_run_ = 0;
  bool bland_ = false;

  int total_cols() const { return n_ + m_; }
  double col_lo(int j) const;
  double col_hi(int j) const;
  double col_cost(int j) const { return j < n_ ? cost_[j] : 0.0; }
  double feas_tol_col(int j) const;

  void grow_capacity(int rows);
  void install_slack_basis();
  void ftran(int j, Vec& d) const;
  void pivot_row_alpha(int r, Vec& alpha) const;
  void compute_duals(Vec& y) const;
  void reduced_costs(const Vec& y, Vec& rc) const;
  void apply_pivot(int r, int entering, const Vec& d);

  LpStatus primal_simplex(bool phase_one);
  LpStatus dual_simplex();
  bool primal_feasible() const;
  double dual_feasibility_violation() const;
};

LpResult solve_lp(const LinearModel& model);

}  // namespace ddfl
