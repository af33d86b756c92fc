#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ddfl/types.hpp"

namespace ddfl {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { Minimize, Maximize };
enum class Rel { LE, GE, EQ };

struct RowTerm {
  int var;
  double coef;
};

struct CutRow {
  std::vector<RowTerm> terms;
  Rel rel = Rel::LE;
  double rhs = 0.0;
};

// Dense-scalar LP/MILP container. Rows are stored sparse; the solvers build
// whatever internal form they need. Integer variables must carry finite
// bounds before a MILP solve.
struct LinearModel {
  Sense sense = Sense::Minimize;
  std::vector<double> obj;
  std::vector<double> lo, hi;
  std::vector<char> is_int;
  std::vector<std::vector<RowTerm>> rows;
  std::vector<Rel> rels;
  std::vector<double> rhs;

  int n_vars() const { return static_cast<int>(obj.size()); }
  int n_rows() const { return static_cast<int>(rows.size()); }

  int add_var(double lower, double upper, double objective, bool integer = false) {
    obj.push_back(objective);
    lo.push_back(lower);
    hi.push_back(upper);
    is_int.push_back(integer ? 1 : 0);
    return n_vars() - 1;
  }

  int add_row(std::vector<RowTerm> terms, Rel rel, double rhs_value) {
    rows.push_back(std::move(terms));
    rels.push_back(rel);
    rhs.push_back(rhs_value);
    return n_rows() - 1;
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  Vec x;         // structural values
  Vec row_dual;  // per row, minimize orientation: reduced cost of a row's
                 // slack is -dual, so a binding <= row has dual <= 0
  double objective = 0.0;
};

enum class MilpStatus { Optimal, Infeasible, TimeLimit };

struct MilpResult {
  MilpStatus status = MilpStatus::Optimal;
  Vec x;  // empty when no incumbent exists
  double objective = 0.0;
  double bound = 0.0;
  std::int64_t nodes = 0;
  std::int64_t callback_rounds = 0;  // lazy-callback invocations
};

struct MilpOptions {
  double gap_tol = 1e-4;       // relative, |incumbent - bound| / (1e-10 + |incumbent|)
  double int_tol = 1e-6;       // integrality recognition
  double time_limit_s = kInfinity;
  // Called at LP-integral nodes with the node solution (integer components
  // exactly rounded). A returned row is added to every node of the tree and
  // the node is re-solved; nullopt accepts the point as incumbent material.
  std::function<std::optional<CutRow>(const Vec&)> lazy_cut;
};

// CPLEX LP text format (objective, rows, bounds, integrality markers).
void write_lp_format(const LinearModel& m, const std::string& path);

}  // namespace ddfl
