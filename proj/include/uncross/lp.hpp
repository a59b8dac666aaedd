#pragma once

#include <vector>

#include "uncross/rational.hpp"

namespace uncross {

// Exact rational linear program over x >= 0 with <=/>= rows. Feasibility via
// phase-1 simplex (Bland's rule, dense tableau).
struct LpRow {
  std::vector<std::pair<int, Rat>> terms;  // (variable, coefficient)
  Rat rhs;
  bool ge = false;  // false: sum <= rhs, true: sum >= rhs
};

struct LpProblem {
  int num_vars = 0;
  std::vector<LpRow> rows;
};

struct LpResult {
  bool feasible = false;
  std::vector<Rat> x;
};

LpResult lp_feasible(const LpProblem& p);

struct LpOptResult {
  bool feasible = false;
  bool unbounded = false;
  Rat value;
  std::vector<Rat> x;
};

// max c.x subject to the rows and x >= 0
LpOptResult lp_maximize(const LpProblem& p, const std::vector<Rat>& objective);

}  // namespace uncross
