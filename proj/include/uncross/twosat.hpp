#pragma once

#include <vector>

namespace uncross {

// Implication-graph 2-SAT (Tarjan SCC). Literals: variable v has literals
// 2v (true) and 2v+1 (false).
class TwoSat {
 public:
  explicit TwoSat(int vars = 0) : n_(vars), adj_(2 * vars) {}

  int add_var() {
    ++n_;
    adj_.emplace_back();
    adj_.emplace_back();
    return n_ - 1;
  }
  int num_vars() const { return n_; }

  static int lit(int var, bool value) { return 2 * var + (value ? 0 : 1); }
  static int neg(int l) { return l ^ 1; }

  void add_clause(int a, int b);        // (a or b)
  void add_unit(int a) { add_clause(a, a); }
  void force_conflict() { conflict_ = true; }

  // Returns false on UNSAT. On success fills values[v].
  bool solve(std::vector<bool>& values);

 private:
  int n_ = 0;
  bool conflict_ = false;
  std::vector<std::vector<int>> adj_;
};

}  // namespace uncross
