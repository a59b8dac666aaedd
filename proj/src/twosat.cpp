#include "uncross/twosat.hpp"

#include <algorithm>

namespace uncross {

void TwoSat::add_clause(int a, int b) {
  adj_[neg(a)].push_back(b);
  adj_[neg(b)].push_back(a);
}

bool TwoSat::solve(std::vector<bool>& values) {
  if (conflict_) return false;
  int m = 2 * n_;
  std::vector<int> index(m, -1), low(m, 0), comp(m, -1), stack;
  std::vector<bool> on_stack(m, false);
  int counter = 0, comps = 0;

  // iterative Tarjan
  struct Frame {
    int v;
    size_t child;
  };
  std::vector<Frame> frames;
  for (int root = 0; root < m; ++root) {
    if (index[root] != -1) continue;
    frames.push_back({root, 0});
    while (!frames.empty()) {
      auto& fr = frames.back();
      int v = fr.v;
      if (fr.child == 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (fr.child < adj_[v].size()) {
        int w = adj_[v][fr.child++];
        if (index[w] == -1) {
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = comps;
            if (w == v) break;
          }
          ++comps;
        }
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }

  values.assign(n_, false);
  for (int v = 0; v < n_; ++v) {
    if (comp[2 * v] == comp[2 * v + 1]) return false;
    // Tarjan numbers components in reverse topological order; a literal whose
    // component comes earlier in that numbering is implied-true.
    values[v] = comp[2 * v] < comp[2 * v + 1];
  }
  return true;
}

}  // namespace uncross
