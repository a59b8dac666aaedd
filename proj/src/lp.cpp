#include "uncross/lp.hpp"

#include <stdexcept>

namespace uncross {

namespace {

// Dense tableau simplex. Columns: structural | slack/surplus | artificial.
class Simplex {
 public:
  Simplex(const LpProblem& p) : n_(p.num_vars) {
    m_ = static_cast<int>(p.rows.size());
    int slacks = m_;
    // artificials added per row that needs one
    art_start_ = n_ + slacks;
    cols_ = art_start_;
    tab_.assign(m_, {});
    basis_.assign(m_, -1);
    rhs_.assign(m_, Rat(0));

    std::vector<std::vector<Rat>> dense(m_, std::vector<Rat>(n_, Rat(0)));
    for (int r = 0; r < m_; ++r) {
      for (auto& [v, c] : p.rows[r].terms) dense[r][v] += c;
      rhs_[r] = p.rows[r].rhs;
    }
    // normalize: rhs >= 0
    std::vector<int> slack_sign(m_);
    for (int r = 0; r < m_; ++r) {
      bool ge = p.rows[r].ge;
      if (rhs_[r] < 0) {
        for (auto& c : dense[r]) c = -c;
        rhs_[r] = -rhs_[r];
        ge = !ge;
      }
      slack_sign[r] = ge ? -1 : 1;
    }
    for (int r = 0; r < m_; ++r) {
      tab_[r].assign(cols_, Rat(0));
      for (int v = 0; v < n_; ++v) tab_[r][v] = dense[r][v];
      tab_[r][n_ + r] = Rat(slack_sign[r]);
      if (slack_sign[r] == 1) basis_[r] = n_ + r;  // slack can start basic
    }
    // rows without a basic slack get artificials
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] >= 0) continue;
      for (auto& row : tab_) row.push_back(Rat(0));
      tab_[r][cols_] = 1;
      basis_[r] = cols_;
      ++cols_;
    }
  }

  // minimize sum of artificials; returns true when it reaches zero
  bool phase1() {
    obj_.assign(cols_, Rat(0));
    obj_rhs_ = 0;
    for (int c = art_start_; c < cols_; ++c) obj_[c] = 1;
    // price out basic artificials
    for (int r = 0; r < m_; ++r)
      if (basis_[r] >= art_start_) {
        for (int c = 0; c < cols_; ++c) obj_[c] -= tab_[r][c];
        obj_rhs_ -= rhs_[r];
      }
    run();
    return obj_rhs_ == 0;
  }

  // Pivots zero-level artificials out of the basis (or drops redundant rows)
  // so later pivots cannot revive them.
  void purge_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < art_start_) continue;
      int target = -1;
      for (int c = 0; c < art_start_; ++c)
        if (tab_[r][c] != 0) {
          target = c;
          break;
        }
      if (target >= 0) pivot(r, target);
      // else: redundant row; keep it, its artificial stays fixed at zero and
      // every coefficient in the row is zero outside artificials
    }
  }

  // maximize c.x (structural part only); returns false when unbounded
  bool phase2(const std::vector<Rat>& objective) {
    // forbid artificials from re-entering
    purge_artificials();
    blocked_from_ = art_start_;
    obj_.assign(cols_, Rat(0));
    obj_rhs_ = 0;
    for (int v = 0; v < n_ && v < static_cast<int>(objective.size()); ++v) obj_[v] = -objective[v];
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < cols_ && obj_[basis_[r]] != 0) {
        Rat f = obj_[basis_[r]];
        for (int c = 0; c < cols_; ++c) obj_[c] -= f * tab_[r][c];
        obj_rhs_ -= f * rhs_[r];
      }
    return run();
  }

  std::vector<Rat> solution() const {
    std::vector<Rat> x(n_, Rat(0));
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < n_) x[basis_[r]] = rhs_[r];
    return x;
  }

  Rat objective_value() const { return obj_rhs_; }

 private:
  bool run() {
    while (true) {
      int enter = -1;  // Bland: smallest index with negative reduced cost
      for (int c = 0; c < cols_; ++c) {
        if (c >= blocked_from_) break;
        if (obj_[c] < 0) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int r = 0; r < m_; ++r) {
        if (tab_[r][enter] <= 0) continue;
        Rat ratio = rhs_[r] / tab_[r][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  void pivot(int r, int c) {
    Rat p = tab_[r][c];
    for (auto& x : tab_[r]) x /= p;
    rhs_[r] /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == r || tab_[i][c] == 0) continue;
      Rat f = tab_[i][c];
      for (int j = 0; j < cols_; ++j) tab_[i][j] -= f * tab_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    if (obj_[c] != 0) {
      Rat f = obj_[c];
      for (int j = 0; j < cols_; ++j) obj_[j] -= f * tab_[r][j];
      obj_rhs_ -= f * rhs_[r];
    }
    basis_[r] = c;
  }

  int n_, m_, cols_, art_start_;
  int blocked_from_ = 1 << 30;
  std::vector<std::vector<Rat>> tab_;
  std::vector<Rat> rhs_, obj_;
  Rat obj_rhs_;
  std::vector<int> basis_;
};

}  // namespace

LpResult lp_feasible(const LpProblem& p) {
  Simplex s(p);
  LpResult res;
  res.feasible = s.phase1();
  if (res.feasible) res.x = s.solution();
  return res;
}

LpOptResult lp_maximize(const LpProblem& p, const std::vector<Rat>& objective) {
  Simplex s(p);
  LpOptResult res;
  res.feasible = s.phase1();
  if (!res.feasible) return res;
  if (!s.phase2(objective)) {
    res.unbounded = true;
    return res;
  }
  res.x = s.solution();
  res.value = s.objective_value();
  return res;
}

}  // namespace uncross
