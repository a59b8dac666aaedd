#include "uncross/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace uncross {

std::vector<Walk> enumerate_walks(const EmbeddedGraph& g, int s, int t, WalkMode mode,
                                  int max_length, long max_walks) {
  std::vector<Walk> out;
  std::vector<DartId> stack;
  std::vector<int> node_count(g.num_nodes(), 0);
  std::vector<int> edge_count(g.num_edges(), 0);
  long nodes_explored = 0;

  // darts at each node in a stable order
  std::function<void(int)> dfs = [&](int v) {
    if (++nodes_explored > 50'000'000L) throw BudgetExceeded("walk enumeration");
    if (v == t && !stack.empty()) {
      out.push_back(Walk{stack});
      if (static_cast<long>(out.size()) > max_walks) throw BudgetExceeded("walk count");
    }
    if (static_cast<int>(stack.size()) >= max_length) return;
    for (DartId d : g.rotation[v]) {
      int e = dart_edge(d);
      int w = g.dart_head(d);
      if (mode == WalkMode::path && node_count[w] > 0) continue;
      if (mode != WalkMode::walk && edge_count[e] > 0) continue;
      stack.push_back(d);
      ++edge_count[e];
      ++node_count[w];
      dfs(w);
      --node_count[w];
      --edge_count[e];
      stack.pop_back();
    }
  };
  node_count[s] = 1;
  dfs(s);
  std::sort(out.begin(), out.end(), [](const Walk& a, const Walk& b) {
    return a.darts.size() != b.darts.size() ? a.darts.size() < b.darts.size() : a.darts < b.darts;
  });
  return out;
}

namespace {

int default_length(const EmbeddedGraph& g, const OracleBudget& b) {
  return b.max_walk_length > 0 ? b.max_walk_length : 2 * g.num_edges();
}

// integral value distributions per commodity: multisets of (walk, units)
struct Assignment {
  std::vector<std::pair<int, Int>> entries;  // (walk index, units)
};

void enumerate_assignments(const std::vector<Walk>& walks, const Int& d, int from,
                           Assignment& cur, const Int& remaining,
                           std::vector<Assignment>& out, long cap) {
  if (remaining == 0) {
    out.push_back(cur);
    if (static_cast<long>(out.size()) > cap) throw BudgetExceeded("assignment count");
    return;
  }
  for (int w = from; w < static_cast<int>(walks.size()); ++w) {
    for (Int units = remaining; units >= 1; --units) {
      cur.entries.push_back({w, units});
      enumerate_assignments(walks, d, w + 1, cur, remaining - units, out, cap);
      cur.entries.pop_back();
    }
  }
}

}  // namespace

IntegralOracleResult brute_integral_uncrossed(const Instance& inst, WalkMode mode,
                                              const OracleBudget& budget, bool collect_all) {
  const EmbeddedGraph& g = inst.graph;
  IntegralOracleResult res;
  int maxlen = default_length(g, budget);

  std::vector<std::vector<Walk>> walks(inst.demands.size());
  std::vector<std::vector<Assignment>> choices(inst.demands.size());
  for (size_t c = 0; c < inst.demands.size(); ++c) {
    const Demand& h = inst.demands[c];
    if (h.d == 0) {
      choices[c].push_back({});
      continue;
    }
    try {
      walks[c] = enumerate_walks(g, h.s, h.t, mode, maxlen, budget.max_walks_per_commodity);
    } catch (const BudgetExceeded&) {
      res.complete = false;
      throw;
    }
    Assignment cur;
    enumerate_assignments(walks[c], h.d, 0, cur, h.d, choices[c], budget.max_enumeration_nodes);
  }

  std::vector<Rat> usage;  // per edge or node
  bool node_mode = inst.capacity_mode == CapacityMode::node;
  usage.assign(node_mode ? g.num_nodes() : g.num_edges(), Rat(0));

  std::vector<const Assignment*> picked(inst.demands.size(), nullptr);
  long nodes = 0;

  std::function<bool(size_t)> dfs = [&](size_t c) -> bool {
    if (++nodes > budget.max_enumeration_nodes) {
      res.complete = false;
      throw BudgetExceeded("integral enumeration nodes");
    }
    if (c == inst.demands.size()) {
      // capacity already respected; check uncrossedness of the support
      WalkFamily family;
      for (size_t i = 0; i < picked.size(); ++i)
        for (auto& [w, units] : picked[i]->entries)
          family.push_back({walks[i][w], static_cast<int>(i)});
      auto search = find_uncrossed_parallelization(g, family, false);
      if (!search.phi) return false;
      Multiflow sol;
      sol.mode = mode;
      sol.flows.resize(inst.demands.size());
      for (size_t i = 0; i < picked.size(); ++i)
        for (auto& [w, units] : picked[i]->entries)
          sol.flows[i].push_back({walks[i][w], Rat(units)});
      res.solutions.push_back(sol);
      res.feasible = true;
      if (static_cast<long>(res.solutions.size()) > budget.max_solutions)
        throw BudgetExceeded("solution count");
      return !collect_all;
    }
    for (const auto& a : choices[c]) {
      // apply and prune on capacities
      bool ok = true;
      std::vector<std::pair<int, Rat>> applied;
      for (auto& [w, units] : a.entries) {
        if (node_mode) {
          std::set<int> seen;
          for (int v : walk_nodes(g, walks[c][w]))
            if (seen.insert(v).second) applied.push_back({v, Rat(units)});
        } else {
          std::set<int> seen;
          for (DartId d : walks[c][w].darts)
            if (seen.insert(dart_edge(d)).second) applied.push_back({dart_edge(d), Rat(units)});
        }
      }
      for (auto& [x, amt] : applied) {
        usage[x] += amt;
        if (usage[x] > Rat(inst.capacities[x])) ok = false;
      }
      if (ok) {
        picked[c] = &a;
        if (dfs(c + 1)) return true;
      }
      for (auto& [x, amt] : applied) usage[x] -= amt;
    }
    return false;
  };
  dfs(0);
  return res;
}

// ---------------- fractional oracle ----------------

namespace {

struct PathPool {
  std::vector<Walk> walks;
  std::vector<int> commodity;
  std::vector<std::vector<int>> by_commodity;
};

struct CrossCache {
  const EmbeddedGraph* g;
  std::map<std::pair<int, int>, bool> memo;
  const PathPool* pool;
  bool crosses(int i, int j) {
    if (i > j) std::swap(i, j);
    auto key = std::make_pair(i, j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool c = pair_crosses(*g, pool->walks[i], pool->walks[j]);
    memo[key] = c;
    return c;
  }
};

LpResult solve_restricted(const Instance& inst, const PathPool& pool,
                          const std::vector<bool>& excluded, long& lp_solves) {
  ++lp_solves;
  LpProblem p;
  std::vector<int> var_of(pool.walks.size(), -1);
  for (size_t i = 0; i < pool.walks.size(); ++i)
    if (!excluded[i]) var_of[i] = p.num_vars++;

  for (size_t c = 0; c < inst.demands.size(); ++c) {
    if (inst.demands[c].d == 0) continue;
    LpRow row;
    row.ge = true;
    row.rhs = Rat(inst.demands[c].d);
    for (int i : pool.by_commodity[c])
      if (var_of[i] >= 0) row.terms.push_back({var_of[i], Rat(1)});
    if (row.terms.empty()) return {false, {}};
    p.rows.push_back(row);
  }
  // capacity rows where they can bind
  std::vector<std::vector<int>> users(inst.graph.num_edges());
  for (size_t i = 0; i < pool.walks.size(); ++i) {
    if (var_of[i] < 0) continue;
    std::set<int> seen;
    for (DartId d : pool.walks[i].darts)
      if (seen.insert(dart_edge(d)).second) users[dart_edge(d)].push_back(static_cast<int>(i));
  }
  for (int e = 0; e < inst.graph.num_edges(); ++e) {
    if (users[e].empty()) continue;
    Int max_need = 0;
    if (users[e].size() == 1) max_need = inst.demands[pool.commodity[users[e][0]]].d;
    if (users[e].size() == 1 && max_need <= inst.capacities[e]) continue;
    LpRow row;
    row.ge = false;
    row.rhs = Rat(inst.capacities[e]);
    for (int i : users[e]) row.terms.push_back({var_of[i], Rat(1)});
    p.rows.push_back(row);
  }
  LpResult r = lp_feasible(p);
  if (r.feasible) {
    // re-map to pool indexing
    std::vector<Rat> x(pool.walks.size(), Rat(0));
    for (size_t i = 0; i < pool.walks.size(); ++i)
      if (var_of[i] >= 0) x[i] = r.x[var_of[i]];
    r.x = x;
  }
  return r;
}

Multiflow flow_from_lp(const Instance& inst, const PathPool& pool, const std::vector<Rat>& x,
                       WalkMode mode) {
  Multiflow f;
  f.mode = mode;
  f.flows.resize(inst.demands.size());
  for (size_t i = 0; i < pool.walks.size(); ++i)
    if (x[i] > 0) f.flows[pool.commodity[i]].push_back({pool.walks[i], x[i]});
  return f;
}

}  // namespace

FractionalOracleResult brute_fractional_uncrossed(const Instance& inst,
                                                  const OracleBudget& budget, WalkMode mode) {
  const EmbeddedGraph& g = inst.graph;
  FractionalOracleResult res;
  if (inst.capacity_mode != CapacityMode::edge)
    throw std::invalid_argument("fractional oracle expects edge capacities");

  PathPool pool;
  pool.by_commodity.resize(inst.demands.size());
  bool enumeration_complete = true;
  int maxlen = default_length(g, budget);
  for (size_t c = 0; c < inst.demands.size(); ++c) {
    if (inst.demands[c].d == 0) continue;
    std::vector<Walk> ws;
    try {
      ws = enumerate_walks(g, inst.demands[c].s, inst.demands[c].t, mode, maxlen,
                           budget.max_walks_per_commodity);
    } catch (const BudgetExceeded&) {
      // re-run with a shrinking length cap until it fits
      int len = maxlen;
      bool got = false;
      while (len > 1 && !got) {
        len = len * 3 / 4;
        try {
          ws = enumerate_walks(g, inst.demands[c].s, inst.demands[c].t, mode, len,
                               budget.max_walks_per_commodity);
          got = true;
        } catch (const BudgetExceeded&) {
        }
      }
      enumeration_complete = false;
      if (!got) throw BudgetExceeded("path enumeration for a commodity");
    }
    for (auto& w : ws) {
      pool.by_commodity[c].push_back(static_cast<int>(pool.walks.size()));
      pool.walks.push_back(w);
      pool.commodity.push_back(static_cast<int>(c));
    }
  }

  CrossCache cache{&g, {}, &pool};
  auto support_crossing_pair = [&](const std::vector<Rat>& x) -> std::optional<std::pair<int, int>> {
    std::vector<int> support;
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] > 0) support.push_back(static_cast<int>(i));
    for (size_t a = 0; a < support.size(); ++a)
      for (size_t b = a + 1; b < support.size(); ++b)
        if (cache.crosses(support[a], support[b])) return std::make_pair(support[a], support[b]);
    return std::nullopt;
  };

  auto finish_feasible = [&](const std::vector<Rat>& x) {
    Multiflow f = flow_from_lp(inst, pool, x, mode);
    WalkFamily family = family_of_flow(f);
    auto search = find_uncrossed_parallelization(g, family, false);
    if (!search.phi) return false;
    res.feasible = true;
    res.flow = canonicalize_flow(inst, f);
    res.phi = search.phi;
    return true;
  };

  // greedy pre-passes: maximal pairwise-uncrossed families, shortest first
  {
    std::vector<int> order(pool.walks.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::vector<bool> excluded(pool.walks.size(), false);
    std::vector<int> kept;
    for (int i : order) {
      bool ok = true;
      for (int j : kept)
        if (cache.crosses(i, j)) {
          ok = false;
          break;
        }
      if (ok)
        kept.push_back(i);
      else
        excluded[i] = true;
    }
    LpResult lr = solve_restricted(inst, pool, excluded, res.lp_solves);
    if (lr.feasible && finish_feasible(lr.x)) return res;
  }

  // branch and bound on crossing support pairs
  std::vector<bool> excluded(pool.walks.size(), false);
  bool bb_complete = true;
  std::function<bool()> bb = [&]() -> bool {
    if (++res.bb_nodes > budget.max_bb_nodes) {
      bb_complete = false;
      return false;
    }
    LpResult lr = solve_restricted(inst, pool, excluded, res.lp_solves);
    if (!lr.feasible) return false;
    auto pair = support_crossing_pair(lr.x);
    if (!pair) {
      if (finish_feasible(lr.x)) return true;
      // pairwise-uncrossed but no family parallelization (walk modes only):
      // exclude the family's certificate pair when available
      WalkFamily family = family_of_flow(flow_from_lp(inst, pool, lr.x, mode));
      auto search = find_uncrossed_parallelization(g, family, false);
      if (!search.pair) return false;
      // map family indices back to pool indices
      std::vector<int> support;
      for (size_t i = 0; i < lr.x.size(); ++i)
        if (lr.x[i] > 0) support.push_back(static_cast<int>(i));
      pair = std::make_pair(support[search.pair->first], support[search.pair->second]);
    }
    for (int side : {pair->first, pair->second}) {
      excluded[side] = true;
      if (bb()) {
        excluded[side] = false;
        return true;
      }
      excluded[side] = false;
    }
    return false;
  };
  if (bb()) return res;

  res.feasible = false;
  res.infeasibility_absolute = enumeration_complete && bb_complete && mode == WalkMode::path;
  return res;
}

// ---------------- disjoint paths ----------------

namespace {

DisjointPathsResult disjoint_paths(const Instance& inst, bool node_disjoint,
                                   const OracleBudget& budget) {
  const EmbeddedGraph& g = inst.graph;
  DisjointPathsResult res;
  std::vector<int> order;
  for (size_t c = 0; c < inst.demands.size(); ++c) {
    if (inst.demands[c].d > 1) throw std::invalid_argument("disjoint-path oracle expects d <= 1");
    if (inst.demands[c].d == 1) order.push_back(static_cast<int>(c));
  }
  std::vector<bool> edge_used(g.num_edges(), false);
  std::vector<bool> node_used(g.num_nodes(), false);
  std::vector<Walk> chosen(inst.demands.size());
  long nodes = 0;

  std::function<bool(size_t)> route = [&](size_t k) -> bool {
    if (k == order.size()) return true;
    int c = order[k];
    int s = inst.demands[c].s, t = inst.demands[c].t;
    if (node_disjoint && (node_used[s] || node_used[t])) return false;
    std::vector<DartId> stack;
    std::vector<bool> on_path(g.num_nodes(), false);
    on_path[s] = true;
    std::function<bool(int)> dfs = [&](int v) -> bool {
      if (++nodes > budget.max_enumeration_nodes) {
        res.complete = false;
        throw BudgetExceeded("disjoint path search");
      }
      for (DartId d : g.rotation[v]) {
        if (edge_used[dart_edge(d)]) continue;
        int w = g.dart_head(d);
        if (w == t) {
          stack.push_back(d);
          Walk path{stack};
          for (DartId pd : stack) edge_used[dart_edge(pd)] = true;
          std::vector<int> newly;
          if (node_disjoint)
            for (int u : walk_nodes(g, path))
              if (!node_used[u]) {
                node_used[u] = true;
                newly.push_back(u);
              }
          chosen[c] = path;
          if (route(k + 1)) return true;
          for (DartId pd : stack) edge_used[dart_edge(pd)] = false;
          for (int u : newly) node_used[u] = false;
          stack.pop_back();
          continue;
        }
        if (on_path[w]) continue;
        if (node_disjoint && node_used[w]) continue;
        stack.push_back(d);
        on_path[w] = true;
        if (dfs(w)) return true;
        on_path[w] = false;
        stack.pop_back();
      }
      return false;
    };
    return dfs(s);
  };
  res.feasible = route(0);
  if (res.feasible)
    for (size_t c = 0; c < inst.demands.size(); ++c)
      if (inst.demands[c].d == 1) res.paths.push_back(chosen[c]);
  return res;
}

}  // namespace

DisjointPathsResult brute_edp(const Instance& inst, const OracleBudget& budget) {
  return disjoint_paths(inst, false, budget);
}
DisjointPathsResult brute_ndp(const Instance& inst, const OracleBudget& budget) {
  return disjoint_paths(inst, true, budget);
}

namespace {

MaxDisjointResult max_disjoint(const Instance& inst, bool node_disjoint,
                               const OracleBudget& budget) {
  MaxDisjointResult best;
  std::vector<int> all;
  for (size_t c = 0; c < inst.demands.size(); ++c)
    if (inst.demands[c].d == 1) all.push_back(static_cast<int>(c));

  // try subsets by decreasing size (small instances only)
  int n = static_cast<int>(all.size());
  if (n > 16) throw BudgetExceeded("too many demands for max disjoint search");
  std::vector<std::vector<int>> by_size(n + 1);
  for (int mask = 0; mask < (1 << n); ++mask) by_size[__builtin_popcount(mask)].push_back(mask);
  for (int size = n; size >= 1; --size) {
    for (int mask : by_size[size]) {
      Instance sub = inst;
      for (int i = 0; i < n; ++i)
        if (!(mask & (1 << i))) sub.demands[all[i]].d = 0;
      DisjointPathsResult r = disjoint_paths(sub, node_disjoint, budget);
      best.complete = best.complete && r.complete;
      if (r.feasible) {
        best.routable = size;
        for (int i = 0; i < n; ++i)
          if (mask & (1 << i)) best.demands.push_back(all[i]);
        return best;
      }
    }
  }
  return best;
}

}  // namespace

MaxDisjointResult brute_max_edp(const Instance& inst, const OracleBudget& budget) {
  return max_disjoint(inst, false, budget);
}
MaxDisjointResult brute_max_ndp(const Instance& inst, const OracleBudget& budget) {
  return max_disjoint(inst, true, budget);
}

int brute_chromatic(const IntersectionGraph& U, int cap) {
  if (U.n > cap) throw BudgetExceeded("chromatic cap");
  if (U.n == 0) return 0;
  // greedy upper bound
  Colouring greedy = greedy_min_degree_colouring(U);
  int best = greedy.count;

  std::vector<int> colour(U.n, -1);
  // order vertices by degree descending for earlier pruning
  std::vector<int> order(U.n);
  for (int i = 0; i < U.n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return U.degree(a) > U.degree(b); });

  std::function<bool(int, int)> solve = [&](int idx, int limit) -> bool {
    if (idx == U.n) return true;
    int v = order[idx];
    std::set<int> used;
    for (int u : U.adj[v])
      if (colour[u] >= 0) used.insert(colour[u]);
    int max_new = 0;
    for (int i = 0; i < idx; ++i) max_new = std::max(max_new, colour[order[i]] + 1);
    for (int c = 0; c < std::min(limit, max_new + 1); ++c) {
      if (used.count(c)) continue;
      colour[v] = c;
      if (solve(idx + 1, limit)) return true;
      colour[v] = -1;
    }
    return false;
  };
  while (best > 1) {
    std::fill(colour.begin(), colour.end(), -1);
    if (solve(0, best - 1))
      --best;
    else
      break;
  }
  return best;
}

std::optional<Parallelization> brute_parallelization(const EmbeddedGraph& g,
                                                     const WalkFamily& family,
                                                     const SearchCaps& caps) {
  try {
    return exhaustive_parallelization(g, family, false, caps);
  } catch (const std::runtime_error& e) {
    throw BudgetExceeded(e.what());
  }
}

}  // namespace uncross
