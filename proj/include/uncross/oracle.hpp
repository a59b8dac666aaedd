#pragma once

#include "uncross/lp.hpp"
#include "uncross/stringgraph.hpp"

namespace uncross {

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& w) : std::runtime_error(w) {}
};

struct OracleBudget {
  int max_walk_length = 0;            // 0: defaults to 2|E|
  long max_walks_per_commodity = 5000;
  long max_enumeration_nodes = 2'000'000;  // integral assignment DFS
  long max_bb_nodes = 100'000;             // fractional branch & bound
  long max_solutions = 1'000'000;
};

// ---- integral uncrossed flow ----

struct IntegralOracleResult {
  bool feasible = false;
  std::vector<Multiflow> solutions;  // canonical order; first only unless collect_all
  bool complete = true;              // enumeration finished within budget
};

// Enumerates integral walk assignments per commodity (values summing to d),
// filters by capacity (non-multiplicative) and by an uncrossed
// parallelization of the support.
IntegralOracleResult brute_integral_uncrossed(const Instance& inst, WalkMode mode,
                                              const OracleBudget& budget = {},
                                              bool collect_all = true);

// ---- fractional uncrossed flow ----

struct FractionalOracleResult {
  bool feasible = false;
  std::optional<Multiflow> flow;
  std::optional<Parallelization> phi;
  bool infeasibility_absolute = false;  // full enumeration + complete search
  long lp_solves = 0;
  long bb_nodes = 0;
};

// Restricted exact LPs over pairwise-uncrossed support families, explored by
// branch-and-bound on crossing support pairs (implicit enumeration of the
// maximal families). Path mode enumerates all simple paths when they fit the
// budget, making infeasibility absolute.
FractionalOracleResult brute_fractional_uncrossed(const Instance& inst,
                                                  const OracleBudget& budget = {},
                                                  WalkMode mode = WalkMode::path);

// ---- disjoint paths ----

struct DisjointPathsResult {
  bool feasible = false;
  std::vector<Walk> paths;  // per demand, when feasible
  bool complete = true;
};

DisjointPathsResult brute_edp(const Instance& inst, const OracleBudget& budget = {});
DisjointPathsResult brute_ndp(const Instance& inst, const OracleBudget& budget = {});

struct MaxDisjointResult {
  int routable = 0;
  std::vector<int> demands;
  bool complete = true;
};

MaxDisjointResult brute_max_edp(const Instance& inst, const OracleBudget& budget = {});
MaxDisjointResult brute_max_ndp(const Instance& inst, const OracleBudget& budget = {});

// ---- exact chromatic number ----

int brute_chromatic(const IntersectionGraph& U, int cap = 14);

// ---- exhaustive parallelization-order search ----

std::optional<Parallelization> brute_parallelization(const EmbeddedGraph& g,
                                                     const WalkFamily& family,
                                                     const SearchCaps& caps = {});

// Enumerates all s-t walks of the given mode within the length budget,
// deterministically ordered (length, then dart sequence).
std::vector<Walk> enumerate_walks(const EmbeddedGraph& g, int s, int t, WalkMode mode,
                                  int max_length, long max_walks);

}  // namespace uncross
