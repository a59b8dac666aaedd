#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uncross/lp.hpp"
#include "uncross/oracle.hpp"

using namespace uncross;

namespace {

Walk walk_through(const EmbeddedGraph& g, std::initializer_list<int> nodes) {
  Walk w;
  auto it = nodes.begin();
  int cur = *it++;
  for (; it != nodes.end(); ++it) {
    for (DartId d : g.rotation[cur])
      if (g.dart_head(d) == *it) {
        w.darts.push_back(d);
        break;
      }
    cur = *it;
  }
  return w;
}

}  // namespace

TEST_CASE("exact LP feasibility and optimization") {
  // x + y <= 1, x >= 1/3, maximize y
  LpProblem p;
  p.num_vars = 2;
  p.rows.push_back({{{0, Rat(1)}, {1, Rat(1)}}, Rat(1), false});
  p.rows.push_back({{{0, Rat(1)}}, Rat(1, 3), true});
  auto fr = lp_feasible(p);
  REQUIRE(fr.feasible);
  CHECK(fr.x[0] >= Rat(1, 3));
  CHECK(fr.x[0] + fr.x[1] <= Rat(1));

  auto opt = lp_maximize(p, {Rat(0), Rat(1)});
  REQUIRE(opt.feasible);
  CHECK(opt.value == Rat(2, 3));

  // infeasible: x >= 2 with x <= 1
  LpProblem q;
  q.num_vars = 1;
  q.rows.push_back({{{0, Rat(1)}}, Rat(1), false});
  q.rows.push_back({{{0, Rat(1)}}, Rat(2), true});
  CHECK_FALSE(lp_feasible(q).feasible);

  // unbounded objective
  LpProblem r;
  r.num_vars = 1;
  r.rows.push_back({{{0, Rat(1)}}, Rat(0), true});
  auto ub = lp_maximize(r, {Rat(1)});
  CHECK(ub.unbounded);
}

TEST_CASE("walk enumeration by mode") {
  // square with a diagonal
  EmbeddedGraph g = embed_from_coordinates(
      4, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  auto paths = enumerate_walks(g, 0, 2, WalkMode::path, 2 * g.num_edges(), 1000);
  CHECK(paths.size() == 3);  // 0-2, 0-1-2, 0-3-2
  auto trails = enumerate_walks(g, 0, 2, WalkMode::trail, 2 * g.num_edges(), 1000);
  CHECK(trails.size() > paths.size());  // e.g. 0-1-2-0 ... no: trails from 0 to 2
  for (const auto& t : trails) {
    std::set<int> seen;
    for (DartId d : t.darts) CHECK(seen.insert(dart_edge(d)).second);
  }
  auto walks = enumerate_walks(g, 0, 2, WalkMode::walk, 4, 100000);
  CHECK(walks.size() >= trails.size());
}

TEST_CASE("single-commodity single-edge integral oracle") {
  EmbeddedGraph g = embed_from_coordinates(2, {{0, 0}, {1, 0}}, {{0, 1}});
  Instance inst;
  inst.graph = g;
  inst.capacities = {1};
  inst.demands = {{0, 0, 1, 1}};
  auto res = brute_integral_uncrossed(inst, WalkMode::path);
  CHECK(res.feasible);
  CHECK(res.solutions.size() == 1);
}

TEST_CASE("fractional oracle on a crossing-forced instance") {
  // two demands forced through a single degree-4 node, alternating: no
  // uncrossed flow, though a plain flow exists
  EmbeddedGraph g = embed_from_coordinates(
      5, {{-1, 0}, {1, 0}, {0, -1}, {0, 1}, {0, 0}},
      {{0, 4}, {4, 1}, {2, 4}, {4, 3}});
  Instance inst;
  inst.graph = g;
  inst.capacities.assign(g.num_edges(), 1);
  inst.demands = {{0, 0, 1, 1}, {1, 2, 3, 1}};

  auto res = brute_fractional_uncrossed(inst);
  CHECK_FALSE(res.feasible);
  CHECK(res.infeasibility_absolute);

  // relaxing one demand to zero makes it feasible
  Instance relaxed = inst;
  relaxed.demands[1].d = 0;
  auto res2 = brute_fractional_uncrossed(relaxed);
  CHECK(res2.feasible);
}

TEST_CASE("edp/ndp brute force") {
  // path graph: two demands over the same edge: EDP infeasible
  EmbeddedGraph g = embed_from_coordinates(3, {{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 2}});
  Instance inst;
  inst.graph = g;
  inst.capacities = {1, 1};
  inst.demands = {{0, 0, 2, 1}, {1, 0, 2, 1}};
  CHECK_FALSE(brute_edp(inst).feasible);
  CHECK_FALSE(brute_ndp(inst).feasible);
  CHECK(brute_max_edp(inst).routable == 1);

  // single demand: feasible iff connected
  Instance single = inst;
  single.demands = {{0, 0, 2, 1}};
  CHECK(brute_edp(single).feasible);
  CHECK(brute_ndp(single).feasible);

  // crossing demands on a 4-cycle: infeasible both ways (every path pair
  // shares an edge); adding the 0-2 diagonal separates EDP from NDP
  EmbeddedGraph c4 = embed_from_coordinates(
      4, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  Instance cross;
  cross.graph = c4;
  cross.capacities.assign(4, 1);
  cross.demands = {{0, 0, 2, 1}, {1, 1, 3, 1}};
  CHECK_FALSE(brute_edp(cross).feasible);
  CHECK_FALSE(brute_ndp(cross).feasible);

  EmbeddedGraph diag = embed_from_coordinates(
      4, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  Instance cross2;
  cross2.graph = diag;
  cross2.capacities.assign(5, 1);
  cross2.demands = {{0, 0, 2, 1}, {1, 1, 3, 1}};
  CHECK(brute_edp(cross2).feasible);
  CHECK_FALSE(brute_ndp(cross2).feasible);
}

TEST_CASE("oracle results survive relabeling and reflection") {
  // theta graph demand, fractional feasibility invariant under reflection
  EmbeddedGraph g = embed_from_coordinates(
      4, {{0, 0}, {2, 0}, {1, 1}, {1, -1}}, {{0, 2}, {2, 1}, {0, 3}, {3, 1}});
  Instance inst;
  inst.graph = g;
  inst.capacities.assign(g.num_edges(), 1);
  inst.demands = {{0, 0, 1, 2}};
  auto res = brute_fractional_uncrossed(inst);
  CHECK(res.feasible);

  Instance mirrored = inst;
  for (auto& rot : mirrored.graph.rotation) std::reverse(rot.begin(), rot.end());
  auto res2 = brute_fractional_uncrossed(mirrored);
  CHECK(res2.feasible == res.feasible);
}

TEST_CASE("brute_parallelization agrees with the engine on small families") {
  EmbeddedGraph g = embed_from_coordinates(
      8, {{-2, 0}, {1, -2}, {-3, -1}, {-3, 0}, {2, -2}, {2, -1}, {-1, -1}, {0, -1}},
      {{0, 6}, {6, 7}, {7, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}});
  Walk P = walk_through(g, {2, 0, 6, 7, 1, 5});
  Walk Q = walk_through(g, {3, 0, 6, 7, 1, 4});
  WalkFamily crossing{{P, 0}, {Q, 1}};
  CHECK_FALSE(brute_parallelization(g, crossing).has_value());
  CHECK_FALSE(find_uncrossed_parallelization(g, crossing).phi.has_value());

  Walk P2 = walk_through(g, {3, 0, 6, 7, 1, 5});
  Walk Q2 = walk_through(g, {2, 0, 6, 7, 1, 4});
  WalkFamily fine{{P2, 0}, {Q2, 1}};
  CHECK(brute_parallelization(g, fine).has_value());
  CHECK(find_uncrossed_parallelization(g, fine).phi.has_value());
}
