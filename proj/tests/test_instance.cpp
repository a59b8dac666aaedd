#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uncross/instance.hpp"

using namespace uncross;

namespace {

EmbeddedGraph path_graph(int n) {
  std::vector<std::pair<double, double>> pos;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) pos.push_back({i, 0});
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return embed_from_coordinates(n, pos, edges);
}

Walk darts_along(const EmbeddedGraph& g, std::initializer_list<int> nodes) {
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

TEST_CASE("edge_flow in both accountings") {
  // star: s - a - t plus a - b (walk may double back over a-b)
  EmbeddedGraph g =
      embed_from_coordinates(4, {{0, 0}, {1, 0}, {2, 0}, {1, 1}}, {{0, 1}, {1, 2}, {1, 3}});
  Instance inst;
  inst.graph = g;
  inst.capacities = {1, 1, 2};
  inst.demands = {{0, 0, 2, 1}};

  Multiflow f;
  f.mode = WalkMode::walk;
  f.flows.resize(1);
  // s - a - b - a - t uses edge (a,b) twice
  f.flows[0].push_back({darts_along(g, {0, 1, 3, 1, 2}), Rat(1, 2)});

  CHECK(edge_flow(f, 2, false) == Rat(1, 2));
  CHECK(edge_flow(f, 2, true) == Rat(1));
  CHECK(edge_flow(f, 0, false) == Rat(1, 2));

  Multiflow two;
  two.mode = WalkMode::path;
  two.flows.resize(1);
  two.flows[0].push_back({darts_along(g, {0, 1, 2}), Rat(1)});
  CHECK(edge_flow(two, 1, false) == Rat(1));
  CHECK(edge_flow(two, 1, true) == Rat(1));
}

TEST_CASE("verify_feasible reports exact slack and routed amounts") {
  EmbeddedGraph g = path_graph(3);
  Instance inst;
  inst.graph = g;
  inst.capacities = {1, 1};
  inst.demands = {{0, 0, 2, 1}};

  Multiflow f;
  f.flows.resize(1);
  f.flows[0].push_back({darts_along(g, {0, 1, 2}), Rat(1)});
  auto rep = verify_feasible(inst, f, false);
  CHECK(rep.feasible());
  CHECK(rep.routed[0] == Rat(1));
  CHECK(rep.slack[0] == Rat(0));

  // zero-capacity edge with unit flow: slack -1
  inst.capacities = {0, 1};
  auto rep2 = verify_feasible(inst, f, false);
  CHECK_FALSE(rep2.capacities_ok);
  CHECK(rep2.slack[0] == Rat(-1));

  // empty flow with zero demands is feasible
  Instance inst3 = inst;
  inst3.demands[0].d = 0;
  Multiflow empty;
  empty.flows.resize(1);
  CHECK(verify_feasible(inst3, empty, false).feasible());

  // m-feasibility implies feasibility
  inst.capacities = {1, 1};
  auto repm = verify_feasible(inst, f, true);
  if (repm.feasible()) CHECK(verify_feasible(inst, f, false).feasible());
}

TEST_CASE("flow_value is weighted and linear") {
  EmbeddedGraph g = path_graph(3);
  Multiflow f;
  f.flows.resize(2);
  f.flows[0].push_back({darts_along(g, {0, 1, 2}), Rat(1, 3)});
  f.flows[0].push_back({darts_along(g, {0, 1}), Rat(2, 3)});
  CHECK(flow_value(f) == Rat(1));
  CHECK(flow_value(f, {Rat(2), Rat(1)}) == Rat(2));

  Multiflow three;
  three.flows.resize(3);
  for (int i = 0; i < 3; ++i) three.flows[i].push_back({darts_along(g, {0, 1}), Rat(1)});
  CHECK(flow_value(three) == Rat(3));
  CHECK(flow_value(Multiflow{}) == Rat(0));
}

TEST_CASE("shortcircuit removes closed sub-walks deterministically") {
  // s - a - b - a - t  ->  s - a - t
  EmbeddedGraph g = embed_from_coordinates(4, {{0, 0}, {1, 0}, {1, 1}, {2, 0}},
                                           {{0, 1}, {1, 2}, {1, 3}});
  Walk w = darts_along(g, {0, 1, 2, 1, 3});
  Walk sc = shortcircuit(g, w, WalkMode::path);
  CHECK(sc == darts_along(g, {0, 1, 3}));

  // a simple path is a fixpoint
  Walk p = darts_along(g, {0, 1, 3});
  CHECK(shortcircuit(g, p, WalkMode::path) == p);
  CHECK(shortcircuit(g, p, WalkMode::trail) == p);
  CHECK(shortcircuit(g, p, WalkMode::walk) == p);

  // trail target keeps node repeats but removes edge repeats
  Walk back_forth = darts_along(g, {0, 1, 2, 1, 2, 1, 3});
  Walk tr = shortcircuit(g, back_forth, WalkMode::trail);
  std::set<int> seen;
  for (DartId d : tr.darts) CHECK(seen.insert(dart_edge(d)).second);
  CHECK(g.dart_tail(tr.darts.front()) == 0);
  CHECK(g.dart_head(tr.darts.back()) == 3);
}

TEST_CASE("shortcircuit never increases edge flow") {
  EmbeddedGraph g = embed_from_coordinates(4, {{0, 0}, {1, 0}, {1, 1}, {2, 0}},
                                           {{0, 1}, {1, 2}, {1, 3}});
  Walk w = darts_along(g, {0, 1, 2, 1, 3});
  Walk sc = shortcircuit(g, w, WalkMode::path);
  for (int e = 0; e < g.num_edges(); ++e)
    CHECK(walk_edge_multiplicity(sc, e) <= walk_edge_multiplicity(w, e));
}

TEST_CASE("canonicalize reorients and merges") {
  EmbeddedGraph g = path_graph(3);
  Instance inst;
  inst.graph = g;
  inst.capacities = {2, 2};
  inst.demands = {{0, 0, 2, 1}};
  Multiflow f;
  f.flows.resize(1);
  f.flows[0].push_back({reverse_walk(darts_along(g, {0, 1, 2})), Rat(1, 2)});
  f.flows[0].push_back({darts_along(g, {0, 1, 2}), Rat(1, 2)});
  f.flows[0].push_back({darts_along(g, {0, 1, 2}), Rat(0)});
  Multiflow c = canonicalize_flow(inst, f);
  REQUIRE(c.flows[0].size() == 1);
  CHECK(c.flows[0][0].value == Rat(1));
  CHECK(c.flows[0][0].walk == darts_along(g, {0, 1, 2}));
}
