#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uncross/oracle.hpp"
#include "uncross/stringgraph.hpp"

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

// k nested hairpins through one hub: the node-intersection graph is K_k
Realization star_realization(int k) {
  Realization r;
  std::vector<std::pair<double, double>> pos{{0, 0}};
  std::vector<std::pair<int, int>> edges;
  const double pi = 3.14159265358979;
  for (int i = 0; i < k; ++i) {
    double a = pi * (0.9 - 0.07 * i);  // left arm, upper half
    double b = pi * (0.1 + 0.07 * i);  // right arm, upper half
    pos.push_back({std::cos(a), std::sin(a)});
    pos.push_back({std::cos(b), std::sin(b)});
    edges.push_back({0, 2 * i + 1});
    edges.push_back({0, 2 * i + 2});
  }
  r.graph = embed_from_coordinates(1 + 2 * k, pos, edges);
  for (int i = 0; i < k; ++i)
    r.walks.push_back({walk_through(r.graph, {2 * i + 1, 0, 2 * i + 2}), -1});
  auto search = find_uncrossed_parallelization(r.graph, r.walks, false);
  REQUIRE(search.phi.has_value());
  r.phi = *search.phi;
  r.mode = IntersectionMode::node;
  return r;
}

// disjoint horizontal segments: edgeless intersection graph
Realization disjoint_realization(int k) {
  Realization r;
  std::vector<std::pair<double, double>> pos;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) {
    pos.push_back({0, static_cast<double>(i)});
    pos.push_back({1, static_cast<double>(i)});
    edges.push_back({2 * i, 2 * i + 1});
  }
  r.graph = embed_from_coordinates(2 * k, pos, edges);
  for (int i = 0; i < k; ++i) r.walks.push_back({walk_through(r.graph, {2 * i, 2 * i + 1}), -1});
  r.phi = identity_parallelization(r.graph, r.walks);
  r.mode = IntersectionMode::node;
  return r;
}

}  // namespace

TEST_CASE("intersection graphs: disjoint walks are edgeless, k spokes give K_k") {
  Realization d = disjoint_realization(4);
  IntersectionGraph ud = build_intersection_graph(d);
  CHECK(ud.num_edges() == 0);
  CHECK(ud.max_load == 1);
  Colouring cd = greedy_min_degree_colouring(ud);
  CHECK(cd.count == 1);

  Realization s = star_realization(5);
  IntersectionGraph us = build_intersection_graph(s);
  CHECK(us.num_edges() == 10);
  CHECK(us.max_load == 5);
  Colouring cs = greedy_min_degree_colouring(us);
  CHECK(cs.count == 5);
  CHECK(cs.count <= foxpach_colour_bound(us.max_load));
  CHECK(foxpach_edge_bound_ok(us, us.max_load, us.n));
}

TEST_CASE("load and m-load count distinct walks vs occurrences") {
  // one walk passing a node twice (trail through a 4-cycle corner)
  EmbeddedGraph g = embed_from_coordinates(
      5, {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 0}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 4}});
  Realization r;
  r.graph = g;
  r.walks.push_back({walk_through(g, {0, 1, 2, 3, 0}), -1});
  // trail 0-1-2-3-0: node 0 occurs twice
  auto search = find_uncrossed_parallelization(g, r.walks, false);
  REQUIRE(search.phi.has_value());
  r.phi = *search.phi;
  r.mode = IntersectionMode::node;
  IntersectionGraph u = build_intersection_graph(r);
  CHECK(u.load[0] == 1);
  CHECK(u.m_load[0] == 2);
}

TEST_CASE("brute chromatic: K5, edgeless, C5") {
  Realization s = star_realization(5);
  IntersectionGraph k5 = build_intersection_graph(s);
  CHECK(brute_chromatic(k5) == 5);

  Realization d = disjoint_realization(3);
  IntersectionGraph e3 = build_intersection_graph(d);
  CHECK(brute_chromatic(e3) == 1);

  IntersectionGraph c5;
  c5.n = 5;
  c5.adj.assign(5, {});
  for (int i = 0; i < 5; ++i) {
    c5.adj[i].insert((i + 1) % 5);
    c5.adj[(i + 1) % 5].insert(i);
  }
  CHECK(brute_chromatic(c5) == 3);
}

TEST_CASE("random planar decomposition covers and its pieces are planar") {
  Realization s = star_realization(4);
  PlanarDecomposition dec = random_planar_decomposition(s, 4, 7);
  CHECK(dec.covered);
  CHECK(dec.rounds_to_cover >= 1);
  for (const auto& piece : dec.pieces) {
    EmbeddedGraph pg = piece_embedding(s, piece);
    CHECK(check_planarity(pg).planar);
  }
  Colouring c = colour_via_decomposition(s, 4, 7);
  CHECK(c.count >= 4);  // clique lower bound
  CHECK(c.count <= 6 * dec.rounds_to_cover + 1);
}

TEST_CASE("k=1 needs no decomposition rounds") {
  Realization d = disjoint_realization(3);
  PlanarDecomposition dec = random_planar_decomposition(d, 1, 3);
  CHECK(dec.covered);
  CHECK(dec.rounds == 0);
}

TEST_CASE("integer decomposition: identity and exactness") {
  // two walks sharing a node without crossing, values 1/2, k=2 -> K_2
  EmbeddedGraph g = embed_from_coordinates(
      5, {{0, 0}, {1, 0}, {2, 0}, {0.5, 1}, {1.5, 1}}, {{0, 1}, {1, 2}, {3, 1}, {1, 4}});
  Instance inst;
  inst.graph = g;
  inst.capacity_mode = CapacityMode::node;
  inst.capacities.assign(g.num_nodes(), 1);
  inst.demands = {{0, 0, 2, 0}, {1, 3, 4, 0}};
  Multiflow f;
  f.mode = WalkMode::path;
  f.flows.resize(2);
  f.flows[0].push_back({walk_through(g, {0, 1, 2}), Rat(1, 2)});
  f.flows[1].push_back({walk_through(g, {3, 1, 4}), Rat(1, 2)});

  IntegerDecomposition dec = integer_decompose(inst, f, 2);
  CHECK(dec.b == 2);
  // identity: sum of classes == k f per walk
  Rat total = 0;
  for (const auto& cls : dec.classes) {
    total += flow_value(cls);
    auto rep = verify_feasible(inst, cls, false);
    CHECK(rep.capacities_ok);
  }
  CHECK(total == Rat(2) * flow_value(f));

  int best = select_best_class(dec);
  Rat bv = flow_value(dec.classes[best]);
  CHECK(bv * Rat(dec.b) >= Rat(2) * flow_value(f));

  // integral f at k=1 comes back as itself
  Multiflow fi = f;
  fi.flows[0][0].value = 1;
  fi.flows[1][0].value = 1;
  IntegerDecomposition dec1 = integer_decompose(inst, fi, 1);
  CHECK(dec1.b == 2);  // the two walks share node 1, still need 2 classes
  CHECK(flow_value(dec1.classes[0]) + flow_value(dec1.classes[1]) == Rat(2));
}

TEST_CASE("floor_strip splits and recombines exactly") {
  EmbeddedGraph g = embed_from_coordinates(3, {{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 2}});
  Multiflow f;
  f.flows.resize(1);
  f.flows[0].push_back({walk_through(g, {0, 1, 2}), Rat(7, 3)});
  auto [integral, residual] = floor_strip(f);
  CHECK(integral.flows[0][0].value == Rat(2));
  CHECK(residual.flows[0][0].value == Rat(1, 3));

  Multiflow fi;
  fi.flows.resize(1);
  fi.flows[0].push_back({walk_through(g, {0, 1, 2}), Rat(3)});
  auto [i2, r2] = floor_strip(fi);
  CHECK(i2.flows[0][0].value == Rat(3));
  CHECK(r2.flows[0].empty());
}

TEST_CASE("reduce_fractionality keeps support, feasibility and half the value") {
  EmbeddedGraph g = embed_from_coordinates(
      5, {{0, 0}, {1, 1}, {1, -1}, {1, 0}, {2, 0}},
      {{0, 1}, {1, 4}, {0, 2}, {2, 4}, {0, 3}, {3, 4}});
  Instance inst;
  inst.graph = g;
  inst.capacities.assign(g.num_edges(), 1);
  inst.demands = {{0, 0, 4, 1}};
  Multiflow f;
  f.flows.resize(1);
  f.flows[0].push_back({walk_through(g, {0, 1, 4}), Rat(355, 1130)});
  f.flows[0].push_back({walk_through(g, {0, 2, 4}), Rat(113, 355)});
  f.flows[0].push_back({walk_through(g, {0, 3, 4}), Rat(1, 7)});

  auto res = reduce_fractionality(inst, f, 11);
  CHECK(flow_value(res.flow) * 2 >= flow_value(f));
  CHECK(verify_feasible(inst, res.flow, false).capacities_ok);
  for (const auto& e : res.flow.flows[0]) {
    CHECK(denominator(e.value * Rat(res.k)) == 1);
  }
  // already-small denominators: identity
  Multiflow simple;
  simple.flows.resize(1);
  simple.flows[0].push_back({walk_through(g, {0, 1, 4}), Rat(1, 2)});
  auto res2 = reduce_fractionality(inst, simple, 3);
  CHECK(flow_value(res2.flow) * 2 >= flow_value(simple));
}

TEST_CASE("node capacity splitting at small capacities") {
  // node m with capacity 2, two unit paths through it
  EmbeddedGraph g = embed_from_coordinates(
      5, {{0, 1}, {0, -1}, {1, 0}, {2, 1}, {2, -1}},
      {{0, 2}, {1, 2}, {2, 3}, {2, 4}});
  Instance inst;
  inst.graph = g;
  inst.capacity_mode = CapacityMode::node;
  inst.capacities = {1, 1, 2, 1, 1};
  inst.demands = {{0, 0, 3, 1}, {1, 1, 4, 1}};
  Multiflow f;
  f.mode = WalkMode::path;
  f.flows.resize(2);
  f.flows[0].push_back({walk_through(g, {0, 2, 3}), Rat(1)});
  f.flows[1].push_back({walk_through(g, {1, 2, 4}), Rat(1)});
  WalkFamily fam = family_of_flow(f);
  auto search = find_uncrossed_parallelization(g, fam, false);
  REQUIRE(search.phi.has_value());

  NodeSplitResult split = split_node_capacities(inst, f, *search.phi);
  for (const Int& u : split.instance.capacities) CHECK(u <= 1);
  auto rep = verify_feasible(split.instance, split.flow, false);
  CHECK(rep.feasible());
  CHECK(check_planarity(split.instance.graph).planar);
}
