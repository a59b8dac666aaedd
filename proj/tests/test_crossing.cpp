#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uncross/crossing.hpp"

using namespace uncross;

namespace {

// The two-commodity fully-planar example: 8 nodes, both terminal pairs
// connected through x1/x2 with a left / right middle choice.
struct FullyPlanarEx {
  EmbeddedGraph g;
  int s1 = 0, t1 = 1, s2 = 2, t2 = 3, x1 = 4, x2 = 5, y1 = 6, y2 = 7;
  int e_s1x1, e_s2x1, e_x1y1, e_x1y2, e_y1x2, e_y2x2, e_x2t1, e_x2t2;

  FullyPlanarEx() {
    g = embed_from_coordinates(8,
                               {{0, 0}, {0, 4}, {4, 0}, {4, 4}, {2, 1}, {2, 3}, {1, 2}, {3, 2}},
                               {{0, 4}, {2, 4}, {4, 6}, {4, 7}, {6, 5}, {7, 5}, {5, 1}, {5, 3}});
    e_s1x1 = 0;
    e_s2x1 = 1;
    e_x1y1 = 2;
    e_x1y2 = 3;
    e_y1x2 = 4;
    e_y2x2 = 5;
    e_x2t1 = 6;
    e_x2t2 = 7;
  }

  Walk path(std::initializer_list<int> edges, std::initializer_list<int> nodes) const {
    // orient each edge to follow the node sequence
    Walk w;
    auto ni = nodes.begin();
    int cur = *ni++;
    for (int e : edges) {
      int side = g.edges[e].a == cur ? 0 : 1;
      w.darts.push_back(make_dart(e, side));
      cur = g.dart_head(w.darts.back());
      ++ni;
    }
    return w;
  }
};

Walk walk_through(const EmbeddedGraph& g, std::initializer_list<int> nodes) {
  Walk w;
  auto it = nodes.begin();
  int cur = *it++;
  for (; it != nodes.end(); ++it) {
    bool found = false;
    for (DartId d : g.rotation[cur])
      if (!found && g.dart_head(d) == *it) {
        w.darts.push_back(d);
        found = true;
      }
    REQUIRE(found);
    cur = *it;
  }
  return w;
}

}  // namespace

TEST_CASE("fully-planar example: left flow crosses, right flow does not") {
  FullyPlanarEx ex;
  Walk blue_left = walk_through(ex.g, {ex.s1, ex.x1, ex.y2, ex.x2, ex.t1});
  Walk green_left = walk_through(ex.g, {ex.s2, ex.x1, ex.y1, ex.x2, ex.t2});
  CHECK(pair_crosses(ex.g, blue_left, green_left));

  Walk blue_right = walk_through(ex.g, {ex.s1, ex.x1, ex.y1, ex.x2, ex.t1});
  Walk green_right = walk_through(ex.g, {ex.s2, ex.x1, ex.y2, ex.x2, ex.t2});
  CHECK_FALSE(pair_crosses(ex.g, blue_right, green_right));

  WalkFamily crossed{{blue_left, 0}, {green_left, 1}};
  auto res = find_uncrossed_parallelization(ex.g, crossed);
  CHECK_FALSE(res.phi.has_value());
  REQUIRE(res.pair.has_value());

  WalkFamily fine{{blue_right, 0}, {green_right, 1}};
  auto res2 = find_uncrossed_parallelization(ex.g, fine);
  REQUIRE(res2.phi.has_value());
  CHECK_FALSE(check_parallelization_uncrossed(ex.g, fine, *res2.phi).has_value());
}

namespace {

// Shared-subpath configurations: z - m1 - m2 - z' with two spurs at each end.
struct SubpathEx {
  EmbeddedGraph g;
  int z = 0, zp = 1, n1 = 2, n2 = 3, n3 = 4, n4 = 5, m1 = 6, m2 = 7;
  SubpathEx() {
    g = embed_from_coordinates(
        8, {{-2, 0}, {1, -2}, {-3, -1}, {-3, 0}, {2, -2}, {2, -1}, {-1, -1}, {0, -1}},
        {{0, 6}, {6, 7}, {7, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}});
  }
};

}  // namespace

TEST_CASE("crossing at a shared subpath vs uncrossed sharing") {
  SubpathEx ex;
  // centre panel: P = n1-z-...-z'-n4, Q = n2-z-...-z'-n3  (crosses)
  Walk P = walk_through(ex.g, {ex.n1, ex.z, ex.m1, ex.m2, ex.zp, ex.n4});
  Walk Q = walk_through(ex.g, {ex.n2, ex.z, ex.m1, ex.m2, ex.zp, ex.n3});
  CHECK(pair_crosses(ex.g, P, Q));
  CHECK(pair_crossing_count(ex.g, P, Q) == 1);

  // right panel: P = n2-z-...-z'-n4, Q = n1-z-...-z'-n3  (uncrossed)
  Walk P2 = walk_through(ex.g, {ex.n2, ex.z, ex.m1, ex.m2, ex.zp, ex.n4});
  Walk Q2 = walk_through(ex.g, {ex.n1, ex.z, ex.m1, ex.m2, ex.zp, ex.n3});
  CHECK_FALSE(pair_crosses(ex.g, P2, Q2));

  // a witness names the crossing site and the walks
  WalkFamily fam{{P, 0}, {Q, 1}};
  Parallelization ident = identity_parallelization(ex.g, fam);
  auto witness = check_parallelization_uncrossed(ex.g, fam, ident);
  if (witness) {
    CHECK(witness->walk_a != witness->walk_b);
  }
}

TEST_CASE("single walk families are fine unless self-crossing") {
  FullyPlanarEx ex;
  Walk blue = walk_through(ex.g, {ex.s1, ex.x1, ex.y1, ex.x2, ex.t1});
  WalkFamily fam{{blue, 0}};
  auto res = find_uncrossed_parallelization(ex.g, fam);
  CHECK(res.phi.has_value());
}

namespace {

// Quasicrossing instance: blue routes s1->t1 on three parallel routes, green
// routes s2->t2 through s1 and through t1.
struct QuasiEx {
  EmbeddedGraph g;
  int s1 = 0, s2 = 1, t2 = 2, t1 = 3, a = 4, b = 5;
  QuasiEx() {
    // a at (-3,2), b at (3,2); curved routes approximated with straight lines
    g = embed_from_coordinates(6, {{0, 0}, {-2, 2}, {2, 2}, {0, 4}, {-3, 2}, {3, 2}},
                               {{0, 3}, {0, 1}, {3, 1}, {0, 2}, {3, 2}, {0, 4}, {4, 3}, {0, 5}, {5, 3}});
  }
};

}  // namespace

TEST_CASE("quasicrossing at a terminal: uncrossed but not strongly uncrossed") {
  QuasiEx ex;
  Instance inst;
  inst.graph = ex.g;
  inst.capacities.assign(ex.g.num_edges(), 1);
  inst.demands = {{0, ex.s1, ex.t1, 1}, {1, ex.s2, ex.t2, 1}};

  Multiflow f;
  f.mode = WalkMode::path;
  f.flows.resize(2);
  f.flows[0].push_back({walk_through(ex.g, {ex.s1, ex.t1}), Rat(1, 3)});
  f.flows[0].push_back({walk_through(ex.g, {ex.s1, ex.a, ex.t1}), Rat(1, 3)});
  f.flows[0].push_back({walk_through(ex.g, {ex.s1, ex.b, ex.t1}), Rat(1, 3)});
  f.flows[1].push_back({walk_through(ex.g, {ex.s2, ex.s1, ex.t2}), Rat(1, 2)});
  f.flows[1].push_back({walk_through(ex.g, {ex.s2, ex.t1, ex.t2}), Rat(1, 2)});

  // plain uncrossedness holds
  WalkFamily fam = family_of_flow(f);
  auto plain = find_uncrossed_parallelization(ex.g, fam, false);
  REQUIRE(plain.phi.has_value());

  // quasicrossing at s1 under any uncrossed parallelization
  CHECK(detect_quasicrossing(ex.g, fam, *plain.phi, 0, 1, ex.s1));
  CHECK(detect_quasicrossing(ex.g, fam, *plain.phi, 1, 0, ex.s1));  // symmetric

  auto strong = verify_strongly_uncrossed(inst, f);
  CHECK_FALSE(strong.ok());
  REQUIRE(strong.witness.has_value());
  CHECK(strong.witness->quasicrossing.has_value());
}

TEST_CASE("node-disjoint flows have no quasicrossing") {
  FullyPlanarEx ex;
  Multiflow f;
  f.mode = WalkMode::path;
  f.flows.resize(2);
  f.flows[0].push_back({walk_through(ex.g, {ex.s1, ex.x1, ex.y1, ex.x2, ex.t1}), Rat(1)});
  f.flows[1].push_back({walk_through(ex.g, {ex.s2, ex.x1, ex.y2, ex.x2, ex.t2}), Rat(1)});
  WalkFamily fam = family_of_flow(f);
  auto plain = find_uncrossed_parallelization(ex.g, fam, false);
  REQUIRE(plain.phi.has_value());
  for (int v = 0; v < ex.g.num_nodes(); ++v) CHECK_FALSE(detect_quasicrossing(ex.g, fam, *plain.phi, 0, 1, v));
}

TEST_CASE("transit/transit alternation is a crossing, not a quasicrossing") {
  FullyPlanarEx ex;
  Walk blue_left = walk_through(ex.g, {ex.s1, ex.x1, ex.y2, ex.x2, ex.t1});
  Walk green_left = walk_through(ex.g, {ex.s2, ex.x1, ex.y1, ex.x2, ex.t2});
  WalkFamily fam{{blue_left, 0}, {green_left, 1}};
  Parallelization ident = identity_parallelization(ex.g, fam);
  for (int v = 0; v < ex.g.num_nodes(); ++v)
    CHECK_FALSE(detect_quasicrossing(ex.g, fam, ident, 0, 1, v));
}

TEST_CASE("crossing weight definitional examples") {
  FullyPlanarEx ex;
  Instance inst;
  inst.graph = ex.g;
  inst.capacities.assign(ex.g.num_edges(), 1);
  inst.demands = {{0, ex.s1, ex.t1, 1}, {1, ex.s2, ex.t2, 1}};

  Multiflow crossed;
  crossed.mode = WalkMode::path;
  crossed.flows.resize(2);
  crossed.flows[0].push_back({walk_through(ex.g, {ex.s1, ex.x1, ex.y2, ex.x2, ex.t1}), Rat(1)});
  crossed.flows[1].push_back({walk_through(ex.g, {ex.s2, ex.x1, ex.y1, ex.x2, ex.t2}), Rat(1)});

  // the pair crosses at both shared nodes: pairwise weight is 2 * 1 * 1
  CHECK(pair_crossing_count(ex.g, crossed.flows[0][0].walk, crossed.flows[1][0].walk) == 2);
  CHECK(pairwise_crossing_weight(ex.g, crossed) == Rat(2));

  Multiflow fine = crossed;
  fine.flows[0][0].walk = walk_through(ex.g, {ex.s1, ex.x1, ex.y1, ex.x2, ex.t1});
  fine.flows[1][0].walk = walk_through(ex.g, {ex.s2, ex.x1, ex.y2, ex.x2, ex.t2});
  CHECK(pairwise_crossing_weight(ex.g, fine) == Rat(0));

  WalkFamily fam = family_of_flow(fine);
  auto res = find_uncrossed_parallelization(ex.g, fam);
  REQUIRE(res.phi.has_value());
  CHECK(crossing_weight(ex.g, fine, *res.phi).total == Rat(0));

  // values 1/2 and 1/3 crossing twice: 2 * (1/6) = 1/3
  Multiflow frac = crossed;
  frac.flows[0][0].value = Rat(1, 2);
  frac.flows[1][0].value = Rat(1, 3);
  CHECK(pairwise_crossing_weight(ex.g, frac) == Rat(1, 3));
}

TEST_CASE("uncross_pairwise_planar fixes the crossed fully-planar flow") {
  FullyPlanarEx ex;
  Instance inst;
  inst.graph = ex.g;
  inst.capacities.assign(ex.g.num_edges(), 1);
  inst.demands = {{0, ex.s1, ex.t1, 1}, {1, ex.s2, ex.t2, 1}};
  inst.tags["class"] = "fully-planar";

  Multiflow crossed;
  crossed.mode = WalkMode::path;
  crossed.flows.resize(2);
  crossed.flows[0].push_back({walk_through(ex.g, {ex.s1, ex.x1, ex.y2, ex.x2, ex.t1}), Rat(1)});
  crossed.flows[1].push_back({walk_through(ex.g, {ex.s2, ex.x1, ex.y1, ex.x2, ex.t2}), Rat(1)});

  UncrossResult res = uncross_pairwise_planar(inst, crossed);
  REQUIRE(res.success);
  CHECK(pairwise_crossing_weight(ex.g, res.flow) == Rat(0));
  auto rep = verify_feasible(inst, res.flow, false);
  CHECK(rep.feasible());
  CHECK(rep.routed[0] == Rat(1));
  CHECK(rep.routed[1] == Rat(1));

  // an already-uncrossed flow comes back unchanged in substance
  UncrossResult res2 = uncross_pairwise_planar(inst, res.flow);
  CHECK(res2.success);
  CHECK(res2.swaps == 0);
}
