#include <algorithm>
#include <functional>
#include <cmath>
#include <map>
#include <set>

#include "uncross/gadgets.hpp"
#include "uncross/rng.hpp"

namespace uncross {

namespace {

// ---- mutable surgery layer over EmbeddedGraph ----

struct Surgeon {
  EmbeddedGraph g;
  std::vector<bool> edge_dead;
  std::vector<std::string> node_tags, edge_tags;

  explicit Surgeon(const Instance& inst)
      : g(inst.graph), edge_dead(inst.graph.num_edges(), false), node_tags(inst.node_tags),
        edge_tags(inst.edge_tags) {
    node_tags.resize(g.num_nodes());
    edge_tags.resize(g.num_edges());
  }

  int add_node(const std::string& tag = "") {
    node_tags.push_back(tag);
    return g.add_node();
  }

  // raw edge without rotation entries (caller wires rotations)
  int add_edge_raw(int a, int b, const std::string& tag = "") {
    int e = static_cast<int>(g.edges.size());
    g.edges.push_back({a, b});
    edge_dead.push_back(false);
    edge_tags.push_back(tag);
    return e;
  }

  void kill_edge(int e) {
    edge_dead[e] = true;
    for (int side = 0; side < 2; ++side) {
      DartId d = make_dart(e, side);
      auto& rot = g.rotation[g.dart_tail(d)];
      rot.erase(std::remove(rot.begin(), rot.end(), d), rot.end());
    }
  }

  int degree(int v) const { return static_cast<int>(g.rotation[v].size()); }

  // replaces dart d (at its tail's rotation position) with a dart of a new
  // edge toward new_node; the old edge end moves to new_node
  void redirect_end(DartId d, int new_node) {
    int e = dart_edge(d);
    int old = g.dart_tail(d);
    auto& rot = g.rotation[old];
    rot.erase(std::remove(rot.begin(), rot.end(), d), rot.end());
    if (dart_side(d) == 0)
      g.edges[e].a = new_node;
    else
      g.edges[e].b = new_node;
    g.rotation[new_node].push_back(d);
  }

  // subdivide edge e; returns the new middle node. The new edge replaces e's
  // b-side dart in place.
  int subdivide(int e, const std::string& tag = "") {
    int w = add_node(tag);
    int b = g.edges[e].b;
    int e2 = add_edge_raw(w, b, edge_tags[e]);
    // swap the b-side dart in b's rotation
    auto& rot = g.rotation[b];
    for (auto& d : rot)
      if (d == make_dart(e, 1)) d = make_dart(e2, 1);
    g.edges[e].b = w;
    g.rotation[w] = {make_dart(e, 1), make_dart(e2, 0)};
    return w;
  }

  void insert_dart_after(int node, DartId after, DartId inserted) {
    auto& rot = g.rotation[node];
    auto it = std::find(rot.begin(), rot.end(), after);
    if (it == rot.end()) throw std::logic_error("insert_dart_after: anchor missing");
    rot.insert(it + 1, inserted);
  }

  // compacts dead edges and isolated untagged nodes; returns node remap
  std::vector<int> compact(Instance& inst) {
    std::vector<int> edge_map(g.num_edges(), -1);
    EmbeddedGraph ng;
    std::vector<std::string> netags, nntags;
    std::vector<int> node_map(g.num_nodes(), -1);
    for (int v = 0; v < g.num_nodes(); ++v) {
      if (g.rotation[v].empty() && node_tags[v] == "dead") continue;
      node_map[v] = ng.add_node();
      nntags.push_back(node_tags[v]);
    }
    for (int e = 0; e < g.num_edges(); ++e) {
      if (edge_dead[e]) continue;
      edge_map[e] = static_cast<int>(ng.edges.size());
      ng.edges.push_back({node_map[g.edges[e].a], node_map[g.edges[e].b]});
      netags.push_back(edge_tags[e]);
    }
    for (int v = 0; v < g.num_nodes(); ++v) {
      if (node_map[v] < 0) continue;
      for (DartId d : g.rotation[v])
        ng.rotation[node_map[v]].push_back(make_dart(edge_map[dart_edge(d)], dart_side(d)));
    }
    inst.graph = ng;
    inst.node_tags = nntags;
    inst.edge_tags = netags;
    inst.capacities.assign(ng.num_edges(), 1);
    for (auto& d : inst.demands) {
      d.s = node_map[d.s];
      d.t = node_map[d.t];
    }
    return edge_map;
  }
};

// ---- spider web & C4 ----

constexpr double kPi = 3.14159265358979323846;

struct WebResult {
  int red_terminal = -1;
  int center = -1;
};

// Replaces node v (degree d >= 2) by the spider web. When terminal is true
// the centre v' is kept (spokes to every ring-1 node except ray 0) and the
// red terminal u_{0,1} is returned.
WebResult spider_web(Surgeon& s, int v, bool terminal) {
  int d = s.degree(v);
  std::vector<DartId> incident = s.g.rotation[v];  // clockwise
  WebResult res;

  // nodes u[i][j], i = ray (clockwise), j = ring radius 1..d-1
  std::vector<std::vector<int>> u(d, std::vector<int>(d, -1));
  for (int i = 0; i < d; ++i)
    for (int j = 1; j <= d - 1; ++j) u[i][j] = s.add_node("web");

  // ring edges: ring_e[i][j] joins u[i][j] to u[i+1][j]
  std::vector<std::vector<int>> ring_e(d, std::vector<int>(d, -1));
  for (int j = 1; j <= d - 1; ++j)
    for (int i = 0; i < d; ++i) ring_e[i][j] = s.add_edge_raw(u[i][j], u[(i + 1) % d][j], "web-ring");
  // ray edges between consecutive rings
  std::vector<std::vector<int>> ray_e(d, std::vector<int>(d, -1));
  for (int i = 0; i < d; ++i)
    for (int j = 1; j <= d - 2; ++j) ray_e[i][j] = s.add_edge_raw(u[i][j], u[i][j + 1], "web-ray");

  int centre = -1;
  std::vector<int> spoke(d, -1);
  if (terminal) {
    centre = s.add_node("web-centre");
    for (int i = 1; i < d; ++i) spoke[i] = s.add_edge_raw(centre, u[i][1], "web-spoke");
    std::vector<DartId> crot;
    for (int i = 1; i < d; ++i) crot.push_back(make_dart(spoke[i], 0));
    s.g.rotation[centre] = crot;
    res.center = centre;
    res.red_terminal = u[0][1];
  }

  // redirect the original incident darts to the outermost ring
  for (int i = 0; i < d; ++i) s.redirect_end(incident[i], u[i][d - 1]);

  // rotations: clockwise [outward, ring-next, inward, ring-prev]
  for (int i = 0; i < d; ++i)
    for (int j = 1; j <= d - 1; ++j) {
      std::vector<DartId> rot;
      if (j == d - 1)
        rot.push_back(incident[i]);
      else
        rot.push_back(make_dart(ray_e[i][j], 0));
      rot.push_back(make_dart(ring_e[i][j], 0));
      if (j >= 2)
        rot.push_back(make_dart(ray_e[i][j - 1], 1));
      else if (terminal && i >= 1)
        rot.push_back(make_dart(spoke[i], 1));
      rot.push_back(make_dart(ring_e[(i - 1 + d) % d][j], 1));
      s.g.rotation[u[i][j]] = rot;
    }
  s.node_tags[v] = "dead";
  return res;
}

void c4_gadget(Surgeon& s, int v) {
  std::vector<DartId> incident = s.g.rotation[v];
  int q[4];
  for (int i = 0; i < 4; ++i) q[i] = s.add_node("c4");
  int cyc[4];
  for (int i = 0; i < 4; ++i) cyc[i] = s.add_edge_raw(q[i], q[(i + 1) % 4], "c4-ring");
  for (int i = 0; i < 4; ++i) s.redirect_end(incident[i], q[i]);
  for (int i = 0; i < 4; ++i)
    s.g.rotation[q[i]] = {incident[i], make_dart(cyc[i], 0), make_dart(cyc[(i + 3) % 4], 1)};
  s.node_tags[v] = "dead";
}

}  // namespace

DegreeReduceResult degree_reduce(const Instance& inst) {
  for (const Int& u : inst.capacities)
    if (u != 1) throw NonUnitWeights("capacities must be unit");
  for (const Demand& d : inst.demands)
    if (d.d != 1) throw NonUnitWeights("demands must be unit");

  DegreeReduceResult out;
  Instance work = inst;
  Surgeon s(work);
  std::vector<Demand> demands = work.demands;

  auto demand_count = [&](int v) {
    int c = 0;
    for (auto& d : demands) c += (d.s == v) + (d.t == v);
    return c;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < s.g.num_nodes() && !changed; ++v) {
      int deg = s.degree(v);
      int dh = demand_count(v);
      if (deg == 0) continue;
      bool needs_web = (dh == 0 && deg > 4) || (dh >= 1 && deg >= 2 && (deg > 3 || dh >= 2));
      if (!needs_web) continue;
      if (dh >= 1) {
        WebResult web = spider_web(s, v, true);
        // relocate one demand endpoint to the red terminal, the rest to v'
        bool moved = false;
        for (auto& d : demands) {
          if (d.s == v && !moved) {
            d.s = web.red_terminal;
            moved = true;
          } else if (d.t == v && !moved) {
            d.t = web.red_terminal;
            moved = true;
          } else {
            if (d.s == v) d.s = web.center;
            if (d.t == v) d.t = web.center;
          }
        }
      } else {
        spider_web(s, v, false);
      }
      changed = true;
    }
  }
  // degree-4 non-terminal rewiring
  for (int v = 0; v < s.g.num_nodes(); ++v)
    if (s.degree(v) == 4 && demand_count(v) == 0) c4_gadget(s, v);

  work.demands = demands;
  s.compact(work);
  for (int v = 0; v < work.graph.num_nodes(); ++v)
    if (static_cast<int>(work.graph.rotation[v].size()) > 3)
      throw std::logic_error("degree reduction left a node of degree > 3");
  out.instance = work;
  out.instance.tags["derived"] = "degree3";
  out.demand_map.resize(work.demands.size());
  for (size_t i = 0; i < work.demands.size(); ++i) out.demand_map[i] = static_cast<int>(i);
  PlanarityReport rep = check_planarity(out.instance.graph);
  if (!rep.planar) throw std::logic_error("degree reduction broke planarity");
  return out;
}

NdpReduction reduce_to_ndp(const Instance& inst) {
  int delta = 0;
  for (int v = 0; v < inst.graph.num_nodes(); ++v)
    delta = std::max(delta, static_cast<int>(inst.graph.rotation[v].size()));

  DegreeReduceResult dr = degree_reduce(inst);
  Instance work = dr.instance;
  Surgeon s(work);
  std::vector<Demand> demands = work.demands;

  // H must be a matching here; terminals of degree 3 get the triangle gadget
  std::map<int, int> dh;
  for (auto& d : demands) {
    ++dh[d.s];
    ++dh[d.t];
  }
  for (auto& [v, c] : dh)
    if (c > 1) throw std::logic_error("demand graph is not a matching after phase one");

  for (auto& [v, c] : dh) {
    if (s.degree(v) != 3) continue;
    int w[3];
    for (int i = 0; i < 3; ++i) {
      s.subdivide(dart_edge(s.g.rotation[v][i]), "tri");
      w[i] = s.g.dart_head(s.g.rotation[v][i]);  // positions survive subdivision
    }
    int tri[3];
    for (int i = 0; i < 3; ++i) tri[i] = s.add_edge_raw(w[i], w[(i + 1) % 3], "tri-ring");
    for (int i = 0; i < 3; ++i) {
      auto& rot = s.g.rotation[w[i]];
      DartId toward_out = -1, toward_v = -1;
      for (DartId d : rot)
        if (s.g.dart_head(d) == v)
          toward_v = d;
        else
          toward_out = d;
      rot = {toward_out, make_dart(tri[i], 0), toward_v, make_dart(tri[(i + 2) % 3], 1)};
    }
  }
  work.demands = demands;
  s.compact(work);

  NdpReduction out;
  out.instance = work;
  out.instance.tags["derived"] = "ndp";
  double denom = static_cast<double>(delta) * delta * delta * inst.graph.num_nodes();
  out.size_ratio = denom > 0 ? work.graph.num_nodes() / denom : 0;
  PlanarityReport rep = check_planarity(out.instance.graph);
  if (!rep.planar) throw std::logic_error("ndp reduction broke planarity");
  return out;
}

// ---- unique embedding augmentation ----

namespace {

// simple graph after suppressing degree-2 nodes, dropping parallels/loops
struct Suppressed {
  int n = 0;
  std::set<std::pair<int, int>> edges;
  std::vector<int> ids;  // suppressed node -> original id
};

Suppressed suppress(const EmbeddedGraph& g) {
  Suppressed s;
  std::vector<int> keep;
  for (int v = 0; v < g.num_nodes(); ++v)
    if (g.rotation[v].size() != 2 && !g.rotation[v].empty()) keep.push_back(v);
  std::map<int, int> idx;
  for (int v : keep) {
    idx[v] = s.n++;
    s.ids.push_back(v);
  }
  // walk from each kept node through degree-2 chains
  std::set<std::pair<DartId, DartId>> seen;
  for (int v : keep)
    for (DartId d0 : g.rotation[v]) {
      DartId d = d0;
      int cur = g.dart_head(d);
      while (cur != -1 && g.rotation[cur].size() == 2 && !idx.count(cur)) {
        DartId back = dart_twin(d);
        d = g.rotation[cur][0] == back ? g.rotation[cur][1] : g.rotation[cur][0];
        cur = g.dart_head(d);
      }
      if (idx.count(cur) && idx[cur] != idx[v]) {
        int a = std::min(idx[v], idx[cur]), b = std::max(idx[v], idx[cur]);
        s.edges.insert({a, b});
      }
    }
  return s;
}

bool connected_after_removal(const Suppressed& s, int skip1, int skip2) {
  if (s.n - (skip1 >= 0) - (skip2 >= 0) <= 1) return true;
  std::vector<std::vector<int>> adj(s.n);
  for (auto& [a, b] : s.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  int start = -1;
  for (int v = 0; v < s.n; ++v)
    if (v != skip1 && v != skip2) {
      start = v;
      break;
    }
  std::vector<bool> vis(s.n, false);
  std::vector<int> stack{start};
  vis[start] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v]) {
      if (u == skip1 || u == skip2 || vis[u]) continue;
      vis[u] = true;
      ++count;
      stack.push_back(u);
    }
  }
  return count == s.n - (skip1 >= 0) - (skip2 >= 0);
}

bool is_three_connected(const Suppressed& s) {
  if (s.n < 4) return false;
  for (int a = 0; a < s.n; ++a)
    for (int b = a + 1; b < s.n; ++b)
      if (!connected_after_removal(s, a, b)) return false;
  return true;
}

}  // namespace

Instance make_unique_embedding(const Instance& inst, std::uint64_t seed) {
  Instance work = inst;
  Rng rng(seed);
  for (int iteration = 0; iteration < 60; ++iteration) {
    Suppressed sup = suppress(work.graph);
    if (is_three_connected(sup)) break;

    FaceSet fs = trace_faces(work.graph);
    // pick the first face with two suppressed-degree>=3 nodes that are not
    // already adjacent in the suppressed graph; fall back to any two distinct
    bool done = false;
    for (size_t f = 0; f < fs.faces.size() && !done; ++f) {
      const auto& cyc = fs.faces[f];
      for (size_t i = 0; i < cyc.size() && !done; ++i)
        for (size_t j = i + 1; j < cyc.size() && !done; ++j) {
          int u1 = work.graph.dart_tail(cyc[i]);
          int u2 = work.graph.dart_tail(cyc[j]);
          if (u1 == u2) continue;
          // corner positions for insertion
          Surgeon s(work);
          int p1 = s.add_node("ue");
          int p2 = s.add_node("ue");
          int e1 = s.add_edge_raw(u1, p1, "ue");
          int em = s.add_edge_raw(p1, p2, "ue");
          int e2 = s.add_edge_raw(p2, u2, "ue");
          // insert into the face corners: after the darts preceding the corner
          auto prev_in_rot = [&](int node, DartId next_dart) {
            const auto& rot = s.g.rotation[node];
            for (size_t k = 0; k < rot.size(); ++k)
              if (rot[k] == next_dart) return rot[(k + rot.size() - 1) % rot.size()];
            return rot.back();
          };
          DartId a1 = prev_in_rot(u1, cyc[i]);
          DartId a2 = prev_in_rot(u2, cyc[j]);
          s.insert_dart_after(u1, a1, make_dart(e1, 0));
          s.insert_dart_after(u2, a2, make_dart(e2, 1));
          s.g.rotation[p1] = {make_dart(e1, 1), make_dart(em, 0)};
          s.g.rotation[p2] = {make_dart(em, 1), make_dart(e2, 0)};
          if (!check_planarity(s.g).planar) continue;
          work.graph = s.g;
          work.node_tags = s.node_tags;
          work.edge_tags = s.edge_tags;
          work.capacities.push_back(1);
          work.capacities.push_back(1);
          work.capacities.push_back(1);
          work.demands.push_back(
              {static_cast<int>(work.demands.size()), u1, p1, 1});
          work.demands.push_back(
              {static_cast<int>(work.demands.size()), u2, p2, 1});
          done = true;
        }
    }
    if (!done) break;
  }
  work.tags["derived"] = "unique-embedding";
  return work;
}

// ---- Planar 3-SAT ----

void validate_cnf(const PlanarCnf& cnf) {
  std::map<int, int> occurrences;
  std::map<int, std::set<int>> polarity;
  for (size_t c = 0; c < cnf.clauses.size(); ++c)
    for (int lit : cnf.clauses[c]) {
      int v = std::abs(lit);
      if (v < 1 || v > cnf.num_vars) throw MalformedCnf("literal out of range");
      ++occurrences[v];
      polarity[v].insert(lit > 0 ? 1 : -1);
    }
  for (int v = 1; v <= cnf.num_vars; ++v) {
    if (occurrences[v] == 0) throw MalformedCnf("unused variable");
    if (occurrences[v] > 3) throw MalformedCnf("variable occurs more than three times");
    if (polarity[v].size() < 2) throw MalformedCnf("variable has one polarity only");
  }
  if (cnf.incidence.num_nodes() != cnf.num_vars + static_cast<int>(cnf.clauses.size()))
    throw MalformedCnf("incidence node count mismatch");
  if (cnf.clause_edge.size() != cnf.clauses.size()) throw MalformedCnf("clause_edge mismatch");
  for (size_t c = 0; c < cnf.clauses.size(); ++c)
    for (int slot = 0; slot < 3; ++slot) {
      int e = cnf.clause_edge[c][slot];
      int var = std::abs(cnf.clauses[c][slot]) - 1;
      const EdgeEnds& ee = cnf.incidence.edges[e];
      bool ok = (ee.a == var && ee.b == cnf.clause_node(static_cast<int>(c))) ||
                (ee.b == var && ee.a == cnf.clause_node(static_cast<int>(c)));
      if (!ok) throw MalformedCnf("incidence edge endpoints mismatch");
    }
  if (!check_planarity(cnf.incidence).planar) throw MalformedCnf("incidence is not planar");
}

bool sat_brute_force(const PlanarCnf& cnf, std::vector<bool>* assignment) {
  for (long mask = 0; mask < (1L << cnf.num_vars); ++mask) {
    bool ok = true;
    for (const auto& cl : cnf.clauses) {
      bool sat = false;
      for (int lit : cl) {
        bool val = (mask >> (std::abs(lit) - 1)) & 1;
        sat |= lit > 0 ? val : !val;
      }
      ok &= sat;
    }
    if (ok) {
      if (assignment) {
        assignment->assign(cnf.num_vars, false);
        for (int v = 0; v < cnf.num_vars; ++v) (*assignment)[v] = (mask >> v) & 1;
      }
      return true;
    }
  }
  return false;
}

namespace {

// straight-line layout attempt: variables on the x-axis in the given order,
// clauses above/below per mask; returns the embedded incidence graph or
// nullopt when segments cross.
std::optional<EmbeddedGraph> layout_incidence(const PlanarCnf& cnf, const std::vector<int>& var_order,
                                              int side_mask,
                                              std::vector<std::array<int, 3>>* clause_edge) {
  int n = cnf.num_vars, m = static_cast<int>(cnf.clauses.size());
  std::vector<std::pair<double, double>> pos(n + m);
  std::vector<int> var_x(n);
  for (int i = 0; i < n; ++i) var_x[var_order[i]] = i;
  for (int v = 0; v < n; ++v) pos[v] = {10.0 * var_x[v], 0.0};
  for (int c = 0; c < m; ++c) {
    double cx = 0;
    for (int lit : cnf.clauses[c]) cx += 10.0 * var_x[std::abs(lit) - 1];
    cx /= 3;
    double cy = ((side_mask >> c) & 1) ? 8.0 + 2.0 * c : -8.0 - 2.0 * c;
    pos[n + c] = {cx + 0.37 * (c + 1), cy};
  }
  // geometric crossing test on representative segments (bundled duplicates)
  struct Seg {
    double x1, y1, x2, y2;
    int c, v;
  };
  std::vector<Seg> segs;
  for (int c = 0; c < m; ++c) {
    std::set<int> vars;
    for (int lit : cnf.clauses[c]) vars.insert(std::abs(lit) - 1);
    for (int v : vars)
      segs.push_back({pos[n + c].first, pos[n + c].second, pos[v].first, pos[v].second, c, v});
  }
  auto cross = [](const Seg& a, const Seg& b) {
    auto orient = [](double ax, double ay, double bx, double by, double cx, double cy) {
      double d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
      return d > 1e-9 ? 1 : (d < -1e-9 ? -1 : 0);
    };
    if (a.c == b.c || a.v == b.v) return false;  // shared endpoint bundles
    int o1 = orient(a.x1, a.y1, a.x2, a.y2, b.x1, b.y1);
    int o2 = orient(a.x1, a.y1, a.x2, a.y2, b.x2, b.y2);
    int o3 = orient(b.x1, b.y1, b.x2, b.y2, a.x1, a.y1);
    int o4 = orient(b.x1, b.y1, b.x2, b.y2, a.x2, a.y2);
    return o1 != o2 && o3 != o4 && o1 && o2 && o3 && o4;
  };
  for (size_t i = 0; i < segs.size(); ++i)
    for (size_t j = i + 1; j < segs.size(); ++j)
      if (cross(segs[i], segs[j])) return std::nullopt;

  EmbeddedGraph g;
  g.rotation.assign(n + m, {});
  clause_edge->assign(m, {-1, -1, -1});
  std::vector<std::vector<std::pair<double, DartId>>> at(n + m);
  for (int c = 0; c < m; ++c)
    for (int slot = 0; slot < 3; ++slot) {
      int v = std::abs(cnf.clauses[c][slot]) - 1;
      int e = static_cast<int>(g.edges.size());
      g.edges.push_back({v, n + c});
      (*clause_edge)[c][slot] = e;
      double base = std::atan2(pos[n + c].second - pos[v].second, pos[n + c].first - pos[v].first);
      at[v].push_back({base + 0.001 * slot, make_dart(e, 0)});
      at[n + c].push_back(
          {std::atan2(pos[v].second - pos[n + c].second, pos[v].first - pos[n + c].first) -
               0.001 * slot,
           make_dart(e, 1)});
    }
  for (int v = 0; v < n + m; ++v) {
    std::sort(at[v].begin(), at[v].end(), [](auto& x, auto& y) { return x.first > y.first; });
    for (auto& [ang, d] : at[v]) g.rotation[v].push_back(d);
  }
  if (!check_planarity(g).planar) return std::nullopt;
  if (g.num_edges() > 0) {
    // outer face from the bottom-most node with edges
    int low = -1;
    for (int v = 0; v < g.num_nodes(); ++v) {
      if (g.rotation[v].empty()) continue;
      if (low < 0 || pos[v].second < pos[low].second ||
          (pos[v].second == pos[low].second && pos[v].first < pos[low].first))
        low = v;
    }
    g.outer_face_dart = g.rotation[low].front();
  }
  return g;
}

}  // namespace

std::vector<PlanarCnf> enumerate_cnf_family(int max_vars, int max_clauses) {
  std::vector<PlanarCnf> family;
  // literals over variables 1..V
  for (int V = 1; V <= max_vars; ++V) {
    std::vector<int> lits;
    for (int v = 1; v <= V; ++v) {
      lits.push_back(v);
      lits.push_back(-v);
    }
    // canonical clauses: sorted literal triples (repeats allowed)
    std::vector<std::array<int, 3>> clause_pool;
    for (size_t i = 0; i < lits.size(); ++i)
      for (size_t j = i; j < lits.size(); ++j)
        for (size_t k = j; k < lits.size(); ++k)
          clause_pool.push_back({lits[i], lits[j], lits[k]});

    // formulas: non-decreasing clause-index sequences of length 1..max_clauses
    std::vector<int> pick;
    auto emit = [&]() {
      PlanarCnf cnf;
      cnf.num_vars = V;
      for (int idx : pick) cnf.clauses.push_back(clause_pool[idx]);
      std::map<int, int> occ;
      std::map<int, std::set<int>> pol;
      bool ok = true;
      for (auto& cl : cnf.clauses)
        for (int lit : cl) {
          ++occ[std::abs(lit)];
          pol[std::abs(lit)].insert(lit > 0 ? 1 : -1);
        }
      for (int v = 1; v <= V && ok; ++v) ok = occ.count(v) && occ[v] <= 3 && pol[v].size() == 2;
      if (!ok) return;
      std::vector<int> order(V);
      for (int i = 0; i < V; ++i) order[i] = i;
      bool embedded = false;
      do {
        for (int mask = 0; mask < (1 << cnf.clauses.size()) && !embedded; ++mask) {
          std::vector<std::array<int, 3>> ce;
          auto g = layout_incidence(cnf, order, mask, &ce);
          if (g) {
            cnf.incidence = *g;
            cnf.clause_edge = ce;
            embedded = true;
          }
        }
      } while (!embedded && std::next_permutation(order.begin(), order.end()));
      if (embedded) {
        validate_cnf(cnf);
        family.push_back(cnf);
      }
    };
    std::function<void(int, int)> rec_exact = [&](int from, int remaining) {
      if (remaining == 0) {
        emit();
        return;
      }
      for (int idx = from; idx < static_cast<int>(clause_pool.size()); ++idx) {
        pick.push_back(idx);
        rec_exact(idx, remaining - 1);
        pick.pop_back();
      }
    };
    for (int len = 1; len <= max_clauses; ++len) rec_exact(0, len);
  }
  return family;
}

}  // namespace uncross
