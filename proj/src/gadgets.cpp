#include "uncross/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "uncross/rng.hpp"

namespace uncross {

namespace gadget_detail {

constexpr double kPi = 3.14159265358979323846;

// Coordinate-driven instance builder. Rotations come from departure angles
// (straight-line by default, explicit overrides for curved edges); the outer
// face is taken at the bottom-most node.
class Builder {
 public:
  int node(const std::string& name, double x, double y, const std::string& tag = "") {
    if (ids_.count(name)) throw std::logic_error("duplicate node " + name);
    int id = static_cast<int>(pos_.size());
    ids_[name] = id;
    pos_.push_back({x, y});
    node_tags_.push_back(tag);
    return id;
  }

  bool has(const std::string& name) const { return ids_.count(name) > 0; }
  int id(const std::string& name) const { return ids_.at(name); }

  int edge(const std::string& a, const std::string& b, const std::string& tag = "", long cap = 1) {
    int e = static_cast<int>(edges_.size());
    edges_.push_back({id(a), id(b)});
    edge_tags_.push_back(tag);
    caps_.push_back(cap);
    angle_override_.push_back({1e9, 1e9});
    return e;
  }

  // explicit departure angles (degrees) at each end, for curved edges
  int curved(const std::string& a, const std::string& b, double deg_at_a, double deg_at_b,
             const std::string& tag = "", long cap = 1) {
    int e = edge(a, b, tag, cap);
    angle_override_.back() = {deg_at_a * kPi / 180.0, deg_at_b * kPi / 180.0};
    return e;
  }

  void demand(const std::string& s, const std::string& t, long d = 1) {
    demands_.push_back({static_cast<int>(demands_.size()), id(s), id(t), d});
  }

  void set_capacity(int e, long cap) { caps_[e] = cap; }
  void tag(const std::string& key, const std::string& value) { tags_[key] = value; }

  std::pair<double, double> position(const std::string& name) const { return pos_[id(name)]; }

  Instance build(CapacityMode mode = CapacityMode::edge) const {
    Instance inst;
    EmbeddedGraph& g = inst.graph;
    g.rotation.assign(pos_.size(), {});
    for (auto& e : edges_) g.edges.push_back({e.first, e.second});

    auto angle_of = [&](DartId d) {
      int e = dart_edge(d);
      double ov = dart_side(d) == 0 ? angle_override_[e].first : angle_override_[e].second;
      if (ov < 1e8) return ov;
      int u = g.dart_tail(d), w = g.dart_head(d);
      return std::atan2(pos_[w].second - pos_[u].second, pos_[w].first - pos_[u].first);
    };
    std::vector<std::vector<DartId>> at(pos_.size());
    for (int e = 0; e < g.num_edges(); ++e) {
      at[g.edges[e].a].push_back(make_dart(e, 0));
      at[g.edges[e].b].push_back(make_dart(e, 1));
    }
    for (size_t v = 0; v < pos_.size(); ++v) {
      std::sort(at[v].begin(), at[v].end(),
                [&](DartId x, DartId y) { return angle_of(x) > angle_of(y); });
      g.rotation[v] = at[v];
    }
    int low = -1;
    for (size_t v = 0; v < pos_.size(); ++v) {
      if (g.rotation[v].empty()) continue;
      if (low < 0 || pos_[v].second < pos_[low].second ||
          (pos_[v].second == pos_[low].second && pos_[v].first < pos_[low].first))
        low = static_cast<int>(v);
    }
    if (low >= 0) g.outer_face_dart = g.rotation[low].front();

    inst.capacity_mode = mode;
    if (mode == CapacityMode::edge) {
      for (long c : caps_) inst.capacities.push_back(c);
    } else {
      inst.capacities.assign(pos_.size(), 1);
    }
    inst.demands = demands_;
    inst.tags = tags_;
    inst.node_tags = node_tags_;
    inst.edge_tags = edge_tags_;

    PlanarityReport rep = check_planarity(g);
    if (!rep.planar) throw std::logic_error("generated instance is not planar");
    return inst;
  }

  // instantiate another builder's content at an offset, names prefixed
  void place(const Builder& tpl, const std::string& prefix, double dx, double dy) {
    std::vector<std::string> names(tpl.pos_.size());
    for (auto& [n, i] : tpl.ids_) names[i] = n;
    for (size_t i = 0; i < tpl.pos_.size(); ++i)
      node(prefix + names[i], tpl.pos_[i].first + dx, tpl.pos_[i].second + dy,
           tpl.node_tags_[i].empty() ? "" : prefix + tpl.node_tags_[i]);
    for (size_t e = 0; e < tpl.edges_.size(); ++e) {
      edges_.push_back({id(prefix + names[tpl.edges_[e].first]),
                        id(prefix + names[tpl.edges_[e].second])});
      edge_tags_.push_back(prefix + tpl.edge_tags_[e]);
      caps_.push_back(tpl.caps_[e]);
      angle_override_.push_back(tpl.angle_override_[e]);
    }
    for (const auto& d : tpl.demands_)
      demands_.push_back({static_cast<int>(demands_.size()), id(prefix + names[d.s]),
                          id(prefix + names[d.t]), d.d});
  }

  // rotate the template's coordinates by deg counter-clockwise around origin
  void rotate_all(double deg) {
    double c = std::cos(deg * kPi / 180.0), s = std::sin(deg * kPi / 180.0);
    for (auto& p : pos_) p = {c * p.first - s * p.second, s * p.first + c * p.second};
    for (auto& ov : angle_override_) {
      if (ov.first < 1e8) ov.first += deg * kPi / 180.0;
      if (ov.second < 1e8) ov.second += deg * kPi / 180.0;
    }
  }

  std::vector<int> edges_tagged(const std::string& tag) const {
    std::vector<int> out;
    for (size_t e = 0; e < edge_tags_.size(); ++e)
      if (edge_tags_[e] == tag) out.push_back(static_cast<int>(e));
    return out;
  }

 private:
  std::map<std::string, int> ids_;
  std::vector<std::pair<double, double>> pos_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::pair<double, double>> angle_override_;
  std::vector<std::string> node_tags_, edge_tags_;
  std::vector<long> caps_;
  std::vector<Demand> demands_;
  std::map<std::string, std::string> tags_;
};

Walk route(const EmbeddedGraph& g, const std::vector<int>& nodes) {
  Walk w;
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    bool found = false;
    for (DartId d : g.rotation[nodes[i]])
      if (!found && g.dart_head(d) == nodes[i + 1]) {
        w.darts.push_back(d);
        found = true;
      }
    if (!found) throw std::logic_error("route: nodes not adjacent");
  }
  return w;
}

// Terminal gadget template, figure coordinates. Exits are the nodes "x"
// (top right) and "y" (bottom right).
Builder terminal_gadget_template() {
  Builder b;
  b.node("u1", 0, 2);
  b.node("s1", 1, 2, "tg-s1");
  b.node("s2", 3, 2, "tg-s2");
  b.node("u2", 4, 2);
  b.node("a1", 2, 4);
  b.node("b1", 2, 0);
  b.node("v1", 6, 2);
  b.node("t1", 7, 2, "tg-t1");
  b.node("c1", 8, 4);
  b.node("d1", 8, 0);
  b.node("x", 10.5, 4, "tg-exit-x");
  b.node("y", 10.5, 0, "tg-exit-y");
  b.edge("s1", "u1");
  b.edge("s2", "u2");
  b.edge("t1", "v1");
  b.edge("u1", "a1");
  b.edge("u1", "b1");
  b.edge("u2", "a1");
  b.edge("u2", "b1");
  b.edge("a1", "c1");
  b.edge("b1", "d1");
  b.edge("c1", "v1");
  b.edge("d1", "v1");
  b.edge("c1", "x", "tg-cx");
  b.edge("d1", "y", "tg-dy");
  b.demand("s1", "t1");
  return b;
}

// Coupled arcs assembly: two horizontal rails with six vertical gadget lanes.
void build_coupled_arcs_into(Builder& b, const std::string& prefix) {
  const double top = 10, bot = -6;
  const char* topname[8] = {"y0", "x1", "y1", "x2", "y2", "x3", "y3", "x4"};
  const char* botname[8] = {"z0", "w1", "z1", "w2", "z2", "w3", "z3", "w4"};
  std::vector<double> xs{0, 14.5, 29.5, 44.5, 59.5, 74.5, 89.5, 94};
  for (int i = 0; i < 8; ++i) {
    b.node(prefix + topname[i], xs[i], top, "ca-top");
    b.node(prefix + botname[i], xs[i], bot, "ca-bottom");
  }
  for (int i = 0; i + 1 < 8; ++i) {
    b.edge(prefix + topname[i], prefix + topname[i + 1], prefix + "rail-top");
    b.edge(prefix + botname[i], prefix + botname[i + 1], prefix + "rail-bottom");
  }
  Builder tpl = terminal_gadget_template();
  for (int lane = 0; lane < 6; ++lane) {
    std::string gp = prefix + "g" + std::to_string(lane) + ".";
    b.place(tpl, gp, 4 + 15.0 * lane, 0);
    b.edge(gp + "x", prefix + topname[lane + 1], prefix + "att-top");
    b.edge(gp + "y", prefix + botname[lane + 1], prefix + "att-bottom");
  }
  for (int pair = 0; pair < 3; ++pair)
    b.demand(prefix + "g" + std::to_string(2 * pair) + ".s2",
             prefix + "g" + std::to_string(2 * pair + 1) + ".s2");
}

}  // namespace gadget_detail

using gadget_detail::Builder;
using gadget_detail::build_coupled_arcs_into;
using gadget_detail::route;
using gadget_detail::terminal_gadget_template;

// ------------------------------------------------------------------
// canonical instances
// ------------------------------------------------------------------

Instance gen_double_diamond() {
  Builder b;
  b.node("s1", 1, 2, "terminal");
  b.node("s2", 3, 2, "terminal");
  b.node("t1", 7, 2, "terminal");
  b.node("t2", 9, 2, "terminal");
  b.node("u1", 0, 2);
  b.node("u2", 4, 2);
  b.node("v1", 6, 2);
  b.node("v2", 10, 2);
  b.node("l1", 2, 0);
  b.node("l2", 8, 0);
  b.node("h1", 2, 4);
  b.node("h2", 8, 4);
  b.edge("l1", "l2");
  b.edge("l1", "u1");
  b.edge("l1", "u2");
  b.edge("l2", "v1");
  b.edge("l2", "v2");
  b.edge("h1", "h2");
  b.edge("h1", "u1");
  b.edge("h1", "u2");
  b.edge("h2", "v1");
  b.edge("h2", "v2");
  b.edge("u1", "s1");
  b.edge("s2", "u2");
  b.edge("v1", "t1");
  b.edge("t2", "v2");
  b.demand("s1", "t1");
  b.demand("s2", "t2");
  b.tag("name", "double-diamond");
  return b.build();
}

Instance gen_keyhole() {
  Builder b;
  b.node("s1", -2, 0, "terminal");
  b.node("t1", 2, 0, "terminal");
  b.node("s2", 0, -2, "terminal");
  b.node("t2", 0, 1, "terminal");
  b.node("x", 0, 0);
  b.node("y1", -1, 2);
  b.node("y2", 1, 2);
  b.edge("s1", "x");
  b.edge("x", "t1");
  b.edge("s2", "x");
  b.edge("x", "t2");
  // the lobe around t2: x -> y1 departs at 147 deg; x -> y2 departs at 33 deg
  b.curved("x", "y1", 147, -63);
  b.edge("y1", "y2");
  b.curved("y2", "x", -87, 33);
  b.demand("s1", "t1");
  b.demand("s2", "t2");
  b.tag("name", "keyhole");
  return b.build();
}

Instance gen_ring_with_leaves() {
  Builder b;
  struct P {
    const char* name;
    double deg;
  };
  std::vector<P> outer{{"s1", 180}, {"t2", 90}, {"t1", 0}, {"s2", -90}};
  for (auto& p : outer) {
    b.node(p.name, 2 * std::cos(p.deg * gadget_detail::kPi / 180),
           2 * std::sin(p.deg * gadget_detail::kPi / 180), "terminal");
    b.node(std::string("r") + p.name, std::cos(p.deg * gadget_detail::kPi / 180),
           std::sin(p.deg * gadget_detail::kPi / 180));
  }
  for (auto& p : outer) b.edge(p.name, std::string("r") + p.name);
  const char* ring[4] = {"rs1", "rt2", "rt1", "rs2"};
  double angs[4] = {180, 90, 0, -90};
  for (int i = 0; i < 4; ++i) {
    int j = (i + 1) % 4;
    b.curved(ring[i], ring[j], angs[i] - 90, angs[j] + 90);
  }
  b.demand("s1", "t1");
  b.demand("s2", "t2");
  b.tag("name", "ring-with-leaves");
  return b.build();
}

Instance gen_terminal_gadget() {
  Builder b = terminal_gadget_template();
  b.node("t2", 13, 2, "terminal");
  b.node("ea", 10.5, 6);
  b.node("eb", 10.5, -2);
  b.edge("x", "t2");
  b.edge("y", "t2");
  b.edge("ea", "x");
  b.edge("y", "eb");
  b.curved("ea", "eb", 0, 0, "bypass");
  b.demand("s2", "t2");
  b.demand("ea", "eb");
  b.tag("name", "terminal-gadget");
  return b.build();
}

Instance gen_coupled_arcs(int externals) {
  Builder b;
  build_coupled_arcs_into(b, "ca.");
  if (externals >= 1) {
    b.node("ea", -4, 10, "terminal");
    b.node("eb", 98, 10, "terminal");
    b.edge("ea", "ca.y0");
    b.edge("ca.x4", "eb");
    b.demand("ea", "eb");
  }
  if (externals >= 2) {
    b.node("ec", -4, -6, "terminal");
    b.node("ed", 98, -6, "terminal");
    b.edge("ec", "ca.z0");
    b.edge("ca.w4", "ed");
    b.demand("ec", "ed");
  }
  b.tag("name", "coupled-arcs");
  return b.build();
}

Instance gen_clause_gadget(const std::vector<int>& removed) {
  Builder b;
  b.node("s", 0, 0, "clause-s");
  b.node("x1", 0, 100);
  b.node("x2", 40, 100);
  b.node("t", 40, 0, "clause-t");
  b.node("u1", -12, 20);
  b.node("v1", -12, 80);
  b.node("u2", 52, 80);
  b.node("v2", 52, 20);
  b.node("u3", 12, -16);
  b.node("v3", 28, -16);
  b.edge("x1", "x2");
  b.edge("s", "u1");
  b.edge("v1", "x1");
  b.edge("x2", "u2");
  b.edge("v2", "t");
  b.edge("s", "u3");
  b.edge("v3", "t");
  auto removed_has = [&](int i) {
    return std::find(removed.begin(), removed.end(), i) != removed.end();
  };
  if (!removed_has(0)) b.edge("u1", "v1", "eprime1");
  if (!removed_has(1)) b.edge("u2", "v2", "eprime2");
  if (!removed_has(2)) b.edge("u3", "v3", "eprime3");

  const char* r1[6] = {"x1L", "y1L", "x2L", "y2L", "x3L", "y3L"};
  const char* r2[6] = {"w1L", "z1L", "w2L", "z2L", "w3L", "z3L"};
  for (int i = 0; i < 6; ++i) {
    double h = 16.0 * (i + 1) - 4;
    b.node(r1[i], 0, h, "rail1");
    b.node(r2[i], 40, h, "rail2");
  }
  b.edge("s", r1[0], "rail1-seg");
  for (int i = 0; i + 1 < 6; ++i) b.edge(r1[i], r1[i + 1], "rail1-seg");
  b.edge(r1[5], "x1", "rail1-seg");
  b.edge("t", r2[0], "rail2-seg");
  for (int i = 0; i + 1 < 6; ++i) b.edge(r2[i], r2[i + 1], "rail2-seg");
  b.edge(r2[5], "x2", "rail2-seg");

  Builder tpl = terminal_gadget_template();
  tpl.rotate_all(90);  // exits move to the top edge: x at (-4, 10.5), y at (0, 10.5)
  for (int lane = 0; lane < 6; ++lane) {
    double h = 16.0 * (lane + 1) - 4;
    std::string gp = "cg" + std::to_string(lane) + ".";
    b.place(tpl, gp, 22, h - 16.5);
    b.edge(gp + "x", r1[lane], "att1");
    b.edge(gp + "y", r2[lane], "att2");
  }
  for (int pair = 0; pair < 3; ++pair)
    b.demand("cg" + std::to_string(2 * pair) + ".s2", "cg" + std::to_string(2 * pair + 1) + ".s2");
  b.demand("s", "t");
  b.tag("name", "clause-gadget");
  return b.build();
}

// ------------------------------------------------------------------
// instance-class generators
// ------------------------------------------------------------------

namespace {

Multiflow empty_flow(const Instance& inst, WalkMode mode = WalkMode::path) {
  Multiflow f;
  f.mode = mode;
  f.flows.resize(inst.demands.size());
  return f;
}

void set_capacities_to_cover(Instance& inst, const std::vector<const Multiflow*>& flows) {
  for (int e = 0; e < inst.graph.num_edges(); ++e) {
    Rat need = 0;
    for (const Multiflow* f : flows) need = std::max(need, edge_flow(*f, e, false));
    Int cap = rat_ceil(need);
    if (cap < 1) cap = 1;
    inst.capacities[e] = cap;
  }
}

}  // namespace

GeneratedInstance gen_ring(std::uint64_t seed, int size) {
  Rng rng(seed);
  int n = std::max(4, size);
  Builder b;
  for (int i = 0; i < n; ++i) {
    double ang = 90 - 360.0 * i / n;
    b.node("v" + std::to_string(i), std::cos(ang * gadget_detail::kPi / 180),
           std::sin(ang * gadget_detail::kPi / 180));
  }
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    double a1 = 90 - 360.0 * i / n, a2 = 90 - 360.0 * j / n;
    b.curved("v" + std::to_string(i), "v" + std::to_string(j), a1 - 90, a2 + 90, "ring");
  }
  int k = 2 + static_cast<int>(rng.below(3));
  std::vector<std::pair<int, int>> pairs;
  for (int c = 0; c < k; ++c) {
    int s = static_cast<int>(rng.below(n));
    int t = static_cast<int>(rng.below(n));
    if (s == t) t = (t + 1 + static_cast<int>(rng.below(n - 1))) % n;
    pairs.push_back({s, t});
    b.demand("v" + std::to_string(s), "v" + std::to_string(t),
             1 + static_cast<long>(rng.below(5)));
  }
  GeneratedInstance out;
  out.instance = b.build();
  Instance& inst = out.instance;
  inst.tags["class"] = "ring";

  out.witness = empty_flow(inst);
  for (size_t c = 0; c < inst.demands.size(); ++c) {
    const Demand& d = inst.demands[c];
    std::vector<int> cw, ccw;
    for (int v = d.s; v != d.t; v = (v + 1) % n) cw.push_back(v);
    cw.push_back(d.t);
    for (int v = d.s; v != d.t; v = (v - 1 + n) % n) ccw.push_back(v);
    ccw.push_back(d.t);
    long dl = static_cast<long>(d.d);
    Rat lam = Rat(rng.below(2 * dl + 1), 2);
    if (lam > Rat(d.d)) lam = Rat(d.d);
    if (lam > 0) out.witness.flows[c].push_back({route(inst.graph, cw), lam});
    if (Rat(d.d) - lam > 0) out.witness.flows[c].push_back({route(inst.graph, ccw), Rat(d.d) - lam});
  }
  set_capacities_to_cover(inst, {&out.witness});
  out.witness_strong = true;

  bool interleaved = false;
  for (size_t a = 0; a < pairs.size(); ++a)
    for (size_t bid = a + 1; bid < pairs.size(); ++bid) {
      auto in_arc = [&](int x, int from, int to) {
        for (int v = (from + 1) % n; v != to; v = (v + 1) % n)
          if (v == x) return true;
        return false;
      };
      interleaved |= in_arc(pairs[bid].first, pairs[a].first, pairs[a].second) !=
                     in_arc(pairs[bid].second, pairs[a].first, pairs[a].second);
    }
  inst.tags["leafable"] = interleaved ? "obstructed" : "plausible";
  return out;
}

GeneratedInstance gen_fully_planar(std::uint64_t seed, int size) {
  Rng rng(seed);
  int cols = std::max(3, static_cast<int>(std::sqrt(static_cast<double>(size))));
  int rows = std::max(3, size / cols);
  Builder b;
  auto name = [&](int r, int c) { return "n" + std::to_string(r) + "_" + std::to_string(c); };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) b.node(name(r, c), c, r);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) b.edge(name(r, c), name(r, c + 1));
      if (r + 1 < rows) b.edge(name(r, c), name(r + 1, c));
    }
  int want = std::max(1, (rows - 1) * (cols - 1) / 3);
  std::set<std::pair<int, int>> faces;
  for (int tries = 0; tries < 4 * want && static_cast<int>(faces.size()) < want; ++tries)
    faces.insert({static_cast<int>(rng.below(rows - 1)), static_cast<int>(rng.below(cols - 1))});
  std::vector<std::array<long, 4>> cells;
  for (auto [r, c] : faces) {
    long d = 1 + static_cast<long>(rng.below(5));
    long orient = static_cast<long>(rng.below(2));
    b.demand(name(r, c), name(r + 1, c + 1), d);
    cells.push_back({r, c, d, orient});
  }
  GeneratedInstance out;
  out.instance = b.build();
  Instance& inst = out.instance;
  inst.tags["class"] = "fully-planar";

  out.witness = empty_flow(inst);
  for (size_t i = 0; i < cells.size(); ++i) {
    auto [r, c, d, orient] = cells[i];
    std::vector<int> left{b.id(name(r, c)), b.id(name(r + 1, c)), b.id(name(r + 1, c + 1))};
    std::vector<int> right{b.id(name(r, c)), b.id(name(r, c + 1)), b.id(name(r + 1, c + 1))};
    Rat lam = Rat(1 + rng.below(2 * d - 1), 2);
    if (lam > Rat(d)) lam = Rat(d);
    if (orient) std::swap(left, right);
    if (lam > 0) out.witness.flows[i].push_back({route(inst.graph, left), lam});
    if (Rat(d) - lam > 0) out.witness.flows[i].push_back({route(inst.graph, right), Rat(d) - lam});
  }
  set_capacities_to_cover(inst, {&out.witness});
  out.witness_strong = true;
  return out;
}

GeneratedInstance gen_single_source(std::uint64_t seed, int size) {
  Rng rng(seed);
  int cols = std::max(4, static_cast<int>(std::sqrt(static_cast<double>(size))));
  int rows = std::max(4, size / cols);
  Builder b;
  auto name = [&](int r, int c) { return "n" + std::to_string(r) + "_" + std::to_string(c); };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) b.node(name(r, c), c, r);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) b.edge(name(r, c), name(r, c + 1));
      if (r + 1 < rows) b.edge(name(r, c), name(r + 1, c));
    }
  int k = std::min({rows - 1, cols - 1, 2 + static_cast<int>(rng.below(3))});
  std::vector<int> rs, cs;
  for (int i = 1; i < rows; ++i) rs.push_back(i);
  for (int i = 1; i < cols; ++i) cs.push_back(i);
  for (int i = 0; i < k; ++i) {
    std::swap(rs[i], rs[i + rng.below(rs.size() - i)]);
    std::swap(cs[i], cs[i + rng.below(cs.size() - i)]);
  }
  std::vector<std::pair<int, int>> sinks;
  for (int i = 0; i < k; ++i) {
    sinks.push_back({rs[i], cs[i]});
    b.demand(name(0, 0), name(rs[i], cs[i]), 1 + static_cast<long>(rng.below(5)));
  }
  GeneratedInstance out;
  out.instance = b.build();
  Instance& inst = out.instance;
  inst.tags["class"] = "single-source";

  out.witness = empty_flow(inst);
  for (size_t i = 0; i < sinks.size(); ++i) {
    auto [r, c] = sinks[i];
    long dl = static_cast<long>(inst.demands[i].d);
    std::vector<int> upper, lower;
    for (int rr = 0; rr <= r; ++rr) upper.push_back(b.id(name(rr, 0)));
    for (int cc = 1; cc <= c; ++cc) upper.push_back(b.id(name(r, cc)));
    for (int cc = 0; cc <= c; ++cc) lower.push_back(b.id(name(0, cc)));
    for (int rr = 1; rr <= r; ++rr) lower.push_back(b.id(name(rr, c)));
    Rat lam = Rat(1 + rng.below(2 * dl - 1), 2);
    if (lam > Rat(dl)) lam = Rat(dl);
    if (lam > 0) out.witness.flows[i].push_back({route(inst.graph, upper), lam});
    if (Rat(dl) - lam > 0) out.witness.flows[i].push_back({route(inst.graph, lower), Rat(dl) - lam});
  }
  set_capacities_to_cover(inst, {&out.witness});
  out.witness_strong = true;
  return out;
}

namespace {

GeneratedInstance chain_instance(std::uint64_t seed, int size, bool with_top_arc) {
  Rng rng(seed);
  int segments = std::max(3, size / 4);
  int branches = 2 + static_cast<int>(rng.below(2));
  Builder b;
  for (int j = 0; j <= segments; ++j) b.node("j" + std::to_string(j), 10.0 * j, 0);
  for (int s = 0; s < segments; ++s)
    for (int br = 0; br < branches; ++br) {
      std::string mid = "m" + std::to_string(s) + "_" + std::to_string(br);
      b.node(mid, 10.0 * s + 5, 2.0 * br - (branches - 1));
      b.edge("j" + std::to_string(s), mid, "seg" + std::to_string(s));
      b.edge(mid, "j" + std::to_string(s + 1), "seg" + std::to_string(s));
    }
  if (with_top_arc) {
    b.node("arc", 5.0 * segments, 6.0 + branches);
    b.edge("j0", "arc", "toparc");
    b.edge("arc", "j" + std::to_string(segments), "toparc");
  }
  int k = 2 + static_cast<int>(rng.below(3));
  std::vector<std::pair<int, int>> pairs;
  for (int c = 0; c < k; ++c) {
    int s = static_cast<int>(rng.below(segments));
    int t = s + 1 + static_cast<int>(rng.below(segments - s));
    pairs.push_back({s, t});
    b.demand("j" + std::to_string(s), "j" + std::to_string(t));
  }
  GeneratedInstance out;
  out.instance = b.build();
  Instance& inst = out.instance;
  inst.tags["class"] = with_top_arc ? "pairwise-planar" : "series-compliant";

  out.crossed = empty_flow(inst);
  out.has_crossed = true;
  for (size_t c = 0; c < pairs.size(); ++c) {
    auto [s, t] = pairs[c];
    std::vector<int> nodes{b.id("j" + std::to_string(s))};
    for (int seg = s; seg < t; ++seg) {
      int br = (static_cast<int>(c) + seg) % branches;
      nodes.push_back(b.id("m" + std::to_string(seg) + "_" + std::to_string(br)));
      nodes.push_back(b.id("j" + std::to_string(seg + 1)));
    }
    out.crossed.flows[c].push_back({route(inst.graph, nodes), Rat(1)});
  }
  out.witness = empty_flow(inst);
  for (size_t c = 0; c < pairs.size(); ++c) {
    auto [s, t] = pairs[c];
    int br = static_cast<int>(c) % branches;
    std::vector<int> nodes{b.id("j" + std::to_string(s))};
    for (int seg = s; seg < t; ++seg) {
      nodes.push_back(b.id("m" + std::to_string(seg) + "_" + std::to_string(br)));
      nodes.push_back(b.id("j" + std::to_string(seg + 1)));
    }
    out.witness.flows[c].push_back({route(inst.graph, nodes), Rat(1)});
  }
  set_capacities_to_cover(inst, {&out.witness, &out.crossed});
  return out;
}

}  // namespace

GeneratedInstance gen_series_compliant(std::uint64_t seed, int size) {
  return chain_instance(seed, size, false);
}

GeneratedInstance gen_pairwise_planar(std::uint64_t seed, int size) {
  return chain_instance(seed, size, true);
}

}  // namespace uncross
