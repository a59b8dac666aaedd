#include "uncross/instance.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace uncross {

std::string to_string(WalkMode m) {
  switch (m) {
    case WalkMode::path: return "path";
    case WalkMode::trail: return "trail";
    default: return "walk";
  }
}

std::optional<WalkMode> walk_mode_from_string(const std::string& s) {
  if (s == "path") return WalkMode::path;
  if (s == "trail") return WalkMode::trail;
  if (s == "walk") return WalkMode::walk;
  return std::nullopt;
}

std::vector<int> walk_nodes(const EmbeddedGraph& g, const Walk& w) {
  std::vector<int> nodes;
  nodes.reserve(w.darts.size() + 1);
  if (w.darts.empty()) return nodes;
  nodes.push_back(g.dart_tail(w.darts[0]));
  for (DartId d : w.darts) nodes.push_back(g.dart_head(d));
  return nodes;
}

WalkMode classify_walk(const EmbeddedGraph& g, const Walk& w) {
  if (w.darts.empty()) throw WalkNotInGraph("empty walk");
  for (DartId d : w.darts)
    if (d < 0 || d >= g.num_darts()) throw WalkNotInGraph("dart out of range");
  for (size_t i = 0; i + 1 < w.darts.size(); ++i)
    if (g.dart_head(w.darts[i]) != g.dart_tail(w.darts[i + 1]))
      throw WalkNotInGraph("non-incident consecutive darts");

  std::set<int> edges_seen;
  bool edge_repeat = false;
  for (DartId d : w.darts) edge_repeat |= !edges_seen.insert(dart_edge(d)).second;

  auto nodes = walk_nodes(g, w);
  std::set<int> nodes_seen;
  bool node_repeat = false;
  for (int v : nodes) node_repeat |= !nodes_seen.insert(v).second;

  if (!node_repeat) return WalkMode::path;
  if (!edge_repeat) return WalkMode::trail;
  return WalkMode::walk;
}

int walk_edge_multiplicity(const Walk& w, int e) {
  int m = 0;
  for (DartId d : w.darts) m += dart_edge(d) == e;
  return m;
}

Walk reverse_walk(const Walk& w) {
  Walk r;
  r.darts.reserve(w.darts.size());
  for (auto it = w.darts.rbegin(); it != w.darts.rend(); ++it) r.darts.push_back(dart_twin(*it));
  return r;
}

Rat edge_flow(const Multiflow& f, int e, bool multiplicative) {
  Rat total = 0;
  for (const auto& commodity : f.flows) {
    for (const auto& entry : commodity) {
      int m = walk_edge_multiplicity(entry.walk, e);
      if (m == 0) continue;
      total += multiplicative ? entry.value * m : entry.value;
    }
  }
  return total;
}

Rat node_flow(const EmbeddedGraph& g, const Multiflow& f, int v, bool multiplicative) {
  Rat total = 0;
  for (const auto& commodity : f.flows) {
    for (const auto& entry : commodity) {
      auto nodes = walk_nodes(g, entry.walk);
      int m = static_cast<int>(std::count(nodes.begin(), nodes.end(), v));
      if (m == 0) continue;
      total += multiplicative ? entry.value * m : entry.value;
    }
  }
  return total;
}

FeasibilityReport verify_feasible(const Instance& inst, const Multiflow& f, bool multiplicative) {
  const EmbeddedGraph& g = inst.graph;
  FeasibilityReport rep;
  if (f.flows.size() != inst.demands.size()) throw WalkNotInGraph("commodity count mismatch");

  rep.routed.assign(inst.demands.size(), Rat(0));
  for (size_t c = 0; c < f.flows.size(); ++c) {
    for (const auto& entry : f.flows[c]) {
      classify_walk(g, entry.walk);  // throws on malformed
      auto nodes = walk_nodes(g, entry.walk);
      int s = inst.demands[c].s, t = inst.demands[c].t;
      bool forward = nodes.front() == s && nodes.back() == t;
      bool backward = nodes.front() == t && nodes.back() == s;
      if (!forward && !backward) throw WalkNotInGraph("walk endpoints do not match demand");
      rep.routed[c] += entry.value;
    }
    if (rep.routed[c] < Rat(inst.demands[c].d)) rep.demands_ok = false;
  }

  if (inst.capacity_mode == CapacityMode::edge) {
    rep.slack.resize(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
      rep.slack[e] = Rat(inst.capacities[e]) - edge_flow(f, e, multiplicative);
      if (rep.slack[e] < 0) rep.capacities_ok = false;
    }
  } else {
    rep.slack.resize(g.num_nodes());
    for (int v = 0; v < g.num_nodes(); ++v) {
      rep.slack[v] = Rat(inst.capacities[v]) - node_flow(g, f, v, multiplicative);
      if (rep.slack[v] < 0) rep.capacities_ok = false;
    }
  }
  return rep;
}

Rat flow_value(const Multiflow& f, const std::vector<Rat>& weights) {
  Rat total = 0;
  for (size_t c = 0; c < f.flows.size(); ++c) {
    Rat w = weights.empty() ? Rat(1) : weights[c];
    for (const auto& entry : f.flows[c]) total += w * entry.value;
  }
  return total;
}

namespace {

// Finds the shortest removable closed sub-walk for the target mode; returns
// (begin, end) dart range to erase, or nullopt when already in mode.
std::optional<std::pair<size_t, size_t>> find_removal(const EmbeddedGraph& g, const Walk& w,
                                                      WalkMode target) {
  std::optional<std::pair<size_t, size_t>> best;
  auto consider = [&](size_t from, size_t to) {
    size_t len = to - from;
    if (!best || len < best->second - best->first) best = {from, to};
  };
  if (target == WalkMode::path) {
    auto nodes = walk_nodes(g, w);
    for (size_t i = 0; i < nodes.size(); ++i)
      for (size_t j = i + 1; j < nodes.size(); ++j)
        if (nodes[i] == nodes[j]) {
          consider(i, j);  // erase darts [i, j)
          break;           // nearer repeats of nodes[i] dominate farther ones
        }
  } else if (target == WalkMode::trail) {
    for (size_t i = 0; i < w.darts.size(); ++i)
      for (size_t j = i + 1; j < w.darts.size(); ++j)
        if (dart_edge(w.darts[i]) == dart_edge(w.darts[j])) {
          if (w.darts[i] == w.darts[j])
            consider(i, j);  // same direction: erase [i, j)
          else
            consider(i, j + 1);  // opposite: erase [i, j]
          break;
        }
  }
  return best;
}

}  // namespace

Walk shortcircuit(const EmbeddedGraph& g, const Walk& w, WalkMode target_mode) {
  Walk cur = w;
  while (true) {
    auto removal = find_removal(g, cur, target_mode);
    if (!removal) return cur;
    cur.darts.erase(cur.darts.begin() + removal->first, cur.darts.begin() + removal->second);
  }
}

Multiflow canonicalize_flow(const Instance& inst, const Multiflow& f) {
  Multiflow out;
  out.mode = f.mode;
  out.flows.resize(f.flows.size());
  for (size_t c = 0; c < f.flows.size(); ++c) {
    std::map<std::vector<DartId>, Rat> merged;
    for (const auto& entry : f.flows[c]) {
      if (entry.value == 0) continue;
      Walk w = entry.walk;
      auto nodes = walk_nodes(inst.graph, w);
      if (nodes.front() == inst.demands[c].t && nodes.back() == inst.demands[c].s)
        w = reverse_walk(w);
      merged[w.darts] += entry.value;
    }
    for (auto& [darts, value] : merged)
      if (value != 0) out.flows[c].push_back({Walk{darts}, value});
  }
  return out;
}

}  // namespace uncross
