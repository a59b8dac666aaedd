#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uncross/embed.hpp"
#include "uncross/rational.hpp"

namespace uncross {

enum class WalkMode { path, trail, walk };
enum class CapacityMode { edge, node };

std::string to_string(WalkMode m);
std::optional<WalkMode> walk_mode_from_string(const std::string& s);

struct Walk {
  std::vector<DartId> darts;

  bool empty() const { return darts.empty(); }
  size_t length() const { return darts.size(); }
  bool operator==(const Walk& o) const { return darts == o.darts; }
};

struct Demand {
  int id = 0;
  int s = -1;
  int t = -1;
  Int d = 0;
};

struct Instance {
  EmbeddedGraph graph;
  std::vector<Demand> demands;
  std::vector<Int> capacities;  // per edge, or per node when capacity_mode == node
  CapacityMode capacity_mode = CapacityMode::edge;
  std::map<std::string, std::string> tags;  // e.g. {"class", "ring"}
  std::vector<std::string> node_tags;       // optional gadget provenance, "" if untagged
  std::vector<std::string> edge_tags;

  Int capacity_of_edge(int e) const { return capacities[e]; }
  Int max_demand() const {
    Int m = 0;
    for (const auto& h : demands)
      if (h.d > m) m = h.d;
    return m;
  }
};

struct FlowEntry {
  Walk walk;
  Rat value;
};

struct Multiflow {
  WalkMode mode = WalkMode::path;
  std::vector<std::vector<FlowEntry>> flows;  // indexed like Instance::demands

  size_t support_size() const {
    size_t n = 0;
    for (const auto& c : flows) n += c.size();
    return n;
  }
};

struct WalkNotInGraph : std::runtime_error {
  explicit WalkNotInGraph(const std::string& w) : std::runtime_error(w) {}
};

// Node sequence visited by the walk (length + 1 entries).
std::vector<int> walk_nodes(const EmbeddedGraph& g, const Walk& w);

// Strictest mode the walk satisfies. Throws WalkNotInGraph on a broken dart
// sequence.
WalkMode classify_walk(const EmbeddedGraph& g, const Walk& w);

// Number of times edge e occurs in w.
int walk_edge_multiplicity(const Walk& w, int e);

Walk reverse_walk(const Walk& w);

// Sum of values of walks containing e; multiplicative weighs by occurrence
// count m(P, e).
Rat edge_flow(const Multiflow& f, int e, bool multiplicative);
Rat node_flow(const EmbeddedGraph& g, const Multiflow& f, int v, bool multiplicative);

struct FeasibilityReport {
  bool capacities_ok = true;
  bool demands_ok = true;
  std::vector<Rat> slack;    // per edge (edge mode) or per node (node mode)
  std::vector<Rat> routed;   // per commodity
  bool feasible() const { return capacities_ok && demands_ok; }
};

// Exact feasibility check in the chosen capacity accounting. Walks must live
// in inst.graph and connect their commodity's terminals (s to t after
// canonicalization); otherwise WalkNotInGraph.
FeasibilityReport verify_feasible(const Instance& inst, const Multiflow& f, bool multiplicative);

// Weighted value; weights per commodity, empty means all-ones.
Rat flow_value(const Multiflow& f, const std::vector<Rat>& weights = {});

// Removes closed sub-walks between repeats until the walk satisfies
// target_mode; shortest removable sub-walk first, earliest index on ties.
Walk shortcircuit(const EmbeddedGraph& g, const Walk& w, WalkMode target_mode);

// Reorients every walk to run s -> t; drops zero-value entries; merges
// identical walks of one commodity.
Multiflow canonicalize_flow(const Instance& inst, const Multiflow& f);

}  // namespace uncross
