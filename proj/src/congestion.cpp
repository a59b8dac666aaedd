#include "uncross/congestion.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace uncross {

std::vector<bool> ExpandedSupport::commodity_edge_mask(int h) const {
  std::vector<bool> keep(gphi.num_edges(), false);
  for (int e = 0; e < gphi.num_edges(); ++e) {
    const EdgeInfo& info = edge_info[e];
    switch (info.kind) {
      case EdgeKind::copy:
        keep[e] = family[info.occ.walk].commodity == h;
        break;
      case EdgeKind::chord:
      case EdgeKind::spoke:
        keep[e] = info.commodity == h;
        break;
      default:
        break;
    }
  }
  return keep;
}

ExpandedSupport build_expanded_support(const Instance& inst, const Multiflow& f,
                                       const Parallelization& phi) {
  const EmbeddedGraph& g = inst.graph;
  ExpandedSupport exp;
  Multiflow canon = canonicalize_flow(inst, f);
  exp.family = family_of_flow(canon);
  for (const auto& c : canon.flows)
    for (const auto& entry : c) exp.values.push_back(entry.value);
  exp.phi = phi;

  if (auto witness = check_parallelization_uncrossed(g, exp.family, phi))
    throw std::invalid_argument("parallelization is crossed at node " +
                                std::to_string(witness->node));

  auto disks = build_disks(g, exp.family, phi, /*with_ghosts=*/true);

  // one gphi node per disk slot; isolated original nodes carried through
  std::vector<std::vector<int>> slot_node(g.num_nodes());
  for (int v = 0; v < g.num_nodes(); ++v) {
    slot_node[v].resize(disks[v].slots.size());
    for (size_t i = 0; i < disks[v].slots.size(); ++i) slot_node[v][i] = exp.gphi.add_node();
    if (disks[v].slots.empty()) exp.gphi.add_node();
  }

  // rotation assembly: collect the four dart roles per slot, emit at the end
  struct SlotDarts {
    DartId out = -1, bnext = -1, inside = -1, bprev = -1;
  };
  std::vector<std::vector<SlotDarts>> sd(g.num_nodes());
  for (int v = 0; v < g.num_nodes(); ++v) sd[v].resize(disks[v].slots.size());

  auto add_edge_raw = [&](int na, int nb, ExpandedSupport::EdgeInfo info) {
    int e = static_cast<int>(exp.gphi.edges.size());
    exp.gphi.edges.push_back({na, nb});
    exp.edge_info.push_back(info);
    return e;
  };

  // copy / ghost edges, indexed for the outer-face rule
  std::map<std::pair<int, std::pair<int, int>>, int> copy_edge;  // (orig edge, occ) -> gphi edge
  std::vector<int> ghost_edge(g.num_edges(), -1);
  // locate slots: (dart, occ) -> slot index
  std::map<std::pair<DartId, std::pair<int, int>>, int> slot_at;
  for (int v = 0; v < g.num_nodes(); ++v)
    for (size_t i = 0; i < disks[v].slots.size(); ++i) {
      const auto& s = disks[v].slots[i];
      slot_at[{s.dart, {s.occ.walk, s.occ.index}}] = static_cast<int>(i);
    }

  for (int e = 0; e < g.num_edges(); ++e) {
    DartId da = make_dart(e, 0), db = make_dart(e, 1);
    int va = g.edges[e].a, vb = g.edges[e].b;
    if (phi.order[e].empty()) {
      int sa = slot_at.at({da, {-1, -1}});
      int sb = slot_at.at({db, {-1, -1}});
      ExpandedSupport::EdgeInfo info;
      info.kind = ExpandedSupport::EdgeKind::ghost;
      info.orig_edge = e;
      int ne = add_edge_raw(slot_node[va][sa], slot_node[vb][sb], info);
      ghost_edge[e] = ne;
      sd[va][sa].out = make_dart(ne, 0);
      sd[vb][sb].out = make_dart(ne, 1);
    } else {
      for (const auto& occ : phi.order[e]) {
        int sa = slot_at.at({da, {occ.walk, occ.index}});
        int sb = slot_at.at({db, {occ.walk, occ.index}});
        ExpandedSupport::EdgeInfo info;
        info.kind = ExpandedSupport::EdgeKind::copy;
        info.orig_edge = e;
        info.occ = occ;
        int ne = add_edge_raw(slot_node[va][sa], slot_node[vb][sb], info);
        copy_edge[{e, {occ.walk, occ.index}}] = ne;
        sd[va][sa].out = make_dart(ne, 0);
        sd[vb][sb].out = make_dart(ne, 1);
      }
    }
  }

  // boundary cycles
  for (int v = 0; v < g.num_nodes(); ++v) {
    int m = static_cast<int>(disks[v].slots.size());
    if (m < 2) continue;
    for (int i = 0; i < m; ++i) {
      int j = (i + 1) % m;
      ExpandedSupport::EdgeInfo info;
      info.kind = ExpandedSupport::EdgeKind::boundary;
      int ne = add_edge_raw(slot_node[v][i], slot_node[v][j], info);
      sd[v][i].bnext = make_dart(ne, 0);
      sd[v][j].bprev = make_dart(ne, 1);
    }
  }

  // chords
  for (int v = 0; v < g.num_nodes(); ++v)
    for (const auto& c : disks[v].chords) {
      ExpandedSupport::EdgeInfo info;
      info.kind = ExpandedSupport::EdgeKind::chord;
      info.walk = c.walk;
      info.commodity = exp.family[c.walk].commodity;
      int ne = add_edge_raw(slot_node[v][c.s1], slot_node[v][c.s2], info);
      sd[v][c.s1].inside = make_dart(ne, 0);
      sd[v][c.s2].inside = make_dart(ne, 1);
    }

  // hubs and spokes
  exp.hubs.assign(inst.demands.size(), {-1, -1});
  for (int v = 0; v < g.num_nodes(); ++v) {
    std::map<int, std::vector<int>> terminal_slots;  // commodity -> slot indices
    for (const auto& t : disks[v].terminals)
      terminal_slots[exp.family[t.walk].commodity].push_back(t.slot);
    for (auto& [h, slots] : terminal_slots) {
      std::sort(slots.begin(), slots.end());
      int hub = exp.gphi.add_node();
      if (v == inst.demands[h].s)
        exp.hubs[h].first = hub;
      else
        exp.hubs[h].second = hub;
      for (int s : slots) {
        ExpandedSupport::EdgeInfo info;
        info.kind = ExpandedSupport::EdgeKind::spoke;
        info.commodity = h;
        // the walk owning the slot
        for (const auto& t : disks[v].terminals)
          if (t.slot == s) info.walk = t.walk;
        int ne = add_edge_raw(hub, slot_node[v][s], info);
        exp.gphi.rotation[hub].push_back(make_dart(ne, 0));
        sd[v][s].inside = make_dart(ne, 1);
      }
    }
  }

  // slot rotations: clockwise [out, boundary-next, inside, boundary-prev]
  for (int v = 0; v < g.num_nodes(); ++v)
    for (size_t i = 0; i < disks[v].slots.size(); ++i) {
      auto& r = exp.gphi.rotation[slot_node[v][i]];
      const auto& s = sd[v][i];
      for (DartId d : {s.out, s.bnext, s.inside, s.bprev})
        if (d >= 0) r.push_back(d);
    }

  // outer face: the extreme copy on the outer side of the outer dart's channel
  if (g.outer_face_dart >= 0) {
    DartId d0 = g.outer_face_dart;
    int e0 = dart_edge(d0);
    int ne;
    if (phi.order[e0].empty()) {
      ne = ghost_edge[e0];
    } else if (dart_side(d0) == 0) {
      const auto& occ = phi.order[e0].front();
      ne = copy_edge.at({e0, {occ.walk, occ.index}});
    } else {
      const auto& occ = phi.order[e0].back();
      ne = copy_edge.at({e0, {occ.walk, occ.index}});
    }
    exp.gphi.outer_face_dart = make_dart(ne, dart_side(d0));
  }

  PlanarityReport rep = check_planarity(exp.gphi);
  if (!rep.planar)
    throw NotStronglyUncrossed("terminal hub insertion is blocked (genus " +
                               std::to_string(rep.total_genus) + ")");
  return exp;
}

ClockwiseOrder clockwise_order(const Instance& inst, const ExpandedSupport& exp, int h) {
  ClockwiseOrder out;
  int hub_s = exp.hubs[h].first;
  if (hub_s < 0) return out;

  std::vector<int> cyclic;  // family walk per spoke, clockwise about s
  for (DartId d : exp.gphi.rotation[hub_s]) cyclic.push_back(exp.edge_info[dart_edge(d)].walk);
  int k = static_cast<int>(cyclic.size());
  if (k == 1) {
    out.walks = cyclic;
    return out;
  }

  DeletionTrack dt = delete_edges_track_outer(exp.gphi, exp.commodity_edge_mask(h));
  int outer_face = -1;
  for (size_t fidx = 0; fidx < dt.new_faces.faces.size(); ++fidx)
    if (dt.region_of_new_face[fidx] == dt.outer_region) {
      outer_face = static_cast<int>(fidx);
      break;
    }
  if (outer_face < 0) throw std::logic_error("no face of the support absorbed the outer face");

  // sector between cyclic[i] and cyclic[i+1] = face owning the hub corner,
  // which is the face of the (i+1)-th spoke dart
  int cut = -1;
  for (int i = 0; i < k; ++i) {
    DartId spoke_next = exp.gphi.rotation[hub_s][(i + 1) % k];
    DartId mapped = dt.map_dart(spoke_next);
    if (dt.new_faces.face_of[mapped] == outer_face) {
      cut = i;
      break;
    }
  }
  if (cut < 0) throw std::logic_error("outer sector not adjacent to the s hub");
  for (int i = 1; i <= k; ++i) out.walks.push_back(cyclic[(cut + i) % k]);
  return out;
}

std::vector<EdgeClass> classify_inner_outer(const Instance& inst, const ExpandedSupport& exp,
                                            int h, const ClockwiseOrder& order) {
  std::vector<EdgeClass> cls(inst.graph.num_edges(), EdgeClass::unused);
  if (order.walks.empty()) return cls;
  std::set<int> outer_walks{order.walks.front(), order.walks.back()};
  for (int w : order.walks) {
    for (DartId d : exp.family[w].walk.darts) {
      int e = dart_edge(d);
      if (outer_walks.count(w))
        cls[e] = EdgeClass::outer;
      else if (cls[e] == EdgeClass::unused)
        cls[e] = EdgeClass::inner;
    }
  }
  return cls;
}

std::vector<Rat> trim_to_demand(const ExpandedSupport& exp, const ClockwiseOrder& order, int h,
                                const Int& d) {
  std::vector<Rat> vals;
  Rat total = 0;
  for (int w : order.walks) {
    vals.push_back(exp.values[w]);
    total += exp.values[w];
  }
  Rat target(d);
  if (total < target) throw DemandNotMet("commodity routes " + format_rat(total));
  Rat surplus = total - target;
  for (int i = static_cast<int>(vals.size()) - 1; i >= 0 && surplus > 0; --i) {
    Rat cut = std::min(vals[i], surplus);
    vals[i] -= cut;
    surplus -= cut;
  }
  return vals;
}

int central_walk_index(const std::vector<Rat>& trimmed, const Int& d) {
  Rat half = Rat(d) / 2;
  Rat prefix = 0;
  for (size_t i = 0; i < trimmed.size(); ++i) {
    prefix += trimmed[i];
    if (prefix >= half) return static_cast<int>(i);
  }
  return static_cast<int>(trimmed.size()) - 1;
}

Multiflow round_unsplittable(const Instance& inst, const ExpandedSupport& exp) {
  Multiflow out;
  out.mode = WalkMode::path;
  out.flows.resize(inst.demands.size());
  for (size_t h = 0; h < inst.demands.size(); ++h) {
    if (inst.demands[h].d == 0) continue;
    ClockwiseOrder order = clockwise_order(inst, exp, static_cast<int>(h));
    if (order.walks.empty()) throw DemandNotMet("no support walks");
    auto trimmed = trim_to_demand(exp, order, static_cast<int>(h), inst.demands[h].d);
    int istar = central_walk_index(trimmed, inst.demands[h].d);
    Walk q = shortcircuit(inst.graph, exp.family[order.walks[istar]].walk, WalkMode::path);
    out.flows[h].push_back({q, Rat(inst.demands[h].d)});
  }
  return out;
}

Multiflow round_integral_congestion2(const Instance& inst, const ExpandedSupport& exp) {
  Multiflow out;
  out.mode = WalkMode::path;
  out.flows.resize(inst.demands.size());
  for (size_t h = 0; h < inst.demands.size(); ++h) {
    const Int& d = inst.demands[h].d;
    if (d == 0) continue;
    ClockwiseOrder order = clockwise_order(inst, exp, static_cast<int>(h));
    if (order.walks.empty()) throw DemandNotMet("no support walks");
    auto trimmed = trim_to_demand(exp, order, static_cast<int>(h), d);

    // unit j's central walk is where the prefix first reaches j - 1/2; count
    // per walk the thresholds crossed in (prefix_{i-1}, prefix_i]
    std::map<std::vector<DartId>, Int> routed;
    Rat prefix = 0;
    for (size_t i = 0; i < trimmed.size(); ++i) {
      Rat lo = prefix;
      prefix += trimmed[i];
      Int jmax = rat_floor(prefix + Rat(1, 2));
      if (jmax > d) jmax = d;
      Int jmin = rat_floor(lo + Rat(1, 2)) + 1;
      if (jmin < 1) jmin = 1;
      if (jmax >= jmin) {
        Walk q = shortcircuit(inst.graph, exp.family[order.walks[i]].walk, WalkMode::path);
        routed[q.darts] += jmax - jmin + 1;
      }
    }
    for (auto& [darts, units] : routed) out.flows[h].push_back({Walk{darts}, Rat(units)});
  }
  return out;
}

namespace {

CongestionAudit audit_impl(const Instance& inst, const Multiflow& rounded, bool unsplittable) {
  CongestionAudit a;
  a.strict = unsplittable;
  Int dmax = inst.max_demand();
  a.flow.resize(inst.graph.num_edges());
  a.bound.resize(inst.graph.num_edges());
  for (int e = 0; e < inst.graph.num_edges(); ++e) {
    a.flow[e] = edge_flow(rounded, e, false);
    a.bound[e] = Rat(2 * inst.capacities[e]) + (unsplittable ? Rat(dmax) : Rat(0));
    bool ok = unsplittable ? a.flow[e] < a.bound[e] : a.flow[e] <= a.bound[e];
    a.ok = a.ok && ok;
  }
  return a;
}

}  // namespace

CongestionAudit audit_congestion2(const Instance& inst, const Multiflow& rounded) {
  return audit_impl(inst, rounded, false);
}
CongestionAudit audit_unsplittable(const Instance& inst, const Multiflow& rounded) {
  return audit_impl(inst, rounded, true);
}

bool private_region_disjoint(const Instance& inst, const ExpandedSupport& exp,
                             std::string* violation) {
  int k = static_cast<int>(inst.demands.size());
  std::vector<std::set<int>> inner(k);
  for (int h = 0; h < k; ++h) {
    ClockwiseOrder order = clockwise_order(inst, exp, h);
    auto cls = classify_inner_outer(inst, exp, h, order);
    for (int e = 0; e < inst.graph.num_edges(); ++e)
      if (cls[e] == EdgeClass::inner) inner[h].insert(e);
  }
  for (int h1 = 0; h1 < k; ++h1)
    for (int h2 = h1 + 1; h2 < k; ++h2)
      for (int e : inner[h1])
        if (inner[h2].count(e)) {
          if (violation)
            *violation = "edge " + std::to_string(e) + " inner for commodities " +
                         std::to_string(h1) + " and " + std::to_string(h2);
          return false;
        }
  return true;
}

bool squeeze_property_holds(const Instance& inst, const ExpandedSupport& exp, int h,
                            const ClockwiseOrder& order, std::string* violation) {
  (void)inst;
  int k = static_cast<int>(order.walks.size());
  std::vector<std::set<int>> edges_of(k);
  for (int i = 0; i < k; ++i)
    for (DartId d : exp.family[order.walks[i]].walk.darts) edges_of[i].insert(dart_edge(d));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int e : edges_of[i]) {
        if (!edges_of[j].count(e)) continue;
        bool fwd = true, bwd = true;  // cyclic intervals (i..j) and (j..i)
        for (int r = i + 1; r < j; ++r) fwd &= edges_of[r].count(e) > 0;
        for (int r = (j + 1) % k; r != i; r = (r + 1) % k) bwd &= edges_of[r].count(e) > 0;
        if (!fwd && !bwd) {
          if (violation)
            *violation = "edge " + std::to_string(e) + " shared by order positions " +
                         std::to_string(i) + "," + std::to_string(j) + " of commodity " +
                         std::to_string(h) + " squeezes neither interval";
          return false;
        }
      }
  return true;
}

bool outer_congestion_claim_holds(const Instance& inst, const ExpandedSupport& exp,
                                  std::string* violation) {
  for (size_t h = 0; h < inst.demands.size(); ++h) {
    const Int& d = inst.demands[h].d;
    if (d == 0) continue;
    ClockwiseOrder order = clockwise_order(inst, exp, static_cast<int>(h));
    if (order.walks.empty()) continue;
    auto trimmed = trim_to_demand(exp, order, static_cast<int>(h), d);
    int istar = central_walk_index(trimmed, d);
    auto cls = classify_inner_outer(inst, exp, static_cast<int>(h), order);
    std::set<int> central_edges;
    for (DartId dd : exp.family[order.walks[istar]].walk.darts) central_edges.insert(dart_edge(dd));
    for (int e : central_edges) {
      if (cls[e] != EdgeClass::outer) continue;
      Rat fh = 0;
      for (int i = 0; i < static_cast<int>(order.walks.size()); ++i) {
        const Walk& w = exp.family[order.walks[i]].walk;
        if (walk_edge_multiplicity(w, e) > 0) fh += trimmed[i];
      }
      if (fh < Rat(d) / 2) {
        if (violation)
          *violation = "outer edge " + std::to_string(e) + " of commodity " + std::to_string(h) +
                       " on the central walk carries " + format_rat(fh) + " < d/2";
        return false;
      }
    }
  }
  return true;
}

WalkToTrailResult walk_to_trail(const Instance& inst, const Multiflow& f,
                                bool theorem_precondition_declared) {
  WalkToTrailResult res;
  res.theorem_precondition_declared = theorem_precondition_declared;
  Multiflow cur = canonicalize_flow(inst, f);

  while (true) {
    StrongVerifyResult sv = verify_strongly_uncrossed(inst, cur);
    if (!sv.ok()) {
      res.flow = cur;
      res.report = "flow is not strongly uncrossed: " + sv.witness->detail;
      return res;
    }
    WalkFamily family = family_of_flow(cur);
    const Parallelization& phi = *sv.phi;

    // find a walk with two occurrences of an edge adjacent in the linear order
    bool shortcut_applied = false;
    bool repeats_remain = false;
    for (int e = 0; e < inst.graph.num_edges() && !shortcut_applied; ++e) {
      const auto& ord = phi.order[e];
      for (size_t p = 0; p + 1 < ord.size() && !shortcut_applied; ++p) {
        if (ord[p].walk != ord[p + 1].walk) continue;
        int w = ord[p].walk;
        int i = std::min(ord[p].index, ord[p + 1].index);
        int j = std::max(ord[p].index, ord[p + 1].index);
        // locate the entry and rebuild it without the closed sub-walk
        int seen = 0;
        for (size_t c = 0; c < cur.flows.size() && !shortcut_applied; ++c)
          for (size_t idx = 0; idx < cur.flows[c].size() && !shortcut_applied; ++idx, ++seen)
            if (seen == w) {
              Walk& walk = cur.flows[c][idx].walk;
              bool same_dir = walk.darts[i] == walk.darts[j];
              walk.darts.erase(walk.darts.begin() + i, walk.darts.begin() + (same_dir ? j : j + 1));
              shortcut_applied = true;
            }
      }
      // any same-walk repetition at all?
      std::map<int, int> per_walk;
      for (const auto& occ : ord) repeats_remain |= ++per_walk[occ.walk] > 1;
    }
    if (shortcut_applied) {
      cur = canonicalize_flow(inst, cur);
      continue;
    }
    res.flow = cur;
    res.phi = sv.phi;
    if (repeats_remain) {
      res.report = "edge repeats remain but none are adjacent in the linear order; "
                   "conversion incomplete";
      return res;
    }
    cur.mode = WalkMode::trail;
    res.flow = cur;
    res.success = true;
    res.report = "converted to a strongly uncrossed trail-multiflow";
    return res;
  }
}

}  // namespace uncross
