#include "uncross/stringgraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "uncross/rng.hpp"

namespace uncross {

IntersectionGraph build_intersection_graph(const Realization& r) {
  if (auto w = check_parallelization_uncrossed(r.graph, r.walks, r.phi))
    throw RealizationNotUncrossed("crossing at node " + std::to_string(w->node));

  IntersectionGraph U;
  U.mode = r.mode;
  U.n = static_cast<int>(r.walks.size());
  U.adj.assign(U.n, {});
  int elements = r.mode == IntersectionMode::node ? r.graph.num_nodes() : r.graph.num_edges();
  U.load.assign(elements, 0);
  U.m_load.assign(elements, 0);

  std::vector<std::set<int>> walks_at(elements);
  for (int w = 0; w < U.n; ++w) {
    const Walk& walk = r.walks[w].walk;
    if (r.mode == IntersectionMode::edge) {
      for (DartId d : walk.darts) {
        ++U.m_load[dart_edge(d)];
        walks_at[dart_edge(d)].insert(w);
      }
    } else {
      for (int v : walk_nodes(r.graph, walk)) {
        ++U.m_load[v];
        walks_at[v].insert(w);
      }
    }
  }
  for (int x = 0; x < elements; ++x) {
    U.load[x] = static_cast<int>(walks_at[x].size());
    U.max_load = std::max(U.max_load, U.load[x]);
    for (auto i = walks_at[x].begin(); i != walks_at[x].end(); ++i)
      for (auto j = std::next(i); j != walks_at[x].end(); ++j) {
        U.adj[*i].insert(*j);
        U.adj[*j].insert(*i);
      }
  }
  return U;
}

Colouring greedy_min_degree_colouring(const IntersectionGraph& U) {
  Colouring c;
  c.colour.assign(U.n, -1);
  std::vector<int> degree(U.n);
  std::vector<bool> removed(U.n, false);
  for (int v = 0; v < U.n; ++v) degree[v] = U.degree(v);

  std::vector<int> order;
  for (int step = 0; step < U.n; ++step) {
    int best = -1;
    for (int v = 0; v < U.n; ++v)
      if (!removed[v] && (best < 0 || degree[v] < degree[best])) best = v;
    removed[best] = true;
    order.push_back(best);
    for (int u : U.adj[best])
      if (!removed[u]) --degree[u];
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::set<int> used;
    for (int u : U.adj[*it])
      if (c.colour[u] >= 0) used.insert(c.colour[u]);
    int col = 0;
    while (used.count(col)) ++col;
    c.colour[*it] = col;
    c.count = std::max(c.count, col + 1);
  }
  return c;
}

long foxpach_colour_bound(int k) {
  long double b = 6.0L * std::numbers::e_v<long double> * k;
  return static_cast<long>(std::floor(b)) + 1;
}

bool foxpach_edge_bound_ok(const IntersectionGraph& U, int k, int num_walks) {
  long double bound = 3.0L * std::numbers::e_v<long double> * k * num_walks;
  return static_cast<long double>(U.num_edges()) <= bound;
}

PlanarDecomposition random_planar_decomposition(const Realization& r, int k, std::uint64_t seed,
                                                int max_retries) {
  IntersectionGraph U = build_intersection_graph(r);
  if (U.max_load > k) throw std::invalid_argument("realization load exceeds k");

  PlanarDecomposition best;
  long edges = U.num_edges();
  if (edges == 0) {
    best.covered = true;
    best.rounds = 0;
    best.rounds_to_cover = 0;
    best.seed = seed;
    return best;
  }
  int rounds = static_cast<int>(std::ceil(2.0L * std::numbers::e_v<long double> * k * k *
                                          std::log(static_cast<long double>(edges))));

  std::set<std::pair<int, int>> want;
  for (int v = 0; v < U.n; ++v)
    for (int u : U.adj[v])
      if (v < u) want.insert({v, u});

  int elements = static_cast<int>(U.load.size());
  std::vector<std::set<int>> uses(U.n);
  for (int w = 0; w < U.n; ++w) {
    if (r.mode == IntersectionMode::edge)
      for (DartId d : r.walks[w].walk.darts) uses[w].insert(dart_edge(d));
    else
      for (int v : walk_nodes(r.graph, r.walks[w].walk)) uses[w].insert(v);
  }
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    PlanarDecomposition dec;
    dec.rounds = rounds;
    dec.seed = seed + static_cast<std::uint64_t>(attempt);
    dec.retries_used = attempt;
    Rng rng(dec.seed);
    std::set<std::pair<int, int>> covered;
    for (int round = 0; round < rounds; ++round) {
      DecompositionPiece piece;
      std::vector<bool> in_s(U.n, false);
      for (int w = 0; w < U.n; ++w)
        if (rng.one_in(static_cast<std::uint64_t>(k))) {
          in_s[w] = true;
          piece.selected.push_back(w);
        }
      for (int x = 0; x < elements; ++x) {
        int a = -1, b = -1, count = 0;
        for (int w = 0; w < U.n; ++w) {
          if (!in_s[w]) continue;
          if (!uses[w].count(x)) continue;
          ++count;
          if (a < 0)
            a = w;
          else
            b = w;
        }
        if (count == 2) {
          piece.contact_pairs.push_back({a, b});
          piece.contact_elements.push_back(x);
          covered.insert({std::min(a, b), std::max(a, b)});
        }
      }
      dec.pieces.push_back(std::move(piece));
      if (dec.rounds_to_cover < 0 && covered == want) dec.rounds_to_cover = round + 1;
    }
    dec.covered = covered == want;
    if (dec.covered) return dec;
    if (attempt == 0 || best.pieces.empty()) best = dec;
  }
  return best;
}

namespace {

struct Attachment {
  long pos_key;  // 2*index for disk transits, 2*index+1 for channel contacts
  int side;      // 0 left, 1 right, 2 start tip, 3 end tip
  DartId dart;   // piece-graph dart leaving this walk
};

}  // namespace

EmbeddedGraph piece_embedding(const Realization& r, const DecompositionPiece& piece) {
  const EmbeddedGraph& g = r.graph;
  EmbeddedGraph pg;
  std::map<int, int> vertex_of;  // walk id -> piece vertex
  for (int w : piece.selected) vertex_of[w] = pg.add_node();

  auto disks = build_disks(g, r.walks, r.phi);
  std::vector<std::vector<Attachment>> att(piece.selected.size());
  std::map<int, int> local;  // walk id -> local index
  for (size_t i = 0; i < piece.selected.size(); ++i) local[piece.selected[i]] = static_cast<int>(i);

  for (size_t ci = 0; ci < piece.contact_pairs.size(); ++ci) {
    auto [wa, wb] = piece.contact_pairs[ci];
    int x = piece.contact_elements[ci];
    int e = static_cast<int>(pg.edges.size());
    pg.edges.push_back({vertex_of[wa], vertex_of[wb]});

    auto attach = [&](int w, int side_flag, long pos_key, int dart_side) {
      att[local[w]].push_back({pos_key, side_flag, make_dart(e, dart_side)});
    };

    if (r.mode == IntersectionMode::edge) {
      // adjacent pair of occurrences of wa/wb in the channel of edge x
      const auto& ord = r.phi.order[x];
      int pa = -1, pb = -1;
      for (size_t i = 0; i + 1 < ord.size(); ++i) {
        bool i_a = ord[i].walk == wa, i_b = ord[i].walk == wb;
        bool j_a = ord[i + 1].walk == wa, j_b = ord[i + 1].walk == wb;
        if ((i_a && j_b) || (i_b && j_a)) {
          pa = static_cast<int>(i_a ? i : i + 1);
          pb = static_cast<int>(i_a ? i + 1 : i);
          break;
        }
      }
      if (pa < 0) {  // occurrences not adjacent: take the closest pair
        for (size_t i = 0; i < ord.size(); ++i)
          for (size_t j = 0; j < ord.size(); ++j)
            if (ord[i].walk == wa && ord[j].walk == wb) {
              pa = static_cast<int>(i);
              pb = static_cast<int>(j);
            }
      }
      const Occurrence& oa = ord[pa];
      const Occurrence& ob = ord[pb];
      auto side = [&](const Occurrence& o, int my_pos, int other_pos) {
        DartId d = r.walks[o.walk].walk.darts[o.index];
        bool other_right = dart_side(d) == 0 ? other_pos > my_pos : other_pos < my_pos;
        return other_right ? 1 : 0;
      };
      attach(wa, side(oa, pa, pb), 2L * oa.index + 1, 0);
      attach(wb, side(ob, pb, pa), 2L * ob.index + 1, 1);
    } else {
      const Disk& disk = disks[x];
      int m = static_cast<int>(disk.slots.size());
      // presences of wa/wb at the disk: chords and tips
      struct Presence {
        int walk;
        int s1, s2;     // slot span (s1 == s2 for a tip)
        long pos_key;
        bool tip_start = false, tip_end = false;
      };
      std::vector<Presence> pres;
      for (const auto& c : disk.chords)
        if (c.walk == wa || c.walk == wb)
          pres.push_back({c.walk, c.s1, c.s2, 2L * (c.transition + 1), false, false});
      for (const auto& t : disk.terminals)
        if (t.walk == wa || t.walk == wb) {
          long key = t.at_start ? -1 : 2L * r.walks[t.walk].walk.darts.size();
          pres.push_back({t.walk, t.slot, t.slot, key, t.at_start, !t.at_start});
        }
      // endpoints in circular order; find adjacent endpoints of different walks
      std::vector<std::pair<int, int>> endpoints;  // (slot, presence idx)
      for (size_t i = 0; i < pres.size(); ++i) {
        endpoints.push_back({pres[i].s1, static_cast<int>(i)});
        if (pres[i].s2 != pres[i].s1) endpoints.push_back({pres[i].s2, static_cast<int>(i)});
      }
      std::sort(endpoints.begin(), endpoints.end());
      int ia = -1, ib = -1, ea_slot = -1, eb_slot = -1;
      int L = static_cast<int>(endpoints.size());
      for (int i = 0; i < L; ++i) {
        const auto& cur = endpoints[i];
        const auto& nxt = endpoints[(i + 1) % L];
        if (pres[cur.second].walk != pres[nxt.second].walk) {
          bool cur_is_a = pres[cur.second].walk == wa;
          ia = cur_is_a ? cur.second : nxt.second;
          ib = cur_is_a ? nxt.second : cur.second;
          ea_slot = cur_is_a ? cur.first : nxt.first;
          eb_slot = cur_is_a ? nxt.first : cur.first;
          break;
        }
      }
      auto emit = [&](const Presence& p, int my_end, int other_end, int dart_side) {
        if (p.tip_start) {
          attach(p.walk, 2, p.pos_key, dart_side);
        } else if (p.tip_end) {
          attach(p.walk, 3, p.pos_key, dart_side);
        } else {
          // chord from arrival s1 to departure s2: the clockwise arc is the left
          bool left = ((other_end - p.s1 + m) % m) < ((p.s2 - p.s1 + m) % m);
          (void)my_end;
          attach(p.walk, left ? 0 : 1, p.pos_key, dart_side);
        }
      };
      emit(pres[ia], ea_slot, eb_slot, 0);
      emit(pres[ib], eb_slot, ea_slot, 1);
    }
  }

  // rotations: clockwise boundary walk of the shrunken curve
  for (size_t i = 0; i < piece.selected.size(); ++i) {
    auto& list = att[i];
    std::vector<Attachment> left, right, tips_start, tips_end;
    for (const auto& a : list) {
      if (a.side == 0) left.push_back(a);
      else if (a.side == 1) right.push_back(a);
      else if (a.side == 2) tips_start.push_back(a);
      else tips_end.push_back(a);
    }
    std::sort(left.begin(), left.end(), [](auto& a, auto& b) { return a.pos_key < b.pos_key; });
    std::sort(right.begin(), right.end(), [](auto& a, auto& b) { return a.pos_key > b.pos_key; });
    auto& rot = pg.rotation[vertex_of[piece.selected[i]]];
    for (const auto& a : left) rot.push_back(a.dart);
    for (const auto& a : tips_end) rot.push_back(a.dart);
    for (const auto& a : right) rot.push_back(a.dart);
    for (const auto& a : tips_start) rot.push_back(a.dart);
  }
  if (pg.num_edges() > 0) pg.outer_face_dart = 0;
  return pg;
}

Colouring colour_via_decomposition(const Realization& r, int k, std::uint64_t seed,
                                   PlanarDecomposition* decomposition_out) {
  PlanarDecomposition dec = random_planar_decomposition(r, k, seed);
  if (decomposition_out) *decomposition_out = dec;
  if (!dec.covered) throw CoverageFailed("decomposition did not cover E(U)");
  IntersectionGraph U = build_intersection_graph(r);
  Colouring c = greedy_min_degree_colouring(U);
  if (c.count > 6 * dec.rounds_to_cover + 1)
    throw std::logic_error("degeneracy colouring exceeded 6C'+1");
  return c;
}

IntegerDecomposition integer_decompose(const Instance& inst, const Multiflow& f, const Int& k) {
  IntegerDecomposition out;
  out.k = k;
  for (const Int& u : inst.capacities)
    if (u != 1) throw std::invalid_argument("integer_decompose requires unit capacities");

  Multiflow canon = canonicalize_flow(inst, f);
  WalkFamily family = family_of_flow(canon);
  std::vector<Int> alpha;
  std::vector<int> commodity;
  for (size_t c = 0; c < canon.flows.size(); ++c)
    for (const auto& entry : canon.flows[c]) {
      Rat scaled = entry.value * Rat(k);
      if (denominator(scaled) != 1) throw NotIntegralAtK("k*f has value " + format_rat(scaled));
      alpha.push_back(numerator(scaled));
      commodity.push_back(static_cast<int>(c));
    }

  auto search = find_uncrossed_parallelization(inst.graph, family, false);
  if (!search.phi) throw RealizationNotUncrossed("flow support is crossed");

  Realization real{inst.graph, family, *search.phi,
                   inst.capacity_mode == CapacityMode::node ? IntersectionMode::node
                                                            : IntersectionMode::edge};
  IntersectionGraph U = build_intersection_graph(real);

  int n = U.n;
  //虚拟 copies: peel copies by minimum degree, colour in reverse
  std::vector<Int> remaining = alpha;
  std::vector<int> order;  // walk of each peeled copy
  Int total = 0;
  for (const Int& a : alpha) total += a;
  for (Int step = 0; step < total; ++step) {
    int best = -1;
    Int best_deg = 0;
    for (int w = 0; w < n; ++w) {
      if (remaining[w] == 0) continue;
      Int deg = remaining[w] - 1;
      for (int u : U.adj[w]) deg += remaining[u];
      if (best < 0 || deg < best_deg) {
        best = w;
        best_deg = deg;
      }
    }
    order.push_back(best);
    --remaining[best];
  }

  std::vector<std::set<int>> colours_of(n);
  int b = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int w = *it;
    std::set<int> used = colours_of[w];
    for (int u : U.adj[w]) used.insert(colours_of[u].begin(), colours_of[u].end());
    int col = 0;
    while (used.count(col)) ++col;
    colours_of[w].insert(col);
    b = std::max(b, col + 1);
  }
  out.b = b;

  out.classes.assign(b, Multiflow{});
  for (int i = 0; i < b; ++i) {
    out.classes[i].mode = canon.mode;
    out.classes[i].flows.resize(inst.demands.size());
  }
  for (int w = 0; w < n; ++w)
    for (int col : colours_of[w])
      out.classes[col].flows[commodity[w]].push_back({family[w].walk, Rat(1)});
  return out;
}

int select_best_class(const IntegerDecomposition& d, const std::vector<Rat>& weights) {
  int best = 0;
  Rat best_value = flow_value(d.classes.empty() ? Multiflow{} : d.classes[0], weights);
  for (int i = 1; i < d.b; ++i) {
    Rat v = flow_value(d.classes[i], weights);
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  return best;
}

FractionalityResult reduce_fractionality(const Instance& inst, const Multiflow& f,
                                         std::uint64_t seed, Int max_denominator) {
  FractionalityResult out;
  Multiflow canon = canonicalize_flow(inst, f);
  Rat value = flow_value(canon);
  if (value == 0) {
    out.flow = canon;
    return out;
  }
  long supp = static_cast<long>(canon.support_size());
  if (max_denominator == 0)
    max_denominator = Int(inst.graph.num_nodes()) * Int(inst.graph.num_nodes()) + 64;
  Int k0 = rat_ceil(Rat(2 * supp) / value);
  if (k0 < 1) k0 = 1;

  auto snap_down = [&](const Multiflow& src, const Int& k) {
    Multiflow res = src;
    for (auto& c : res.flows)
      for (auto& entry : c) entry.value = Rat(rat_floor(entry.value * Rat(k)), k);
    return canonicalize_flow(inst, res);
  };

  if (k0 <= max_denominator) {
    out.flow = snap_down(canon, k0);
    out.k = k0;
    return out;
  }
  // value is tiny relative to support; try seeded randomized rounding at the
  // bound, accepting only verified outcomes
  Int k = max_denominator;
  Rng rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    ++out.retries_used;
    Multiflow res = canon;
    for (auto& c : res.flows)
      for (auto& entry : c) {
        Rat scaled = entry.value * Rat(k);
        Int fl = rat_floor(scaled);
        Rat frac = scaled - Rat(fl);
        Int num = numerator(frac), den = denominator(frac);
        bool up = den != 1 && Int(rng.below(1'000'000'007ULL)) * den < num * 1'000'000'007LL;
        entry.value = Rat(up ? fl + 1 : fl, k);
      }
    res = canonicalize_flow(inst, res);
    if (!verify_feasible(inst, res, false).capacities_ok) continue;
    if (flow_value(res) * 2 < value) continue;
    out.flow = res;
    out.k = k;
    return out;
  }
  throw RetryBudgetExceeded("randomized fractionality reduction failed");
}

std::pair<Multiflow, Multiflow> floor_strip(const Multiflow& f) {
  Multiflow integral = f, residual = f;
  for (size_t c = 0; c < f.flows.size(); ++c)
    for (size_t i = 0; i < f.flows[c].size(); ++i) {
      Int fl = rat_floor(f.flows[c][i].value);
      integral.flows[c][i].value = Rat(fl);
      residual.flows[c][i].value = f.flows[c][i].value - Rat(fl);
    }
  auto drop_zeros = [](Multiflow& m) {
    for (auto& c : m.flows)
      c.erase(std::remove_if(c.begin(), c.end(), [](const FlowEntry& e) { return e.value == 0; }),
              c.end());
  };
  drop_zeros(integral);
  drop_zeros(residual);
  return {integral, residual};
}

NodeSplitResult split_node_capacities(const Instance& inst, const Multiflow& f,
                                      const Parallelization& phi, int capacity_bound) {
  if (inst.capacity_mode != CapacityMode::node)
    throw std::invalid_argument("node splitting applies to node-capacitated instances");
  for (const Int& u : inst.capacities)
    if (u > capacity_bound) throw std::invalid_argument("node capacity exceeds the configured bound");

  Multiflow canon = canonicalize_flow(inst, f);
  WalkFamily family = family_of_flow(canon);
  std::vector<Rat> value;
  for (const auto& c : canon.flows)
    for (const auto& e : c) value.push_back(e.value);
  auto disks = build_disks(inst.graph, family, phi);

  // group walks at each split node greedily in clockwise first-slot order;
  // a commodity's terminal bundle at the node is kept atomic
  const EmbeddedGraph& g = inst.graph;
  std::vector<std::vector<std::vector<int>>> groups(g.num_nodes());  // node -> group -> slots
  std::vector<int> group_of_slot_flat;
  std::map<std::pair<int, int>, int> group_of;  // (node, slot) -> group index

  for (int v = 0; v < g.num_nodes(); ++v) {
    const Disk& disk = disks[v];
    if (disk.slots.empty()) continue;
    if (inst.capacities[v] <= 1) {
      groups[v].push_back({});
      for (int s = 0; s < static_cast<int>(disk.slots.size()); ++s) {
        groups[v][0].push_back(s);
        group_of[{v, s}] = 0;
      }
      continue;
    }
    // bundles: per walk its slots; per commodity terminating here, the union
    std::map<int, std::vector<int>> bundle_slots;  // bundle key -> slots
    std::map<int, Rat> bundle_flow;
    std::map<int, int> bundle_of_walk;
    for (const auto& t : disk.terminals) {
      int key = -1 - family[t.walk].commodity;  // commodity bundle
      bundle_of_walk[t.walk] = key;
    }
    for (int s = 0; s < static_cast<int>(disk.slots.size()); ++s) {
      int w = disk.slots[s].occ.walk;
      int key = bundle_of_walk.count(w) ? bundle_of_walk[w] : w;
      if (!bundle_slots.count(key)) bundle_flow[key] = 0;
      bundle_slots[key].push_back(s);
    }
    for (auto& [key, slots] : bundle_slots) {
      std::set<int> ws;
      for (int s : slots) ws.insert(disk.slots[s].occ.walk);
      for (int w : ws) bundle_flow[key] += value[w];
    }
    // greedy in first-slot order
    std::vector<std::pair<int, int>> by_first;  // (first slot, key)
    for (auto& [key, slots] : bundle_slots) by_first.push_back({slots.front(), key});
    std::sort(by_first.begin(), by_first.end());
    Rat cur = 0;
    int gi = 0;
    groups[v].push_back({});
    for (auto& [first, key] : by_first) {
      if (bundle_flow[key] > 1)
        throw std::invalid_argument("a bundle exceeds one unit; node split rejected");
      if (cur + bundle_flow[key] > 1) {
        groups[v].push_back({});
        ++gi;
        cur = 0;
      }
      cur += bundle_flow[key];
      for (int s : bundle_slots[key]) {
        groups[v][gi].push_back(s);
        group_of[{v, s}] = gi;
      }
    }
    if (static_cast<int>(groups[v].size()) > inst.capacities[v])
      throw std::invalid_argument("greedy grouping needs more copies than u(v)");
    for (auto& grp : groups[v]) std::sort(grp.begin(), grp.end());
    // laminarity: groups must not interleave around the disk
    int m = static_cast<int>(disk.slots.size());
    for (size_t a = 0; a < groups[v].size(); ++a)
      for (size_t b = a + 1; b < groups[v].size(); ++b)
        for (size_t i = 0; i + 1 < groups[v][a].size(); ++i)
          for (size_t j = 0; j + 1 < groups[v][b].size(); ++j)
            if (slots_interleave(m, groups[v][a][i], groups[v][a][i + 1], groups[v][b][j],
                                 groups[v][b][j + 1]))
              throw std::invalid_argument("grouping interleaves; node split rejected");
  }

  // build the split instance: one node per (v, group); one edge per occurrence
  NodeSplitResult out;
  out.instance.capacity_mode = CapacityMode::node;
  EmbeddedGraph& ng = out.instance.graph;
  std::map<std::pair<int, int>, int> node_of;  // (v, group) -> new node
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (groups[v].empty()) {
      node_of[{v, 0}] = ng.add_node();
      out.instance.capacities.push_back(inst.capacities[v]);
      continue;
    }
    for (size_t gi = 0; gi < groups[v].size(); ++gi) {
      node_of[{v, static_cast<int>(gi)}] = ng.add_node();
      out.instance.capacities.push_back(1);
    }
  }
  auto slot_of = [&](int v, DartId d, const Occurrence& o) {
    const Disk& disk = disks[v];
    for (int s = 0; s < static_cast<int>(disk.slots.size()); ++s)
      if (disk.slots[s].dart == d && disk.slots[s].occ == o) return s;
    return -1;
  };
  std::map<std::pair<int, std::pair<int, int>>, int> new_edge;  // (edge, occ) -> new edge
  for (int e = 0; e < g.num_edges(); ++e) {
    int va = g.edges[e].a, vb = g.edges[e].b;
    if (phi.order[e].empty()) {
      int ne = static_cast<int>(ng.edges.size());
      ng.edges.push_back({node_of[{va, groups[va].empty() ? 0 : group_of[{va, 0}]}],
                          node_of[{vb, groups[vb].empty() ? 0 : group_of[{vb, 0}]}]});
      (void)ne;
      continue;
    }
    for (const auto& o : phi.order[e]) {
      int sa = slot_of(va, make_dart(e, 0), o);
      int sb = slot_of(vb, make_dart(e, 1), o);
      int ne = static_cast<int>(ng.edges.size());
      ng.edges.push_back({node_of[{va, group_of[{va, sa}]}], node_of[{vb, group_of[{vb, sb}]}]});
      new_edge[{e, {o.walk, o.index}}] = ne;
    }
  }
  // rotations: group slots in disk order carry their occurrence copies
  for (int v = 0; v < g.num_nodes(); ++v) {
    for (size_t gi = 0; gi < std::max<size_t>(groups[v].size(), 1); ++gi) {
      int nv = node_of[{v, static_cast<int>(gi)}];
      if (groups[v].empty()) continue;
      for (int s : groups[v][gi]) {
        const DiskSlot& slot = disks[v].slots[s];
        int ne = new_edge.at({dart_edge(slot.dart), {slot.occ.walk, slot.occ.index}});
        ng.rotation[nv].push_back(make_dart(ne, dart_side(slot.dart)));
      }
    }
  }
  // ghost edges of empty-rotation endpoints were added without rotations;
  // drop them from the split instance (they carry no flow and no capacity)
  // -- they were appended above only when order[e] empty; fix rotations:
  for (int e = 0; e < static_cast<int>(ng.edges.size()); ++e) {
    bool present = false;
    for (int v = 0; v < ng.num_nodes() && !present; ++v)
      for (DartId d : ng.rotation[v]) present |= dart_edge(d) == e;
    if (!present) {
      ng.rotation[ng.edges[e].a].push_back(make_dart(e, 0));
      ng.rotation[ng.edges[e].b].push_back(make_dart(e, 1));
    }
  }

  // demands move to the group holding the commodity's terminal bundle
  for (size_t h = 0; h < inst.demands.size(); ++h) {
    Demand d = inst.demands[h];
    auto locate = [&](int v) {
      if (groups[v].empty()) return node_of[{v, 0}];
      for (int s = 0; s < static_cast<int>(disks[v].slots.size()); ++s) {
        int w = disks[v].slots[s].occ.walk;
        if (w >= 0 && family[w].commodity == static_cast<int>(h))
          return node_of[{v, group_of[{v, s}]}];
      }
      return node_of[{v, 0}];
    };
    d.s = locate(d.s);
    d.t = locate(d.t);
    out.instance.demands.push_back(d);
  }

  // rebuild the flow on the copies
  out.flow.mode = canon.mode;
  out.flow.flows.resize(inst.demands.size());
  int w = 0;
  for (size_t c = 0; c < canon.flows.size(); ++c)
    for (const auto& entry : canon.flows[c]) {
      Walk nw;
      for (size_t i = 0; i < entry.walk.darts.size(); ++i) {
        DartId d = entry.walk.darts[i];
        int ne = new_edge.at({dart_edge(d), {w, static_cast<int>(i)}});
        nw.darts.push_back(make_dart(ne, dart_side(d)));
      }
      out.flow.flows[c].push_back({nw, entry.value});
      ++w;
    }
  if (ng.num_edges() > 0) ng.outer_face_dart = 0;
  out.instance.tags["derived"] = "node-split";
  return out;
}

}  // namespace uncross
