#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "uncross/instance.hpp"

namespace uncross {

// One occurrence of an edge inside a walk family: walk id + dart position.
struct Occurrence {
  int walk = -1;
  int index = -1;
  bool operator==(const Occurrence& o) const { return walk == o.walk && index == o.index; }
  bool operator<(const Occurrence& o) const {
    return walk != o.walk ? walk < o.walk : index < o.index;
  }
};

// A walk together with the commodity it routes (-1 for plain families).
struct FamilyWalk {
  Walk walk;
  int commodity = -1;
};
using WalkFamily = std::vector<FamilyWalk>;

WalkFamily family_of_flow(const Multiflow& f);

// Per-edge linear order of occurrences. Orientation convention: order[e]
// lists occurrences left-to-right as seen walking the edge from endpoint a to
// endpoint b; equivalently, clockwise within the edge's block in the rotation
// at endpoint a (reversed at b).
struct Parallelization {
  std::vector<std::vector<Occurrence>> order;
};

Parallelization identity_parallelization(const EmbeddedGraph& g, const WalkFamily& family);

struct CrossingWitness {
  int walk_a = -1;
  int walk_b = -1;  // == walk_a for a self-crossing
  int node = -1;
  std::array<DartId, 4> darts{-1, -1, -1, -1};  // clockwise, alternating
  std::vector<DartId> shared_subpath;           // Z when known; empty for a single node
  std::string detail;
};

// Disk-expansion of one node under a parallelization.
struct DiskSlot {
  DartId dart = -1;         // dart (tail = disk node) whose block holds the slot
  Occurrence occ;           // occ.walk == -1 for a ghost slot
};
struct DiskChord {
  int walk = -1;
  int transition = -1;  // chord joins occurrences (walk, transition) and (walk, transition+1)
  int s1 = -1, s2 = -1;  // slot indices
};
struct DiskTerminal {
  int walk = -1;
  bool at_start = false;
  int slot = -1;
};
struct Disk {
  int node = -1;
  std::vector<DiskSlot> slots;  // clockwise around the disk
  std::vector<DiskChord> chords;
  std::vector<DiskTerminal> terminals;
};

// Builds all disks; with_ghosts adds one slot per dart whose edge carries no
// occurrence (used by the expanded-support construction).
std::vector<Disk> build_disks(const EmbeddedGraph& g, const WalkFamily& family,
                              const Parallelization& phi, bool with_ghosts = false);

// True iff slots x alternate with slots y around a circle of size m.
bool slots_interleave(int m, int a1, int b1, int a2, int b2);

// Disk-expansion check of §-style uncrossedness: no two consecutive-dart
// chords interleave at any disk (self-crossings included).
std::optional<CrossingWitness> check_parallelization_uncrossed(const EmbeddedGraph& g,
                                                               const WalkFamily& family,
                                                               const Parallelization& phi);

struct QuasicrossWitness {
  int commodity_a = -1;
  int commodity_b = -1;
  int node = -1;
  std::string detail;
};

struct StrongWitness {
  std::optional<CrossingWitness> crossing;
  std::optional<QuasicrossWitness> quasicrossing;
  std::string detail;
};

struct ParallelizationSearch {
  std::optional<Parallelization> phi;       // set on success
  std::optional<std::pair<int, int>> pair;  // a crossing pair on failure, when extractable
  std::string detail;
};

struct SearchCaps {
  int max_occurrences_per_edge = 4;   // exhaustive fallback limits
  int max_shared_edges = 6;
  long max_orderings = 2'000'000;
};

// Computes an uncrossed (optionally strongly uncrossed) parallelization via
// the 2-SAT encoding, falling back to exhaustive per-edge orders within caps.
// commodity grouping is read from the family; strong mode additionally rules
// out quasicrossings (including self-quasicrossings).
ParallelizationSearch find_uncrossed_parallelization(const EmbeddedGraph& g,
                                                     const WalkFamily& family, bool strong = false,
                                                     const SearchCaps& caps = {});

// Exhaustive product of per-edge linear orders; nullopt if none passes.
// Throws std::runtime_error when the family exceeds the caps.
std::optional<Parallelization> exhaustive_parallelization(const EmbeddedGraph& g,
                                                          const WalkFamily& family, bool strong,
                                                          const SearchCaps& caps);

// Def-style quasicrossing test at node v between the single-commodity flows
// h1 and h2 (h1 == h2 tests self-quasicrossing) under phi.
bool detect_quasicrossing(const EmbeddedGraph& g, const WalkFamily& family,
                          const Parallelization& phi, int h1, int h2, int v);

// Scans all disks/commodity pairs; nullopt when no quasicrossing exists.
std::optional<QuasicrossWitness> find_quasicrossing(const EmbeddedGraph& g,
                                                    const WalkFamily& family,
                                                    const Parallelization& phi);

struct StrongVerifyResult {
  std::optional<Parallelization> phi;
  std::optional<StrongWitness> witness;
  bool ok() const { return phi.has_value(); }
};

StrongVerifyResult verify_strongly_uncrossed(const Instance& inst, const Multiflow& f,
                                             const SearchCaps& caps = {});

// Pairwise crossing of two walks: no uncrossed parallelization of the pair.
bool pair_crosses(const EmbeddedGraph& g, const Walk& a, const Walk& b);

// Minimum number of disks at which the pair's chords must interleave, over
// the pair's own parallelizations; 0 iff uncrossed.
int pair_crossing_count(const EmbeddedGraph& g, const Walk& a, const Walk& b);

// Nodes at which the pair is forced to cross under its own best ordering.
std::vector<int> pair_crossing_nodes(const EmbeddedGraph& g, const Walk& a, const Walk& b);

struct CrossingWeightEntry {
  int node = -1;
  int walk_a = -1, walk_b = -1;
  Rat kappa;
};
struct CrossingWeight {
  Rat total;
  std::vector<CrossingWeightEntry> breakdown;
};

// kappa(f, v, P, Q) = f(P) f(Q) when chords of P and Q interleave at v under
// phi; summed once per unordered support pair per node. Zero iff phi is
// uncrossed for the support.
CrossingWeight crossing_weight(const EmbeddedGraph& g, const Multiflow& f,
                               const Parallelization& phi);

// Parallelization-free potential used by the uncrossing heuristic:
// sum over support pairs of pair_crossing_count * f(P) f(Q).
Rat pairwise_crossing_weight(const EmbeddedGraph& g, const Multiflow& f);

struct UncrossResult {
  bool success = false;
  Multiflow flow;
  std::optional<Parallelization> phi;
  int swaps = 0;
  std::string reason;  // "HeuristicStalled: ..." on failure
};

// Crossing-weight uncrossing for pairwise-planar / series-compliant
// instances: repeated tail-swaps between crossing points (leaf-extension at
// terminals for once-crossing pairs), re-short-circuiting, while the pairwise
// crossing weight decreases. Preserves routed demand per commodity exactly.
UncrossResult uncross_pairwise_planar(const Instance& inst, const Multiflow& f);

}  // namespace uncross
