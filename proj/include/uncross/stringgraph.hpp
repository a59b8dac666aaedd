#pragma once

#include <cstdint>
#include <set>

#include "uncross/crossing.hpp"

namespace uncross {

enum class IntersectionMode { node, edge };

struct RealizationNotUncrossed : std::runtime_error {
  explicit RealizationNotUncrossed(const std::string& w) : std::runtime_error(w) {}
};
struct NotIntegralAtK : std::runtime_error {
  explicit NotIntegralAtK(const std::string& w) : std::runtime_error(w) {}
};
struct CoverageFailed : std::runtime_error {
  explicit CoverageFailed(const std::string& w) : std::runtime_error(w) {}
};
struct RetryBudgetExceeded : std::runtime_error {
  explicit RetryBudgetExceeded(const std::string& w) : std::runtime_error(w) {}
};

// An uncrossed walk family in an embedded graph, with its certifying
// parallelization.
struct Realization {
  EmbeddedGraph graph;
  WalkFamily walks;
  Parallelization phi;
  IntersectionMode mode = IntersectionMode::node;
};

// Node- or edge-intersection graph of the family (simple, loop-free), with
// per-element load (distinct walks) and m-load (occurrences).
struct IntersectionGraph {
  int n = 0;
  std::vector<std::set<int>> adj;
  std::vector<int> load;    // per node (node mode) or edge (edge mode) of G
  std::vector<int> m_load;
  int max_load = 0;
  IntersectionMode mode = IntersectionMode::node;

  long num_edges() const {
    long m = 0;
    for (const auto& a : adj) m += static_cast<long>(a.size());
    return m / 2;
  }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
};

// Throws RealizationNotUncrossed if phi fails the checker.
IntersectionGraph build_intersection_graph(const Realization& r);

struct Colouring {
  std::vector<int> colour;
  int count = 0;
};

// Removes a minimum-degree vertex (lowest walk id on ties), colours in
// reverse with the smallest free colour.
Colouring greedy_min_degree_colouring(const IntersectionGraph& U);

// Fox-Pach bounds for a load-k realization: chi <= floor(6 e k) + 1 and
// |E(U)| <= 3 e k |P|.
long foxpach_colour_bound(int k);
bool foxpach_edge_bound_ok(const IntersectionGraph& U, int k, int num_walks);

struct DecompositionPiece {
  std::vector<int> selected;                       // sampled walk ids
  std::vector<std::pair<int, int>> contact_pairs;  // walk pairs, one per contact element
  std::vector<int> contact_elements;               // the G element realizing each contact
};

struct PlanarDecomposition {
  std::vector<DecompositionPiece> pieces;
  int rounds = 0;           // C = ceil(2 e k^2 ln |E(U)|)
  int rounds_to_cover = -1; // first prefix covering E(U); -1 when uncovered
  bool covered = false;
  int retries_used = 0;
  std::uint64_t seed = 0;
};

// Samples each walk with probability exactly 1/k per round; a contact edge is
// added when an element carries exactly two sampled walks. Retries with
// seed+1.. on coverage failure, up to max_retries.
PlanarDecomposition random_planar_decomposition(const Realization& r, int k, std::uint64_t seed,
                                                int max_retries = 3);

// Embedding of one piece: each sampled walk contracted to a vertex, contact
// edges realized by connectors inside the shared element. Planar by
// construction; callers certify with check_planarity.
EmbeddedGraph piece_embedding(const Realization& r, const DecompositionPiece& piece);

// Degeneracy colouring justified by the decomposition: after coverage by C'
// pieces, U is 6C'-degenerate, so the colouring uses at most 6C' + 1 colours.
// Throws CoverageFailed when no retry covers E(U).
Colouring colour_via_decomposition(const Realization& r, int k, std::uint64_t seed,
                                   PlanarDecomposition* decomposition_out = nullptr);

struct IntegerDecomposition {
  std::vector<Multiflow> classes;
  int b = 0;
  Int k = 1;
};

// Splits k*f (virtually, one unit copy per alpha_P) and colours the
// intersection graph so each class is an integral flow feasible at unit
// capacities; sum of classes equals k*f exactly.
IntegerDecomposition integer_decompose(const Instance& inst, const Multiflow& f, const Int& k);

// Index of the class with the largest weighted value (first on ties); the
// winner's value is at least k*value(f)/b, checked exactly.
int select_best_class(const IntegerDecomposition& d, const std::vector<Rat>& weights = {});

struct FractionalityResult {
  Multiflow flow;
  Int k = 1;  // k * flow is integral
  int retries_used = 0;
};

// Rounds values onto a grid 1/k with k bounded by the configured polynomial,
// keeping support within f's and at least half the value.
FractionalityResult reduce_fractionality(const Instance& inst, const Multiflow& f,
                                         std::uint64_t seed, Int max_denominator = 0);

// Exact split into the integral part and the residual with values < 1.
std::pair<Multiflow, Multiflow> floor_strip(const Multiflow& f);

// Laminar-respecting split of a node with capacity u(v) > 1 into unit-
// capacity copies by disk expansion; rejects capacities above the bound.
struct NodeSplitResult {
  Instance instance;
  Multiflow flow;
};
NodeSplitResult split_node_capacities(const Instance& inst, const Multiflow& f,
                                      const Parallelization& phi, int capacity_bound = 8);

}  // namespace uncross
