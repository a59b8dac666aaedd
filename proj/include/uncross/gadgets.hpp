#pragma once

#include <array>
#include <cstdint>

#include "uncross/congestion.hpp"
#include "uncross/oracle.hpp"

namespace uncross {

struct MalformedCnf : std::runtime_error {
  explicit MalformedCnf(const std::string& w) : std::runtime_error(w) {}
};
struct NonUnitWeights : std::runtime_error {
  explicit NonUnitWeights(const std::string& w) : std::runtime_error(w) {}
};

// A planar 3-SAT instance: literals are +-(v+1); the incidence graph has one
// node per variable (0..num_vars-1) followed by one per clause, one edge per
// literal slot, with a fixed rotation system.
struct PlanarCnf {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
  EmbeddedGraph incidence;
  std::vector<std::array<int, 3>> clause_edge;  // incidence edge per literal slot

  int clause_node(int c) const { return num_vars + c; }
};

// Validates the invariants: exactly-3-literal clauses, <= 3 occurrences per
// variable with mixed polarity, planar incidence rotation. Throws MalformedCnf.
void validate_cnf(const PlanarCnf& cnf);

bool sat_brute_force(const PlanarCnf& cnf, std::vector<bool>* assignment = nullptr);

// Exhaustive family of valid formulas with <= max_clauses clauses over
// <= max_vars variables (canonicalized), each with a planar embedding.
std::vector<PlanarCnf> enumerate_cnf_family(int max_vars, int max_clauses);

// ---- canonical counterexample instances ----

Instance gen_double_diamond();
Instance gen_keyhole();
Instance gen_ring_with_leaves();

// Terminal gadget closed off with a t2 hub and an external bypass demand, so
// the lemma's items (i)-(iii) are checkable on every oracle solution.
Instance gen_terminal_gadget();

// Coupled arcs ladder with fully instantiated terminal gadgets. externals
// adds 0, 1 or 2 external demands wired to the rail ends.
Instance gen_coupled_arcs(int externals = 0);

// Clause gadget with its internal coupled-arcs pair; `removed` lists which of
// e', e'', e''' to delete (subset of {0,1,2}).
Instance gen_clause_gadget(const std::vector<int>& removed = {});

// ---- reductions ----

struct ReducedCnfInstance {
  Instance instance;
  // per variable: the edge sets of the positive and negative cycle paths
  std::vector<std::vector<int>> positive_edges, negative_edges;
  int cnf_vars = 0;
};

ReducedCnfInstance reduce_planar3sat(const PlanarCnf& cnf);

// Reads a truth assignment back from a feasible uncrossed flow of the
// reduced instance.
std::vector<bool> decode_assignment(const ReducedCnfInstance& red, const Multiflow& f);

struct DegreeReduceResult {
  Instance instance;
  std::vector<int> demand_map;  // new demand index -> old demand index
};

// Spider-web / C4 reduction to maximum degree 3 (terminals end with degree
// <= 3 and at most one demand each). Unit capacities and demands required.
DegreeReduceResult degree_reduce(const Instance& inst);

struct NdpReduction {
  Instance instance;  // hat G, hat H
  double size_ratio = 0;  // |V(hat G)| / (Delta^3 |V(G)|)
};

NdpReduction reduce_to_ndp(const Instance& inst);

Instance make_unique_embedding(const Instance& inst, std::uint64_t seed = 0);

// ---- instance-class generators (instance + witness flow where guaranteed) ----

struct GeneratedInstance {
  Instance instance;
  Multiflow witness;      // strongly uncrossed where the class guarantees one
  bool witness_strong = false;
  Multiflow crossed;      // a deliberately crossed feasible flow, when produced
  bool has_crossed = false;
};

GeneratedInstance gen_fully_planar(std::uint64_t seed, int size);
GeneratedInstance gen_single_source(std::uint64_t seed, int size);
GeneratedInstance gen_ring(std::uint64_t seed, int size);
GeneratedInstance gen_series_compliant(std::uint64_t seed, int size);
GeneratedInstance gen_pairwise_planar(std::uint64_t seed, int size);

}  // namespace uncross
