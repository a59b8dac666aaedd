#pragma once

#include "uncross/crossing.hpp"

namespace uncross {

struct NotStronglyUncrossed : std::runtime_error {
  explicit NotStronglyUncrossed(const std::string& w) : std::runtime_error(w) {}
};
struct DemandNotMet : std::runtime_error {
  explicit DemandNotMet(const std::string& w) : std::runtime_error(w) {}
};

// Disk-expanded support graph: parallel edge copies, per-disk boundary
// cycles, transit chords, and one terminal hub per (commodity, endpoint).
// Walks become internally node-disjoint paths joined at the hubs.
struct ExpandedSupport {
  enum class EdgeKind { copy, ghost, boundary, chord, spoke };
  struct EdgeInfo {
    EdgeKind kind = EdgeKind::ghost;
    int orig_edge = -1;  // copy / ghost
    Occurrence occ;      // copy
    int walk = -1;       // chord / spoke (family index)
    int commodity = -1;  // chord / spoke
  };

  EmbeddedGraph gphi;
  std::vector<EdgeInfo> edge_info;
  std::vector<std::pair<int, int>> hubs;  // per commodity: hub node at s / at t (-1 if no support)
  WalkFamily family;                      // canonical support walks (s -> t)
  std::vector<Rat> values;                // per family walk
  Parallelization phi;

  std::vector<bool> commodity_edge_mask(int h) const;
};

// Requires phi to pass check_parallelization_uncrossed for the support.
// Throws NotStronglyUncrossed when a terminal hub cannot be inserted planarly
// (the Euler certificate fails), which cross-checks verify_strongly_uncrossed.
ExpandedSupport build_expanded_support(const Instance& inst, const Multiflow& f,
                                       const Parallelization& phi);

struct ClockwiseOrder {
  std::vector<int> walks;  // family indices P_1..P_k; outer sector between P_k and P_1
};

// Clockwise cyclic order of h's support paths about s, linearized by cutting
// at the outer sector (found by deleting down to the commodity's support and
// tracking which face absorbed the outer face).
ClockwiseOrder clockwise_order(const Instance& inst, const ExpandedSupport& exp, int h);

enum class EdgeClass { unused, outer, inner };

std::vector<EdgeClass> classify_inner_outer(const Instance& inst, const ExpandedSupport& exp,
                                            int h, const ClockwiseOrder& order);

// Values re-trimmed so each commodity routes exactly d(h): latest-clockwise
// walks are reduced first. Throws DemandNotMet if the flow routes less.
std::vector<Rat> trim_to_demand(const ExpandedSupport& exp, const ClockwiseOrder& order, int h,
                                const Int& d);

// Smallest index i with sum_{j<=i} f(P_j) >= d/2 (0-based into order.walks).
int central_walk_index(const std::vector<Rat>& trimmed, const Int& d);

Multiflow round_unsplittable(const Instance& inst, const ExpandedSupport& exp);
Multiflow round_integral_congestion2(const Instance& inst, const ExpandedSupport& exp);

struct CongestionAudit {
  bool ok = true;
  std::vector<Rat> flow;   // per edge
  std::vector<Rat> bound;  // per edge
  bool strict = false;     // bound must hold strictly
};

// flow(e) <= 2 u(e) (integral rounding) / flow(e) < 2u(e) + d_max (unsplittable).
CongestionAudit audit_congestion2(const Instance& inst, const Multiflow& rounded);
CongestionAudit audit_unsplittable(const Instance& inst, const Multiflow& rounded);

// Lemma-level invariants, exposed for tests and the acceptance suite.
bool private_region_disjoint(const Instance& inst, const ExpandedSupport& exp,
                             std::string* violation = nullptr);
bool squeeze_property_holds(const Instance& inst, const ExpandedSupport& exp, int h,
                            const ClockwiseOrder& order, std::string* violation = nullptr);
bool outer_congestion_claim_holds(const Instance& inst, const ExpandedSupport& exp,
                                  std::string* violation = nullptr);

struct WalkToTrailResult {
  bool success = false;
  Multiflow flow;
  std::optional<Parallelization> phi;
  bool theorem_precondition_declared = false;
  std::string report;
};

// Best-effort walk -> trail conversion: applies adjacent-occurrence
// short-cuts to a fixpoint and re-verifies strong uncrossedness. Failures are
// reported, never asserted impossible. The theorem's precondition is carried
// verbatim as a caller-declared flag.
WalkToTrailResult walk_to_trail(const Instance& inst, const Multiflow& f,
                                bool theorem_precondition_declared);

}  // namespace uncross
