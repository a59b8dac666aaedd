#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uncross {

// Half-edge (dart) representation. Edge e has darts 2e (leaving endpoint a)
// and 2e+1 (leaving endpoint b); they are twins. Loops put both darts in the
// same node's rotation.
using DartId = int;

inline DartId make_dart(int edge, int side) { return 2 * edge + side; }
inline DartId dart_twin(DartId d) { return d ^ 1; }
inline int dart_edge(DartId d) { return d >> 1; }
inline int dart_side(DartId d) { return d & 1; }

struct EdgeEnds {
  int a = -1;
  int b = -1;
};

struct MalformedRotation : std::runtime_error {
  explicit MalformedRotation(const std::string& what) : std::runtime_error(what) {}
};

// Planar multigraph with a fixed combinatorial embedding: per-node clockwise
// dart order plus a designated outer face. The outer face is part of the
// input, never inferred.
struct EmbeddedGraph {
  std::vector<EdgeEnds> edges;
  std::vector<std::vector<DartId>> rotation;  // rotation[v]: clockwise darts with tail v
  DartId outer_face_dart = -1;                // representative dart; -1 if edgeless

  int num_nodes() const { return static_cast<int>(rotation.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_darts() const { return 2 * num_edges(); }

  int dart_tail(DartId d) const {
    const EdgeEnds& e = edges[dart_edge(d)];
    return dart_side(d) == 0 ? e.a : e.b;
  }
  int dart_head(DartId d) const { return dart_tail(dart_twin(d)); }

  int add_node() {
    rotation.emplace_back();
    return num_nodes() - 1;
  }
  // Appends the new darts at the end of each endpoint's rotation.
  int add_edge(int a, int b) {
    int e = num_edges();
    edges.push_back({a, b});
    rotation[a].push_back(make_dart(e, 0));
    rotation[b].push_back(make_dart(e, 1));
    return e;
  }
};

struct FaceSet {
  std::vector<std::vector<DartId>> faces;  // cyclic dart sequences
  std::vector<int> face_of;                // dart -> face index

  int face_of_dart(DartId d) const { return face_of[d]; }
};

// Traces faces with next = clockwise successor of the twin; each face keeps
// its region on the left of its darts. Throws MalformedRotation if the
// rotations do not cover every dart exactly once.
FaceSet trace_faces(const EmbeddedGraph& g);

struct PlanarityReport {
  bool planar = true;
  int components = 0;
  int faces = 0;
  long total_genus = 0;  // sum of per-component genus
};

PlanarityReport check_planarity(const EmbeddedGraph& g);

// Result of deleting all edges outside `keep`, with region tracking. Regions
// are the plane regions of the surviving drawing; each old face belongs to
// one region, and each region holds >= 0 new faces (several when the
// subgraph is disconnected and components nest).
struct DeletionTrack {
  EmbeddedGraph graph;
  std::vector<int> new_edge_of;     // old edge -> new edge id, -1 if deleted
  std::vector<int> old_edge_of;     // new edge -> old edge id
  FaceSet old_faces;
  FaceSet new_faces;
  std::vector<int> region_of_old_face;
  std::vector<int> region_of_new_face;
  int outer_region = -1;  // region that absorbed g.outer_face_dart's face

  DartId map_dart(DartId old_dart) const {
    int ne = new_edge_of[dart_edge(old_dart)];
    return ne < 0 ? -1 : make_dart(ne, dart_side(old_dart));
  }
};

DeletionTrack delete_edges_track_outer(const EmbeddedGraph& g, const std::vector<bool>& keep);

// Builds clockwise rotations from straight-line coordinates (descending
// angle). Parallel edges/loops are not representable this way; generators
// with curved edges set rotations by hand. Also designates the outer face
// from the bottom-most node.
EmbeddedGraph embed_from_coordinates(int n, const std::vector<std::pair<double, double>>& pos,
                                     const std::vector<std::pair<int, int>>& edge_list);

// Rotation of the node obtained by contracting the embedded path `darts`
// (consecutive darts, no repeated internal node use by the path itself).
// Returns the cyclic dart sequence around the contracted node, excluding the
// path's own darts. Used for crossing tests about a shared subpath.
std::vector<DartId> contracted_rotation(const EmbeddedGraph& g, const std::vector<DartId>& darts);

}  // namespace uncross
