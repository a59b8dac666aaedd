#include "uncross/embed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace uncross {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

FaceSet trace_faces(const EmbeddedGraph& g) {
  const int nd = g.num_darts();
  std::vector<int> pos_node(nd, -1);  // node whose rotation holds the dart
  std::vector<int> pos_index(nd, -1);
  for (int v = 0; v < g.num_nodes(); ++v) {
    const auto& rot = g.rotation[v];
    for (int i = 0; i < static_cast<int>(rot.size()); ++i) {
      DartId d = rot[i];
      if (d < 0 || d >= nd) throw MalformedRotation("dart id out of range");
      if (pos_node[d] != -1) throw MalformedRotation("dart listed twice");
      if (g.dart_tail(d) != v) throw MalformedRotation("dart in wrong rotation");
      pos_node[d] = v;
      pos_index[d] = i;
    }
  }
  for (int d = 0; d < nd; ++d)
    if (pos_node[d] == -1) throw MalformedRotation("dart missing from rotations");

  FaceSet fs;
  fs.face_of.assign(nd, -1);
  for (int start = 0; start < nd; ++start) {
    if (fs.face_of[start] != -1) continue;
    std::vector<DartId> face;
    DartId d = start;
    while (fs.face_of[d] == -1) {
      fs.face_of[d] = static_cast<int>(fs.faces.size());
      face.push_back(d);
      DartId t = dart_twin(d);
      const auto& rot = g.rotation[pos_node[t]];
      d = rot[(pos_index[t] + 1) % rot.size()];
    }
    fs.faces.push_back(std::move(face));
  }
  return fs;
}

PlanarityReport check_planarity(const EmbeddedGraph& g) {
  PlanarityReport rep;
  FaceSet fs = trace_faces(g);
  rep.faces = static_cast<int>(fs.faces.size());

  Dsu dsu(g.num_nodes());
  for (const auto& e : g.edges) dsu.unite(e.a, e.b);

  std::vector<int> comp_of(g.num_nodes());
  std::vector<int> comp_v, comp_e, comp_f;
  for (int v = 0; v < g.num_nodes(); ++v) {
    int r = dsu.find(v);
    if (r == v) {
      comp_of[v] = rep.components++;
      comp_v.push_back(0);
      comp_e.push_back(0);
      comp_f.push_back(0);
    }
  }
  for (int v = 0; v < g.num_nodes(); ++v) comp_of[v] = comp_of[dsu.find(v)];
  for (int v = 0; v < g.num_nodes(); ++v) comp_v[comp_of[v]]++;
  for (const auto& e : g.edges) comp_e[comp_of[e.a]]++;
  for (const auto& face : fs.faces) comp_f[comp_of[g.dart_tail(face[0])]]++;

  for (int c = 0; c < rep.components; ++c) {
    int f = comp_e[c] == 0 ? 1 : comp_f[c];  // an isolated node has one face
    long deficiency = 2 - (comp_v[c] - comp_e[c] + f);
    // rotation systems give orientable surfaces, so the deficiency is even
    rep.total_genus += deficiency / 2;
    if (deficiency != 0) rep.planar = false;
  }
  return rep;
}

DeletionTrack delete_edges_track_outer(const EmbeddedGraph& g, const std::vector<bool>& keep) {
  DeletionTrack out;
  out.old_faces = trace_faces(g);

  out.new_edge_of.assign(g.num_edges(), -1);
  out.graph.rotation.assign(g.num_nodes(), {});
  for (int e = 0; e < g.num_edges(); ++e) {
    if (e < static_cast<int>(keep.size()) && keep[e]) {
      out.new_edge_of[e] = static_cast<int>(out.graph.edges.size());
      out.graph.edges.push_back(g.edges[e]);
      out.old_edge_of.push_back(e);
    }
  }
  for (int v = 0; v < g.num_nodes(); ++v)
    for (DartId d : g.rotation[v])
      if (out.new_edge_of[dart_edge(d)] >= 0)
        out.graph.rotation[v].push_back(make_dart(out.new_edge_of[dart_edge(d)], dart_side(d)));

  // Deleting an edge merges the plane regions on its two sides.
  Dsu regions(static_cast<int>(out.old_faces.faces.size()));
  for (int e = 0; e < g.num_edges(); ++e) {
    if (out.new_edge_of[e] >= 0) continue;
    regions.unite(out.old_faces.face_of[make_dart(e, 0)], out.old_faces.face_of[make_dart(e, 1)]);
  }
  out.region_of_old_face.resize(out.old_faces.faces.size());
  for (size_t f = 0; f < out.old_faces.faces.size(); ++f)
    out.region_of_old_face[f] = regions.find(static_cast<int>(f));

  out.new_faces = trace_faces(out.graph);
  out.region_of_new_face.resize(out.new_faces.faces.size());
  for (size_t f = 0; f < out.new_faces.faces.size(); ++f) {
    DartId nd = out.new_faces.faces[f][0];
    DartId od = make_dart(out.old_edge_of[dart_edge(nd)], dart_side(nd));
    out.region_of_new_face[f] = regions.find(out.old_faces.face_of[od]);
  }

  if (g.outer_face_dart >= 0) {
    out.outer_region = regions.find(out.old_faces.face_of[g.outer_face_dart]);
    for (size_t f = 0; f < out.new_faces.faces.size(); ++f) {
      if (out.region_of_new_face[f] == out.outer_region) {
        out.graph.outer_face_dart = out.new_faces.faces[f][0];
        break;
      }
    }
  }
  return out;
}

EmbeddedGraph embed_from_coordinates(int n, const std::vector<std::pair<double, double>>& pos,
                                     const std::vector<std::pair<int, int>>& edge_list) {
  EmbeddedGraph g;
  g.rotation.assign(n, {});
  for (auto [a, b] : edge_list) g.edges.push_back({a, b});
  for (int e = 0; e < g.num_edges(); ++e) {
    g.rotation[g.edges[e].a].push_back(make_dart(e, 0));
    g.rotation[g.edges[e].b].push_back(make_dart(e, 1));
  }
  auto angle_of = [&](DartId d) {
    int u = g.dart_tail(d), w = g.dart_head(d);
    return std::atan2(pos[w].second - pos[u].second, pos[w].first - pos[u].first);
  };
  for (int v = 0; v < n; ++v)
    std::sort(g.rotation[v].begin(), g.rotation[v].end(),
              [&](DartId x, DartId y) { return angle_of(x) > angle_of(y); });

  if (g.num_edges() > 0) {
    int low = -1;
    for (int v = 0; v < n; ++v) {
      if (g.rotation[v].empty()) continue;
      if (low < 0 || pos[v].second < pos[low].second ||
          (pos[v].second == pos[low].second && pos[v].first < pos[low].first))
        low = v;
    }
    // At the bottom-most node the unbounded region lies below; it is the
    // corner swept clockwise from the minimum-angle dart to the maximum-angle
    // dart, which the face of the maximum-angle dart owns.
    g.outer_face_dart = g.rotation[low].front();
  }
  return g;
}

std::vector<DartId> contracted_rotation(const EmbeddedGraph& g, const std::vector<DartId>& darts) {
  std::vector<DartId> rot = g.rotation[g.dart_tail(darts[0])];
  for (DartId d : darts) {
    auto it = std::find(rot.begin(), rot.end(), d);
    if (it == rot.end()) return {};  // path revisits a contracted node; caller handles
    size_t at = static_cast<size_t>(it - rot.begin());
    const auto& next_rot = g.rotation[g.dart_head(d)];
    DartId t = dart_twin(d);
    auto tit = std::find(next_rot.begin(), next_rot.end(), t);
    size_t ti = static_cast<size_t>(tit - next_rot.begin());
    std::vector<DartId> merged;
    merged.reserve(rot.size() + next_rot.size() - 2);
    merged.insert(merged.end(), rot.begin(), it);
    for (size_t k = 1; k < next_rot.size(); ++k) merged.push_back(next_rot[(ti + k) % next_rot.size()]);
    merged.insert(merged.end(), rot.begin() + at + 1, rot.end());
    rot = std::move(merged);
  }
  return rot;
}

}  // namespace uncross
