#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uncross/embed.hpp"

using namespace uncross;

namespace {

EmbeddedGraph triangle() {
  return embed_from_coordinates(3, {{0, 0}, {1, 0}, {0.5, 1}}, {{0, 1}, {1, 2}, {2, 0}});
}

EmbeddedGraph k4_planar() {
  // outer triangle + center
  return embed_from_coordinates(4, {{0, 0}, {2, 0}, {1, 2}, {1, 0.7}},
                                {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}});
}

}  // namespace

TEST_CASE("triangle traces two faces of length 3") {
  EmbeddedGraph g = triangle();
  FaceSet fs = trace_faces(g);
  REQUIRE(fs.faces.size() == 2);
  CHECK(fs.faces[0].size() == 3);
  CHECK(fs.faces[1].size() == 3);
  long total = 0;
  for (auto& f : fs.faces) total += f.size();
  CHECK(total == 2 * g.num_edges());
}

TEST_CASE("single edge has one face of length 2") {
  EmbeddedGraph g = embed_from_coordinates(2, {{0, 0}, {1, 0}}, {{0, 1}});
  FaceSet fs = trace_faces(g);
  REQUIRE(fs.faces.size() == 1);
  CHECK(fs.faces[0].size() == 2);
}

TEST_CASE("planar K4 rotation has 4 faces and genus 0") {
  EmbeddedGraph g = k4_planar();
  FaceSet fs = trace_faces(g);
  CHECK(fs.faces.size() == 4);
  PlanarityReport rep = check_planarity(g);
  CHECK(rep.planar);
  CHECK(rep.total_genus == 0);
}

TEST_CASE("K5 is nonplanar under sampled rotations") {
  // all rotations of K5 give genus >= 1; sample a few by rotating orders
  for (int variant = 0; variant < 4; ++variant) {
    EmbeddedGraph g;
    for (int i = 0; i < 5; ++i) g.add_node();
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) g.add_edge(i, j);
    for (int v = 0; v < 5; ++v) {
      auto& rot = g.rotation[v];
      std::rotate(rot.begin(), rot.begin() + (variant % rot.size()), rot.end());
      if (variant >= 2) std::swap(rot[0], rot[1]);
    }
    PlanarityReport rep = check_planarity(g);
    CHECK_FALSE(rep.planar);
    CHECK(rep.total_genus >= 1);
  }
}

TEST_CASE("empty graph is planar") {
  EmbeddedGraph g;
  CHECK(check_planarity(g).planar);
}

TEST_CASE("malformed rotations are rejected") {
  EmbeddedGraph g = triangle();
  g.rotation[0].pop_back();
  CHECK_THROWS_AS(trace_faces(g), MalformedRotation);

  EmbeddedGraph h = triangle();
  h.rotation[0].push_back(h.rotation[0][0]);
  CHECK_THROWS_AS(trace_faces(h), MalformedRotation);
}

TEST_CASE("outer face of coordinate embeddings is the unbounded one") {
  EmbeddedGraph g = k4_planar();
  FaceSet fs = trace_faces(g);
  int outer = fs.face_of[g.outer_face_dart];
  // outer face = the triangle 0-1-2, not touching node 3
  for (DartId d : fs.faces[outer]) CHECK(g.dart_tail(d) != 3);
  CHECK(fs.faces[outer].size() == 3);
}

TEST_CASE("delete_edges_track_outer: keep everything is the identity") {
  EmbeddedGraph g = k4_planar();
  std::vector<bool> keep(g.num_edges(), true);
  DeletionTrack dt = delete_edges_track_outer(g, keep);
  CHECK(dt.new_faces.faces.size() == dt.old_faces.faces.size());
  for (size_t f = 0; f < dt.old_faces.faces.size(); ++f)
    CHECK(dt.region_of_old_face[f] == dt.region_of_new_face[f]);
}

TEST_CASE("delete_edges_track_outer: deleting all edges leaves one region") {
  EmbeddedGraph g = triangle();
  std::vector<bool> keep(g.num_edges(), false);
  DeletionTrack dt = delete_edges_track_outer(g, keep);
  CHECK(dt.new_faces.faces.empty());
  CHECK(dt.region_of_old_face[0] == dt.region_of_old_face[1]);
  CHECK(dt.outer_region == dt.region_of_old_face[0]);
}

TEST_CASE("wheel: deleting a spoke merges the two adjacent faces") {
  // wheel with 4 rim nodes + hub
  EmbeddedGraph g = embed_from_coordinates(
      5, {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}, {0, 0}},
      {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 0}, {4, 1}, {4, 2}, {4, 3}});
  FaceSet before = trace_faces(g);
  REQUIRE(before.faces.size() == 5);
  std::vector<bool> keep(g.num_edges(), true);
  keep[4] = false;  // spoke to node 0
  DeletionTrack dt = delete_edges_track_outer(g, keep);
  CHECK(dt.new_faces.faces.size() == 4);
  int f0 = before.face_of[make_dart(4, 0)];
  int f1 = before.face_of[make_dart(4, 1)];
  CHECK(f0 != f1);
  CHECK(dt.region_of_old_face[f0] == dt.region_of_old_face[f1]);
  // composition property: singleton deletions match one-shot deletion
  std::vector<bool> keep2(g.num_edges(), true);
  keep2[4] = keep2[6] = false;
  DeletionTrack one_shot = delete_edges_track_outer(g, keep2);
  DeletionTrack step1 = delete_edges_track_outer(g, keep);
  std::vector<bool> keep_step2(step1.graph.num_edges(), true);
  for (int e = 0; e < step1.graph.num_edges(); ++e)
    if (step1.old_edge_of[e] == 6) keep_step2[e] = false;
  DeletionTrack step2 = delete_edges_track_outer(step1.graph, keep_step2);
  CHECK(one_shot.new_faces.faces.size() == step2.new_faces.faces.size());
}

TEST_CASE("contracted rotation of a path merges rotations") {
  // path a-b with extra spurs; contract the middle edge of a 4-path
  EmbeddedGraph g = embed_from_coordinates(
      6, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {1, 1}, {2, -1}},
      {{0, 1}, {1, 2}, {2, 3}, {1, 4}, {2, 5}});
  // contract edge 1 (between nodes 1 and 2)
  auto rot = contracted_rotation(g, {make_dart(1, 0)});
  // merged node sees: edge0 (to 0), edge3 (to 4), edge2 (to 3), edge4 (to 5)
  REQUIRE(rot.size() == 4);
  std::set<int> edges;
  for (DartId d : rot) edges.insert(dart_edge(d));
  CHECK(edges == std::set<int>{0, 2, 3, 4});
}
