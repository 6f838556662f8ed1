#pragma once

#include "curvedfs/types.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace curvedfs {

/// Global edge, oriented from the lower to the higher vertex id.
struct MeshEdge {
  int lo = -1;
  int hi = -1;
  /// Incident triangles; tri[1] == -1 on the boundary. tri[0] < tri[1] otherwise.
  std::array<int, 2> tri{-1, -1};
  bool boundary() const { return tri[1] < 0; }
};

/// Affine triangulation plus displaced midpoints on curved boundary edges.
///
/// Built once through Mesh::build and immutable afterwards. Local edge i of a
/// triangle is opposite local vertex i and runs counterclockwise from local
/// vertex (i+1)%3 to (i+2)%3; edge_sign records whether that direction agrees
/// with the global lo->hi orientation.
class Mesh {
 public:
  /// `curved` maps a global boundary edge (given as an unordered vertex pair)
  /// to its physical midpoint node. Throws ValidationError on inconsistent input.
  static Mesh build(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
                    const std::map<std::pair<int, int>, Vec2>& curved, double domain_radius = 1.0);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_boundary_edges() const;

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const Vec2& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const MeshEdge& edge(int e) const { return edges_[e]; }
  const std::vector<MeshEdge>& edges() const { return edges_; }

  /// Global edge id of local edge i of triangle t.
  int element_edge(int t, int i) const { return element_edges_[t][i]; }
  /// +1 if local edge i of t runs lo->hi, -1 otherwise.
  int edge_sign(int t, int i) const { return edge_signs_[t][i]; }

  bool is_boundary_vertex(int v) const { return boundary_vertex_[v] != 0; }
  bool is_curved_edge(int e) const { return curved_.count(e) != 0; }
  const std::map<int, Vec2>& curved_midpoints() const { return curved_; }
  /// Physical midpoint node of edge e (displaced for curved edges).
  Vec2 midpoint(int e) const;
  /// True if triangle t has a curved edge.
  bool is_curved_element(int t) const;

  double domain_radius() const { return domain_radius_; }
  /// Maximum straight-edge length.
  double max_diameter() const;
  /// Area of the triangle spanned by the vertices of t.
  double affine_area(int t) const;

  /// Global node id used by P2-type spaces: vertices first, then edges.
  int node_id(int t, int local_node) const {
    return local_node < 3 ? triangles_[t][local_node] : num_vertices() + element_edges_[t][local_node - 3];
  }

 private:
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<MeshEdge> edges_;
  std::vector<std::array<int, 3>> element_edges_;
  std::vector<std::array<int, 3>> edge_signs_;
  std::vector<char> boundary_vertex_;
  std::map<int, Vec2> curved_;
  double domain_radius_ = 1.0;
};

/// Concentric-ring triangulation of the unit disk: ring k of n carries 6k
/// equally spaced vertices at radius k/n. Boundary midpoints are projected
/// radially onto the unit circle. Throws ValidationError for n < 2.
Mesh generate_disk_mesh(int n);

/// Text format with sections VERTICES, TRIANGLES, and optional CURVED and
/// BOUNDARY; ids are 0-based and floats use 17 significant digits.
void save_mesh(const Mesh& mesh, const std::string& path);
Mesh load_mesh(const std::string& path);

}  // namespace curvedfs
