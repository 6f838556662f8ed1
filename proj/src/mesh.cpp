#include "curvedfs/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace curvedfs {

Mesh Mesh::build(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
                 const std::map<std::pair<int, int>, Vec2>& curved, double domain_radius) {
  Mesh m;
  m.vertices_ = std::move(vertices);
  m.triangles_ = std::move(triangles);
  m.domain_radius_ = domain_radius;
  const int nv = m.num_vertices();
  const int nt = m.num_triangles();
  if (nt == 0) throw ValidationError("mesh has no triangles");

  std::map<std::pair<int, int>, int> edge_index;
  m.element_edges_.resize(nt);
  m.edge_signs_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& tri = m.triangles_[t];
    for (int v : tri) {
      if (v < 0 || v >= nv)
        throw ValidationError("triangle " + std::to_string(t) + " references unknown vertex " +
                              std::to_string(v));
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw ValidationError("triangle " + std::to_string(t) + " has repeated vertices");
    if (m.affine_area(t) <= 0.0)
      throw ValidationError("triangle " + std::to_string(t) + " is not counterclockwise");

    for (int i = 0; i < 3; ++i) {
      const int a = tri[(i + 1) % 3];
      const int b = tri[(i + 2) % 3];
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto [it, inserted] = edge_index.try_emplace(key, m.num_edges());
      if (inserted) {
        MeshEdge e;
        e.lo = key.first;
        e.hi = key.second;
        e.tri[0] = t;
        m.edges_.push_back(e);
      } else {
        MeshEdge& e = m.edges_[it->second];
        if (e.tri[1] >= 0)
          throw ValidationError("edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                                ") is shared by more than two triangles");
        e.tri[1] = t;
      }
      m.element_edges_[t][i] = it->second;
      m.edge_signs_[t][i] = (a == key.first) ? 1 : -1;
    }
  }

  m.boundary_vertex_.assign(nv, 0);
  for (const MeshEdge& e : m.edges_) {
    if (e.boundary()) m.boundary_vertex_[e.lo] = m.boundary_vertex_[e.hi] = 1;
  }

  for (const auto& [key, point] : curved) {
    const std::pair<int, int> k{std::min(key.first, key.second), std::max(key.first, key.second)};
    auto it = edge_index.find(k);
    if (it == edge_index.end())
      throw ValidationError("curved midpoint given for a nonexistent edge (" + std::to_string(k.first) + "," +
                            std::to_string(k.second) + ")");
    if (!m.edges_[it->second].boundary())
      throw ValidationError("curved midpoint given for interior edge (" + std::to_string(k.first) + "," +
                            std::to_string(k.second) + ")");
    m.curved_[it->second] = point;
  }
  return m;
}

int Mesh::num_boundary_edges() const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [](const MeshEdge& e) { return e.boundary(); }));
}

Vec2 Mesh::midpoint(int e) const {
  auto it = curved_.find(e);
  if (it != curved_.end()) return it->second;
  return 0.5 * (vertices_[edges_[e].lo] + vertices_[edges_[e].hi]);
}

bool Mesh::is_curved_element(int t) const {
  for (int i = 0; i < 3; ++i) {
    if (is_curved_edge(element_edges_[t][i])) return true;
  }
  return false;
}

double Mesh::max_diameter() const {
  double h = 0.0;
  for (const MeshEdge& e : edges_) h = std::max(h, (vertices_[e.hi] - vertices_[e.lo]).norm());
  return h;
}

double Mesh::affine_area(int t) const {
  const auto& tri = triangles_[t];
  const Vec2 a = vertices_[tri[1]] - vertices_[tri[0]];
  const Vec2 b = vertices_[tri[2]] - vertices_[tri[0]];
  return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

Mesh generate_disk_mesh(int n) {
  if (n < 2) throw ValidationError("generate_disk_mesh: n must be >= 2, got " + std::to_string(n));
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<Vec2> vertices{Vec2::Zero()};
  std::vector<int> ring_start{0};
  for (int k = 1; k <= n; ++k) {
    ring_start.push_back(static_cast<int>(vertices.size()));
    const int count = 6 * k;
    const double r = (k == n) ? 1.0 : static_cast<double>(k) / n;
    for (int j = 0; j < count; ++j) {
      const double theta = two_pi * j / count;
      vertices.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
  }

  std::vector<std::array<int, 3>> triangles;
  for (int j = 0; j < 6; ++j) triangles.push_back({0, ring_start[1] + j, ring_start[1] + (j + 1) % 6});

  // Sweep around the annulus between rings k-1 and k, always advancing the
  // ring whose next vertex has the smaller angle (ties advance the outer ring).
  for (int k = 2; k <= n; ++k) {
    const int m_in = 6 * (k - 1);
    const int m_out = 6 * k;
    auto in_id = [&](int i) { return ring_start[k - 1] + i % m_in; };
    auto out_id = [&](int o) { return ring_start[k] + o % m_out; };
    int i = 0;
    int o = 0;
    while (i < m_in || o < m_out) {
      bool advance_outer;
      if (i == m_in) {
        advance_outer = true;
      } else if (o == m_out) {
        advance_outer = false;
      } else {
        // Compare (i+1)/m_in against (o+1)/m_out exactly in integers.
        advance_outer = static_cast<long>(o + 1) * m_in <= static_cast<long>(i + 1) * m_out;
      }
      if (advance_outer) {
        triangles.push_back({in_id(i), out_id(o), out_id(o + 1)});
        ++o;
      } else {
        triangles.push_back({in_id(i), out_id(o), in_id(i + 1)});
        ++i;
      }
    }
  }

  // Orient every triangle counterclockwise.
  for (auto& tri : triangles) {
    const Vec2 a = vertices[tri[1]] - vertices[tri[0]];
    const Vec2 b = vertices[tri[2]] - vertices[tri[0]];
    if (a.x() * b.y() - a.y() * b.x() < 0.0) std::swap(tri[1], tri[2]);
  }

  std::map<std::pair<int, int>, Vec2> curved;
  for (int j = 0; j < 6 * n; ++j) {
    const int a = ring_start[n] + j;
    const int b = ring_start[n] + (j + 1) % (6 * n);
    const double theta = two_pi * (j + 0.5) / (6 * n);
    curved[{std::min(a, b), std::max(a, b)}] = Vec2(std::cos(theta), std::sin(theta));
  }
  return Mesh::build(std::move(vertices), std::move(triangles), curved, 1.0);
}

}  // namespace curvedfs
