#include "curvedfs/mesh.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace curvedfs {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next nonblank line, or false at end of file.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  }
  int number() const { return number_; }

 private:
  std::istream& in_;
  int number_ = 0;
};

int parse_header(const std::string& line, const std::string& name, int lineno) {
  std::istringstream ss(line);
  std::string word;
  long count = -1;
  if (!(ss >> word) || word != name) throw ParseError(lineno, "expected section " + name);
  if (!(ss >> count) || count < 0) throw ParseError(lineno, "bad count for section " + name);
  std::string rest;
  if (ss >> rest) throw ParseError(lineno, "trailing text after " + name + " header");
  return static_cast<int>(count);
}

template <typename... T>
void parse_fields(const std::string& line, int lineno, T&... fields) {
  std::istringstream ss(line);
  if (!((ss >> fields) && ...)) throw ParseError(lineno, "malformed record: '" + line + "'");
  std::string rest;
  if (ss >> rest) throw ParseError(lineno, "trailing text in record: '" + line + "'");
}

}  // namespace

void save_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << "VERTICES " << mesh.num_vertices() << "\n";
  for (int v = 0; v < mesh.num_vertices(); ++v)
    out << v << " " << fmt17(mesh.vertex(v).x()) << " " << fmt17(mesh.vertex(v).y()) << "\n";
  out << "TRIANGLES " << mesh.num_triangles() << "\n";
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    out << t << " " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
  }
  out << "CURVED " << mesh.curved_midpoints().size() << "\n";
  for (const auto& [e, p] : mesh.curved_midpoints()) {
    const int t = mesh.edge(e).tri[0];
    int local = 0;
    while (mesh.element_edge(t, local) != e) ++local;
    out << t << " " << local << " " << fmt17(p.x()) << " " << fmt17(p.y()) << "\n";
  }
  out << "BOUNDARY " << mesh.num_boundary_edges() << "\n";
  for (const MeshEdge& e : mesh.edges()) {
    if (e.boundary()) out << e.lo << " " << e.hi << "\n";
  }
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open mesh file '" + path + "'");
  LineReader reader(in);
  std::string line;

  if (!reader.next(line)) throw ParseError(reader.number(), "empty mesh file");
  const int nv = parse_header(line, "VERTICES", reader.number());
  std::vector<Vec2> vertices(nv);
  for (int i = 0; i < nv; ++i) {
    if (!reader.next(line)) throw ParseError(reader.number(), "unexpected end of file in VERTICES");
    int id;
    double x, y;
    parse_fields(line, reader.number(), id, x, y);
    if (id != i) throw ParseError(reader.number(), "vertex ids must be consecutive from 0");
    vertices[i] = Vec2(x, y);
  }

  if (!reader.next(line)) throw ParseError(reader.number(), "missing TRIANGLES section");
  const int nt = parse_header(line, "TRIANGLES", reader.number());
  std::vector<std::array<int, 3>> triangles(nt);
  for (int i = 0; i < nt; ++i) {
    if (!reader.next(line)) throw ParseError(reader.number(), "unexpected end of file in TRIANGLES");
    int id;
    auto& tri = triangles[i];
    parse_fields(line, reader.number(), id, tri[0], tri[1], tri[2]);
    if (id != i) throw ParseError(reader.number(), "triangle ids must be consecutive from 0");
    for (int v : tri) {
      if (v < 0 || v >= nv) throw ParseError(reader.number(), "triangle references unknown vertex " + std::to_string(v));
    }
  }

  std::map<std::pair<int, int>, Vec2> curved;
  std::vector<std::pair<int, int>> boundary;
  bool have_boundary = false;
  bool more = reader.next(line);
  if (more && line.rfind("CURVED", 0) == 0) {
    const int nc = parse_header(line, "CURVED", reader.number());
    for (int i = 0; i < nc; ++i) {
      if (!reader.next(line)) throw ParseError(reader.number(), "unexpected end of file in CURVED");
      int t, local;
      double x, y;
      parse_fields(line, reader.number(), t, local, x, y);
      if (t < 0 || t >= nt) throw ParseError(reader.number(), "CURVED references unknown triangle");
      if (local < 0 || local > 2) throw ParseError(reader.number(), "local edge must be 0, 1 or 2");
      const int a = triangles[t][(local + 1) % 3];
      const int b = triangles[t][(local + 2) % 3];
      curved[{std::min(a, b), std::max(a, b)}] = Vec2(x, y);
    }
    more = reader.next(line);
  }
  if (more && line.rfind("BOUNDARY", 0) == 0) {
    have_boundary = true;
    const int nb = parse_header(line, "BOUNDARY", reader.number());
    for (int i = 0; i < nb; ++i) {
      if (!reader.next(line)) throw ParseError(reader.number(), "unexpected end of file in BOUNDARY");
      int a, b;
      parse_fields(line, reader.number(), a, b);
      boundary.emplace_back(std::min(a, b), std::max(a, b));
    }
    more = reader.next(line);
  }
  if (more) throw ParseError(reader.number(), "unexpected content: '" + line + "'");

  Mesh mesh = Mesh::build(std::move(vertices), std::move(triangles), curved);
  if (have_boundary) {
    std::set<std::pair<int, int>> derived;
    for (const MeshEdge& e : mesh.edges()) {
      if (e.boundary()) derived.emplace(e.lo, e.hi);
    }
    const std::set<std::pair<int, int>> given(boundary.begin(), boundary.end());
    if (given != derived || given.size() != boundary.size())
      throw ValidationError("BOUNDARY section does not match the boundary of the triangulation");
  }
  return mesh;
}

}  // namespace curvedfs
