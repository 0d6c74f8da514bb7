#include "stagfv/mesh_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "stagfv/errors.hpp"

namespace stagfv {

void write_mesh(std::ostream& os, const Mesh& mesh) {
  const int d = mesh.dimension();
  os << d << ' ' << mesh.vertices().size() << ' ' << mesh.num_cells() << '\n';
  for (const Vec3& v : mesh.vertices()) {
    os << fmt::format("{:.17g} {:.17g}", v[0], v[1]);
    if (d == 3) os << fmt::format(" {:.17g}", v[2]);
    os << '\n';
  }
  for (const Cell& c : mesh.cells()) {
    os << keyword(c.kind);
    for (int i = 0; i < vertex_count(c.kind); ++i) os << ' ' << c.vertices[i];
    os << '\n';
  }
  for (const Face& f : mesh.faces()) {
    if (!f.is_boundary() || f.tag == kNoTag) continue;
    os << mesh.tag_name(f.tag);
    for (int i = 0; i < f.vertex_count; ++i) os << ' ' << f.vertices[i];
    os << '\n';
  }
}

Mesh read_mesh(std::istream& is) {
  int dim = 0;
  long long nv = -1;
  long long nc = -1;
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      auto pos = line.find_first_not_of(" \t\r");
      if (pos != std::string::npos && line[pos] != '#') return true;
    }
    return false;
  };
  if (!next_line()) throw MeshStructureError("mesh file: missing header");
  {
    std::istringstream ss(line);
    if (!(ss >> dim >> nv >> nc) || (dim != 2 && dim != 3) || nv < 0 || nc < 0) {
      throw MeshStructureError("mesh file: bad header '" + line + "'");
    }
  }
  std::vector<Vec3> verts(static_cast<std::size_t>(nv));
  for (long long i = 0; i < nv; ++i) {
    if (!next_line()) throw MeshStructureError("mesh file: truncated vertex list");
    std::istringstream ss(line);
    Vec3& v = verts[static_cast<std::size_t>(i)];
    v = {0.0, 0.0, 0.0};
    if (!(ss >> v[0] >> v[1]) || (dim == 3 && !(ss >> v[2]))) {
      throw MeshStructureError(fmt::format("mesh file: bad vertex line {}", i));
    }
  }
  std::vector<CellRecord> cells;
  cells.reserve(static_cast<std::size_t>(nc));
  for (long long i = 0; i < nc; ++i) {
    if (!next_line()) throw MeshStructureError("mesh file: truncated cell list");
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    CellRecord rec{};
    if (!parse_keyword(word, rec.kind)) {
      throw MeshStructureError(fmt::format("mesh file: unknown cell keyword '{}'", word));
    }
    Index v;
    while (ss >> v) rec.vertices.push_back(v);
    cells.push_back(std::move(rec));
  }
  std::vector<BoundaryTagRecord> tags;
  while (next_line()) {
    std::istringstream ss(line);
    BoundaryTagRecord rec;
    ss >> rec.tag;
    Index v;
    while (ss >> v) rec.vertices.push_back(v);
    tags.push_back(std::move(rec));
  }
  return build_mesh(dim, std::move(verts), cells, tags);
}

void write_mesh_file(const std::string& path, const Mesh& mesh) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot open '" + path + "' for writing");
  write_mesh(os, mesh);
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open mesh file '" + path + "'");
  return read_mesh(is);
}

}  // namespace stagfv
