#include "stagfv/vtk.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "stagfv/errors.hpp"
#include "stagfv/verify.hpp"

namespace stagfv {

namespace {

// Our prism base is counterclockwise seen from the top triangle, VTK wants
// the opposite winding.
constexpr int kWedgeOrder[6] = {0, 2, 1, 3, 5, 4};

void put(std::ostream& os, double v) { os << fmt::format("{:.17g}", v); }

std::string next_token(std::istream& is, const char* what) {
  std::string t;
  if (!(is >> t)) throw MeshStructureError(fmt::format("vtk: unexpected end of file reading {}", what));
  return t;
}

void expect(std::istream& is, const std::string& word) {
  const std::string t = next_token(is, word.c_str());
  if (t != word) throw MeshStructureError(fmt::format("vtk: expected '{}', got '{}'", word, t));
}

template <class T>
T number(std::istream& is, const char* what) {
  T v{};
  if (!(is >> v)) throw MeshStructureError(fmt::format("vtk: bad number in {}", what));
  return v;
}

}  // namespace

int vtk_cell_type(CellKind kind) noexcept {
  switch (kind) {
    case CellKind::Triangle: return 5;
    case CellKind::Quadrangle: return 9;
    case CellKind::Tetrahedron: return 10;
    case CellKind::Hexahedron: return 12;
    case CellKind::Prism: return 13;
    case CellKind::Pyramid: return 14;
  }
  return 0;
}

CellKind cell_kind_of_vtk(int type) {
  switch (type) {
    case 5: return CellKind::Triangle;
    case 9: return CellKind::Quadrangle;
    case 10: return CellKind::Tetrahedron;
    case 12: return CellKind::Hexahedron;
    case 13: return CellKind::Prism;
    case 14: return CellKind::Pyramid;
    default: break;
  }
  throw MeshStructureError(fmt::format("vtk: unsupported cell type {}", type));
}

VtkDataset vtk_geometry(const Mesh& mesh, std::string title) {
  VtkDataset out;
  out.title = std::move(title);
  out.points = mesh.vertices();
  out.cell_types.reserve(mesh.num_cells());
  out.cells.reserve(mesh.num_cells());
  for (const Cell& c : mesh.cells()) {
    const int nv = vertex_count(c.kind);
    std::vector<Index> v(static_cast<std::size_t>(nv));
    for (int i = 0; i < nv; ++i) {
      v[i] = c.kind == CellKind::Prism ? c.vertices[kWedgeOrder[i]] : c.vertices[i];
    }
    out.cell_types.push_back(vtk_cell_type(c.kind));
    out.cells.push_back(std::move(v));
  }
  return out;
}

VtkDataset vtk_snapshot(const Discretization& d, const State& s, double time, long step) {
  VtkDataset out = vtk_geometry(d.mesh(), fmt::format("stagfv t={:.17g} step={}", time, step));
  out.scalars["rho"] = s.rho;
  out.scalars["p"] = s.p;
  out.scalars["e"] = s.e;
  out.vectors["u"] = cell_velocity(d, s);
  return out;
}

void write_vtk(std::ostream& os, const VtkDataset& data) {
  os << "# vtk DataFile Version 3.0\n";
  os << (data.title.empty() ? "stagfv" : data.title) << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << data.points.size() << " double\n";
  for (const Vec3& p : data.points) {
    put(os, p[0]);
    os << ' ';
    put(os, p[1]);
    os << ' ';
    put(os, p[2]);
    os << '\n';
  }
  std::size_t size = 0;
  for (const auto& c : data.cells) size += c.size() + 1;
  os << "CELLS " << data.cells.size() << ' ' << size << '\n';
  for (const auto& c : data.cells) {
    os << c.size();
    for (Index v : c) os << ' ' << v;
    os << '\n';
  }
  os << "CELL_TYPES " << data.cell_types.size() << '\n';
  for (int t : data.cell_types) os << t << '\n';
  if (data.scalars.empty() && data.vectors.empty()) return;
  os << "CELL_DATA " << data.cells.size() << '\n';
  for (const auto& [name, values] : data.scalars) {
    os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : values) {
      put(os, v);
      os << '\n';
    }
  }
  for (const auto& [name, values] : data.vectors) {
    os << "VECTORS " << name << " double\n";
    for (const Vec3& v : values) {
      put(os, v[0]);
      os << ' ';
      put(os, v[1]);
      os << ' ';
      put(os, v[2]);
      os << '\n';
    }
  }
}

void write_vtk_file(const std::string& path, const VtkDataset& data) {
  std::ofstream os(path);
  if (!os) throw InputError(fmt::format("cannot write '{}'", path));
  write_vtk(os, data);
  if (!os) throw InputError(fmt::format("write to '{}' failed", path));
}

VtkDataset read_vtk(std::istream& is) {
  VtkDataset out;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# vtk DataFile", 0) != 0) {
    throw MeshStructureError("vtk: missing header");
  }
  std::getline(is, out.title);
  expect(is, "ASCII");
  expect(is, "DATASET");
  expect(is, "UNSTRUCTURED_GRID");
  expect(is, "POINTS");
  const auto np = number<std::size_t>(is, "POINTS");
  next_token(is, "point type");
  out.points.resize(np);
  for (auto& p : out.points) {
    for (int i = 0; i < 3; ++i) p[i] = number<double>(is, "POINTS");
  }
  expect(is, "CELLS");
  const auto nc = number<std::size_t>(is, "CELLS");
  number<std::size_t>(is, "CELLS");
  out.cells.resize(nc);
  for (auto& c : out.cells) {
    const auto nv = number<std::size_t>(is, "CELLS");
    c.resize(nv);
    for (auto& v : c) {
      v = number<Index>(is, "CELLS");
      if (v < 0 || static_cast<std::size_t>(v) >= np) {
        throw MeshStructureError(fmt::format("vtk: vertex id {} out of range", v));
      }
    }
  }
  expect(is, "CELL_TYPES");
  if (number<std::size_t>(is, "CELL_TYPES") != nc) {
    throw MeshStructureError("vtk: CELL_TYPES count differs from CELLS");
  }
  out.cell_types.resize(nc);
  for (int& t : out.cell_types) t = number<int>(is, "CELL_TYPES");

  std::string word;
  if (!(is >> word)) return out;
  if (word != "CELL_DATA") throw MeshStructureError(fmt::format("vtk: unexpected '{}'", word));
  if (number<std::size_t>(is, "CELL_DATA") != nc) {
    throw MeshStructureError("vtk: CELL_DATA count differs from CELLS");
  }
  while (is >> word) {
    const std::string name = next_token(is, "array name");
    if (word == "SCALARS") {
      next_token(is, "scalar type");
      // optional component count, then LOOKUP_TABLE
      std::string t = next_token(is, "LOOKUP_TABLE");
      if (t != "LOOKUP_TABLE") {
        if (t != "1") throw MeshStructureError("vtk: only 1-component scalars supported");
        t = next_token(is, "LOOKUP_TABLE");
      }
      if (t != "LOOKUP_TABLE") throw MeshStructureError("vtk: expected LOOKUP_TABLE");
      next_token(is, "table name");
      auto& v = out.scalars[name];
      v.resize(nc);
      for (double& x : v) x = number<double>(is, "SCALARS");
    } else if (word == "VECTORS") {
      next_token(is, "vector type");
      auto& v = out.vectors[name];
      v.resize(nc);
      for (Vec3& x : v) {
        for (int i = 0; i < 3; ++i) x[i] = number<double>(is, "VECTORS");
      }
    } else {
      throw MeshStructureError(fmt::format("vtk: unsupported section '{}'", word));
    }
  }
  return out;
}

VtkDataset read_vtk_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError(fmt::format("cannot open '{}'", path));
  return read_vtk(is);
}

Mesh mesh_from_vtk(int dimension, const VtkDataset& data) {
  std::vector<CellRecord> cells;
  cells.reserve(data.cells.size());
  for (std::size_t k = 0; k < data.cells.size(); ++k) {
    const CellKind kind = cell_kind_of_vtk(data.cell_types[k]);
    const auto& c = data.cells[k];
    if (static_cast<int>(c.size()) != vertex_count(kind)) {
      throw MeshStructureError(fmt::format("vtk: cell {} has {} vertices", k, c.size()));
    }
    CellRecord r{kind, c};
    if (kind == CellKind::Prism) {
      for (int i = 0; i < 6; ++i) r.vertices[i] = c[kWedgeOrder[i]];
    }
    cells.push_back(std::move(r));
  }
  return build_mesh(dimension, data.points, cells);
}

void write_diagnostics_csv(std::ostream& os, const std::vector<StepDiagnostics>& steps) {
  os << "step,time,dt,mass,internal_energy,kinetic_energy,total_energy,min_rho,min_e,"
        "max_dual_mass_residual,boundary_mass_outflow\n";
  for (const auto& s : steps) {
    os << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                      s.step, s.time, s.dt, s.mass, s.internal_energy, s.kinetic_energy,
                      s.total_energy, s.min_rho, s.min_e, s.max_dual_mass_residual,
                      s.boundary_mass_outflow);
  }
}

}  // namespace stagfv
