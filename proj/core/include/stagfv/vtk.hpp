#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "stagfv/operators.hpp"
#include "stagfv/solver.hpp"

namespace stagfv {

/// Legacy ASCII unstructured grid with cell data only.
struct VtkDataset {
  std::string title;
  std::vector<Vec3> points;
  std::vector<int> cell_types;                // VTK type ids
  std::vector<std::vector<Index>> cells;      // VTK vertex order
  std::map<std::string, std::vector<double>> scalars;
  std::map<std::string, std::vector<Vec3>> vectors;
};

int vtk_cell_type(CellKind kind) noexcept;
/// Throws MeshStructureError for a type without a matching CellKind.
CellKind cell_kind_of_vtk(int type);

/// Cells of `mesh` in VTK order (prism bases flipped).
VtkDataset vtk_geometry(const Mesh& mesh, std::string title = "stagfv");

/// Geometry plus rho, p, e and the cell-mean velocity u.
VtkDataset vtk_snapshot(const Discretization& d, const State& s, double time, long step);

void write_vtk(std::ostream& os, const VtkDataset& data);
void write_vtk_file(const std::string& path, const VtkDataset& data);
VtkDataset read_vtk(std::istream& is);
VtkDataset read_vtk_file(const std::string& path);

/// Rebuilds a mesh (untagged) from the geometry of a dataset.
Mesh mesh_from_vtk(int dimension, const VtkDataset& data);

/// One row per step; columns named in the header.
void write_diagnostics_csv(std::ostream& os, const std::vector<StepDiagnostics>& steps);

}  // namespace stagfv
