#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stagfv/mesh.hpp"

namespace stagfv {

using VertexMap = std::function<Vec3(const Vec3&)>;

enum class Axis { X, Y, Z };

inline constexpr std::size_t kDefaultMaxCells = 4'000'000;

/// n+1 equispaced nodes on [a, b].
std::vector<double> uniform_nodes(double a, double b, int n);

/// Tensor grid on the given node lines (zs empty in 2D). 2D kinds: Quadrangle,
/// Triangle (two per quad). 3D kinds: Hexahedron, Tetrahedron (six per hex),
/// Prism (two per hex, triangles normal to `prism_axis`), Pyramid (six per
/// hex around an added centroid apex). Boundary faces are tagged xmin, xmax,
/// ymin, ymax, zmin, zmax; `map` is applied to every vertex before geometry.
Mesh box_mesh(CellKind kind, std::span<const double> xs, std::span<const double> ys,
              std::span<const double> zs = {}, Axis prism_axis = Axis::Z,
              const VertexMap& map = {}, std::size_t max_cells = kDefaultMaxCells);

/// [0,1]^d with n cells per direction.
Mesh unit_box_mesh(CellKind kind, int n);

/// Cell size of the shock-tube meshes, h = 5 / 2^n.
double shock_tube_h(int n);

/// x(1 + 0.2 sin(πx/5) sin(2πz/height)); y, z unchanged.
Vec3 shock_tube_distortion(const Vec3& p, double height);

/// [0,5] x [0,10h]^2, 2^n layers of a 10x10 cross-section grid, each hex split
/// into two prisms (axis x) or six pyramids. Tags: left (x=0), right (x=5),
/// lateral.
Mesh gen_shock_tube_mesh(int n, CellKind kind, bool distort,
                         std::size_t max_cells = kDefaultMaxCells);

/// [0,5] x [0,9h]^2 made of three 3h-thick slabs along z: hexahedra, pyramids,
/// prisms; distorted. Same tags as gen_shock_tube_mesh.
Mesh gen_hybrid_shock_tube_mesh(int n, bool distort = true,
                                std::size_t max_cells = kDefaultMaxCells);

struct ColumnMeshParams {
  int m = 12;  // cells along each side of the square block around the column
  CellKind kind = CellKind::Prism;  // Prism, Pyramid or Hexahedron
};

struct ColumnMeshInfo {
  std::size_t base_quads = 0;        // 2D quads of the cross-section
  std::size_t solid_quads = 0;       // of which inside the column
  int layers_below = 0;              // layers under the column top
  int layers_above = 0;
  int split_factor = 1;
};

/// Box [0,0.4]x[0,0.41]x[0,0.4] minus the cylinder of radius 0.1 and height
/// 0.3 on (0.2,0.2,0), body-fitted O-grid around the column. Tags: inflow
/// (x=0), outlet (x=0.4), wall (everything else, column included).
Mesh gen_column_mesh(const ColumnMeshParams& params, ColumnMeshInfo* info = nullptr,
                     std::size_t max_cells = kDefaultMaxCells);

}  // namespace stagfv
