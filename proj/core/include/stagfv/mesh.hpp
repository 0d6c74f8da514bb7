#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stagfv/cell_kind.hpp"
#include "stagfv/geometry.hpp"

namespace stagfv {

using Index = std::int32_t;
inline constexpr Index kNoCell = -1;
inline constexpr int kNoTag = -1;

struct Face {
  std::array<Index, kMaxFaceVertices> vertices{-1, -1, -1, -1};  // owner-outward order
  int vertex_count = 0;
  double area = 0.0;  // |σ|; edge length in 2D
  Vec3 normal{};      // unit, outward from the owner
  Vec3 centroid{};
  Index owner = kNoCell;
  Index neighbor = kNoCell;
  int owner_slot = -1;
  int neighbor_slot = -1;
  int tag = kNoTag;
  double half_owner = 0.0;     // |D_{K,σ}|
  double half_neighbor = 0.0;  // |D_{L,σ}|, 0 on the boundary
  double dual_volume = 0.0;    // |D_σ|

  bool is_boundary() const noexcept { return neighbor == kNoCell; }
  Vec3 area_vector() const noexcept { return area * normal; }
};

struct Cell {
  CellKind kind = CellKind::Triangle;
  std::array<Index, kMaxCellVertices> vertices{};
  std::array<Index, kMaxCellFaces> faces{};  // slot order, see roles_of_kind
  // +1 when this cell owns faces[slot] (stored normal points outward), -1 otherwise.
  std::array<std::int8_t, kMaxCellFaces> orientation{};
  double volume = 0.0;
  Vec3 centroid{};
  double diameter = 0.0;

  int face_count() const noexcept { return stagfv::face_count(kind); }
  FaceRole role(int slot) const noexcept { return roles_of_kind(kind)[slot]; }
};

struct CellRecord {
  CellKind kind;
  std::vector<Index> vertices;
};

struct BoundaryTagRecord {
  std::string tag;
  std::vector<Index> vertices;
};

/// Names boundary faces left untagged by explicit records; return "" to leave
/// a face untagged.
using BoundaryClassifier = std::function<std::string(const Face&)>;

/// Primal mesh with derived face connectivity and half-diamond volumes.
/// Immutable once built.
class Mesh {
 public:
  int dimension() const noexcept { return dim_; }
  const std::vector<Vec3>& vertices() const noexcept { return vertices_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const std::vector<Face>& faces() const noexcept { return faces_; }
  const std::vector<std::string>& tag_names() const noexcept { return tags_; }

  std::size_t num_cells() const noexcept { return cells_.size(); }
  std::size_t num_faces() const noexcept { return faces_.size(); }
  const Cell& cell(Index k) const { return cells_[static_cast<std::size_t>(k)]; }
  const Face& face(Index f) const { return faces_[static_cast<std::size_t>(f)]; }

  /// Tag id for `name`, or kNoTag.
  int tag_id(std::string_view name) const noexcept;
  std::string_view tag_name(int id) const noexcept;

  double total_volume() const noexcept;
  double total_dual_volume() const noexcept;
  std::size_t count_cells(CellKind kind) const noexcept;
  std::size_t num_boundary_faces() const noexcept;

 private:
  friend Mesh build_mesh(int, std::vector<Vec3>, std::span<const CellRecord>,
                         std::span<const BoundaryTagRecord>, const BoundaryClassifier&);
  int dim_ = 0;
  std::vector<Vec3> vertices_;
  std::vector<Cell> cells_;
  std::vector<Face> faces_;
  std::vector<std::string> tags_;
};

/// Builds faces with owner/neighbor, geometry, role maps and dual volumes.
/// Throws MeshStructureError or MeshOrientationError.
Mesh build_mesh(int dimension, std::vector<Vec3> vertices, std::span<const CellRecord> cells,
                std::span<const BoundaryTagRecord> tags = {},
                const BoundaryClassifier& classifier = {});

struct MeshQuality {
  double theta1 = 0.0;  // max diam(K)^d / |K|
  double theta2 = 0.0;  // max |K|/|L| over adjacent cells
  int max_face_count = 0;
};

MeshQuality regularity(const Mesh& mesh);

/// ‖Σ_σ |σ| n_{K,σ}‖ / Σ_σ |σ| for one cell.
double gauss_defect(const Mesh& mesh, Index cell);

}  // namespace stagfv
