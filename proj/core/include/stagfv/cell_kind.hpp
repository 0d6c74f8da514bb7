#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include <boost/rational.hpp>

namespace stagfv {

using Rational = boost::rational<long long>;

enum class CellKind : std::uint8_t { Triangle, Quadrangle, Tetrahedron, Hexahedron, Prism, Pyramid };

inline constexpr int kNumCellKinds = 6;

inline constexpr CellKind kAllCellKinds[] = {CellKind::Triangle,    CellKind::Quadrangle,
                                             CellKind::Tetrahedron, CellKind::Hexahedron,
                                             CellKind::Prism,       CellKind::Pyramid};

/// Face labels used by the coefficient tables. Opposite pairs on quads and
/// hexahedra are W/E, S/N and A/B.
enum class FaceRole : std::uint8_t { W, E, S, N, A, B };

/// An oriented pair of faces of one cell whose half-diamonds touch. The dual
/// flux stored for the edge is positive when mass leaves D_from toward D_to.
struct DualEdge {
  int from;  // local face slot
  int to;
};

/// Local vertex indices of one face, listed so that the right-hand normal
/// points out of the cell.
struct FaceTemplate {
  int vertex_count;
  int vertices[4];
};

inline constexpr int kMaxCellFaces = 6;
inline constexpr int kMaxCellVertices = 8;
inline constexpr int kMaxFaceVertices = 4;
inline constexpr int kMaxDualEdges = 12;

int face_count(CellKind kind) noexcept;
int vertex_count(CellKind kind) noexcept;
int dimension(CellKind kind) noexcept;

Rational xi_of_kind(CellKind kind) noexcept;

/// Role of each local face slot, in the column order of the kind's table.
std::span<const FaceRole> roles_of_kind(CellKind kind) noexcept;

/// Face templates in slot order (same order as roles_of_kind).
std::span<const FaceTemplate> face_templates(CellKind kind) noexcept;

/// Dual edges in the printed row order of the kind's table.
std::span<const DualEdge> dual_edges_of_kind(CellKind kind) noexcept;

std::string_view to_string(CellKind kind) noexcept;
std::string_view to_string(FaceRole role) noexcept;

/// Mesh-file keyword: TRI, QUAD, TET, HEX, PRISM, PYR.
std::string_view keyword(CellKind kind) noexcept;
bool parse_keyword(std::string_view word, CellKind& kind) noexcept;

/// Local slot of `role` in cells of `kind`, or -1.
int slot_of_role(CellKind kind, FaceRole role) noexcept;

}  // namespace stagfv
