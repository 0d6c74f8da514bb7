#include "stagfv/cell_kind.hpp"

#include <array>

namespace stagfv {

namespace {

using R = FaceRole;

// Vertex conventions: 2D polygons counterclockwise; 3D base polygon
// counterclockwise seen from the extruded nodes (or the apex), then the
// extruded/apex nodes.
constexpr std::array<FaceRole, 3> kTriRoles{R::W, R::E, R::S};
constexpr std::array<FaceTemplate, 3> kTriFaces{{{2, {1, 2}}, {2, {2, 0}}, {2, {0, 1}}}};
constexpr std::array<DualEdge, 3> kTriEdges{{{0, 2}, {2, 1}, {1, 0}}};

constexpr std::array<FaceRole, 4> kQuadRoles{R::W, R::E, R::S, R::N};
constexpr std::array<FaceTemplate, 4> kQuadFaces{
    {{2, {3, 0}}, {2, {1, 2}}, {2, {0, 1}}, {2, {2, 3}}}};
constexpr std::array<DualEdge, 4> kQuadEdges{{{0, 2}, {2, 1}, {1, 3}, {3, 0}}};

constexpr std::array<FaceRole, 4> kTetRoles{R::W, R::E, R::S, R::B};
constexpr std::array<FaceTemplate, 4> kTetFaces{
    {{3, {2, 0, 3}}, {3, {1, 2, 3}}, {3, {0, 1, 3}}, {3, {0, 2, 1}}}};
constexpr std::array<DualEdge, 6> kTetEdges{{{3, 2}, {3, 0}, {3, 1}, {2, 0}, {0, 1}, {1, 2}}};

constexpr std::array<FaceRole, 6> kHexRoles{R::W, R::E, R::S, R::N, R::A, R::B};
constexpr std::array<FaceTemplate, 6> kHexFaces{{{4, {3, 0, 4, 7}},
                                                 {4, {1, 2, 6, 5}},
                                                 {4, {0, 1, 5, 4}},
                                                 {4, {2, 3, 7, 6}},
                                                 {4, {4, 5, 6, 7}},
                                                 {4, {0, 3, 2, 1}}}};
constexpr std::array<DualEdge, 12> kHexEdges{{{5, 2},
                                              {2, 4},
                                              {4, 3},
                                              {3, 5},
                                              {0, 2},
                                              {2, 1},
                                              {1, 3},
                                              {3, 0},
                                              {5, 1},
                                              {1, 4},
                                              {4, 0},
                                              {0, 5}}};

// Prism: E and W are the triangular ends, B, S, N the quadrilateral sides.
constexpr std::array<FaceRole, 5> kPrismRoles{R::B, R::S, R::N, R::E, R::W};
constexpr std::array<FaceTemplate, 5> kPrismFaces{{{4, {1, 2, 5, 4}},
                                                   {4, {0, 1, 4, 3}},
                                                   {4, {2, 0, 3, 5}},
                                                   {3, {3, 4, 5}},
                                                   {3, {0, 2, 1}}}};
constexpr std::array<DualEdge, 9> kPrismEdges{
    {{1, 2}, {2, 0}, {0, 1}, {3, 0}, {3, 1}, {3, 2}, {4, 0}, {4, 1}, {4, 2}}};

// Pyramid: B is the quadrilateral base, S, E, N, W the sides in cyclic order.
constexpr std::array<FaceRole, 5> kPyrRoles{R::B, R::S, R::E, R::N, R::W};
constexpr std::array<FaceTemplate, 5> kPyrFaces{
    {{4, {0, 3, 2, 1}}, {3, {0, 1, 4}}, {3, {1, 2, 4}}, {3, {2, 3, 4}}, {3, {3, 0, 4}}}};
constexpr std::array<DualEdge, 8> kPyrEdges{
    {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {4, 1}}};

}  // namespace

int face_count(CellKind kind) noexcept {
  switch (kind) {
    case CellKind::Triangle: return 3;
    case CellKind::Quadrangle: return 4;
    case CellKind::Tetrahedron: return 4;
    case CellKind::Hexahedron: return 6;
    case CellKind::Prism: return 5;
    case CellKind::Pyramid: return 5;
  }
  return 0;
}

int vertex_count(CellKind kind) noexcept {
  switch (kind) {
    case CellKind::Triangle: return 3;
    case CellKind::Quadrangle: return 4;
    case CellKind::Tetrahedron: return 4;
    case CellKind::Hexahedron: return 8;
    case CellKind::Prism: return 6;
    case CellKind::Pyramid: return 5;
  }
  return 0;
}

int dimension(CellKind kind) noexcept {
  return (kind == CellKind::Triangle || kind == CellKind::Quadrangle) ? 2 : 3;
}

Rational xi_of_kind(CellKind kind) noexcept { return Rational(1, face_count(kind)); }

std::span<const FaceRole> roles_of_kind(CellKind kind) noexcept {
  switch (kind) {
    case CellKind::Triangle: return kTriRoles;
    case CellKind::Quadrangle: return kQuadRoles;
    case CellKind::Tetrahedron: return kTetRoles;
    case CellKind::Hexahedron: return kHexRoles;
    case CellKind::Prism: return kPrismRoles;
    case CellKind::Pyramid: return kPyrRoles;
  }
  return {};
}

std::span<const FaceTemplate> face_templates(CellKind kind) noexcept {
  switch (kind) {
    case CellKind::Triangle: return kTriFaces;
    case CellKind::Quadrangle: return kQuadFaces;
    case CellKind::Tetrahedron: return kTetFaces;
    case CellKind::Hexahedron: return kHexFaces;
    case CellKind::Prism: return kPrismFaces;
    case CellKind::Pyramid: return kPyrFaces;
  }
  return {};
}

std::span<const DualEdge> dual_edges_of_kind(CellKind kind) noexcept {
  switch (kind) {
    case CellKind::Triangle: return kTriEdges;
    case CellKind::Quadrangle: return kQuadEdges;
    case CellKind::Tetrahedron: return kTetEdges;
    case CellKind::Hexahedron: return kHexEdges;
    case CellKind::Prism: return kPrismEdges;
    case CellKind::Pyramid: return kPyrEdges;
  }
  return {};
}

std::string_view to_string(CellKind kind) noexcept {
  switch (kind) {
    case CellKind::Triangle: return "triangle";
    case CellKind::Quadrangle: return "quadrangle";
    case CellKind::Tetrahedron: return "tetrahedron";
    case CellKind::Hexahedron: return "hexahedron";
    case CellKind::Prism: return "prism";
    case CellKind::Pyramid: return "pyramid";
  }
  return "?";
}

std::string_view to_string(FaceRole role) noexcept {
  constexpr std::string_view names[] = {"W", "E", "S", "N", "A", "B"};
  return names[static_cast<int>(role)];
}

std::string_view keyword(CellKind kind) noexcept {
  switch (kind) {
    case CellKind::Triangle: return "TRI";
    case CellKind::Quadrangle: return "QUAD";
    case CellKind::Tetrahedron: return "TET";
    case CellKind::Hexahedron: return "HEX";
    case CellKind::Prism: return "PRISM";
    case CellKind::Pyramid: return "PYR";
  }
  return "?";
}

bool parse_keyword(std::string_view word, CellKind& kind) noexcept {
  for (CellKind k : kAllCellKinds) {
    if (keyword(k) == word) {
      kind = k;
      return true;
    }
  }
  return false;
}

int slot_of_role(CellKind kind, FaceRole role) noexcept {
  auto roles = roles_of_kind(kind);
  for (int i = 0; i < static_cast<int>(roles.size()); ++i) {
    if (roles[i] == role) return i;
  }
  return -1;
}

}  // namespace stagfv
