#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "stagfv/errors.hpp"
#include "stagfv/generators.hpp"
#include "stagfv/mesh.hpp"
#include "stagfv/mesh_io.hpp"

using namespace stagfv;

namespace {

void expect_mesh_invariants(const Mesh& mesh) {
  for (std::size_t k = 0; k < mesh.num_cells(); ++k) {
    const Cell& c = mesh.cell(static_cast<Index>(k));
    EXPECT_GT(c.volume, 0.0);
    EXPECT_LE(gauss_defect(mesh, static_cast<Index>(k)), 1e-12);
    for (int s = 0; s < c.face_count(); ++s) {
      const Face& f = mesh.face(c.faces[s]);
      EXPECT_NEAR(c.volume / c.face_count(), c.orientation[s] > 0 ? f.half_owner : f.half_neighbor,
                  1e-15 * c.volume);
    }
  }
  for (const Face& f : mesh.faces()) {
    EXPECT_GT(f.area, 0.0);
    EXPECT_NEAR(norm(f.normal), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(f.dual_volume, f.half_owner + f.half_neighbor);
  }
  const double vol = mesh.total_volume();
  EXPECT_NEAR(mesh.total_dual_volume(), vol, 1e-12 * vol);
}

}  // namespace

TEST(Mesh, SingleUnitSquare) {
  std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  std::vector<CellRecord> c{{CellKind::Quadrangle, {0, 1, 2, 3}}};
  Mesh m = build_mesh(2, v, c);
  EXPECT_EQ(m.num_cells(), 1u);
  EXPECT_EQ(m.num_faces(), 4u);
  EXPECT_EQ(m.num_boundary_faces(), 4u);
  EXPECT_DOUBLE_EQ(m.cell(0).volume, 1.0);
  for (const Face& f : m.faces()) EXPECT_DOUBLE_EQ(f.half_owner, 0.25);
  // Role slots point the expected way.
  const Cell& cell = m.cell(0);
  EXPECT_DOUBLE_EQ(m.face(cell.faces[slot_of_role(CellKind::Quadrangle, FaceRole::W)]).normal[0], -1.0);
  EXPECT_DOUBLE_EQ(m.face(cell.faces[slot_of_role(CellKind::Quadrangle, FaceRole::E)]).normal[0], 1.0);
  EXPECT_DOUBLE_EQ(m.face(cell.faces[slot_of_role(CellKind::Quadrangle, FaceRole::S)]).normal[1], -1.0);
  EXPECT_DOUBLE_EQ(m.face(cell.faces[slot_of_role(CellKind::Quadrangle, FaceRole::N)]).normal[1], 1.0);
  expect_mesh_invariants(m);
}

TEST(Mesh, TwoTetrahedraShareOneFace) {
  std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  std::vector<CellRecord> c{{CellKind::Tetrahedron, {0, 1, 2, 3}},
                            {CellKind::Tetrahedron, {1, 2, 3, 4}}};
  // Second tet: fix orientation if needed.
  try {
    build_mesh(3, v, c);
  } catch (const MeshOrientationError&) {
    c[1].vertices = {2, 1, 3, 4};
  }
  Mesh m = build_mesh(3, v, c);
  ASSERT_EQ(m.num_faces(), 7u);
  int internal = 0;
  for (const Face& f : m.faces()) {
    if (f.is_boundary()) continue;
    ++internal;
    EXPECT_NEAR(f.dual_volume, m.cell(0).volume / 4 + m.cell(1).volume / 4, 1e-15);
  }
  EXPECT_EQ(internal, 1);
  expect_mesh_invariants(m);
}

TEST(Mesh, OrientationError) {
  std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  std::vector<CellRecord> c{{CellKind::Quadrangle, {0, 3, 2, 1}}};
  EXPECT_THROW(build_mesh(2, v, c), MeshOrientationError);
}

TEST(Mesh, NonConformingFaceNamesBothCells) {
  // A hexahedron next to two prisms whose triangles do not match its quad face:
  // a prism pair glued on a hex face via triangular faces.
  std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                      {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1},
                      {0, 0, 2}, {1, 0, 2}, {1, 1, 2}, {0, 1, 2}};
  std::vector<CellRecord> c{{CellKind::Hexahedron, {0, 1, 2, 3, 4, 5, 6, 7}},
                            {CellKind::Prism, {4, 5, 6, 8, 9, 10}},
                            {CellKind::Prism, {4, 6, 7, 8, 10, 11}}};
  try {
    build_mesh(3, v, c);
    FAIL() << "expected MeshStructureError";
  } catch (const MeshStructureError& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("cells"), std::string::npos) << what;
    EXPECT_NE(what.find('0'), std::string::npos) << what;
  }
}

TEST(Mesh, ThreeCellsOnOneFace) {
  std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {-1, 0, 0}};
  std::vector<CellRecord> c{{CellKind::Triangle, {0, 1, 2}},
                            {CellKind::Triangle, {1, 0, 3}},
                            {CellKind::Triangle, {0, 1, 4}}};
  EXPECT_THROW(build_mesh(2, v, c), MeshOrientationError);
  c[2].vertices = {1, 0, 4};
  v[4] = {0.5, -2, 0};
  EXPECT_THROW(build_mesh(2, v, c), MeshStructureError);
}

TEST(Mesh, BadVertexCount) {
  std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
  std::vector<CellRecord> c{{CellKind::Quadrangle, {0, 1, 2}}};
  EXPECT_THROW(build_mesh(2, v, c), MeshStructureError);
}

TEST(Mesh, UnitGridsAllKinds) {
  for (CellKind k : kAllCellKinds) {
    Mesh m = unit_box_mesh(k, 3);
    expect_mesh_invariants(m);
    EXPECT_NEAR(m.total_volume(), 1.0, 1e-12) << to_string(k);
    for (const Face& f : m.faces()) {
      if (f.is_boundary()) EXPECT_NE(f.tag, kNoTag);
    }
  }
}

TEST(Mesh, RegularityOfUniformGrids) {
  MeshQuality q2 = regularity(unit_box_mesh(CellKind::Quadrangle, 4));
  EXPECT_NEAR(q2.theta1, 2.0, 1e-12);
  EXPECT_NEAR(q2.theta2, 1.0, 1e-12);
  EXPECT_EQ(q2.max_face_count, 4);
  MeshQuality q3 = regularity(unit_box_mesh(CellKind::Hexahedron, 3));
  EXPECT_NEAR(q3.theta1, std::pow(3.0, 1.5), 1e-12);
  EXPECT_NEAR(q3.theta2, 1.0, 1e-12);
  EXPECT_EQ(q3.max_face_count, 6);
}

TEST(Mesh, RegularityOfGradedGrid) {
  std::vector<double> x{0.0, 1.0, 3.0, 7.0};
  std::vector<double> y{0.0, 1.0};
  MeshQuality q = regularity(box_mesh(CellKind::Quadrangle, x, y));
  EXPECT_NEAR(q.theta2, 2.0, 1e-12);
  EXPECT_GE(q.theta1, 1.0);
}

TEST(Generators, ShockTubeCounts) {
  for (int n = 1; n <= 5; ++n) {
    const double h = shock_tube_h(n);
    Mesh p = gen_shock_tube_mesh(n, CellKind::Prism, false);
    Mesh y = gen_shock_tube_mesh(n, CellKind::Pyramid, false);
    EXPECT_EQ(p.num_cells(), (std::size_t{1} << n) * 200);
    EXPECT_EQ(y.num_cells(), (std::size_t{1} << n) * 600);
    const double vol = 5.0 * 100 * h * h;
    EXPECT_NEAR(p.total_volume(), vol, 1e-10 * vol);
    EXPECT_NEAR(y.total_volume(), vol, 1e-10 * vol);
  }
  EXPECT_EQ(gen_shock_tube_mesh(3, CellKind::Prism, false).num_cells(), 1600u);
  EXPECT_EQ(gen_shock_tube_mesh(3, CellKind::Pyramid, false).num_cells(), 4800u);
}

TEST(Generators, ShockTubeBoundaryPreserved) {
  for (bool distort : {false, true}) {
    Mesh m = gen_shock_tube_mesh(3, CellKind::Prism, distort);
    const double H = 10.0 * shock_tube_h(3);
    for (const Vec3& v : m.vertices()) {
      EXPECT_GE(v[0], -1e-14);
      EXPECT_LE(v[0], 5.0 + 1e-12);
      EXPECT_GE(v[1], 0.0);
      EXPECT_LE(v[1], H + 1e-12);
    }
    EXPECT_NEAR(m.total_volume(), 5.0 * H * H, 1e-10 * 5.0 * H * H);
    expect_mesh_invariants(m);
    for (const Face& f : m.faces()) {
      if (!f.is_boundary()) continue;
      std::string_view tag = m.tag_name(f.tag);
      if (std::abs(f.centroid[0]) < 1e-12) EXPECT_EQ(tag, "left");
      if (std::abs(f.centroid[0] - 5.0) < 1e-12) EXPECT_EQ(tag, "right");
    }
  }
}

TEST(Generators, HybridShockTube) {
  const int n = 3;
  Mesh m = gen_hybrid_shock_tube_mesh(n);
  EXPECT_GT(m.count_cells(CellKind::Hexahedron), 0u);
  EXPECT_GT(m.count_cells(CellKind::Pyramid), 0u);
  EXPECT_GT(m.count_cells(CellKind::Prism), 0u);
  EXPECT_EQ(m.num_cells(), 8u * 27 * 9);
  const double h = shock_tube_h(n);
  const double vol = 5.0 * 81 * h * h;
  EXPECT_NEAR(m.total_volume(), vol, 1e-10 * vol);
  expect_mesh_invariants(m);
  // Glue planes z = 3h and z = 6h: every face there is internal with two cells.
  int glue = 0;
  for (const Face& f : m.faces()) {
    for (double zg : {3 * h, 6 * h}) {
      bool on_plane = true;
      for (int i = 0; i < f.vertex_count; ++i) {
        on_plane = on_plane && std::abs(m.vertices()[f.vertices[i]][2] - zg) < 1e-12;
      }
      if (on_plane) {
        ++glue;
        EXPECT_FALSE(f.is_boundary());
      }
    }
  }
  EXPECT_EQ(glue, 2 * 8 * 9);
}

TEST(Generators, CapacityError) {
  EXPECT_THROW(gen_shock_tube_mesh(12, CellKind::Pyramid, false, 1'000'000), CapacityError);
}

TEST(Generators, ColumnMeshCount) {
  for (CellKind k : {CellKind::Prism, CellKind::Pyramid}) {
    ColumnMeshInfo info;
    Mesh m = gen_column_mesh({6, k}, &info);
    const std::size_t expected =
        ((info.base_quads - info.solid_quads) * info.layers_below +
         info.base_quads * info.layers_above) *
        info.split_factor;
    EXPECT_EQ(m.num_cells(), expected);
    EXPECT_EQ(info.split_factor, k == CellKind::Prism ? 2 : 6);
    expect_mesh_invariants(m);
    for (const Face& f : m.faces()) {
      if (f.is_boundary()) EXPECT_NE(f.tag, kNoTag);
    }
    EXPECT_NE(m.tag_id("inflow"), kNoTag);
    EXPECT_NE(m.tag_id("outlet"), kNoTag);
    EXPECT_NE(m.tag_id("wall"), kNoTag);
    // Box minus the polygonal cylinder: close to the analytic volume.
    const double exact = 0.4 * 0.41 * 0.4 - std::acos(-1.0) * 0.01 * 0.3;
    EXPECT_NEAR(m.total_volume(), exact, 0.01 * exact);
  }
}

TEST(MeshIo, RoundTrip) {
  Mesh m = gen_hybrid_shock_tube_mesh(2);
  std::stringstream ss;
  write_mesh(ss, m);
  Mesh r = read_mesh(ss);
  ASSERT_EQ(r.num_cells(), m.num_cells());
  ASSERT_EQ(r.num_faces(), m.num_faces());
  for (std::size_t i = 0; i < m.vertices().size(); ++i) {
    EXPECT_EQ(r.vertices()[i], m.vertices()[i]);
  }
  for (std::size_t f = 0; f < m.num_faces(); ++f) {
    const Face& a = m.face(static_cast<Index>(f));
    const Face& b = r.face(static_cast<Index>(f));
    EXPECT_EQ(a.owner, b.owner);
    EXPECT_EQ(a.neighbor, b.neighbor);
    if (a.is_boundary()) EXPECT_EQ(m.tag_name(a.tag), r.tag_name(b.tag));
  }
}

TEST(MeshIo, RejectsBadHeader) {
  std::stringstream ss("4 1 1\n");
  EXPECT_THROW(read_mesh(ss), MeshStructureError);
}
