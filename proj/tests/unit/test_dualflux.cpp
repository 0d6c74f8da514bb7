#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "rational_oracle.hpp"
#include "stagfv/dualflux.hpp"

using namespace stagfv;

namespace {
int edge_index(CellKind k, FaceRole a, FaceRole b) {
  auto roles = roles_of_kind(k);
  auto edges = dual_edges_of_kind(k);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (roles[edges[e].from] == a && roles[edges[e].to] == b) return static_cast<int>(e);
  }
  return -1;
}
}  // namespace

TEST(Tables, PrintedRows) {
  using R = FaceRole;
  const auto& quad = table_of_kind(CellKind::Quadrangle);
  int e = edge_index(CellKind::Quadrangle, R::W, R::S);
  ASSERT_GE(e, 0);
  EXPECT_EQ(quad.rows[e], (std::vector<Rational>{{-3, 8}, {1, 8}, {3, 8}, {-1, 8}}));

  const auto& prism = table_of_kind(CellKind::Prism);
  e = edge_index(CellKind::Prism, R::E, R::B);
  ASSERT_GE(e, 0);
  EXPECT_EQ(prism.rows[e], (std::vector<Rational>{{1, 5}, 0, 0, {-4, 15}, {1, 15}}));

  const auto& pyr = table_of_kind(CellKind::Pyramid);
  e = edge_index(CellKind::Pyramid, R::S, R::E);
  ASSERT_GE(e, 0);
  EXPECT_EQ(pyr.rows[e], (std::vector<Rational>{0, {-4, 15}, {4, 15}, {1, 15}, {-1, 15}}));
}

TEST(Tables, ExactIdentityAndBound) {
  for (CellKind k : kAllCellKinds) {
    const auto sys = constraint_system(k);
    const auto& t = table_of_kind(k);
    // A X = B exactly.
    auto ax = oracle::multiply(sys.A, t.rows);
    EXPECT_EQ(ax, sys.B) << to_string(k);
    for (const auto& row : t.rows)
      for (const Rational& a : row) EXPECT_LE(boost::abs(a), Rational(1));
  }
}

TEST(Tables, HexEntriesAreInTheExpectedSet) {
  for (const auto& row : table_of_kind(CellKind::Hexahedron).rows) {
    for (const Rational& a : row) {
      const Rational m = boost::abs(a);
      EXPECT_TRUE(m == Rational(0) || m == Rational(1, 24) || m == Rational(5, 24));
    }
  }
}

TEST(ConstraintSystem, QuadB) {
  auto sys = constraint_system(CellKind::Quadrangle);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(sys.B[i][j], i == j ? Rational(-3, 4) : Rational(1, 4));
}

TEST(ConstraintSystem, PrismMatchesPrintedMatrices) {
  // Rows U(=B), S, N, E, W; columns S|N, N|U, U|S, E|U, E|S, E|N, W|U, W|S, W|N.
  const int printed[5][9] = {{0, -1, 1, -1, 0, 0, -1, 0, 0},
                             {1, 0, -1, 0, -1, 0, 0, -1, 0},
                             {-1, 1, 0, 0, 0, -1, 0, 0, -1},
                             {0, 0, 0, 1, 1, 1, 0, 0, 0},
                             {0, 0, 0, 0, 0, 0, 1, 1, 1}};
  auto sys = constraint_system(CellKind::Prism);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 9; ++j) EXPECT_EQ(sys.A[i][j], Rational(printed[i][j])) << i << ',' << j;
    for (int j = 0; j < 5; ++j) EXPECT_EQ(sys.B[i][j], i == j ? Rational(-4, 5) : Rational(1, 5));
  }
}

TEST(ConstraintSystem, ConservationStructure) {
  for (CellKind k : kAllCellKinds) {
    auto sys = constraint_system(k);
    for (const auto& row : sys.B) {
      Rational s = 0;
      for (const auto& v : row) s += v;
      EXPECT_EQ(s, Rational(0));
    }
    for (std::size_t e = 0; e < sys.A.front().size(); ++e) {
      Rational s = 0;
      for (const auto& row : sys.A) s += row[e];
      EXPECT_EQ(s, Rational(0));
    }
  }
}

TEST(LeastSquares, MatchesTablesAndExactOracle) {
  for (CellKind k : kAllCellKinds) {
    auto ls = derive_table_least_squares(k);
    EXPECT_LE(ls.residual, 1e-12);
    EXPECT_LE(ls.max_deviation, 1e-12) << to_string(k);
    EXPECT_EQ(ls.table.rows, table_of_kind(k).rows) << to_string(k);
    auto sys = constraint_system(k);
    auto exact = oracle::min_norm_solution(sys.A, sys.B);
    EXPECT_EQ(exact, table_of_kind(k).rows) << to_string(k);
  }
}

TEST(LeastSquares, TriangleColumn) {
  auto ls = derive_table_least_squares(CellKind::Triangle);
  EXPECT_NEAR(ls.x[0][0], -1.0 / 3, 1e-14);
  EXPECT_NEAR(ls.x[1][0], 0.0, 1e-14);
  EXPECT_NEAR(ls.x[2][0], 1.0 / 3, 1e-14);
}

TEST(Rational, ContinuedFractions) {
  EXPECT_EQ(to_rational(0.375), Rational(3, 8));
  EXPECT_EQ(to_rational(-4.0 / 15), Rational(-4, 15));
  EXPECT_EQ(to_rational(5.0 / 24 + 1e-15), Rational(5, 24));
  EXPECT_EQ(to_rational(-1e-17), Rational(0));
}

TEST(Reconstruct, QuadUnitWest) {
  const double F[4] = {1, 0, 0, 0};
  auto fx = reconstruct_dual_fluxes(CellKind::Quadrangle, F);
  EXPECT_DOUBLE_EQ(fx.dual[0], -3.0 / 8);
  EXPECT_DOUBLE_EQ(fx.dual[1], -1.0 / 8);
  EXPECT_DOUBLE_EQ(fx.dual[2], 1.0 / 8);
  EXPECT_DOUBLE_EQ(fx.dual[3], 3.0 / 8);
  auto rep = verify_constraints(fx);
  EXPECT_NEAR(rep.residual[0], 0.0, 1e-16);  // 1 - 3/8 - 3/8 - 1/4
  EXPECT_LE(rep.max_residual, 1e-16);
}

TEST(Reconstruct, ZeroAndDivergenceFree) {
  for (CellKind k : kAllCellKinds) {
    std::vector<double> zero(static_cast<std::size_t>(face_count(k)), 0.0);
    auto fx = reconstruct_dual_fluxes(k, zero);
    for (int e = 0; e < compiled_table(k).num_edges; ++e) EXPECT_EQ(fx.dual[e], 0.0);
    std::vector<double> df(zero.size(), 1.0);
    df.back() = -(static_cast<double>(df.size()) - 1.0);
    auto rep = verify_constraints(reconstruct_dual_fluxes(k, df));
    for (std::size_t s = 0; s < df.size(); ++s) EXPECT_NEAR(rep.residual[s], 0.0, 1e-13);
  }
}

TEST(Reconstruct, RandomFluxesLinearityAndBound) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (CellKind k : kAllCellKinds) {
    const auto nf = static_cast<std::size_t>(face_count(k));
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> f(nf), g(nf), h(nf);
      const double a = U(rng), b = U(rng);
      for (std::size_t s = 0; s < nf; ++s) {
        f[s] = U(rng);
        g[s] = U(rng);
        h[s] = a * f[s] + b * g[s];
      }
      auto ff = reconstruct_dual_fluxes(k, f);
      auto fg = reconstruct_dual_fluxes(k, g);
      auto fh = reconstruct_dual_fluxes(k, h);
      auto rep = verify_constraints(ff);
      EXPECT_LE(rep.max_residual, 1e-13 * rep.max_primal);
      EXPECT_LE(rep.max_abs_alpha, 1.0);
      EXPECT_LE(rep.bound_ratio, rep.max_row_sum + 1e-15);
      EXPECT_LE(rep.bound_ratio, 1.0);
      for (int e = 0; e < compiled_table(k).num_edges; ++e) {
        EXPECT_NEAR(fh.dual[e], a * ff.dual[e] + b * fg.dual[e], 1e-13);
      }
    }
  }
}

TEST(Tables, CsvExport) {
  std::ostringstream os;
  write_tables_csv(os);
  const std::string s = os.str();
  EXPECT_NE(s.find("quadrangle,W|S,W,-3,8"), std::string::npos);
  EXPECT_NE(s.find("prism,E|B,E,-4,15"), std::string::npos);
  std::size_t lines = 0;
  for (char c : s) lines += c == '\n';
  // header + Σ edges*faces = 9 + 16 + 24 + 72 + 45 + 40
  EXPECT_EQ(lines, 1u + 9 + 16 + 24 + 72 + 45 + 40);
}
