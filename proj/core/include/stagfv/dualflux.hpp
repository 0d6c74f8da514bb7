#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "stagfv/cell_kind.hpp"
#include "stagfv/mesh.hpp"

namespace stagfv {

/// α coefficients of one cell kind: rows follow dual_edges_of_kind, columns
/// follow roles_of_kind. Row e gives F_e = Σ_s α[e][s] F_{K,s}.
struct CoefficientTable {
  CellKind kind{};
  std::vector<std::vector<Rational>> rows;

  int num_edges() const noexcept { return static_cast<int>(rows.size()); }
  int num_faces() const noexcept { return face_count(kind); }
};

/// The same coefficients in floating point, laid out for the flux kernels.
struct CompiledTable {
  int num_faces = 0;
  int num_edges = 0;
  std::array<DualEdge, kMaxDualEdges> edges{};
  std::array<std::array<double, kMaxCellFaces>, kMaxDualEdges> alpha{};
};

const CoefficientTable& table_of_kind(CellKind kind);
const CompiledTable& compiled_table(CellKind kind) noexcept;

/// A X = B with A the (face x dual edge) incidence matrix (+1 where the edge
/// leaves the face's half-diamond, -1 where it enters) and B = ξJ - I.
struct ConstraintSystem {
  CellKind kind{};
  std::vector<std::vector<Rational>> A;
  std::vector<std::vector<Rational>> B;
};

ConstraintSystem constraint_system(CellKind kind);

struct LeastSquaresTable {
  CoefficientTable table;                  // rational reconstruction of x
  std::vector<std::vector<double>> x;      // edges x faces, floating point
  double residual = 0.0;                   // max |A x - B|
  double max_deviation = 0.0;              // max |x - table_of_kind|
};

/// Minimum-Frobenius-norm solution of the constraint system. Throws
/// ConsistencyError if the residual exceeds 1e-12.
LeastSquaresTable derive_table_least_squares(CellKind kind);

/// Closest fraction with denominator <= max_den, by continued fractions.
Rational to_rational(double x, long long max_den = 1'000'000, double tol = 1e-12);

struct CellFluxes {
  CellKind kind{};
  Index cell = kNoCell;
  std::array<double, kMaxCellFaces> primal{};  // F_{K,σ}, slot order, outward
  std::array<double, kMaxDualEdges> dual{};    // F_{σ,ε}, table edge order
};

CellFluxes reconstruct_dual_fluxes(CellKind kind, std::span<const double> primal,
                                   Index cell = kNoCell);

struct ConstraintReport {
  std::array<double, kMaxCellFaces> residual{};
  double max_residual = 0.0;
  double max_primal = 0.0;
  double max_dual = 0.0;
  double bound_ratio = 0.0;  // max|F_dual| / max|F_primal|
  double max_abs_alpha = 0.0;
  double max_row_sum = 0.0;  // max over edges of Σ_s |α|
};

ConstraintReport verify_constraints(const CellFluxes& fluxes);

/// CSV rows: kind,edge,role,numerator,denominator.
void write_tables_csv(std::ostream& os);

}  // namespace stagfv
