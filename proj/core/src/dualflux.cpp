#include "stagfv/dualflux.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "stagfv/errors.hpp"

namespace stagfv {

namespace {

struct Q {
  long long n, d;
};

using Row = std::vector<Q>;

// Printed tables; rows follow dual_edges_of_kind, columns roles_of_kind.
std::vector<Row> raw_rows(CellKind kind) {
  switch (kind) {
    case CellKind::Triangle:  // W E S
      return {{{-1, 3}, {0, 1}, {1, 3}},   // W|S
              {{0, 1}, {1, 3}, {-1, 3}},   // S|E
              {{1, 3}, {-1, 3}, {0, 1}}};  // E|W
    case CellKind::Quadrangle:  // W E S N
      return {{{-3, 8}, {1, 8}, {3, 8}, {-1, 8}},   // W|S
              {{-1, 8}, {3, 8}, {-3, 8}, {1, 8}},   // S|E
              {{1, 8}, {-3, 8}, {-1, 8}, {3, 8}},   // E|N
              {{3, 8}, {-1, 8}, {1, 8}, {-3, 8}}};  // N|W
    case CellKind::Tetrahedron:  // W E S B
      return {{{0, 1}, {0, 1}, {1, 4}, {-1, 4}},   // B|S
              {{1, 4}, {0, 1}, {0, 1}, {-1, 4}},   // B|W
              {{0, 1}, {1, 4}, {0, 1}, {-1, 4}},   // B|E
              {{1, 4}, {0, 1}, {-1, 4}, {0, 1}},   // S|W
              {{-1, 4}, {1, 4}, {0, 1}, {0, 1}},   // W|E
              {{0, 1}, {-1, 4}, {1, 4}, {0, 1}}};  // E|S
    case CellKind::Hexahedron: {  // W E S N A B
      const Q z{0, 1}, a{1, 24}, ma{-1, 24}, b{5, 24}, mb{-5, 24};
      return {{z, z, b, ma, a, mb},    // B|S
              {z, z, mb, a, b, ma},    // S|A
              {z, z, ma, b, mb, a},    // A|N
              {z, z, a, mb, ma, b},    // N|B
              {mb, a, b, ma, z, z},    // W|S
              {ma, b, mb, a, z, z},    // S|E
              {a, mb, ma, b, z, z},    // E|N
              {b, ma, a, mb, z, z},    // N|W
              {ma, b, z, z, a, mb},    // B|E
              {a, mb, z, z, b, ma},    // E|A
              {b, ma, z, z, mb, a},    // A|W
              {mb, a, z, z, ma, b}};   // W|B
    }
    case CellKind::Prism: {  // B S N E W
      const Q z{0, 1}, f{1, 5}, mf{-1, 5}, mg{-4, 15}, k{1, 15};
      return {{z, mf, f, z, z},     // S|N
              {f, z, mf, z, z},     // N|B
              {mf, f, z, z, z},     // B|S
              {f, z, z, mg, k},     // E|B
              {z, f, z, mg, k},     // E|S
              {z, z, f, mg, k},     // E|N
              {f, z, z, k, mg},     // W|B
              {z, f, z, k, mg},     // W|S
              {z, z, f, k, mg}};    // W|N
    }
    case CellKind::Pyramid: {  // B S E N W
      const Q z{0, 1}, mf{-1, 5}, g{4, 15}, mg{-4, 15}, k{1, 15}, mk{-1, 15};
      return {{mf, g, z, mk, z},    // B|S
              {mf, z, g, z, mk},    // B|E
              {mf, mk, z, g, z},    // B|N
              {mf, z, mk, z, g},    // B|W
              {z, mg, g, k, mk},    // S|E
              {z, mk, mg, g, k},    // E|N
              {z, k, mk, mg, g},    // N|W
              {z, g, k, mk, mg}};   // W|S
    }
  }
  return {};
}

CoefficientTable make_table(CellKind kind) {
  CoefficientTable t;
  t.kind = kind;
  for (const Row& r : raw_rows(kind)) {
    std::vector<Rational> row;
    row.reserve(r.size());
    for (const Q& q : r) row.emplace_back(q.n, q.d);
    t.rows.push_back(std::move(row));
  }
  return t;
}

CompiledTable compile(const CoefficientTable& t) {
  CompiledTable c;
  c.num_faces = t.num_faces();
  c.num_edges = t.num_edges();
  auto edges = dual_edges_of_kind(t.kind);
  for (int e = 0; e < c.num_edges; ++e) {
    c.edges[e] = edges[e];
    for (int s = 0; s < c.num_faces; ++s) c.alpha[e][s] = boost::rational_cast<double>(t.rows[e][s]);
  }
  return c;
}

const CoefficientTable kTables[] = {
    make_table(CellKind::Triangle),   make_table(CellKind::Quadrangle),
    make_table(CellKind::Tetrahedron), make_table(CellKind::Hexahedron),
    make_table(CellKind::Prism),      make_table(CellKind::Pyramid)};

const CompiledTable kCompiled[] = {compile(kTables[0]), compile(kTables[1]), compile(kTables[2]),
                                   compile(kTables[3]), compile(kTables[4]), compile(kTables[5])};

}  // namespace

const CoefficientTable& table_of_kind(CellKind kind) {
  return kTables[static_cast<int>(kind)];
}

const CompiledTable& compiled_table(CellKind kind) noexcept {
  return kCompiled[static_cast<int>(kind)];
}

ConstraintSystem constraint_system(CellKind kind) {
  const int nf = face_count(kind);
  auto edges = dual_edges_of_kind(kind);
  const int ne = static_cast<int>(edges.size());
  ConstraintSystem sys;
  sys.kind = kind;
  sys.A.assign(nf, std::vector<Rational>(ne, Rational(0)));
  sys.B.assign(nf, std::vector<Rational>(nf, xi_of_kind(kind)));
  for (int e = 0; e < ne; ++e) {
    sys.A[edges[e].from][e] = 1;
    sys.A[edges[e].to][e] = -1;
  }
  for (int s = 0; s < nf; ++s) sys.B[s][s] -= 1;
  return sys;
}

Rational to_rational(double x, long long max_den, double tol) {
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(r);
    const auto a = static_cast<long long>(fl);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) <= tol) break;
    const double frac = r - fl;
    if (frac < 1e-300) break;
    r = 1.0 / frac;
  }
  return Rational(p1, q1);
}

LeastSquaresTable derive_table_least_squares(CellKind kind) {
  const ConstraintSystem sys = constraint_system(kind);
  const int nf = face_count(kind);
  const int ne = static_cast<int>(sys.A.front().size());
  Eigen::MatrixXd A(nf, ne);
  Eigen::MatrixXd B(nf, nf);
  for (int i = 0; i < nf; ++i) {
    for (int e = 0; e < ne; ++e) A(i, e) = boost::rational_cast<double>(sys.A[i][e]);
    for (int j = 0; j < nf; ++j) B(i, j) = boost::rational_cast<double>(sys.B[i][j]);
  }
  // Rank-deficient (the columns of A sum to zero): the complete orthogonal
  // decomposition returns the minimum-norm least-squares solution.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  Eigen::MatrixXd X = cod.solve(B);

  LeastSquaresTable out;
  out.residual = (A * X - B).cwiseAbs().maxCoeff();
  if (out.residual > 1e-12) {
    throw ConsistencyError(fmt::format("{}: least-squares residual {:.3e} above 1e-12",
                                       to_string(kind), out.residual));
  }
  const CoefficientTable& ref = table_of_kind(kind);
  out.table.kind = kind;
  out.x.assign(ne, std::vector<double>(nf));
  for (int e = 0; e < ne; ++e) {
    std::vector<Rational> row;
    for (int s = 0; s < nf; ++s) {
      const double v = X(e, s);
      out.x[e][s] = v;
      row.push_back(to_rational(v));
      out.max_deviation =
          std::max(out.max_deviation, std::abs(v - boost::rational_cast<double>(ref.rows[e][s])));
    }
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

CellFluxes reconstruct_dual_fluxes(CellKind kind, std::span<const double> primal, Index cell) {
  const CompiledTable& t = compiled_table(kind);
  if (static_cast<int>(primal.size()) != t.num_faces) {
    throw InputError(fmt::format("{} needs {} primal fluxes, got {}", to_string(kind),
                                 t.num_faces, primal.size()));
  }
  CellFluxes out;
  out.kind = kind;
  out.cell = cell;
  std::copy(primal.begin(), primal.end(), out.primal.begin());
  for (int e = 0; e < t.num_edges; ++e) {
    double s = 0.0;
    for (int f = 0; f < t.num_faces; ++f) s += t.alpha[e][f] * primal[f];
    out.dual[e] = s;
  }
  return out;
}

ConstraintReport verify_constraints(const CellFluxes& fx) {
  const CompiledTable& t = compiled_table(fx.kind);
  const double xi = 1.0 / t.num_faces;
  ConstraintReport r;
  double total = 0.0;
  for (int f = 0; f < t.num_faces; ++f) {
    total += fx.primal[f];
    r.max_primal = std::max(r.max_primal, std::abs(fx.primal[f]));
  }
  for (int f = 0; f < t.num_faces; ++f) r.residual[f] = fx.primal[f] - xi * total;
  for (int e = 0; e < t.num_edges; ++e) {
    r.residual[t.edges[e].from] += fx.dual[e];
    r.residual[t.edges[e].to] -= fx.dual[e];
    r.max_dual = std::max(r.max_dual, std::abs(fx.dual[e]));
    double row = 0.0;
    for (int f = 0; f < t.num_faces; ++f) {
      row += std::abs(t.alpha[e][f]);
      r.max_abs_alpha = std::max(r.max_abs_alpha, std::abs(t.alpha[e][f]));
    }
    r.max_row_sum = std::max(r.max_row_sum, row);
  }
  for (int f = 0; f < t.num_faces; ++f) {
    r.max_residual = std::max(r.max_residual, std::abs(r.residual[f]));
  }
  r.bound_ratio = r.max_primal > 0.0 ? r.max_dual / r.max_primal : 0.0;
  return r;
}

void write_tables_csv(std::ostream& os) {
  os << "kind,edge,role,numerator,denominator\n";
  for (CellKind kind : kAllCellKinds) {
    const CoefficientTable& t = table_of_kind(kind);
    auto roles = roles_of_kind(kind);
    auto edges = dual_edges_of_kind(kind);
    for (int e = 0; e < t.num_edges(); ++e) {
      const std::string edge =
          fmt::format("{}|{}", to_string(roles[edges[e].from]), to_string(roles[edges[e].to]));
      for (int s = 0; s < t.num_faces(); ++s) {
        os << to_string(kind) << ',' << edge << ',' << to_string(roles[s]) << ','
           << t.rows[e][s].numerator() << ',' << t.rows[e][s].denominator() << '\n';
      }
    }
  }
}

}  // namespace stagfv
