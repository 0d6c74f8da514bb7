#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "stagfv/generators.hpp"
#include "stagfv/solver.hpp"

namespace stagfv {

/// One-dimensional primitive state; u is the x-velocity.
struct Primitive {
  double rho = 0.0;
  double u = 0.0;
  double p = 0.0;
};

/// State behind a shock of Mach number M running into `left` towards -x.
Primitive post_shock_state(double mach, const Primitive& left, double gamma);

/// Speed of that shock, u_L - M c_L.
double shock_speed(double mach, const Primitive& left, double gamma);

struct ReflectedShock {
  double omega2 = 0.0;
  Primitive l2;
};

/// Shock reflected off a wall at x = 0 by the inflow state r1 (u < 0);
/// leaves l2 at rest behind it and travels at +omega2.
ReflectedShock reflected_shock(const Primitive& r1, double gamma);

/// Largest relative Rankine-Hugoniot residual (mass, momentum, energy) of a
/// jump a | b moving at speed s.
double rh_residual(const Primitive& a, const Primitive& b, double s, double gamma);

struct ShockSetup {
  double gamma = 1.4;
  double mach = 10.0;
  Primitive l1;
  Primitive r1;
  Primitive l2;
  double omega = 0.0;   // incident shock travels at -omega from x0
  double omega2 = 0.0;  // reflected shock speed
  double x0 = 2.0;
  double length = 5.0;
  double t_sym = 0.0;
  double t_max = 0.0;
};

/// Shock-tube case: M = 10, L1 = (ρ 1.292, u 0, p 1e5), jump at x = 2 of
/// [0, 5], wall at x = 0.
ShockSetup shock_tube_setup(double mach = 10.0, Primitive l1 = {1.292, 0.0, 1e5},
                            double gamma = 1.4);

/// Piecewise-constant exact solution; throws DomainError outside [0, T_max].
Primitive exact_solution(const ShockSetup& s, double x, double t);

using ExactField = std::function<Primitive(const Vec3&)>;

struct ErrorReport {
  double h = 0.0;
  double dt = 0.0;
  double e_p = 0.0;
  double e_rho = 0.0;
  double e_u = 0.0;
  bool absolute_p = false;  // exact norm was zero
  bool absolute_rho = false;
  bool absolute_u = false;
};

/// Relative L1 errors, |K|-weighted at cell centroids; velocity uses the mean
/// of the face velocities of each cell.
ErrorReport error_norms(const Discretization& d, const State& s, const ExactField& exact,
                        double h = 0.0);
ErrorReport error_norms(const Discretization& d, const State& s, const ShockSetup& setup,
                        double t, double h = 0.0);

struct Orders {
  double p = 0.0;
  double rho = 0.0;
  double u = 0.0;
  bool valid = true;  // false if some error was non-positive
};

/// log(e_coarse / e_fine) / log(h_coarse / h_fine) between consecutive reports.
std::vector<Orders> convergence_rates(const std::vector<ErrorReport>& reports);

/// time,h,dt,e_p,e_rho,e_u,order_p,order_rho,order_u; header when asked.
void write_convergence_csv(std::ostream& os, double time, const std::vector<ErrorReport>& reports,
                           bool header = true);

/// Cell-mean velocity (mean of face values).
std::vector<Vec3> cell_velocity(const Discretization& d, const State& s);

// Shock-tube suite

enum class TubeKind { Prism, Pyramid, Hybrid, Hexahedron };

/// prism, pyramid, hybrid, hex; throws ConfigError otherwise.
TubeKind parse_tube_kind(std::string_view word);
std::string_view to_string(TubeKind kind) noexcept;

struct ShockTubeOptions {
  FaceScheme scheme = FaceScheme::MusclMinmod;
  CorrectiveTerm s_term = CorrectiveTerm::KineticDefect;
  double nu_factor = 1.0;  // ν = nu_factor |u_R1 ρ_R1| / 50
  double cfl = 0.5;
  double dt_factor = 0.0;  // > 0: fixed δt = dt_factor h / 4500
  int distort = -1;        // -1: hybrid distorted, pure kinds not
};

struct ShockTubeCase {
  Mesh mesh;
  BoundaryConditions bcs;
  InitialData init;
  Config config;
  double h = 0.0;
};

/// Mesh, reflexive wall at x = 0, R1 Dirichlet inflow at x = 5, slip lateral
/// walls, exact t = 0 data.
ShockTubeCase shock_tube_case(const ShockSetup& setup, TubeKind kind, int n,
                              const ShockTubeOptions& opt = {});

/// Rightmost crossing of the density midpoint (lo + hi)/2 by x-slab averages
/// over `bins` slabs of [0, length]; NaN if none.
double shock_position(const Discretization& d, const State& s, double rho_lo, double rho_hi,
                      double length, int bins);

struct SuiteLevel {
  int n = 0;
  std::size_t cells = 0;
  long steps = 0;
  double seconds = 0.0;
  std::vector<ErrorReport> errors;     // one per requested time
  std::vector<double> shock_x;         // discrete shock position per time
  std::vector<double> shock_x_exact;
  double max_dual_mass_residual = 0.0;
};

struct SuiteResult {
  std::vector<double> times;
  std::vector<SuiteLevel> levels;
  std::string failure;  // non-empty if a run stopped early
};

/// Runs n = nmin..nmax once each, sampling the error at `times` (ascending,
/// each <= T_max).
SuiteResult run_shock_tube_suite(const ShockSetup& setup, TubeKind kind, int nmin, int nmax,
                                 const std::vector<double>& times,
                                 const ShockTubeOptions& opt = {},
                                 const std::function<void(const SuiteLevel&)>& on_level = {});

/// Errors at times[i] across the levels.
std::vector<ErrorReport> suite_errors(const SuiteResult& r, std::size_t i);

/// Least-squares slope of log e against log h over all levels.
Orders fitted_order(const std::vector<ErrorReport>& reports);

// Lax-Wendroff harness

struct LwFields {
  std::function<double(const Vec3&, double)> rho;
  std::function<Vec3(const Vec3&, double)> u;
};

/// Separable polynomial bump ψ(t) Π b(x_i): b vanishes outside [lo, hi],
/// ψ(t) = (1 - t/t_support)^4 on [0, t_support).
struct LwTestFunction {
  double lo = 0.25;
  double hi = 0.75;
  double t_support = 0.3;
  int dim = 2;
  double value(const Vec3& x, double t) const;
  Vec3 gradient(const Vec3& x, double t) const;
  double time_derivative(const Vec3& x, double t) const;
};

struct LwLevel {
  double h = 0.0;
  double dt = 0.0;
  int steps = 0;
  double discrete[3] = {0.0, 0.0, 0.0};
  double continuous[3] = {0.0, 0.0, 0.0};
  double residual = 0.0;  // max_i |discrete_i - continuous_i|
  double primal_jump = 0.0;  // h Σ_n δt Σ_σ |σ| |ρ_K - ρ_L|
  double dual_jump = 0.0;    // h Σ_n δt Σ_K Σ_ε |ε| |u_σ - u_σ'|
};

/// Continuous weak form -∫ρ₀u₀φ(0) - ∬ρu(∂tφ + u·∇φ), Gauss-Legendre on [0,1]^d.
void lw_continuous(const LwFields& f, const LwTestFunction& phi, int dim, double t_end,
                   double out[3]);

/// Runs the harness on one mesh with `steps` steps of size t_end/steps.
/// Throws InputError if φ is non-zero on a boundary cell of the mesh.
LwLevel lw_weak_residual(const Mesh& mesh, const LwFields& f, const LwTestFunction& phi,
                         double h, double t_end, int steps);

/// Sequence version: meshes[i] with spacing hs[i] and steps[i].
std::vector<LwLevel> lw_weak_residual(const std::vector<const Mesh*>& meshes,
                                      const std::vector<double>& hs,
                                      const std::vector<int>& steps, const LwFields& f,
                                      const LwTestFunction& phi, double t_end);

/// The default manufactured problem: ρ = 1 + 0.1 sin(2π(x - t)) (1 + 0.1 cos(2πy)),
/// u = (1 + 0.2 sin(2πy), 0.3 cos(2πx), ...) varying in time; constant fields
/// when `constant` is set.
LwFields lw_default_fields(int dim, bool constant = false);

/// Default refinement study on unit boxes of `kind`: level i uses
/// base * 2^i cells per direction (base 8 in 2D, 4 in 3D) and 12 * 2^i steps
/// over the support of φ.
std::vector<LwLevel> lw_refinement(CellKind kind, int levels, bool constant = false);

// Mach-10 column

struct ColumnSetup {
  Mesh mesh;
  ColumnMeshInfo info;
  BoundaryConditions bcs;
  InitialData init;
  double gamma = 1.4;
  double t_end = 0.026;
  double shock_speed = 10.0;
  Primitive inflow;  // post-shock, ρ 8, u 8.25, p 116.5
  Primitive rest;    // ρ 1.4, p 1
};

ColumnSetup mach10_column_setup(const ColumnMeshParams& params = {});

/// Planar step of the undisturbed case at time t.
Primitive column_planar_profile(const ColumnSetup& c, double x, double t);

}  // namespace stagfv
