#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stagfv/operators.hpp"

namespace stagfv {

/// Source S_K added to the internal-energy balance.
enum class CorrectiveTerm : std::uint8_t {
  Off,
  /// (1/(2δt|K|)) Σ_σ |D_{K,σ}| ρ_D^{n-1} |u^n_σ - u^{n-1}_σ|², lagged one step.
  TimeIncrement,
  /// The full discrete kinetic-energy defect of the previous momentum step,
  /// redistributed to cells; makes the lagged total energy exactly conserved.
  KineticDefect,
};

struct SchemeChoice {
  FaceScheme mass = FaceScheme::Upwind;
  FaceScheme energy = FaceScheme::Upwind;
  FaceScheme momentum = FaceScheme::Upwind;
};

struct Config {
  double gamma = 1.4;
  double t_end = 0.0;
  double dt = 0.0;   // fixed step when > 0
  double cfl = 0.5;  // used when dt == 0
  SchemeChoice scheme;
  CorrectiveTerm s_term = CorrectiveTerm::KineticDefect;
  double nu = 0.0;   // stabilization mass-flux density (kg/(m^2 s)), 0 disables
  int output_every = 0;  // snapshot cadence in steps, 0 = first and last only
  long max_steps = 100'000'000;
  bool check_dual_mass = true;

  void validate() const;
};

struct BoundaryCondition {
  BcType type = BcType::SlipWall;
  double rho = 0.0;
  Vec3 u{};
  double p = 0.0;

  static BoundaryCondition dirichlet(double rho, const Vec3& u, double p) {
    return {BcType::Dirichlet, rho, u, p};
  }
  static BoundaryCondition outlet() { return {BcType::Outlet, 0.0, {}, 0.0}; }
  static BoundaryCondition slip() { return {BcType::SlipWall, 0.0, {}, 0.0}; }
  static BoundaryCondition reflexive() { return {BcType::ReflexiveWall, 0.0, {}, 0.0}; }
};

/// Keyed by boundary tag name.
using BoundaryConditions = std::map<std::string, BoundaryCondition>;

/// Types and static data per face. Throws ConfigError for an untagged boundary
/// face or a tag without a condition.
BoundaryClosure make_closure(const Discretization& d, const BoundaryConditions& bcs, double gamma);

/// Refreshes ghost values from the current cell state and imposes boundary
/// velocities (Dirichlet value, normal component removed on walls).
void apply_bcs(const Discretization& d, State& s, BoundaryClosure& bc);

struct InitialData {
  std::function<double(const Vec3&)> rho;
  std::function<Vec3(const Vec3&)> u;
  std::function<double(const Vec3&)> p;  // either p or e
  std::function<double(const Vec3&)> e;
};

/// Centroid sampling of the initial fields (exact for piecewise-constant data
/// aligned with the faces); p synchronized by the equation of state.
State initialize(const Discretization& d, const InitialData& init, double gamma);

/// δt = CFL min_K (|K|/Σ|σ|) / (max_{σ∈K}|u_σ| + c_K).
double cfl_dt(const Discretization& d, const State& s, double gamma, double cfl);

/// Spec form of the corrective term: (1/(2δt|K|)) Σ |D_{K,σ}| ρ_D^{prev} |u - u_prev|².
std::vector<double> corrective_term(const Discretization& d, std::span<const double> rho_dual_prev,
                                    std::span<const Vec3> u_prev, std::span<const Vec3> u_now,
                                    double dt);

struct StepDiagnostics {
  long step = 0;
  double time = 0.0;
  double dt = 0.0;
  double mass = 0.0;
  double internal_energy = 0.0;
  double kinetic_energy = 0.0;
  double total_energy = 0.0;
  double min_rho = 0.0;
  double min_e = 0.0;
  double max_dual_mass_residual = 0.0;  // relative to (|D_σ|/δt) max ρ
  double boundary_mass_outflow = 0.0;   // δt Σ_boundary F over this step
};

struct RunReport {
  std::vector<StepDiagnostics> steps;
  State final_state;
  double initial_mass = 0.0;
  double cumulative_outflow = 0.0;
};

class Solver {
 public:
  Solver(const Discretization& d, Config config, const BoundaryConditions& bcs);

  const Discretization& discretization() const noexcept { return *d_; }
  const Config& config() const noexcept { return cfg_; }
  const BoundaryClosure& closure() const noexcept { return bc_; }

  State initialize(const InitialData& init);

  /// Applies boundary values to a state built elsewhere and resets the lagged
  /// corrective term.
  void prepare(State& s);

  double stable_dt(const State& s) const;

  /// One explicit step of length dt; throws CflViolation on loss of positivity.
  StepDiagnostics step(State& s, double dt);

  using Snapshot = std::function<void(const State&)>;
  RunReport run(State s, const Snapshot& snapshot = {});
  /// Same, filling `report` as it goes so that the steps taken before a
  /// CflViolation stay available.
  void run(State s, RunReport& report, const Snapshot& snapshot = {});
  /// Steps `s` in place up to t_target, appending to `report`; the state is
  /// left at the last valid step on CflViolation.
  void advance(State& s, double t_target, RunReport& report, const Snapshot& snapshot = {});

  /// S used by the next step.
  const std::vector<double>& source() const noexcept { return source_; }
  /// Mass fluxes of the last step.
  const FluxField& last_fluxes() const noexcept { return flux_; }

 private:
  const Discretization* d_;
  Config cfg_;
  BoundaryClosure bc_;
  std::vector<double> source_;
  FluxField flux_;
  // workspace
  std::vector<double> ediv_, udiv_, rdual0_, rdual1_, rho1_, e1_, defect_;
  MomentumTerms mom_;
};

/// Σ|K|ρ_K, Σ|K|ρ_K e_K and Σ|D_σ| ρ_D |u_σ|²/2.
double total_mass(const Discretization& d, const State& s);
double total_internal_energy(const Discretization& d, const State& s);
double total_kinetic_energy(const Discretization& d, const State& s);

/// ½|u_σ|² + the mean of the adjacent e_K (report-only).
std::vector<double> face_total_energy(const Discretization& d, const State& s);

}  // namespace stagfv
