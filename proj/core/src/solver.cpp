#include "stagfv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "parallel.hpp"
#include "stagfv/errors.hpp"

namespace stagfv {

void Config::validate() const {
  if (!(gamma > 1.0)) throw ConfigError(fmt::format("gamma must be > 1 (got {})", gamma));
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
  if (dt < 0.0) throw ConfigError("dt must be > 0");
  if (dt == 0.0 && !(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (nu < 0.0) throw ConfigError("nu must be >= 0");
}

BoundaryClosure make_closure(const Discretization& d, const BoundaryConditions& bcs,
                             double gamma) {
  const Mesh& mesh = d.mesh();
  const auto nf = static_cast<std::size_t>(d.num_faces());
  BoundaryClosure bc;
  bc.type.assign(nf, BcType::Interior);
  bc.rho.assign(nf, 0.0);
  bc.e.assign(nf, 0.0);
  bc.p.assign(nf, 0.0);
  bc.u.assign(nf, Vec3{});
  for (std::size_t f = 0; f < nf; ++f) {
    const Face& face = mesh.faces()[f];
    if (!face.is_boundary()) continue;
    if (face.tag == kNoTag) {
      throw ConfigError(fmt::format("boundary face {} (cell {}) has no tag", f, face.owner));
    }
    const std::string name(mesh.tag_name(face.tag));
    auto it = bcs.find(name);
    if (it == bcs.end()) {
      throw ConfigError(fmt::format("no boundary condition for tag '{}'", name));
    }
    const BoundaryCondition& c = it->second;
    if (c.type == BcType::Interior) {
      throw ConfigError(fmt::format("tag '{}': invalid boundary condition", name));
    }
    bc.type[f] = c.type;
    if (c.type == BcType::Dirichlet) {
      if (!(c.rho > 0.0) || !(c.p > 0.0)) {
        throw ConfigError(fmt::format("tag '{}': Dirichlet state needs rho > 0 and p > 0", name));
      }
      bc.rho[f] = c.rho;
      bc.p[f] = c.p;
      bc.e[f] = c.p / ((gamma - 1.0) * c.rho);
      bc.u[f] = c.u;
    }
  }
  return bc;
}

void apply_bcs(const Discretization& d, State& s, BoundaryClosure& bc) {
  const Index nf = d.num_faces();
  STAGFV_PARALLEL_FOR
  for (Index f = 0; f < nf; ++f) {
    const BcType t = bc.type[f];
    if (t == BcType::Interior || t == BcType::Dirichlet) {
      if (t == BcType::Dirichlet) s.u[f] = bc.u[f];
      continue;
    }
    const Index k = d.owner[f];
    bc.rho[f] = s.rho[k];
    bc.e[f] = s.e[k];
    bc.p[f] = s.p[k];
    if (t == BcType::SlipWall || t == BcType::ReflexiveWall) {
      const Vec3& n = d.normal[f];
      s.u[f] -= dot(s.u[f], n) * n;
    }
  }
}

State initialize(const Discretization& d, const InitialData& init, double gamma) {
  if (!init.rho || !init.u || (!init.p && !init.e)) {
    throw InputError("initial data needs rho, u and one of p or e");
  }
  State s;
  const auto nc = static_cast<std::size_t>(d.num_cells());
  const auto nf = static_cast<std::size_t>(d.num_faces());
  s.rho.resize(nc);
  s.e.resize(nc);
  s.p.resize(nc);
  s.u.resize(nf);
  for (std::size_t k = 0; k < nc; ++k) {
    const Vec3& x = d.ccentroid[k];
    const double rho = init.rho(x);
    if (!(rho > 0.0)) throw InputError(fmt::format("initial density {} <= 0 in cell {}", rho, k));
    double e;
    if (init.e) {
      e = init.e(x);
    } else {
      const double p = init.p(x);
      if (!(p > 0.0)) throw InputError(fmt::format("initial pressure {} <= 0 in cell {}", p, k));
      e = p / ((gamma - 1.0) * rho);
    }
    if (!(e > 0.0)) throw InputError(fmt::format("initial internal energy {} <= 0 in cell {}", e, k));
    s.rho[k] = rho;
    s.e[k] = e;
    s.p[k] = (gamma - 1.0) * rho * e;
  }
  for (std::size_t f = 0; f < nf; ++f) {
    Vec3 u = init.u(d.fcentroid[f]);
    if (d.dim() == 2) u[2] = 0.0;
    s.u[f] = u;
  }
  return s;
}

double cfl_dt(const Discretization& d, const State& s, double gamma, double cfl) {
  double best = std::numeric_limits<double>::infinity();
  const Index nc = d.num_cells();
  for (Index k = 0; k < nc; ++k) {
    double umax = 0.0;
    for (int sl = 0; sl < d.nfaces[k]; ++sl) {
      umax = std::max(umax, norm(s.u[d.cface[d.slot(k, sl)]]));
    }
    const double c = std::sqrt(gamma * s.p[k] / s.rho[k]);
    best = std::min(best, d.size[k] / (umax + c));
  }
  return cfl * best;
}

std::vector<double> corrective_term(const Discretization& d, std::span<const double> rho_dual_prev,
                                    std::span<const Vec3> u_prev, std::span<const Vec3> u_now,
                                    double dt) {
  const Index nc = d.num_cells();
  std::vector<double> out(static_cast<std::size_t>(nc));
  STAGFV_PARALLEL_FOR
  for (Index k = 0; k < nc; ++k) {
    double sum = 0.0;
    const double half = d.vol[k] / d.nfaces[k];
    for (int sl = 0; sl < d.nfaces[k]; ++sl) {
      const Index f = d.cface[d.slot(k, sl)];
      sum += half * rho_dual_prev[f] * norm2(u_now[f] - u_prev[f]);
    }
    out[k] = sum / (2.0 * dt * d.vol[k]);
  }
  return out;
}

double total_mass(const Discretization& d, const State& s) {
  double m = 0.0;
  for (Index k = 0; k < d.num_cells(); ++k) m += d.vol[k] * s.rho[k];
  return m;
}

double total_internal_energy(const Discretization& d, const State& s) {
  double m = 0.0;
  for (Index k = 0; k < d.num_cells(); ++k) m += d.vol[k] * s.rho[k] * s.e[k];
  return m;
}

double total_kinetic_energy(const Discretization& d, const State& s) {
  std::vector<double> rd;
  dual_density(d, s.rho, rd);
  double m = 0.0;
  for (Index f = 0; f < d.num_faces(); ++f) m += 0.5 * d.dual_vol[f] * rd[f] * norm2(s.u[f]);
  return m;
}

std::vector<double> face_total_energy(const Discretization& d, const State& s) {
  std::vector<double> out(static_cast<std::size_t>(d.num_faces()));
  for (Index f = 0; f < d.num_faces(); ++f) {
    const Index l = d.neighbor[f];
    const double e = l == kNoCell ? s.e[d.owner[f]] : 0.5 * (s.e[d.owner[f]] + s.e[l]);
    out[f] = 0.5 * norm2(s.u[f]) + e;
  }
  return out;
}

Solver::Solver(const Discretization& d, Config config, const BoundaryConditions& bcs)
    : d_(&d), cfg_(config), bc_(make_closure(d, bcs, config.gamma)) {
  cfg_.validate();
  source_.assign(static_cast<std::size_t>(d.num_cells()), 0.0);
}

State Solver::initialize(const InitialData& init) {
  State s = stagfv::initialize(*d_, init, cfg_.gamma);
  prepare(s);
  return s;
}

void Solver::prepare(State& s) {
  apply_bcs(*d_, s, bc_);
  std::fill(source_.begin(), source_.end(), 0.0);
}

double Solver::stable_dt(const State& s) const {
  return cfl_dt(*d_, s, cfg_.gamma, cfg_.cfl);
}

StepDiagnostics Solver::step(State& s, double dt) {
  const Discretization& d = *d_;
  const Index nc = d.num_cells();
  const Index nf = d.num_faces();
  const double gm1 = cfg_.gamma - 1.0;

  apply_bcs(d, s, bc_);
  primal_mass_fluxes(d, s, cfg_.scheme.mass, &bc_, flux_.primal);
  reconstruct_dual_fluxes(d, flux_);
  velocity_divergence(d, s.u, udiv_);
  energy_divergence(d, flux_.primal, s, cfg_.scheme.energy, &bc_, ediv_);
  dual_density(d, s.rho, rdual0_);

  // (1) mass, (2) internal energy, (3) equation of state.
  rho1_.resize(static_cast<std::size_t>(nc));
  e1_.resize(static_cast<std::size_t>(nc));
  Index bad = kNoCell;
  for (Index k = 0; k < nc; ++k) {
    double div = 0.0;
    for (int sl = 0; sl < d.nfaces[k]; ++sl) {
      const std::size_t i = d.slot(k, sl);
      div += d.corient[i] * flux_.primal[d.cface[i]];
    }
    const double r = s.rho[k] - dt * div / d.vol[k];
    const double re =
        s.rho[k] * s.e[k] - dt * ediv_[k] - dt * s.p[k] * udiv_[k] + dt * source_[k];
    rho1_[k] = r;
    e1_[k] = re / r;
    if (bad == kNoCell && !(r > 0.0 && re > 0.0 && std::isfinite(e1_[k]))) bad = k;
  }
  if (bad != kNoCell) {
    throw CflViolation(
        fmt::format("step {} (t = {:.6g}, dt = {:.3e}): non-positive {} in cell {}", s.step + 1,
                    s.time, dt, rho1_[bad] > 0.0 ? "internal energy" : "density", bad),
        static_cast<std::size_t>(bad), 0.5 * dt);
  }

  StepDiagnostics diag;
  double mass = 0.0, internal = 0.0, rho_max = 0.0;
  diag.min_rho = std::numeric_limits<double>::infinity();
  diag.min_e = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < nc; ++k) {
    const double r = rho1_[k];
    const double e = e1_[k];
    s.rho[k] = r;
    s.e[k] = e;
    s.p[k] = gm1 * r * e;
    mass += d.vol[k] * r;
    internal += d.vol[k] * r * e;
    rho_max = std::max(rho_max, r);
    diag.min_rho = std::min(diag.min_rho, r);
    diag.min_e = std::min(diag.min_e, e);
  }
  // Ghost pressures follow the new cell pressures (mirror / zero gradient).
  for (Index f = 0; f < nf; ++f) {
    const BcType t = bc_.type[f];
    if (t != BcType::Interior && t != BcType::Dirichlet) bc_.p[f] = s.p[d.owner[f]];
  }
  dual_density(d, s.rho, rdual1_);
  momentum_terms(d, flux_, s.u, cfg_.scheme.momentum, s.p, &bc_, cfg_.nu, mom_);

  // (4) momentum, with the per-face kinetic-energy defect that feeds the next
  // corrective term.
  const CorrectiveTerm mode = cfg_.s_term;
  defect_.assign(static_cast<std::size_t>(nf), 0.0);
  double ke = 0.0, outflow = 0.0, resid = 0.0;
  const bool planar = d.dim() == 2;
  const bool stabilized = !mom_.stabilization.empty();
  for (Index f = 0; f < nf; ++f) {
    const BcType t = bc_.type[f];
    const double r0 = rdual0_[f];
    const double r1 = rdual1_[f];
    const Vec3 u0 = s.u[f];
    Vec3 u1;
    if (t == BcType::Dirichlet) {
      u1 = bc_.u[f];
    } else {
      Vec3 rhs = mom_.convection[f] + mom_.pressure[f];
      if (stabilized) rhs += mom_.stabilization[f];
      u1 = (1.0 / r1) * (r0 * u0 - dt * rhs);
      if (planar) u1[2] = 0.0;
      if (t == BcType::SlipWall || t == BcType::ReflexiveWall) {
        u1 -= dot(u1, d.normal[f]) * d.normal[f];
      }
      if (mode == CorrectiveTerm::TimeIncrement) {
        defect_[f] = 0.5 * r0 * norm2(u1 - u0) / dt;
      } else if (mode == CorrectiveTerm::KineticDefect) {
        // -R = (½ρ¹|u¹|² - ½ρ⁰|u⁰|²)/δt + (1/|D|) Σ F ½|u_ε|² + ðp·u¹; the
        // work of the stabilization stays in R.
        const double dke = (0.5 * r1 * norm2(u1) - 0.5 * r0 * norm2(u0)) / dt;
        defect_[f] =
            -(dke + mom_.kinetic_flux[f] / d.dual_vol[f] + dot(mom_.pressure[f], u1));
      }
    }
    s.u[f] = u1;
    ke += 0.5 * d.dual_vol[f] * r1 * norm2(u1);
    if (d.neighbor[f] == kNoCell) outflow += flux_.primal[f];
    if (cfg_.check_dual_mass) {
      const double scale = d.dual_vol[f] / dt;
      resid = std::max(resid, std::abs(scale * (r1 - r0) + mom_.dual_mass_sum[f]) / scale);
    }
  }

  //   S_K = (1/|K|) Σ_σ |D_{K,σ}| R_σ with |D_{K,σ}| = |K| / N_K.
  if (mode != CorrectiveTerm::Off) {
    STAGFV_PARALLEL_FOR
    for (Index k = 0; k < nc; ++k) {
      double sum = 0.0;
      for (int sl = 0; sl < d.nfaces[k]; ++sl) sum += defect_[d.cface[d.slot(k, sl)]];
      source_[k] = sum / d.nfaces[k];
    }
  }

  s.time += dt;
  ++s.step;
  diag.step = s.step;
  diag.time = s.time;
  diag.dt = dt;
  diag.boundary_mass_outflow = dt * outflow;
  diag.mass = mass;
  diag.internal_energy = internal;
  diag.kinetic_energy = ke;
  diag.total_energy = internal + ke;
  diag.max_dual_mass_residual = cfg_.check_dual_mass ? resid / rho_max : 0.0;
  return diag;
}

RunReport Solver::run(State s, const Snapshot& snapshot) {
  RunReport report;
  run(std::move(s), report, snapshot);
  return report;
}

void Solver::run(State s, RunReport& report, const Snapshot& snapshot) {
  report = RunReport{};
  apply_bcs(*d_, s, bc_);
  report.initial_mass = total_mass(*d_, s);
  if (snapshot) snapshot(s);
  report.final_state = std::move(s);
  advance(report.final_state, cfg_.t_end, report, snapshot);
}

void Solver::advance(State& s, double t_target, RunReport& report, const Snapshot& snapshot) {
  const double eps = 1e-12 * std::max(1.0, t_target);
  long steps = 0;
  while (s.time < t_target - eps && steps < cfg_.max_steps) {
    double dt = cfg_.dt > 0.0 ? cfg_.dt : stable_dt(s);
    if (s.time + dt > t_target) dt = t_target - s.time;
    StepDiagnostics diag;
    try {
      diag = step(s, dt);
    } catch (const CflViolation&) {
      if (snapshot) snapshot(s);
      throw;
    }
    report.cumulative_outflow += diag.boundary_mass_outflow;
    report.steps.push_back(diag);
    ++steps;
    const bool last = !(s.time < t_target - eps) || steps >= cfg_.max_steps;
    if (snapshot && (last || (cfg_.output_every > 0 && steps % cfg_.output_every == 0))) {
      snapshot(s);
    }
  }
}

}  // namespace stagfv
