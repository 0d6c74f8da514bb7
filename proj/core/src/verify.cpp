#include "stagfv/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "stagfv/errors.hpp"

namespace stagfv {

namespace {

void check_state(const Primitive& s, const char* what) {
  if (!(s.rho > 0.0) || !(s.p > 0.0) || !std::isfinite(s.u)) {
    throw DomainError(fmt::format("{} state must have rho > 0, p > 0", what));
  }
}

double sound_speed(const Primitive& s, double gamma) { return std::sqrt(gamma * s.p / s.rho); }

// Full Gauss-Legendre rule on [-1, 1] from Boost's half rule.
struct Rule {
  std::vector<double> x, w;
};

const Rule& gauss8() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, 8>;
    Rule r;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.x.push_back(a[i]);
      r.w.push_back(w[i]);
      if (a[i] != 0.0) {
        r.x.push_back(-a[i]);
        r.w.push_back(w[i]);
      }
    }
    return r;
  }();
  return rule;
}

// Composite nodes and weights on [a, b].
void composite(double a, double b, int pieces, std::vector<double>& x, std::vector<double>& w) {
  const Rule& g = gauss8();
  x.clear();
  w.clear();
  const double len = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) {
    const double c = a + (i + 0.5) * len;
    for (std::size_t q = 0; q < g.x.size(); ++q) {
      x.push_back(c + 0.5 * len * g.x[q]);
      w.push_back(0.5 * len * g.w[q]);
    }
  }
}

}  // namespace

Primitive post_shock_state(double mach, const Primitive& left, double gamma) {
  if (!(mach > 1.0)) throw DomainError(fmt::format("Mach number must exceed 1 (got {})", mach));
  check_state(left, "left");
  const double c = sound_speed(left, gamma);
  const double m2 = mach * mach;
  Primitive r;
  r.u = left.u + 2.0 * c * (1.0 - m2) / (mach * (1.0 + gamma));
  r.rho = m2 * (1.0 + gamma) / (m2 * (gamma - 1.0) + 2.0) * left.rho;
  r.p = (2.0 * gamma * m2 + 1.0 - gamma) / (1.0 + gamma) * left.p;
  return r;
}

double shock_speed(double mach, const Primitive& left, double gamma) {
  return left.u - mach * sound_speed(left, gamma);
}

ReflectedShock reflected_shock(const Primitive& r1, double gamma) {
  check_state(r1, "R1");
  const double u = r1.u;
  const double a = u * (gamma + 1.0);
  ReflectedShock out;
  out.omega2 = u * (3.0 - gamma) / 4.0 + 0.5 * std::sqrt(a * a / 4.0 + 4.0 * gamma * r1.p / r1.rho);
  if (!(out.omega2 > 0.0)) throw DomainError("reflected shock speed is not positive");
  out.l2.rho = r1.rho * (out.omega2 - u) / out.omega2;
  out.l2.p = r1.rho * u * (u - out.omega2) + r1.p;
  out.l2.u = 0.0;
  return out;
}

double rh_residual(const Primitive& a, const Primitive& b, double s, double gamma) {
  auto flux = [&](const Primitive& q, double f[3], double m[3]) {
    const double w = q.u - s;
    const double energy = q.p / (gamma - 1.0) + 0.5 * q.rho * q.u * q.u;
    f[0] = q.rho * w;
    f[1] = q.rho * q.u * w + q.p;
    f[2] = energy * w + q.p * q.u;
    m[0] = std::abs(f[0]);
    m[1] = std::abs(q.rho * q.u * w) + std::abs(q.p);
    m[2] = std::abs(energy * w) + std::abs(q.p * q.u);
  };
  double fa[3], fb[3], ma[3], mb[3];
  flux(a, fa, ma);
  flux(b, fb, mb);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double scale = std::max({ma[i], mb[i], std::numeric_limits<double>::min()});
    worst = std::max(worst, std::abs(fa[i] - fb[i]) / scale);
  }
  return worst;
}

ShockSetup shock_tube_setup(double mach, Primitive l1, double gamma) {
  ShockSetup s;
  s.gamma = gamma;
  s.mach = mach;
  s.l1 = l1;
  s.r1 = post_shock_state(mach, l1, gamma);
  s.omega = -shock_speed(mach, l1, gamma);
  const ReflectedShock rs = reflected_shock(s.r1, gamma);
  s.omega2 = rs.omega2;
  s.l2 = rs.l2;
  s.t_sym = s.x0 / s.omega;
  s.t_max = s.length / s.omega2 + s.t_sym;
  return s;
}

Primitive exact_solution(const ShockSetup& s, double x, double t) {
  if (t < 0.0 || t > s.t_max) {
    throw DomainError(fmt::format("exact solution only known on [0, {:.6g}] (t = {:.6g})",
                                  s.t_max, t));
  }
  if (t <= s.t_sym) return x < s.x0 - s.omega * t ? s.l1 : s.r1;
  return x < s.omega2 * (t - s.t_sym) ? s.l2 : s.r1;
}

std::vector<Vec3> cell_velocity(const Discretization& d, const State& s) {
  std::vector<Vec3> out(static_cast<std::size_t>(d.num_cells()));
  for (Index k = 0; k < d.num_cells(); ++k) {
    Vec3 sum{};
    for (int sl = 0; sl < d.nfaces[k]; ++sl) sum += s.u[d.cface[d.slot(k, sl)]];
    out[k] = (1.0 / d.nfaces[k]) * sum;
  }
  return out;
}

ErrorReport error_norms(const Discretization& d, const State& s, const ExactField& exact,
                        double h) {
  const std::vector<Vec3> uc = cell_velocity(d, s);
  double ep = 0, np = 0, er = 0, nr = 0, eu = 0, nu = 0;
  for (Index k = 0; k < d.num_cells(); ++k) {
    const Primitive q = exact(d.ccentroid[k]);
    const double v = d.vol[k];
    const Vec3 ue{q.u, 0.0, 0.0};
    ep += v * std::abs(s.p[k] - q.p);
    np += v * std::abs(q.p);
    er += v * std::abs(s.rho[k] - q.rho);
    nr += v * std::abs(q.rho);
    eu += v * norm(uc[k] - ue);
    nu += v * std::abs(q.u);
  }
  ErrorReport r;
  r.h = h;
  auto rel = [](double e, double n, bool& absolute) {
    absolute = !(n > 0.0);
    return absolute ? e : e / n;
  };
  r.e_p = rel(ep, np, r.absolute_p);
  r.e_rho = rel(er, nr, r.absolute_rho);
  r.e_u = rel(eu, nu, r.absolute_u);
  return r;
}

ErrorReport error_norms(const Discretization& d, const State& s, const ShockSetup& setup,
                        double t, double h) {
  return error_norms(d, s, [&](const Vec3& x) { return exact_solution(setup, x[0], t); }, h);
}

std::vector<Orders> convergence_rates(const std::vector<ErrorReport>& reports) {
  std::vector<Orders> out;
  for (std::size_t i = 1; i < reports.size(); ++i) {
    const ErrorReport& a = reports[i - 1];
    const ErrorReport& b = reports[i];
    Orders o;
    const double lh = std::log(a.h / b.h);
    auto order = [&](double ea, double eb) {
      if (!(ea > 0.0) || !(eb > 0.0) || !(lh != 0.0)) {
        o.valid = false;
        return std::numeric_limits<double>::quiet_NaN();
      }
      return std::log(ea / eb) / lh;
    };
    o.p = order(a.e_p, b.e_p);
    o.rho = order(a.e_rho, b.e_rho);
    o.u = order(a.e_u, b.e_u);
    out.push_back(o);
  }
  return out;
}

void write_convergence_csv(std::ostream& os, double time, const std::vector<ErrorReport>& reports,
                           bool header) {
  if (header) os << "time,h,dt,e_p,e_rho,e_u,order_p,order_rho,order_u\n";
  const std::vector<Orders> orders = convergence_rates(reports);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const ErrorReport& r = reports[i];
    fmt::print(os, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}", time, r.h, r.dt, r.e_p,
               r.e_rho, r.e_u);
    if (i == 0) {
      os << ",,,\n";
    } else {
      const Orders& o = orders[i - 1];
      fmt::print(os, ",{:.17g},{:.17g},{:.17g}\n", o.p, o.rho, o.u);
    }
  }
}

// ---------------------------------------------------------------- LW harness

namespace {

// b(s) = ((s - lo)(hi - s))^4 / ((hi - lo)/2)^8 on [lo, hi].
double bump(double s, double lo, double hi) {
  if (s <= lo || s >= hi) return 0.0;
  const double r = 2.0 / (hi - lo);
  const double q = (s - lo) * (hi - s) * r * r;
  return q * q * q * q;
}

double bump_d(double s, double lo, double hi) {
  if (s <= lo || s >= hi) return 0.0;
  const double r = 2.0 / (hi - lo);
  const double q = (s - lo) * (hi - s) * r * r;
  return 4.0 * q * q * q * (lo + hi - 2.0 * s) * r * r;
}

}  // namespace

double LwTestFunction::value(const Vec3& x, double t) const {
  if (t >= t_support) return 0.0;
  const double a = 1.0 - t / t_support;
  double v = a * a * a * a;
  for (int i = 0; i < dim; ++i) v *= bump(x[i], lo, hi);
  return v;
}

Vec3 LwTestFunction::gradient(const Vec3& x, double t) const {
  Vec3 g{};
  if (t >= t_support) return g;
  const double a = 1.0 - t / t_support;
  const double psi = a * a * a * a;
  double b[3] = {1.0, 1.0, 1.0}, db[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < dim; ++i) {
    b[i] = bump(x[i], lo, hi);
    db[i] = bump_d(x[i], lo, hi);
  }
  for (int i = 0; i < dim; ++i) {
    double v = psi * db[i];
    for (int j = 0; j < dim; ++j) {
      if (j != i) v *= b[j];
    }
    g[i] = v;
  }
  return g;
}

double LwTestFunction::time_derivative(const Vec3& x, double t) const {
  if (t >= t_support) return 0.0;
  const double a = 1.0 - t / t_support;
  double v = -4.0 * a * a * a / t_support;
  for (int i = 0; i < dim; ++i) v *= bump(x[i], lo, hi);
  return v;
}

void lw_continuous(const LwFields& f, const LwTestFunction& phi, int dim, double t_end,
                   double out[3]) {
  out[0] = out[1] = out[2] = 0.0;
  std::vector<double> xs, wx, ts, wt;
  composite(phi.lo, phi.hi, dim == 3 ? 4 : 8, xs, wx);
  composite(0.0, std::min(t_end, phi.t_support), dim == 3 ? 6 : 12, ts, wt);
  const std::size_t nq = xs.size();
  const std::size_t nz = dim == 3 ? nq : 1;
  double init[3] = {0.0, 0.0, 0.0};
  double bulk[3] = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      for (std::size_t l = 0; l < nz; ++l) {
        const Vec3 x{xs[i], xs[j], dim == 3 ? xs[l] : 0.0};
        const double w = wx[i] * wx[j] * (dim == 3 ? wx[l] : 1.0);
        {
          const double r = f.rho(x, 0.0);
          const Vec3 u = f.u(x, 0.0);
          const double ph = phi.value(x, 0.0);
          for (int c = 0; c < dim; ++c) init[c] += w * r * u[c] * ph;
        }
        for (std::size_t q = 0; q < ts.size(); ++q) {
          const double t = ts[q];
          const double r = f.rho(x, t);
          const Vec3 u = f.u(x, t);
          const double a = phi.time_derivative(x, t) + dot(u, phi.gradient(x, t));
          const double ww = w * wt[q] * r * a;
          for (int c = 0; c < dim; ++c) bulk[c] += ww * u[c];
        }
      }
    }
  }
  for (int c = 0; c < dim; ++c) out[c] = -init[c] - bulk[c];
}

LwLevel lw_weak_residual(const Mesh& mesh, const LwFields& f, const LwTestFunction& phi,
                         double h, double t_end, int steps) {
  if (steps < 1) throw InputError("lw_weak_residual needs at least one time step");
  const Discretization d(mesh);
  const int dim = d.dim();
  const Index nc = d.num_cells();
  const Index nf = d.num_faces();
  // φ must vanish on every boundary cell.
  for (Index fb = 0; fb < nf; ++fb) {
    if (d.neighbor[fb] != kNoCell) continue;
    const Index k = d.owner[fb];
    for (int sl = 0; sl < d.nfaces[k]; ++sl) {
      const Vec3& x = d.fcentroid[d.cface[d.slot(k, sl)]];
      if (phi.value(x, 0.0) != 0.0 || phi.value(d.ccentroid[k], 0.0) != 0.0) {
        throw InputError(fmt::format("test function support touches boundary cell {}", k));
      }
    }
  }
  const double dt = t_end / steps;
  LwLevel lv;
  lv.h = h;
  lv.dt = dt;
  lv.steps = steps;
  lw_continuous(f, phi, dim, t_end, lv.continuous);

  auto sample = [&](double t, State& s) {
    s.rho.resize(static_cast<std::size_t>(nc));
    s.e.assign(static_cast<std::size_t>(nc), 1.0);
    s.p.assign(static_cast<std::size_t>(nc), 1.0);
    s.u.resize(static_cast<std::size_t>(nf));
    for (Index k = 0; k < nc; ++k) s.rho[k] = f.rho(d.ccentroid[k], t);
    for (Index g = 0; g < nf; ++g) {
      Vec3 u = f.u(d.fcentroid[g], t);
      if (dim == 2) u[2] = 0.0;
      s.u[g] = u;
    }
  };

  State s0, s1;
  sample(0.0, s0);
  std::vector<double> rd0, rd1;
  dual_density(d, s0.rho, rd0);
  FluxField flux;
  std::vector<Vec3> conv;
  double sum[3] = {0.0, 0.0, 0.0};
  double pj = 0.0, dj = 0.0;
  for (int n = 0; n < steps; ++n) {
    const double t = n * dt;
    if (t >= phi.t_support) break;
    sample(t + dt, s1);
    dual_density(d, s1.rho, rd1);
    primal_mass_fluxes(d, s0, FaceScheme::Upwind, nullptr, flux.primal);
    reconstruct_dual_fluxes(d, flux);
    momentum_convection(d, flux, s0.u, FaceScheme::Upwind, conv);
    for (Index g = 0; g < nf; ++g) {
      const double ph = phi.value(d.fcentroid[g], t);
      if (ph == 0.0) continue;
      const Vec3 c = (1.0 / dt) * (rd1[g] * s1.u[g] - rd0[g] * s0.u[g]) + conv[g];
      const double w = dt * d.dual_vol[g] * ph;
      for (int i = 0; i < dim; ++i) sum[i] += w * c[i];
    }
    for (Index g = 0; g < nf; ++g) {
      if (d.neighbor[g] == kNoCell) continue;
      pj += dt * d.area[g] * std::abs(s0.rho[d.owner[g]] - s0.rho[d.neighbor[g]]);
    }
    for (Index k = 0; k < nc; ++k) {
      const CompiledTable& tab = compiled_table(d.kind[k]);
      const std::size_t base = d.slot(k, 0);
      for (int e = 0; e < tab.num_edges; ++e) {
        dj += dt * d.eps_area[k] *
              norm(s0.u[d.cface[base + tab.edges[e].from]] - s0.u[d.cface[base + tab.edges[e].to]]);
      }
    }
    std::swap(s0, s1);
    std::swap(rd0, rd1);
  }
  lv.primal_jump = h * pj;
  lv.dual_jump = h * dj;
  for (int i = 0; i < dim; ++i) {
    lv.discrete[i] = sum[i];
    lv.residual = std::max(lv.residual, std::abs(sum[i] - lv.continuous[i]));
  }
  return lv;
}

std::vector<LwLevel> lw_weak_residual(const std::vector<const Mesh*>& meshes,
                                      const std::vector<double>& hs,
                                      const std::vector<int>& steps, const LwFields& f,
                                      const LwTestFunction& phi, double t_end) {
  if (meshes.size() != hs.size() || meshes.size() != steps.size()) {
    throw InputError("lw_weak_residual: meshes, spacings and step counts differ in length");
  }
  std::vector<LwLevel> out;
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    out.push_back(lw_weak_residual(*meshes[i], f, phi, hs[i], t_end, steps[i]));
  }
  return out;
}

LwFields lw_default_fields(int dim, bool constant) {
  LwFields f;
  if (constant) {
    f.rho = [](const Vec3&, double) { return 1.3; };
    f.u = [dim](const Vec3&, double) { return Vec3{0.7, -0.4, dim == 3 ? 0.5 : 0.0}; };
    return f;
  }
  constexpr double tau = 2.0 * std::numbers::pi;
  f.rho = [dim](const Vec3& x, double t) {
    double r = (1.0 + 0.1 * std::sin(tau * (x[0] - t))) * (1.0 + 0.1 * std::cos(tau * x[1]));
    if (dim == 3) r *= 1.0 + 0.1 * std::sin(tau * x[2]);
    return r;
  };
  f.u = [dim](const Vec3& x, double t) {
    Vec3 u{1.0 + 0.2 * std::sin(tau * x[1]), 0.3 * std::cos(tau * (x[0] + t)), 0.0};
    if (dim == 3) {
      u[0] += 0.1 * std::cos(tau * x[2]);
      u[2] = 0.2 * std::sin(tau * (x[0] + x[1]));
    }
    return u;
  };
  return f;
}

// ------------------------------------------------------------ Mach-10 column

std::vector<LwLevel> lw_refinement(CellKind kind, int levels, bool constant) {
  if (levels < 1) throw InputError("lw_refinement needs at least one level");
  const int dim = dimension(kind);
  const LwFields f = lw_default_fields(dim, constant);
  LwTestFunction phi;
  phi.dim = dim;
  const int base = dim == 2 ? 8 : 4;
  std::vector<LwLevel> out;
  for (int i = 0; i < levels; ++i) {
    const int n = base << i;
    const Mesh m = unit_box_mesh(kind, n);
    out.push_back(lw_weak_residual(m, f, phi, 1.0 / n, phi.t_support, 12 << i));
  }
  return out;
}

TubeKind parse_tube_kind(std::string_view word) {
  if (word == "prism") return TubeKind::Prism;
  if (word == "pyramid") return TubeKind::Pyramid;
  if (word == "hybrid") return TubeKind::Hybrid;
  if (word == "hex") return TubeKind::Hexahedron;
  throw ConfigError(fmt::format("unknown mesh kind '{}' (prism, pyramid, hybrid, hex)", word));
}

std::string_view to_string(TubeKind kind) noexcept {
  switch (kind) {
    case TubeKind::Prism: return "prism";
    case TubeKind::Pyramid: return "pyramid";
    case TubeKind::Hybrid: return "hybrid";
    case TubeKind::Hexahedron: return "hex";
  }
  return "?";
}

ShockTubeCase shock_tube_case(const ShockSetup& setup, TubeKind kind, int n,
                              const ShockTubeOptions& opt) {
  ShockTubeCase c;
  c.h = shock_tube_h(n);
  const bool distort = opt.distort < 0 ? kind == TubeKind::Hybrid : opt.distort != 0;
  switch (kind) {
    case TubeKind::Prism: c.mesh = gen_shock_tube_mesh(n, CellKind::Prism, distort); break;
    case TubeKind::Pyramid: c.mesh = gen_shock_tube_mesh(n, CellKind::Pyramid, distort); break;
    case TubeKind::Hexahedron:
      c.mesh = gen_shock_tube_mesh(n, CellKind::Hexahedron, distort);
      break;
    case TubeKind::Hybrid: c.mesh = gen_hybrid_shock_tube_mesh(n, distort); break;
  }
  const Primitive r1 = setup.r1;
  c.bcs["left"] = BoundaryCondition::reflexive();
  c.bcs["right"] = BoundaryCondition::dirichlet(r1.rho, {r1.u, 0.0, 0.0}, r1.p);
  c.bcs["lateral"] = BoundaryCondition::slip();
  c.init.rho = [setup](const Vec3& x) { return exact_solution(setup, x[0], 0.0).rho; };
  c.init.p = [setup](const Vec3& x) { return exact_solution(setup, x[0], 0.0).p; };
  c.init.u = [setup](const Vec3& x) { return Vec3{exact_solution(setup, x[0], 0.0).u, 0.0, 0.0}; };
  Config& cfg = c.config;
  cfg.gamma = setup.gamma;
  cfg.scheme = {opt.scheme, opt.scheme, opt.scheme};
  cfg.s_term = opt.s_term;
  cfg.nu = opt.nu_factor * std::abs(r1.u * r1.rho) / 50.0;
  cfg.cfl = opt.cfl;
  if (opt.dt_factor > 0.0) cfg.dt = opt.dt_factor * c.h / 4500.0;
  return c;
}

double shock_position(const Discretization& d, const State& s, double rho_lo, double rho_hi,
                      double length, int bins) {
  std::vector<double> mass(static_cast<std::size_t>(bins), 0.0);
  std::vector<double> vol(static_cast<std::size_t>(bins), 0.0);
  for (Index k = 0; k < d.num_cells(); ++k) {
    const int i = std::clamp(static_cast<int>(d.ccentroid[k][0] / length * bins), 0, bins - 1);
    mass[i] += s.rho[k] * d.vol[k];
    vol[i] += d.vol[k];
  }
  const double mid = 0.5 * (rho_lo + rho_hi);
  const double w = length / bins;
  double x = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i + 1 < bins; ++i) {
    if (vol[i] <= 0.0 || vol[i + 1] <= 0.0) continue;
    const double a = mass[i] / vol[i];
    const double b = mass[i + 1] / vol[i + 1];
    if ((a - mid) * (b - mid) <= 0.0 && a != b) x = (i + 0.5 + (mid - a) / (b - a)) * w;
  }
  return x;
}

SuiteResult run_shock_tube_suite(const ShockSetup& setup, TubeKind kind, int nmin, int nmax,
                                 const std::vector<double>& times, const ShockTubeOptions& opt,
                                 const std::function<void(const SuiteLevel&)>& on_level) {
  SuiteResult out;
  out.times = times;
  for (double t : times) {
    if (t > setup.t_max) {
      throw DomainError(fmt::format("time {} is past T_max = {}", t, setup.t_max));
    }
  }
  for (int n = nmin; n <= nmax; ++n) {
    ShockTubeCase c = shock_tube_case(setup, kind, n, opt);
    Discretization d(c.mesh);
    Solver solver(d, c.config, c.bcs);
    State s = solver.initialize(c.init);
    SuiteLevel lv;
    lv.n = n;
    lv.cells = c.mesh.num_cells();
    RunReport rep;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      for (double t : times) {
        solver.advance(s, t, rep);
        ErrorReport e = error_norms(d, s, setup, t, c.h);
        if (!rep.steps.empty()) e.dt = rep.steps.back().dt;
        lv.errors.push_back(e);
        const bool reflected = t >= setup.t_sym;
        const Primitive behind = reflected ? setup.l2 : setup.l1;
        lv.shock_x.push_back(shock_position(d, s, setup.r1.rho, behind.rho, setup.length,
                                            static_cast<int>(std::lround(setup.length / c.h))));
        lv.shock_x_exact.push_back(reflected ? setup.omega2 * (t - setup.t_sym)
                                             : setup.x0 - setup.omega * t);
      }
    } catch (const CflViolation& ex) {
      out.failure = fmt::format("n={}: {}", n, ex.what());
    }
    lv.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    lv.steps = static_cast<long>(rep.steps.size());
    for (const auto& st : rep.steps) {
      lv.max_dual_mass_residual = std::max(lv.max_dual_mass_residual, st.max_dual_mass_residual);
    }
    if (on_level) on_level(lv);
    out.levels.push_back(std::move(lv));
    if (!out.failure.empty()) break;
  }
  return out;
}

std::vector<ErrorReport> suite_errors(const SuiteResult& r, std::size_t i) {
  std::vector<ErrorReport> out;
  for (const auto& lv : r.levels) {
    if (i < lv.errors.size()) out.push_back(lv.errors[i]);
  }
  return out;
}

Orders fitted_order(const std::vector<ErrorReport>& reports) {
  Orders o;
  if (reports.size() < 2) {
    o.valid = false;
    o.p = o.rho = o.u = std::numeric_limits<double>::quiet_NaN();
    return o;
  }
  auto slope = [&](auto get) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(reports.size());
    for (const auto& r : reports) {
      const double e = get(r);
      if (!(e > 0.0) || !(r.h > 0.0)) {
        o.valid = false;
        return std::numeric_limits<double>::quiet_NaN();
      }
      const double x = std::log(r.h), y = std::log(e);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
  };
  o.p = slope([](const ErrorReport& r) { return r.e_p; });
  o.rho = slope([](const ErrorReport& r) { return r.e_rho; });
  o.u = slope([](const ErrorReport& r) { return r.e_u; });
  return o;
}

ColumnSetup mach10_column_setup(const ColumnMeshParams& params) {
  ColumnSetup c;
  c.mesh = gen_column_mesh(params, &c.info);
  c.gamma = 1.4;
  c.rest = Primitive{1.4, 0.0, 1.0};
  // Mirror of the shock running towards -x into the rest state.
  Primitive post = post_shock_state(10.0, c.rest, c.gamma);
  c.inflow = Primitive{post.rho, -post.u, post.p};
  c.shock_speed = -shock_speed(10.0, c.rest, c.gamma);
  c.bcs["inflow"] = BoundaryCondition::dirichlet(c.inflow.rho, Vec3{c.inflow.u, 0.0, 0.0},
                                                 c.inflow.p);
  c.bcs["outlet"] = BoundaryCondition::outlet();
  c.bcs["wall"] = BoundaryCondition::slip();
  const Primitive rest = c.rest;
  c.init.rho = [rest](const Vec3&) { return rest.rho; };
  c.init.u = [](const Vec3&) { return Vec3{}; };
  c.init.p = [rest](const Vec3&) { return rest.p; };
  return c;
}

Primitive column_planar_profile(const ColumnSetup& c, double x, double t) {
  return x < c.shock_speed * t ? c.inflow : c.rest;
}

}  // namespace stagfv
