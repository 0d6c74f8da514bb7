#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "stagfv/config.hpp"
#include "stagfv/dualflux.hpp"
#include "stagfv/errors.hpp"
#include "stagfv/generators.hpp"
#include "stagfv/mesh_io.hpp"
#include "stagfv/threads.hpp"
#include "stagfv/verify.hpp"
#include "stagfv/vtk.hpp"

namespace stagfv::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kTableTolerance = 1e-12;

struct MeshGenArgs {
  std::string kind = "prism";
  int n = 5;
  int m = 12;
  bool distort = false;
  std::string out;
};

struct RunArgs {
  std::string config;
  std::string mesh;
  std::string preset;
  std::string kind;
  int n = -1;
  std::string out = "out";
};

struct ConvergenceArgs {
  std::string kind = "prism";
  int nmin = 5;
  int nmax = 7;
  std::string scheme = "muscl";
  std::string out = ".";
  double dt_factor = 0.0;
};

struct LwArgs {
  int levels = 3;
  std::string kind = "quad";
  bool constant = false;
};

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw InputError(fmt::format("cannot create output directory '{}'", dir));
  }
}

FaceScheme scheme_by_name(const std::string& s) { return parse_face_scheme(s); }

CellKind unit_kind(const std::string& name) {
  CellKind k{};
  static const std::pair<const char*, CellKind> names[] = {
      {"tri", CellKind::Triangle},    {"quad", CellKind::Quadrangle},
      {"tet", CellKind::Tetrahedron}, {"hex", CellKind::Hexahedron},
      {"prism", CellKind::Prism},     {"pyramid", CellKind::Pyramid}};
  for (const auto& [n, kind] : names) {
    if (name == n) return kind;
  }
  if (parse_keyword(name, k)) return k;
  throw ConfigError(fmt::format("unknown cell kind '{}'", name));
}

// mesh-gen

int cmd_mesh_gen(const MeshGenArgs& a, std::ostream& out) {
  Mesh mesh;
  if (a.kind == "column") {
    ColumnMeshParams p;
    p.m = a.m;
    mesh = gen_column_mesh(p);
  } else if (a.kind.rfind("unit-", 0) == 0) {
    mesh = unit_box_mesh(unit_kind(a.kind.substr(5)), a.n);
  } else {
    switch (parse_tube_kind(a.kind)) {
      case TubeKind::Prism: mesh = gen_shock_tube_mesh(a.n, CellKind::Prism, a.distort); break;
      case TubeKind::Pyramid: mesh = gen_shock_tube_mesh(a.n, CellKind::Pyramid, a.distort); break;
      case TubeKind::Hexahedron:
        mesh = gen_shock_tube_mesh(a.n, CellKind::Hexahedron, a.distort);
        break;
      case TubeKind::Hybrid: mesh = gen_hybrid_shock_tube_mesh(a.n, a.distort); break;
    }
  }
  if (fs::path(a.out).extension() == ".vtk") {
    write_vtk_file(a.out, vtk_geometry(mesh));
  } else {
    write_mesh_file(a.out, mesh);
  }
  out << fmt::format("{} cells, {} faces, {} vertices -> {}\n", mesh.num_cells(),
                     mesh.num_faces(), mesh.vertices().size(), a.out);
  return kOk;
}

// derive-tables

int cmd_derive_tables(bool csv, std::ostream& out) {
  if (csv) {
    write_tables_csv(out);
  }
  double worst = 0.0;
  for (CellKind kind : kAllCellKinds) {
    const LeastSquaresTable ls = derive_table_least_squares(kind);
    worst = std::max(worst, ls.max_deviation);
    if (csv) continue;
    const auto roles = roles_of_kind(kind);
    const auto edges = dual_edges_of_kind(kind);
    out << fmt::format("{}: {} dual edges, residual {:.3e}, max deviation {:.3e}\n",
                       to_string(kind), ls.table.num_edges(), ls.residual, ls.max_deviation);
    out << "  edge ";
    for (auto r : roles) out << fmt::format("{:>8}", to_string(r));
    out << '\n';
    for (int e = 0; e < ls.table.num_edges(); ++e) {
      out << fmt::format("  {}|{}  ", to_string(roles[edges[e].from]), to_string(roles[edges[e].to]));
      for (const Rational& q : ls.table.rows[e]) {
        const std::string s = q.denominator() == 1
                                  ? fmt::format("{}", q.numerator())
                                  : fmt::format("{}/{}", q.numerator(), q.denominator());
        out << fmt::format("{:>8}", s);
      }
      out << '\n';
    }
  }
  if (!csv) out << fmt::format("max deviation {:.3e}\n", worst);
  if (worst > kTableTolerance) {
    throw ConsistencyError(fmt::format("least-squares tables deviate by {:.3e}", worst));
  }
  return kOk;
}

// run

struct Problem {
  Mesh mesh;
  RunSpec spec;
  InitialData init;
};

void merge_config(Problem& p, const std::string& path) {
  if (path.empty()) return;
  RunSpec file = read_config_file(path);
  p.spec.solver = file.solver;
  for (auto& [tag, bc] : file.bcs) p.spec.bcs[tag] = bc;
  if (file.init) {
    const UniformInit u = *file.init;
    p.init.rho = [u](const Vec3&) { return u.rho; };
    p.init.u = [u](const Vec3&) { return u.u; };
    p.init.p = [u](const Vec3&) { return u.p; };
    p.init.e = {};
  }
}

Problem build_problem(const RunArgs& a) {
  Problem p;
  if (a.preset == "shock-tube") {
    const ShockSetup setup = shock_tube_setup();
    const TubeKind kind = parse_tube_kind(a.kind.empty() ? "prism" : a.kind);
    ShockTubeCase c = shock_tube_case(setup, kind, a.n < 0 ? 5 : a.n);
    p.mesh = std::move(c.mesh);
    p.spec.solver = c.config;
    p.spec.solver.t_end = 0.003;
    p.spec.bcs = c.bcs;
    p.init = c.init;
  } else if (a.preset == "mach10-column") {
    ColumnMeshParams params;
    if (a.n > 0) params.m = a.n;
    if (!a.kind.empty()) params.kind = unit_kind(a.kind);
    ColumnSetup c = mach10_column_setup(params);
    p.mesh = std::move(c.mesh);
    p.spec.solver.gamma = c.gamma;
    p.spec.solver.t_end = c.t_end;
    p.spec.bcs = c.bcs;
    p.init = c.init;
  } else if (!a.preset.empty()) {
    throw ConfigError(fmt::format("unknown preset '{}' (shock-tube, mach10-column)", a.preset));
  } else {
    if (a.config.empty()) throw ConfigError("--mesh needs --config");
    p.mesh = read_mesh_file(a.mesh);
    RunSpec spec = read_config_file(a.config);
    if (!spec.init) throw ConfigError("config needs init.rho and init.p when --mesh is used");
    p.spec = spec;
    const UniformInit u = *spec.init;
    p.init.rho = [u](const Vec3&) { return u.rho; };
    p.init.u = [u](const Vec3&) { return u.u; };
    p.init.p = [u](const Vec3&) { return u.p; };
    return p;
  }
  merge_config(p, a.config);
  return p;
}

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  if (a.preset.empty() == a.mesh.empty()) {
    throw ConfigError("exactly one of --mesh or --preset is required");
  }
  Problem p = build_problem(a);
  ensure_dir(a.out);
  Discretization d(p.mesh);
  Solver solver(d, p.spec.solver, p.spec.bcs);
  State s = solver.initialize(p.init);

  {
    std::ofstream cfg(fs::path(a.out) / "config.txt");
    write_config(cfg, p.spec);
  }
  int count = 0;
  auto snapshot = [&](const State& st) {
    const fs::path file = fs::path(a.out) / fmt::format("snapshot_{:04d}.vtk", count++);
    write_vtk_file(file.string(), vtk_snapshot(d, st, st.time, st.step));
  };
  auto write_diag = [&](const RunReport& r) {
    std::ofstream os(fs::path(a.out) / "diagnostics.csv");
    write_diagnostics_csv(os, r.steps);
  };

  RunReport report;
  try {
    solver.run(std::move(s), report, snapshot);
  } catch (const CflViolation& ex) {
    write_diag(report);
    err << fmt::format("error: {} (last valid state at t={:.17g} written as snapshot_{:04d}.vtk)\n",
                       ex.what(), report.final_state.time, count - 1);
    return kCflViolation;
  }
  write_diag(report);
  const State& f = report.final_state;
  const double m1 = total_mass(d, f);
  out << fmt::format("{} steps, t = {:.6g}, {} snapshots in {}\n", report.steps.size(), f.time,
                     count, a.out);
  out << fmt::format("mass {:.17g} (initial {:.17g}, net outflow {:.17g})\n", m1,
                     report.initial_mass, report.cumulative_outflow);
  return kOk;
}

// convergence

int cmd_convergence(const ConvergenceArgs& a, std::ostream& out) {
  if (a.nmin < 1 || a.nmax < a.nmin) throw ConfigError("need 1 <= nmin <= nmax");
  const TubeKind kind = parse_tube_kind(a.kind);
  const ShockSetup setup = shock_tube_setup();
  std::vector<double> times{0.003, 0.015};
  if (times[1] > setup.t_max) {
    out << fmt::format("note: t = 0.015 is past T_max = {:.6g}; sampling at T_max instead\n",
                       setup.t_max);
    times[1] = setup.t_max;
  }
  ShockTubeOptions opt;
  opt.scheme = scheme_by_name(a.scheme);
  opt.dt_factor = a.dt_factor;
  ensure_dir(a.out);
  const SuiteResult r = run_shock_tube_suite(setup, kind, a.nmin, a.nmax, times, opt,
                                             [&](const SuiteLevel& lv) {
    out << fmt::format("n={} cells={} steps={} ({:.1f} s)\n", lv.n, lv.cells, lv.steps, lv.seconds);
    out.flush();
  });
  if (!r.failure.empty()) throw CflViolation(r.failure, 0, 0.0);

  const fs::path file = fs::path(a.out) / fmt::format("convergence_{}_{}.csv", a.kind, a.scheme);
  std::ofstream os(file);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto errs = suite_errors(r, i);
    write_convergence_csv(os, times[i], errs, i == 0);
    const Orders fit = fitted_order(errs);
    out << fmt::format("t={:.6g}:\n", times[i]);
    for (const auto& e : errs) {
      out << fmt::format("  h={:.6g} e_p={:.6e} e_rho={:.6e} e_u={:.6e}\n", e.h, e.e_p, e.e_rho, e.e_u);
    }
    out << fmt::format("  fitted orders p={:.3f} rho={:.3f} u={:.3f}\n", fit.p, fit.rho, fit.u);
  }
  out << "wrote " << file.string() << '\n';
  return kOk;
}

// lw-check

int cmd_lw_check(const LwArgs& a, std::ostream& out) {
  if (a.levels < 2) throw ConfigError("--levels must be >= 2");
  const auto levels = lw_refinement(unit_kind(a.kind), a.levels, a.constant);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const LwLevel& lv = levels[i];
    out << fmt::format("level {} h={:.6g} dt={:.6g} residual={:.6e}", i, lv.h, lv.dt, lv.residual);
    if (i > 0) {
      const double prev = levels[i - 1].residual;
      out << fmt::format(" ratio={:.4f}", lv.residual > 0.0 ? prev / lv.residual : INFINITY);
    }
    out << '\n';
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Staggered finite-volume Euler solver tools", "stagfv"};
  app.require_subcommand(1);

  MeshGenArgs mg;
  auto* c_mesh = app.add_subcommand("mesh-gen", "Generate a test mesh");
  c_mesh->add_option("--kind", mg.kind,
                     "prism, pyramid, hybrid, hex, column, or unit-<tri|quad|tet|hex|prism|pyramid>");
  c_mesh->add_option("--n", mg.n, "Refinement exponent (tube) or cells per side (unit box)");
  c_mesh->add_option("--m", mg.m, "Cells per side of the block around the column");
  c_mesh->add_flag("--distort", mg.distort, "Apply the shock-tube distortion map");
  c_mesh->add_option("--out", mg.out, "Output file (.vtk for VTK, otherwise ASCII mesh)")->required();

  bool csv = false;
  auto* c_tables = app.add_subcommand("derive-tables", "Derive the dual-flux tables by least squares");
  c_tables->add_flag("--csv", csv, "Print the tables as CSV");

  RunArgs ra;
  auto* c_run = app.add_subcommand("run", "Run a simulation");
  c_run->add_option("--config", ra.config, "key = value configuration file");
  c_run->add_option("--mesh", ra.mesh, "ASCII mesh file");
  c_run->add_option("--preset", ra.preset, "shock-tube or mach10-column");
  c_run->add_option("--kind", ra.kind, "Mesh kind for presets");
  c_run->add_option("--n", ra.n, "Refinement for presets");
  c_run->add_option("--out", ra.out, "Output directory");

  ConvergenceArgs ca;
  auto* c_conv = app.add_subcommand("convergence", "Shock-tube convergence study");
  c_conv->add_option("--kind", ca.kind, "prism, pyramid, hybrid or hex");
  c_conv->add_option("--nmin", ca.nmin, "Coarsest refinement exponent");
  c_conv->add_option("--nmax", ca.nmax, "Finest refinement exponent");
  c_conv->add_option("--scheme", ca.scheme, "muscl or upwind");
  c_conv->add_option("--dt-factor", ca.dt_factor, "Fixed time step dt-factor * h / 4500 (0: CFL)");
  c_conv->add_option("--out", ca.out, "Output directory");

  LwArgs la;
  auto* c_lw = app.add_subcommand("lw-check", "Weak-consistency residuals of the convection operator");
  c_lw->add_option("--levels", la.levels, "Number of refinement levels");
  c_lw->add_option("--kind", la.kind, "tri, quad, tet, hex, prism or pyramid");
  c_lw->add_flag("--constant", la.constant, "Use constant fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }

  try {
    configure_threads();
    if (c_mesh->parsed()) return cmd_mesh_gen(mg, out);
    if (c_tables->parsed()) return cmd_derive_tables(csv, out);
    if (c_run->parsed()) return cmd_run(ra, out, err);
    if (c_conv->parsed()) return cmd_convergence(ca, out);
    if (c_lw->parsed()) return cmd_lw_check(la, out);
  } catch (const ConsistencyError& e) {
    err << "error: " << e.what() << '\n';
    return kTableMismatch;
  } catch (const CflViolation& e) {
    err << "error: " << e.what() << '\n';
    return kCflViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace stagfv::cli
