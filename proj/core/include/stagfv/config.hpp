#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "stagfv/solver.hpp"

namespace stagfv {

/// Uniform initial state from the `init.*` keys.
struct UniformInit {
  double rho = 0.0;
  Vec3 u{};
  double p = 0.0;
};

struct RunSpec {
  Config solver;
  BoundaryConditions bcs;
  std::optional<UniformInit> init;
};

/// Flat `key = value` file, `#` starts a comment. Recognized keys:
///
///   gamma                       required
///   t_end                       default 0
///   dt | cfl                    fixed step, or CFL number (default cfl = 0.5)
///   scheme                      sets all three face schemes
///   scheme.mass / .energy / .momentum = upwind | centered | muscl
///   nu                          default 0
///   s_term = off | time-increment | kinetic-defect   (default kinetic-defect)
///   output.every                default 0
///   max_steps
///   bc.<tag> = dirichlet <rho> <ux> <uy> <uz> <p> | outlet | slip | reflexive
///   init.rho, init.p            uniform initial state (both or neither)
///   init.u = <ux> <uy> [<uz>]
///
/// Unknown keys, duplicates and malformed values throw ConfigError naming the key.
RunSpec parse_config(std::istream& is);
RunSpec parse_config_string(const std::string& text);
RunSpec read_config_file(const std::string& path);

/// Writes every key; parse_config reads the result back unchanged.
void write_config(std::ostream& os, const RunSpec& spec);

FaceScheme parse_face_scheme(const std::string& word);
CorrectiveTerm parse_corrective_term(const std::string& word);
std::string_view to_string(FaceScheme scheme) noexcept;
std::string_view to_string(CorrectiveTerm term) noexcept;

}  // namespace stagfv
