#include "stagfv/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "stagfv/errors.hpp"

namespace stagfv {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

double to_double(const std::string& key, const std::string& word) {
  double v = 0.0;
  const char* first = word.data();
  const char* last = first + word.size();
  if (!word.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError(fmt::format("key '{}': '{}' is not a number", key, word));
  }
  return v;
}

long to_long(const std::string& key, const std::string& word) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    throw ConfigError(fmt::format("key '{}': '{}' is not an integer", key, word));
  }
  return v;
}

double single_number(const std::string& key, const std::string& value) {
  const auto w = split_words(value);
  if (w.size() != 1) throw ConfigError(fmt::format("key '{}' expects one number", key));
  return to_double(key, w[0]);
}

BoundaryCondition parse_bc(const std::string& key, const std::string& value) {
  const auto w = split_words(value);
  if (w.empty()) throw ConfigError(fmt::format("key '{}' has no value", key));
  if (w[0] == "outlet" && w.size() == 1) return BoundaryCondition::outlet();
  if (w[0] == "slip" && w.size() == 1) return BoundaryCondition::slip();
  if (w[0] == "reflexive" && w.size() == 1) return BoundaryCondition::reflexive();
  if (w[0] == "dirichlet") {
    if (w.size() != 6) {
      throw ConfigError(fmt::format("key '{}': dirichlet expects rho ux uy uz p", key));
    }
    return BoundaryCondition::dirichlet(
        to_double(key, w[1]), {to_double(key, w[2]), to_double(key, w[3]), to_double(key, w[4])},
        to_double(key, w[5]));
  }
  throw ConfigError(fmt::format("key '{}': unknown boundary condition '{}'", key, value));
}

}  // namespace

FaceScheme parse_face_scheme(const std::string& word) {
  if (word == "upwind") return FaceScheme::Upwind;
  if (word == "centered") return FaceScheme::Centered;
  if (word == "muscl") return FaceScheme::MusclMinmod;
  throw ConfigError(fmt::format("unknown face scheme '{}'", word));
}

CorrectiveTerm parse_corrective_term(const std::string& word) {
  if (word == "off") return CorrectiveTerm::Off;
  if (word == "time-increment") return CorrectiveTerm::TimeIncrement;
  if (word == "kinetic-defect") return CorrectiveTerm::KineticDefect;
  throw ConfigError(fmt::format("unknown corrective term '{}'", word));
}

std::string_view to_string(FaceScheme scheme) noexcept {
  switch (scheme) {
    case FaceScheme::Upwind: return "upwind";
    case FaceScheme::Centered: return "centered";
    case FaceScheme::MusclMinmod: return "muscl";
  }
  return "?";
}

std::string_view to_string(CorrectiveTerm term) noexcept {
  switch (term) {
    case CorrectiveTerm::Off: return "off";
    case CorrectiveTerm::TimeIncrement: return "time-increment";
    case CorrectiveTerm::KineticDefect: return "kinetic-defect";
  }
  return "?";
}

RunSpec parse_config(std::istream& is) {
  RunSpec spec;
  Config& c = spec.solver;
  std::set<std::string> seen;
  bool have_gamma = false, have_dt = false, have_cfl = false;
  std::optional<double> init_rho, init_p;
  std::optional<Vec3> init_u;

  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value'", lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(fmt::format("line {}: empty key", lineno));
    if (!seen.insert(key).second) throw ConfigError(fmt::format("duplicate key '{}'", key));
    if (value.empty()) throw ConfigError(fmt::format("key '{}' has no value", key));

    if (key == "gamma") {
      c.gamma = single_number(key, value);
      have_gamma = true;
    } else if (key == "t_end") {
      c.t_end = single_number(key, value);
    } else if (key == "dt") {
      c.dt = single_number(key, value);
      if (!(c.dt > 0.0)) throw ConfigError("key 'dt' must be > 0");
      have_dt = true;
    } else if (key == "cfl") {
      c.cfl = single_number(key, value);
      have_cfl = true;
    } else if (key == "scheme") {
      const FaceScheme s = parse_face_scheme(value);
      c.scheme = {s, s, s};
    } else if (key == "scheme.mass") {
      c.scheme.mass = parse_face_scheme(value);
    } else if (key == "scheme.energy") {
      c.scheme.energy = parse_face_scheme(value);
    } else if (key == "scheme.momentum") {
      c.scheme.momentum = parse_face_scheme(value);
    } else if (key == "nu") {
      c.nu = single_number(key, value);
    } else if (key == "s_term") {
      c.s_term = parse_corrective_term(value);
    } else if (key == "output.every") {
      c.output_every = static_cast<int>(to_long(key, value));
      if (c.output_every < 0) throw ConfigError("key 'output.every' must be >= 0");
    } else if (key == "max_steps") {
      c.max_steps = to_long(key, value);
      if (c.max_steps <= 0) throw ConfigError("key 'max_steps' must be > 0");
    } else if (key.rfind("bc.", 0) == 0 && key.size() > 3) {
      spec.bcs[key.substr(3)] = parse_bc(key, value);
    } else if (key == "init.rho") {
      init_rho = single_number(key, value);
    } else if (key == "init.p") {
      init_p = single_number(key, value);
    } else if (key == "init.u") {
      const auto w = split_words(value);
      if (w.size() != 2 && w.size() != 3) {
        throw ConfigError("key 'init.u' expects 2 or 3 components");
      }
      Vec3 u{};
      for (std::size_t i = 0; i < w.size(); ++i) u[i] = to_double(key, w[i]);
      init_u = u;
    } else {
      throw ConfigError(fmt::format("unknown key '{}'", key));
    }
  }

  if (!have_gamma) throw ConfigError("missing required key 'gamma'");
  if (have_dt && have_cfl) throw ConfigError("keys 'dt' and 'cfl' are exclusive");
  if (init_rho.has_value() != init_p.has_value()) {
    throw ConfigError("keys 'init.rho' and 'init.p' must be given together");
  }
  if (init_u && !init_rho) throw ConfigError("key 'init.u' needs 'init.rho' and 'init.p'");
  if (init_rho) spec.init = UniformInit{*init_rho, init_u.value_or(Vec3{}), *init_p};
  c.validate();
  return spec;
}

RunSpec parse_config_string(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

RunSpec read_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  return parse_config(is);
}

void write_config(std::ostream& os, const RunSpec& spec) {
  const Config& c = spec.solver;
  os << fmt::format("gamma = {:.17g}\n", c.gamma);
  os << fmt::format("t_end = {:.17g}\n", c.t_end);
  if (c.dt > 0.0) {
    os << fmt::format("dt = {:.17g}\n", c.dt);
  } else {
    os << fmt::format("cfl = {:.17g}\n", c.cfl);
  }
  os << "scheme.mass = " << to_string(c.scheme.mass) << '\n';
  os << "scheme.energy = " << to_string(c.scheme.energy) << '\n';
  os << "scheme.momentum = " << to_string(c.scheme.momentum) << '\n';
  os << fmt::format("nu = {:.17g}\n", c.nu);
  os << "s_term = " << to_string(c.s_term) << '\n';
  os << "output.every = " << c.output_every << '\n';
  os << "max_steps = " << c.max_steps << '\n';
  for (const auto& [tag, bc] : spec.bcs) {
    os << "bc." << tag << " = ";
    switch (bc.type) {
      case BcType::Dirichlet:
        os << fmt::format("dirichlet {:.17g} {:.17g} {:.17g} {:.17g} {:.17g}", bc.rho, bc.u[0],
                          bc.u[1], bc.u[2], bc.p);
        break;
      case BcType::Outlet: os << "outlet"; break;
      case BcType::SlipWall: os << "slip"; break;
      case BcType::ReflexiveWall: os << "reflexive"; break;
      case BcType::Interior: os << "interior"; break;
    }
    os << '\n';
  }
  if (spec.init) {
    os << fmt::format("init.rho = {:.17g}\n", spec.init->rho);
    os << fmt::format("init.u = {:.17g} {:.17g} {:.17g}\n", spec.init->u[0], spec.init->u[1],
                      spec.init->u[2]);
    os << fmt::format("init.p = {:.17g}\n", spec.init->p);
  }
}

}  // namespace stagfv
