#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stagfv {

/// Malformed mesh topology: non-conforming faces, bad vertex ids, wrong vertex counts.
class MeshStructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cell whose template orientation yields a non-positive measure.
class MeshOrientationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested mesh exceeds the generator's memory budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid physical input (non-positive density or energy, bad Mach number...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an analytic formula.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or missing configuration (config file keys, boundary tags).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An explicit step produced a non-positive density or internal energy.
class CflViolation : public std::runtime_error {
 public:
  CflViolation(const std::string& what, std::size_t cell, double suggested_dt)
      : std::runtime_error(what), cell_(cell), suggested_dt_(suggested_dt) {}

  std::size_t cell() const noexcept { return cell_; }
  double suggested_dt() const noexcept { return suggested_dt_; }

 private:
  std::size_t cell_;
  double suggested_dt_;
};

/// Least-squares coefficients disagree with the stored tables.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stagfv
