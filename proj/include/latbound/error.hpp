#pragma once

#include <stdexcept>
#include <string>

namespace latbound {

enum class ErrorKind {
  invariant,              // a type invariant was violated at construction
  parameter,              // a scalar parameter is outside its admissible range
  unsupported_dimension,
  domain,                 // spectral parameter inside the band, or similar
  accuracy,               // quadrature tolerance not reached
  precondition,
  degenerate_extremum,
  extraction,             // Richardson extrapolation did not settle
  realness,               // complex eigenvalue where the theory forbids one
  identity,               // trace identity residual exceeded
  solver,                 // root finder stagnation
  oracle,                 // truncated-Hamiltonian failure
  geometry,               // potential support escapes the box
  config,                 // configuration validation
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures of numerical stages (as opposed to bad input).
  bool numerical() const noexcept;

 private:
  ErrorKind kind_;
};

/// Quadrature did not reach its tolerance; carries the best estimate found.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best, double est_error)
      : Error(ErrorKind::accuracy, what), best_(best), est_error_(est_error) {}

  double best_estimate() const noexcept { return best_; }
  double estimated_error() const noexcept { return est_error_; }

 private:
  double best_;
  double est_error_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace latbound
