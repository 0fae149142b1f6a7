#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace dblroot {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Error hierarchy. Every failure the library reports derives from Error so the
// CLI can map error classes onto exit codes.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* error_class() const noexcept { return "error"; }
};

/// Two zeros (or x1 and the origin) are closer than the degeneracy guard.
/// `first`/`second` are 1-based zero labels; second == 0 denotes the origin.
class SingularConfiguration : public Error {
 public:
  SingularConfiguration(const std::string& what, std::size_t first, std::size_t second,
                        double separation)
      : Error(what), first_(first), second_(second), separation_(separation) {}
  const char* error_class() const noexcept override { return "singular_configuration"; }
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }
  double separation() const noexcept { return separation_; }

 private:
  std::size_t first_;
  std::size_t second_;
  double separation_;
};

/// Unrecoverable singularity hit by a time stepper.
class CollisionError : public SingularConfiguration {
 public:
  CollisionError(const std::string& what, std::size_t first, std::size_t second, double separation,
                 double time)
      : SingularConfiguration(what, first, second, separation), time_(time) {}
  const char* error_class() const noexcept override { return "collision"; }
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Iterative method ran out of budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual) : Error(what), residual_(residual) {}
  const char* error_class() const noexcept override { return "non_convergence"; }
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class AmbiguityError : public Error {
 public:
  using Error::Error;
  const char* error_class() const noexcept override { return "ambiguity"; }
};

/// Continuation failed to follow a branch (collision of candidate branches,
/// refinement limit, or an initial value that is not on the tracked branch).
class TrackingError : public Error {
 public:
  enum class Kind { ambiguous_branch, refinement_limit, inconsistent_initial_branch };
  TrackingError(const std::string& what, Kind kind, double time)
      : Error(what), kind_(kind), time_(time) {}
  const char* error_class() const noexcept override {
    switch (kind_) {
      case Kind::ambiguous_branch: return "tracking_ambiguity";
      case Kind::refinement_limit: return "tracking_refinement_limit";
      case Kind::inconsistent_initial_branch: return "inconsistent_initial_branch";
    }
    return "tracking";
  }
  Kind kind() const noexcept { return kind_; }
  double time() const noexcept { return time_; }

 private:
  Kind kind_;
  double time_;
};

/// Caller broke a documented precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
  const char* error_class() const noexcept override { return "contract_violation"; }
};

/// Invalid user configuration; `field` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}
  const char* error_class() const noexcept override { return "config_error"; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace dblroot
