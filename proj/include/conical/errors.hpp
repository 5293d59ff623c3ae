#ifndef CONICAL_ERRORS_HPP
#define CONICAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conical {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An argument violates a documented precondition.
struct PreconditionViolation : Error {
  explicit PreconditionViolation(const std::string& msg) : Error(msg) {}
};

/// A point falls on (or outside) a singular boundary of the domain.
struct DomainViolation : Error {
  explicit DomainViolation(const std::string& msg) : Error(msg) {}
};

struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

/// Newton iteration failed to reach the requested residual.
struct NonConvergence : Error {
  NonConvergence(const std::string& msg, double residual)
      : Error(msg), last_residual(residual) {}
  double last_residual;
};

/// Continuation could not cross a parameter interval even at the minimum step.
struct StepFailure : Error {
  explicit StepFailure(const std::string& msg) : Error(msg) {}
};

/// A required linear map inversion hit a nontrivial nullspace.
struct NonGenericCone : Error {
  NonGenericCone(const std::string& msg, int order, int nullity)
      : Error(msg), order(order), nullity(nullity) {}
  int order;
  int nullity;
};

struct InterlacingViolation : Error {
  explicit InterlacingViolation(const std::string& msg) : Error(msg) {}
};

struct NegativeRadicand : Error {
  explicit NegativeRadicand(const std::string& msg) : Error(msg) {}
};

/// A derived candidate has no admissible parameter assignment.
struct Infeasible : Error {
  explicit Infeasible(const std::string& msg) : Error(msg) {}
};

/// The requested working precision cannot resolve the computed margin.
struct PrecisionInsufficient : Error {
  explicit PrecisionInsufficient(const std::string& msg) : Error(msg) {}
};

}  // namespace conical

#endif
