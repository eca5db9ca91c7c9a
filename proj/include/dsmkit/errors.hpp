#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dsmkit {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad argument, value out of
/// the admissible domain).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The shaping filter has G identically zero: every Markov parameter CA^iB
/// vanishes, so no delay extraction can produce CB != 0.
class DegenerateFilterError : public Error {
 public:
  using Error::Error;
};

/// A component broke an interface contract at runtime (an ADC emitted a
/// value outside its level set, an ensemble produced r outside [-1,1], an
/// internal invariant failed).
class ContractViolationError : public Error {
 public:
  using Error::Error;
};

/// The attacked ADC's outputs do not live on the delta grid the lower
/// bound argument requires.
class IncompatibleLevelSetError : public Error {
 public:
  using Error::Error;
};

/// Simulation produced a non-finite sample (filter blow-up or overflow).
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Malformed or incomplete experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// f_impulse hit max_len before the certified tail bound fell below tol.
/// Carries the partial l1 sum accumulated so far so callers can still
/// report a (non-certified) lower estimate.
class TruncationBudgetError : public Error {
 public:
  TruncationBudgetError(const std::string& msg, double partial_sum,
                        std::size_t coefficients_computed)
      : Error(msg),
        partial_sum_(partial_sum),
        coefficients_computed_(coefficients_computed) {}

  double partial_sum() const { return partial_sum_; }
  std::size_t coefficients_computed() const { return coefficients_computed_; }

 private:
  double partial_sum_;
  std::size_t coefficients_computed_;
};

}  // namespace dsmkit
