#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "dsmkit/adc.hpp"
#include "dsmkit/lti.hpp"

namespace dsmkit {

/// Closed-loop worst-case input generator. Keeps its own copy of the
/// shared filter state (the attacked ADC is a black box; only its outputs
/// are observed) and at each step emits the r that centers the next
/// filtered error sample exactly between two points of the delta grid:
///   r[n] = (2 rho(x[n]) + 1)/2 * delta - (CB)^{-1} C A x[n].
/// Whatever grid value u[n] the ADC picks, |q[n+1]| >= |CB| delta/2.
class WorstCaseAdversary {
 public:
  /// Requires filter.cb() != 0 and delta > 0. |r| <= delta/2 always; r is
  /// only guaranteed inside the admissible [-1,1] when delta <= 2.
  WorstCaseAdversary(StateSpace filter, double delta);

  /// The centering integer rho(x) for the current state: the k minimizing
  /// |(2k+1)/2 * delta - (CB)^{-1} C A x|, ties toward smaller k.
  long long centering_index() const;

  /// r[n] for the current state. Throws ContractViolationError if the
  /// emitted value escapes [-1,1] beyond rounding slack, which indicates
  /// a delta outside (0,2].
  double next_r() const;

  /// Advances the shared filter state with the ADC's actual output:
  /// x <- A x + B (r - u).
  void observe(double r, double u);

  void reset();

  const Eigen::VectorXd& state() const { return x_; }
  double delta() const { return delta_; }

 private:
  StateSpace filter_;
  double delta_;
  Eigen::RowVectorXd gain_row_;  // (CB)^{-1} C A
  Eigen::VectorXd x_;
};

/// Full closed-loop trace of an attack run.
struct AttackResult {
  std::vector<double> r;  // length n_steps
  std::vector<double> u;  // length n_steps
  std::vector<double> q;  // length n_steps + 1; q[n] = C x[n], q[0] = 0
  double min_abs_q;       // min over n >= 1
  double bound;           // |CB| delta / 2
  bool bound_satisfied;   // min_abs_q >= bound - 1e-12
};

/// Resets adc, runs the adversary against it for n_steps and checks the
/// universal lower bound min_{n>=1} |q[n]| >= |CB| delta/2 - 1e-12.
///
/// The argument requires the ADC's outputs to lie on the delta grid; any
/// output with a nonzero remainder against delta (beyond rounding slack)
/// raises IncompatibleLevelSetError.
AttackResult attack(AdcModel& adc, const StateSpace& filter, double delta,
                    std::size_t n_steps);

}  // namespace dsmkit
