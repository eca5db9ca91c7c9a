#pragma once

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <string_view>

#include "dsmkit/lti.hpp"
#include "dsmkit/quantizer.hpp"

namespace dsmkit {

/// Causal map from input samples r[n] in [-1,1] to levels u[n] in U_M.
/// Each instance owns mutable state; instances are independent.
class AdcModel {
 public:
  virtual ~AdcModel() = default;

  /// Consumes r[n], emits u[n]. u depends only on r[0..n]. Throws
  /// DomainError when |r| > 1.
  virtual double step(double r) = 0;

  /// Back to the zero initial state.
  virtual void reset() = 0;

  virtual const UniformQuantizer& quantizer() const = 0;
  virtual std::string_view name() const = 0;

  /// Quantizer input computed during the most recent step. NaN before the
  /// first step. Used to compare internal signals across realizations.
  virtual double last_pre_quantizer() const = 0;
};

/// The greedy ADC: u[n] = K_M((CB)^{-1} C A x[n] + r[n]) with
/// x[n+1] = A x[n] + B (r[n] - u[n]). The choice minimizes |q[n+1]| over
/// the level set.
class GreedyAdc final : public AdcModel {
 public:
  /// Requires filter.cb() != 0 (run extract_delay first).
  GreedyAdc(StateSpace filter, UniformQuantizer quant);

  double step(double r) override;
  void reset() override;
  const UniformQuantizer& quantizer() const override { return quant_; }
  std::string_view name() const override { return "greedy"; }
  double last_pre_quantizer() const override { return last_theta_; }

  const StateSpace& filter() const { return filter_; }
  const Eigen::VectorXd& state() const { return x_; }

  /// Current filtered error C x[n]. Under the certificate conditions this
  /// stays within |CB| delta/2 for every input sequence.
  double q_psi() const { return filter_.c.dot(x_); }

 private:
  StateSpace filter_;
  UniformQuantizer quant_;
  Eigen::RowVectorXd gain_row_;  // (CB)^{-1} C A
  Eigen::VectorXd x_;
  double last_theta_;
};

/// The same control law realized as the DSM feedback loop: the quantizer
/// input is y[n] = r[n] + H-output, where H(z) = (CB)^{-1} z G(z) - 1 has
/// realization (A, AB, (CB)^{-1}C, 0) and is driven by r - u. Emits the
/// same output sequence as GreedyAdc on every input.
class DsmLoopAdc final : public AdcModel {
 public:
  DsmLoopAdc(StateSpace filter, UniformQuantizer quant);

  double step(double r) override;
  void reset() override;
  const UniformQuantizer& quantizer() const override { return quant_; }
  std::string_view name() const override { return "dsm-loop"; }
  double last_pre_quantizer() const override { return last_y_; }

  const Eigen::VectorXd& state() const { return xh_; }

 private:
  StateSpace filter_;
  UniformQuantizer quant_;
  double cb_inv_;
  Eigen::VectorXd ab_;  // A B, the loop block's input vector
  Eigen::VectorXd xh_;
  double last_y_;
};

/// Textbook first-order DSM: one integrator, quantizer, unit feedback
/// delay. The integrator at step n consumes u[n-1], so
///   s[n] = s[n-1] + r[n] - u[n-1],   u[n] = K_M(s[n]).
/// With this timing the loop equals GreedyAdc for the filter 1/(z-1) on
/// every input sequence.
class ClassicalDsm1Adc final : public AdcModel {
 public:
  explicit ClassicalDsm1Adc(UniformQuantizer quant);

  double step(double r) override;
  void reset() override;
  const UniformQuantizer& quantizer() const override { return quant_; }
  std::string_view name() const override { return "classical-dsm1"; }
  double last_pre_quantizer() const override;

  double integrator() const { return s_; }

 private:
  UniformQuantizer quant_;
  double s_;
  double u_prev_;
  bool stepped_;
};

/// Stateless baseline, u[n] = K_M(r[n]).
class MemorylessAdc final : public AdcModel {
 public:
  explicit MemorylessAdc(UniformQuantizer quant);

  double step(double r) override;
  void reset() override;
  const UniformQuantizer& quantizer() const override { return quant_; }
  std::string_view name() const override { return "memoryless"; }
  double last_pre_quantizer() const override { return last_r_; }

 private:
  UniformQuantizer quant_;
  double last_r_;
};

/// Builds an ADC by name: "greedy", "dsm-loop", "classical-dsm1",
/// "memoryless". The filter argument is ignored by the last two. Throws
/// DomainError on an unknown name.
std::unique_ptr<AdcModel> make_adc(std::string_view name,
                                   const StateSpace& filter,
                                   const UniformQuantizer& quant);

}  // namespace dsmkit
