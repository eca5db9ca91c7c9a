#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dsmkit/adc.hpp"
#include "dsmkit/adversary.hpp"
#include "dsmkit/lti.hpp"
#include "dsmkit/quantizer.hpp"
#include "dsmkit/rng.hpp"

namespace dsmkit {

/// Error weighting phi(q) = f(|q|): even, nonnegative, nondecreasing away
/// from zero. Evaluating on a non-finite sample throws NonFiniteError
/// (that means the filter blew up; it must never be averaged silently).
class PhiFunction {
 public:
  static PhiFunction abs();
  static PhiFunction square();

  /// f receives |q| and must be nonnegative and nondecreasing on [0,inf).
  static PhiFunction custom(std::string name, std::function<double(double)> f);

  double operator()(double q) const;
  const std::string& name() const { return name_; }

 private:
  PhiFunction(std::string name, std::function<double(double)> f);

  std::string name_;
  std::function<double(double)> f_;
};

/// Time-average statistics of phi over an error sequence. suffix_mean
/// (the trailing ceil(N/2) samples) is the limsup proxy used for
/// performance numbers; full_mean and max_window_mean are diagnostics.
struct AwaiEstimate {
  double full_mean;
  double suffix_mean;
  double max_window_mean;
  std::size_t horizon;
  std::size_t window;
};

/// Computes the three statistics. Requires q nonempty and
/// 1 <= window <= q.size().
AwaiEstimate awai(const std::vector<double>& q, const PhiFunction& phi,
                  std::size_t window);

/// Input sequence generator for the ensemble driving a measurement run.
/// Closed-loop sources (the adversary) get the ADC's outputs via observe.
class InputSource {
 public:
  virtual ~InputSource() = default;

  /// Next input sample, in [-1,1].
  virtual double next() = 0;

  /// Called after the ADC consumed r and emitted u. Open-loop sources
  /// ignore it.
  virtual void observe(double /*r*/, double /*u*/) {}

  virtual void reset() = 0;
  virtual std::string name() const = 0;
};

/// iid uniform on [-1,1) from the seeded xorshift64* generator.
class IidUniformSource final : public InputSource {
 public:
  explicit IidUniformSource(std::uint64_t seed);

  double next() override;
  void reset() override;
  std::string name() const override;

 private:
  std::uint64_t seed_;
  Xorshift64Star rng_;
};

/// Constant input r[n] = value, |value| <= 1.
class ConstantSource final : public InputSource {
 public:
  explicit ConstantSource(double value);

  double next() override { return value_; }
  void reset() override {}
  std::string name() const override;

 private:
  double value_;
};

/// r[n] = amplitude * sin(2 pi frequency n + phase), frequency in cycles
/// per sample, |amplitude| <= 1.
class SinusoidSource final : public InputSource {
 public:
  SinusoidSource(double amplitude, double frequency, double phase = 0.0);

  double next() override;
  void reset() override { n_ = 0; }
  std::string name() const override;

 private:
  double amplitude_;
  double frequency_;
  double phase_;
  std::size_t n_;
};

/// The worst-case closed-loop construction from the adversary module.
class AdversarialSource final : public InputSource {
 public:
  AdversarialSource(StateSpace filter, double delta);

  double next() override { return adv_.next_r(); }
  void observe(double r, double u) override { adv_.observe(r, u); }
  void reset() override { adv_.reset(); }
  std::string name() const override { return "adversarial"; }

 private:
  WorstCaseAdversary adv_;
};

/// Per-ensemble-member outcome of a measurement run.
struct MemberPerformance {
  std::string source;
  AwaiEstimate stats;
  double max_abs_q;
  double max_abs_u;
};

/// Empirical worst-case intensity: the maximum suffix-mean AWAI over the
/// ensemble. A lower estimate of the true sup over all inputs; the sup
/// itself is certified analytically by certify(), not by search.
struct PerformanceEstimate {
  double j_estimate;
  std::string worst_source;
  std::vector<MemberPerformance> members;
};

/// Runs the ADC over every ensemble member for n_steps, filters the error
/// w = r - u through the shaping filter, and reduces the AWAI statistics.
/// The ADC and each source are reset per member. Every emitted u is
/// revalidated against the ADC's level set (ContractViolationError).
/// window = 0 picks max(1, n_steps/10).
PerformanceEstimate measure_performance(AdcModel& adc, const StateSpace& filter,
                                        const PhiFunction& phi,
                                        const std::vector<InputSource*>& ensemble,
                                        std::size_t n_steps,
                                        std::size_t window = 0);

/// Owning-ensemble convenience overload.
PerformanceEstimate measure_performance(
    AdcModel& adc, const StateSpace& filter, const PhiFunction& phi,
    const std::vector<std::unique_ptr<InputSource>>& ensemble,
    std::size_t n_steps, std::size_t window = 0);

/// The certified optimal value phi(|CB| delta/2). Throws DomainError when
/// CB = 0.
double optimal_performance(const StateSpace& filter,
                           const UniformQuantizer& quant,
                           const PhiFunction& phi);

}  // namespace dsmkit
