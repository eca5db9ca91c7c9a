#include "dsmkit/performance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "dsmkit/errors.hpp"

namespace dsmkit {

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void check_level(double u, const UniformQuantizer& quant, const std::string& who) {
  const double slack = 1e-9 * std::max(1.0, std::abs(u));
  if (!(std::abs(u) <= quant.max_level() + slack) ||
      std::abs(std::remainder(u, quant.delta())) > slack) {
    throw ContractViolationError(who + " emitted " + std::to_string(u) +
                                 ", which is not a level of U_M");
  }
}

}  // namespace

PhiFunction::PhiFunction(std::string name, std::function<double(double)> f)
    : name_(std::move(name)), f_(std::move(f)) {}

PhiFunction PhiFunction::abs() {
  return PhiFunction("abs", [](double a) { return a; });
}

PhiFunction PhiFunction::square() {
  return PhiFunction("square", [](double a) { return a * a; });
}

PhiFunction PhiFunction::custom(std::string name, std::function<double(double)> f) {
  if (!f) throw DomainError("PhiFunction: evaluator must be callable");
  return PhiFunction(std::move(name), std::move(f));
}

double PhiFunction::operator()(double q) const {
  if (!std::isfinite(q)) {
    throw NonFiniteError(
        "phi(" + name_ +
        ") evaluated on a non-finite sample; the filtered error blew up "
        "(unstable filter or broken ADC contract), refusing to average it");
  }
  return f_(std::abs(q));
}

AwaiEstimate awai(const std::vector<double>& q, const PhiFunction& phi,
                  std::size_t window) {
  if (q.empty()) throw DomainError("awai: empty sequence");
  const std::size_t n = q.size();
  if (window < 1 || window > n) {
    throw DomainError("awai: window must lie in [1, N]");
  }

  std::vector<double> cost(n);
  for (std::size_t i = 0; i < n; ++i) cost[i] = phi(q[i]);

  double total = 0.0;
  for (double v : cost) total += v;

  const std::size_t suffix_len = (n + 1) / 2;  // trailing ceil(N/2) samples
  double suffix = 0.0;
  for (std::size_t i = n - suffix_len; i < n; ++i) suffix += cost[i];

  double win_sum = 0.0;
  for (std::size_t i = 0; i < window; ++i) win_sum += cost[i];
  double win_max = win_sum;
  for (std::size_t i = window; i < n; ++i) {
    win_sum += cost[i] - cost[i - window];
    win_max = std::max(win_max, win_sum);
  }

  AwaiEstimate est;
  est.full_mean = total / static_cast<double>(n);
  est.suffix_mean = suffix / static_cast<double>(suffix_len);
  est.max_window_mean = win_max / static_cast<double>(window);
  est.horizon = n;
  est.window = window;
  return est;
}

IidUniformSource::IidUniformSource(std::uint64_t seed) : seed_(seed), rng_(seed) {}

double IidUniformSource::next() { return rng_.next_symmetric(); }

void IidUniformSource::reset() { rng_ = Xorshift64Star(seed_); }

std::string IidUniformSource::name() const {
  return "iid-uniform(seed=" + std::to_string(seed_) + ")";
}

ConstantSource::ConstantSource(double value) : value_(value) {
  if (!(std::abs(value) <= 1.0)) {
    throw DomainError("ConstantSource: value must lie in [-1,1]");
  }
}

std::string ConstantSource::name() const {
  return "constant(" + fmt_g(value_) + ")";
}

SinusoidSource::SinusoidSource(double amplitude, double frequency, double phase)
    : amplitude_(amplitude), frequency_(frequency), phase_(phase), n_(0) {
  if (!(std::abs(amplitude) <= 1.0)) {
    throw DomainError("SinusoidSource: amplitude must lie in [-1,1]");
  }
  if (!std::isfinite(frequency) || !std::isfinite(phase)) {
    throw DomainError("SinusoidSource: frequency and phase must be finite");
  }
}

double SinusoidSource::next() {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  const double r =
      amplitude_ * std::sin(kTwoPi * frequency_ * static_cast<double>(n_) + phase_);
  ++n_;
  return std::clamp(r, -1.0, 1.0);
}

std::string SinusoidSource::name() const {
  return "sinusoid(a=" + fmt_g(amplitude_) + ",f=" + fmt_g(frequency_) + ")";
}

AdversarialSource::AdversarialSource(StateSpace filter, double delta)
    : adv_(std::move(filter), delta) {}

PerformanceEstimate measure_performance(AdcModel& adc, const StateSpace& filter,
                                        const PhiFunction& phi,
                                        const std::vector<InputSource*>& ensemble,
                                        std::size_t n_steps, std::size_t window) {
  if (ensemble.empty()) throw DomainError("measure_performance: empty ensemble");
  if (n_steps == 0) throw DomainError("measure_performance: n_steps must be positive");
  if (window == 0) window = std::max<std::size_t>(1, n_steps / 10);
  if (window > n_steps) {
    throw DomainError("measure_performance: window exceeds the horizon");
  }

  PerformanceEstimate est;
  est.j_estimate = -1.0;  // any phi value is >= 0, first member overwrites
  for (InputSource* src : ensemble) {
    if (src == nullptr) throw DomainError("measure_performance: null ensemble member");
    adc.reset();
    src->reset();
    std::vector<double> w(n_steps);
    double max_u = 0.0;
    for (std::size_t n = 0; n < n_steps; ++n) {
      const double r = src->next();
      if (!(std::abs(r) <= 1.0)) {
        throw ContractViolationError("ensemble member " + src->name() +
                                     " produced an input outside [-1,1]");
      }
      const double u = adc.step(r);
      check_level(u, adc.quantizer(), "ADC " + std::string(adc.name()));
      src->observe(r, u);
      w[n] = r - u;
      max_u = std::max(max_u, std::abs(u));
    }
    const std::vector<double> q = simulate(filter, w);
    MemberPerformance member;
    member.source = src->name();
    member.stats = awai(q, phi, window);
    member.max_abs_q = 0.0;
    for (double v : q) member.max_abs_q = std::max(member.max_abs_q, std::abs(v));
    member.max_abs_u = max_u;
    if (member.stats.suffix_mean > est.j_estimate) {
      est.j_estimate = member.stats.suffix_mean;
      est.worst_source = member.source;
    }
    est.members.push_back(std::move(member));
  }
  return est;
}

PerformanceEstimate measure_performance(
    AdcModel& adc, const StateSpace& filter, const PhiFunction& phi,
    const std::vector<std::unique_ptr<InputSource>>& ensemble,
    std::size_t n_steps, std::size_t window) {
  std::vector<InputSource*> raw;
  raw.reserve(ensemble.size());
  for (const auto& src : ensemble) raw.push_back(src.get());
  return measure_performance(adc, filter, phi, raw, n_steps, window);
}

double optimal_performance(const StateSpace& filter,
                           const UniformQuantizer& quant,
                           const PhiFunction& phi) {
  const double cb = filter.cb();
  if (cb == 0.0) {
    throw DomainError("optimal_performance: CB = 0, run extract_delay first");
  }
  return phi(std::abs(cb) * quant.half_step());
}

}  // namespace dsmkit
