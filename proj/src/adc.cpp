#include "dsmkit/adc.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "dsmkit/errors.hpp"

namespace dsmkit {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void check_input(double r) {
  if (!(std::abs(r) <= 1.0)) {
    throw DomainError("ADC input must lie in [-1,1], got " + std::to_string(r));
  }
}

}  // namespace

GreedyAdc::GreedyAdc(StateSpace filter, UniformQuantizer quant)
    : filter_(std::move(filter)), quant_(std::move(quant)), last_theta_(kNan) {
  const double cb = filter_.cb();
  if (cb == 0.0) {
    throw DomainError("GreedyAdc: filter has CB = 0, run extract_delay first");
  }
  gain_row_ = (filter_.c * filter_.a) / cb;
  x_ = Eigen::VectorXd::Zero(filter_.dimension());
}

double GreedyAdc::step(double r) {
  check_input(r);
  const double theta = gain_row_.dot(x_) + r;
  last_theta_ = theta;
  const double u = quant_.quantize(theta);
  x_ = filter_.a * x_ + filter_.b * (r - u);
  return u;
}

void GreedyAdc::reset() {
  x_.setZero();
  last_theta_ = kNan;
}

DsmLoopAdc::DsmLoopAdc(StateSpace filter, UniformQuantizer quant)
    : filter_(std::move(filter)), quant_(std::move(quant)), last_y_(kNan) {
  const double cb = filter_.cb();
  if (cb == 0.0) {
    throw DomainError("DsmLoopAdc: filter has CB = 0, run extract_delay first");
  }
  cb_inv_ = 1.0 / cb;
  ab_ = filter_.a * filter_.b;
  xh_ = Eigen::VectorXd::Zero(filter_.dimension());
}

double DsmLoopAdc::step(double r) {
  check_input(r);
  const double y = r + cb_inv_ * filter_.c.dot(xh_);
  last_y_ = y;
  const double u = quant_.quantize(y);
  xh_ = filter_.a * xh_ + ab_ * (r - u);
  return u;
}

void DsmLoopAdc::reset() {
  xh_.setZero();
  last_y_ = kNan;
}

ClassicalDsm1Adc::ClassicalDsm1Adc(UniformQuantizer quant)
    : quant_(std::move(quant)), s_(0.0), u_prev_(0.0), stepped_(false) {}

double ClassicalDsm1Adc::step(double r) {
  check_input(r);
  s_ += r - u_prev_;
  const double u = quant_.quantize(s_);
  u_prev_ = u;
  stepped_ = true;
  return u;
}

void ClassicalDsm1Adc::reset() {
  s_ = 0.0;
  u_prev_ = 0.0;
  stepped_ = false;
}

double ClassicalDsm1Adc::last_pre_quantizer() const {
  return stepped_ ? s_ : kNan;
}

MemorylessAdc::MemorylessAdc(UniformQuantizer quant)
    : quant_(std::move(quant)), last_r_(kNan) {}

double MemorylessAdc::step(double r) {
  check_input(r);
  last_r_ = r;
  return quant_.quantize(r);
}

void MemorylessAdc::reset() { last_r_ = kNan; }

std::unique_ptr<AdcModel> make_adc(std::string_view name,
                                   const StateSpace& filter,
                                   const UniformQuantizer& quant) {
  if (name == "greedy") return std::make_unique<GreedyAdc>(filter, quant);
  if (name == "dsm-loop") return std::make_unique<DsmLoopAdc>(filter, quant);
  if (name == "classical-dsm1") return std::make_unique<ClassicalDsm1Adc>(quant);
  if (name == "memoryless") return std::make_unique<MemorylessAdc>(quant);
  throw DomainError("unknown ADC model: " + std::string(name));
}

}  // namespace dsmkit
