#include "dsmkit/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "dsmkit/errors.hpp"
#include "dsmkit/quantizer.hpp"

namespace dsmkit {

WorstCaseAdversary::WorstCaseAdversary(StateSpace filter, double delta)
    : filter_(std::move(filter)), delta_(delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw DomainError("WorstCaseAdversary: delta must be positive and finite");
  }
  const double cb = filter_.cb();
  if (cb == 0.0) {
    throw DomainError("WorstCaseAdversary: filter has CB = 0, run extract_delay first");
  }
  gain_row_ = (filter_.c * filter_.a) / cb;
  x_ = Eigen::VectorXd::Zero(filter_.dimension());
}

long long WorstCaseAdversary::centering_index() const {
  // k minimizing |(k + 1/2) delta - g|: the nearest integer to
  // g/delta - 1/2, with exact ties going to the smaller k.
  const double g = gain_row_.dot(x_);
  return static_cast<long long>(round_half_down(g / delta_ - 0.5));
}

double WorstCaseAdversary::next_r() const {
  const double g = gain_row_.dot(x_);
  const double k = round_half_down(g / delta_ - 0.5);
  const double r = (k + 0.5) * delta_ - g;
  // By construction |r| <= delta/2, so delta <= 2 keeps r admissible.
  if (!(std::abs(r) <= 1.0 + 1e-9)) {
    throw ContractViolationError("adversarial input " + std::to_string(r) +
                                 " escaped [-1,1]; delta must lie in (0,2]");
  }
  return std::clamp(r, -1.0, 1.0);
}

void WorstCaseAdversary::observe(double r, double u) {
  x_ = filter_.a * x_ + filter_.b * (r - u);
}

void WorstCaseAdversary::reset() { x_.setZero(); }

AttackResult attack(AdcModel& adc, const StateSpace& filter, double delta,
                    std::size_t n_steps) {
  WorstCaseAdversary adv(filter, delta);
  adc.reset();
  AttackResult res;
  res.r.resize(n_steps);
  res.u.resize(n_steps);
  res.q.resize(n_steps + 1);
  res.q[0] = 0.0;
  res.bound = std::abs(filter.cb()) * delta / 2.0;
  double min_q = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < n_steps; ++n) {
    const double r = adv.next_r();
    const double u = adc.step(r);
    if (std::abs(std::remainder(u, delta)) > 1e-9 * std::max(1.0, std::abs(u))) {
      throw IncompatibleLevelSetError(
          "attack: ADC output " + std::to_string(u) +
          " is not a multiple of delta = " + std::to_string(delta) +
          "; the lower bound argument needs u on the delta grid");
    }
    adv.observe(r, u);
    res.r[n] = r;
    res.u[n] = u;
    const double q_next = filter.c.dot(adv.state());
    res.q[n + 1] = q_next;
    min_q = std::min(min_q, std::abs(q_next));
  }
  res.min_abs_q = min_q;
  res.bound_satisfied = min_q >= res.bound - 1e-12;
  return res;
}

}  // namespace dsmkit
