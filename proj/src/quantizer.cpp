#include "dsmkit/quantizer.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "dsmkit/errors.hpp"

namespace dsmkit {

double round_half_down(double v) {
  // remainder(v, 1) = v - rint(v) computed exactly, so n = v - r is the
  // round-half-even nearest integer with no rounding error anywhere.
  const double r = std::remainder(v, 1.0);
  const double n = v - r;
  // r == +0.5: v sits exactly between n and n+1, keep the lower one, n.
  // r == -0.5: v sits exactly between n-1 and n, take n-1.
  if (r == -0.5) return n - 1.0;
  return n;
}

UniformQuantizer::UniformQuantizer(double delta, long long m, bool bounded)
    : delta_(delta), m_(m), bounded_(bounded) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw DomainError("UniformQuantizer: delta must be positive and finite");
  }
  if (bounded_ && m_ < 1) {
    throw DomainError("UniformQuantizer: saturation index M must be >= 1");
  }
}

UniformQuantizer::UniformQuantizer(double delta, long long m)
    : UniformQuantizer(delta, m, true) {}

UniformQuantizer UniformQuantizer::unbounded(double delta) {
  return UniformQuantizer(delta, 0, false);
}

long long UniformQuantizer::m() const {
  if (!bounded_) {
    throw DomainError("UniformQuantizer: unbounded level set has no M");
  }
  return m_;
}

double UniformQuantizer::max_level() const {
  if (!bounded_) return std::numeric_limits<double>::infinity();
  return static_cast<double>(m_) * delta_;
}

long long UniformQuantizer::level_index(double theta) const {
  if (!std::isfinite(theta)) {
    throw DomainError("quantize: theta must be finite");
  }
  double idx = round_half_down(theta / delta_);
  if (bounded_) {
    const double mm = static_cast<double>(m_);
    if (idx > mm) idx = mm;
    if (idx < -mm) idx = -mm;
  } else if (std::abs(idx) > 9.0e18) {
    throw DomainError("quantize: level index exceeds integer range");
  }
  return static_cast<long long>(idx);
}

std::vector<double> UniformQuantizer::levels() const {
  if (!bounded_) throw DomainError("levels: unbounded level set");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * m_ + 1));
  for (long long i = -m_; i <= m_; ++i) {
    out.push_back(static_cast<double>(i) * delta_);
  }
  return out;
}

}  // namespace dsmkit
