#pragma once

#include <vector>

namespace dsmkit {

/// Nearest integer to v; exact half-integers round toward -inf
/// (0.5 -> 0, -0.5 -> -1, 1.5 -> 1). Built on std::remainder, which is
/// exact in IEEE arithmetic, so ties are detected without rounding error.
double round_half_down(double v);

/// Saturating uniform quantizer over the level set
/// U_M = { i*delta : i integer, |i| <= M }, with ties between adjacent
/// levels resolved to the smaller level and inputs beyond the last level
/// clamped to +-M*delta. M may be marked infinite, in which case the grid
/// is all of delta*Z and nothing saturates.
class UniformQuantizer {
 public:
  /// Finite level set. Requires delta > 0 and m >= 1. The certificate's
  /// side conditions (delta <= 2, M*delta > 1) are deliberately not
  /// enforced here; certify() reports them as flags, so degenerate
  /// quantizers can still be constructed and inspected.
  UniformQuantizer(double delta, long long m);

  /// Unbounded level set, M = infinity.
  static UniformQuantizer unbounded(double delta);

  double delta() const { return delta_; }
  bool bounded() const { return bounded_; }

  /// Saturation index M. Only meaningful for bounded quantizers.
  long long m() const;

  /// Half step, delta/2. Worst-case distance from an in-range input to the
  /// chosen level.
  double half_step() const { return 0.5 * delta_; }

  /// Largest representable magnitude M*delta; +inf when unbounded.
  double max_level() const;

  /// Level index selected for theta, clamped to [-M, M] when bounded.
  long long level_index(double theta) const;

  /// Quantized value, always an exact integer multiple of delta.
  double quantize(double theta) const {
    return static_cast<double>(level_index(theta)) * delta_;
  }

  /// All 2M+1 levels in increasing order. Throws DomainError when the
  /// level set is unbounded.
  std::vector<double> levels() const;

 private:
  UniformQuantizer(double delta, long long m, bool bounded);

  double delta_;
  long long m_;
  bool bounded_;
};

}  // namespace dsmkit
