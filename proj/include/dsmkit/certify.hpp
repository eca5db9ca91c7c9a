#pragma once

#include <string>

#include "dsmkit/lti.hpp"
#include "dsmkit/performance.hpp"
#include "dsmkit/quantizer.hpp"

namespace dsmkit {

/// Evaluated optimality conditions for a (filter, quantizer) pair:
///   CB != 0,  delta in (0,2],  M delta > 1,  M delta > beta - delta,
/// with beta = [|CB| delta/2 (sum|a_i| + 1) + sum|b_j|] sum|c_l|.
/// When all four hold the greedy ADC is optimal and the worst-case
/// intensity equals phi(|CB| delta/2).
struct Certificate {
  double cb;         // after delay extraction
  int delay_shifts;  // how many times C was replaced by CA
  double delta;
  double m_delta;  // M*delta, +inf for an unbounded quantizer
  double beta;     // +inf when the impulse series of F(z) diverges

  bool condition_cb_nonzero;
  bool condition_delta_range;
  bool condition_mdelta_gt_1;
  bool condition_umax;  // M delta > beta - delta, strict
  bool applicable;      // conjunction of the four

  /// phi(|CB| delta/2) when applicable, NaN otherwise.
  double optimal_value;

  /// Smallest M >= 1 that would make this filter/delta applicable, or 0
  /// when none exists (beta infinite or delta outside (0,2]).
  long long min_applicable_m;

  std::string phi_name;

  // Ingredients, kept for diagnostics and reports.
  DifferenceEq difference_eq;
  double impulse_l1;         // certified upper bound on sum |c_l|
  double impulse_tail;      // tail part of that bound
  double max_root_modulus;  // R_0 of the b-polynomial

  /// Flat key = value document; diagnostics lines carry a "diagnostics."
  /// prefix. Numbers are printed with 17 significant digits.
  std::string to_text() const;
};

/// beta for a given step size. Uses fs.l1_norm, i.e. the truncated sum
/// plus the certified tail, so the result errs on the conservative side.
/// Returns +inf when fs.divergent. fs must come from de.b_coeffs and cb
/// must equal de.b_coeffs[0].
double compute_beta(const DifferenceEq& de, double delta, double cb,
                    const ImpulseSeries& fs);

/// Evaluates every condition for the pair, extracting a delay first when
/// CB = 0 (this changes nothing about the attainable intensity). All
/// failure modes become certificate flags; the only error is a degenerate
/// filter with G identically zero (DegenerateFilterError).
Certificate certify(const StateSpace& filter, const UniformQuantizer& quant,
                    const PhiFunction& phi);

}  // namespace dsmkit
