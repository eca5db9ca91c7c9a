#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace dsmkit {

/// Strictly causal SISO filter
///   x[n+1] = A x[n] + B w[n],   x[0] = 0,
///   q[n]   = C x[n],
/// with transfer function G(z) = C (zI - A)^{-1} B.
struct StateSpace {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::RowVectorXd c;

  /// Validates shapes (A square, B and C conformable, dimension >= 1) and
  /// that every entry is finite.
  StateSpace(Eigen::MatrixXd a_matrix, Eigen::VectorXd b_vector,
             Eigen::RowVectorXd c_vector);

  int dimension() const { return static_cast<int>(a.rows()); }

  /// Leading Markov parameter CB, the one-step input-to-output gain.
  double cb() const { return c.dot(b); }
};

/// Coefficients of the recursion equivalent to a StateSpace with CB != 0:
///   q[n+1] = sum_{i=0}^{k} a_i q[n-i] + sum_{j=0}^{k} b_j w[n-j],
/// where k = m - 1 and samples at negative indices are zero. b_coeffs[0]
/// is the CB of the originating filter. Trailing zero b-coefficients are
/// kept so that the lengths stay k+1.
struct DifferenceEq {
  std::vector<double> a_coeffs;
  std::vector<double> b_coeffs;

  int order() const { return static_cast<int>(a_coeffs.size()) - 1; }
};

/// Truncated unit sample response c_0, c_1, ... of
///   F(z) = 1 / sum_j b_j z^{-j},
/// together with a certified upper bound on the discarded tail. When some
/// root of the b-polynomial has modulus >= 1 the series does not converge
/// absolutely; divergent is set, l1_norm and tail_bound are +inf, and only
/// c_0 = 1/b_0 is reported.
struct ImpulseSeries {
  std::vector<double> coeffs;
  double l1_norm;
  double tail_bound;
  bool divergent;
  /// Largest modulus among the roots of the b-polynomial (trailing zero
  /// coefficients stripped); 0 when the polynomial is constant.
  double max_root_modulus;
};

/// First `count` Markov parameters CB, CAB, CA^2B, ...
std::vector<double> markov_parameters(const StateSpace& ss, int count);

/// Replaces C by CA until CB != 0, realizing q[n] -> q[n+1] per shift; the
/// worst-case intensity is unchanged by this. Returns the input unchanged
/// when CB != 0 already. Throws DegenerateFilterError when all m Markov
/// parameters vanish (G identically zero). Zero tests are exact; structural
/// zeros survive the products unchanged in IEEE arithmetic.
StateSpace extract_delay(const StateSpace& ss);

/// Same, also reporting how many shifts were applied.
StateSpace extract_delay(const StateSpace& ss, int& shift_count);

/// Runs the filter from zero state over w, returning q of equal length.
/// q[0] is always 0. Throws DomainError on non-finite input and
/// NonFiniteError if the state blows up past double range.
std::vector<double> simulate(const StateSpace& ss, const std::vector<double>& w);

/// Runs the difference-equation recursion over w with zero prehistory.
/// Matches simulate(ss, w) exactly in exact arithmetic when de came from
/// to_difference_eq(ss).
std::vector<double> simulate(const DifferenceEq& de, const std::vector<double>& w);

/// Converts a filter with CB != 0 to the recursion above. a-coefficients
/// come from det(zI - A) = z^m - sum_i a_i z^{m-1-i} and b-coefficients
/// from the numerator C adj(zI - A) B, both computed with the
/// Faddeev-LeVerrier recursion (no eigendecomposition, exact up to
/// floating point for the small m used here). Throws DomainError when
/// CB = 0; run extract_delay first.
DifferenceEq to_difference_eq(const StateSpace& ss);

/// Expands F(z) = 1 / sum_j b_j z^{-j} by the recursion
///   b_0 c_l = [l = 0] - sum_{j=1}^{min(l,k)} b_j c_{l-j},
/// stopping once the certified geometric tail bound drops below tol.
///
/// The tail certificate: with R_0 the maximal root modulus of the
/// b-polynomial (trailing zeros stripped, roots from the companion matrix)
/// and rho = (1 + R_0)/2 < 1, each |c_l| is at most
/// C(l) = binom(l+k'-1, k'-1) R_0^l / |b_0| (a convolution of k' geometric
/// factors), so sum_{l>L} |c_l| <= C rho^{L+1} / (1 - rho) with
/// C = max_l C(l) (R_0/rho)^{... } folded in. Roots with modulus within
/// 1e-9 of the unit circle are treated as on it (divergent) to keep the
/// certificate conservative.
///
/// Throws DomainError when b_0 = 0 and TruncationBudgetError when more
/// than max_len coefficients would be needed.
ImpulseSeries f_impulse(const DifferenceEq& de, double tol = 1e-12,
                        std::size_t max_len = 1u << 20);

}  // namespace dsmkit
