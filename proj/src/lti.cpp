#include "dsmkit/lti.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "dsmkit/errors.hpp"

namespace dsmkit {

namespace {

// Roots this close to the unit circle count as on it; the same margin is
// added to the computed spectral radius to absorb eigensolver error.
constexpr double kUnitCircleTol = 1e-9;

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

StateSpace::StateSpace(Eigen::MatrixXd a_matrix, Eigen::VectorXd b_vector,
                       Eigen::RowVectorXd c_vector)
    : a(std::move(a_matrix)), b(std::move(b_vector)), c(std::move(c_vector)) {
  const Eigen::Index m = a.rows();
  if (m < 1 || a.cols() != m) {
    throw DomainError("StateSpace: A must be square and nonempty");
  }
  if (b.rows() != m) throw DomainError("StateSpace: B must be m x 1");
  if (c.cols() != m) throw DomainError("StateSpace: C must be 1 x m");
  if (!a.allFinite() || !b.allFinite() || !c.allFinite()) {
    throw DomainError("StateSpace: entries must be finite");
  }
}

std::vector<double> markov_parameters(const StateSpace& ss, int count) {
  std::vector<double> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));
  Eigen::RowVectorXd row = ss.c;
  for (int i = 0; i < count; ++i) {
    out.push_back(row.dot(ss.b));
    row = row * ss.a;
  }
  return out;
}

StateSpace extract_delay(const StateSpace& ss, int& shift_count) {
  Eigen::RowVectorXd row = ss.c;
  const int m = ss.dimension();
  for (int i = 0; i < m; ++i) {
    if (row.dot(ss.b) != 0.0) {
      shift_count = i;
      return i == 0 ? ss : StateSpace(ss.a, ss.b, row);
    }
    row = row * ss.a;
  }
  // The first m Markov parameters vanish, so by Cayley-Hamilton all of
  // them do: G is identically zero and no shift can fix it.
  throw DegenerateFilterError("degenerate filter: G(z) is identically zero");
}

StateSpace extract_delay(const StateSpace& ss) {
  int shifts = 0;
  return extract_delay(ss, shifts);
}

std::vector<double> simulate(const StateSpace& ss, const std::vector<double>& w) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ss.dimension());
  std::vector<double> q(w.size());
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (!std::isfinite(w[n])) {
      throw DomainError("simulate: non-finite input at sample " + std::to_string(n));
    }
    const double qn = ss.c.dot(x);
    if (!std::isfinite(qn)) {
      throw NonFiniteError("simulate: output blew up at sample " + std::to_string(n));
    }
    q[n] = qn;
    x = ss.a * x + ss.b * w[n];
  }
  return q;
}

std::vector<double> simulate(const DifferenceEq& de, const std::vector<double>& w) {
  const int k = de.order();
  if (k < 0 || de.b_coeffs.size() != de.a_coeffs.size()) {
    throw DomainError("simulate: difference equation needs k+1 a- and b-coefficients");
  }
  std::vector<double> q(w.size(), 0.0);
  for (std::size_t n = 0; n + 1 < w.size(); ++n) {
    double acc = 0.0;
    for (int i = 0; i <= k && static_cast<std::size_t>(i) <= n; ++i) {
      acc += de.a_coeffs[static_cast<std::size_t>(i)] * q[n - static_cast<std::size_t>(i)];
      acc += de.b_coeffs[static_cast<std::size_t>(i)] * w[n - static_cast<std::size_t>(i)];
    }
    if (!std::isfinite(acc)) {
      throw NonFiniteError("simulate: recursion blew up at sample " + std::to_string(n + 1));
    }
    q[n + 1] = acc;
  }
  return q;
}

DifferenceEq to_difference_eq(const StateSpace& ss) {
  const double cb = ss.cb();
  if (cb == 0.0) {
    throw DomainError("to_difference_eq: CB = 0, run extract_delay first");
  }
  // Faddeev-LeVerrier: N_0 = I, p_i = -tr(A N_{i-1})/i, N_i = A N_{i-1} + p_i I
  // gives det(zI - A) = z^m + p_1 z^{m-1} + ... + p_m and
  // adj(zI - A) = sum_j N_j z^{m-1-j}, so a_i = -p_{i+1} and b_j = C N_j B.
  const int m = ss.dimension();
  DifferenceEq de;
  de.a_coeffs.resize(static_cast<std::size_t>(m));
  de.b_coeffs.resize(static_cast<std::size_t>(m));
  de.b_coeffs[0] = cb;
  Eigen::MatrixXd n = Eigen::MatrixXd::Identity(m, m);
  for (int i = 1; i <= m; ++i) {
    const Eigen::MatrixXd an = ss.a * n;
    const double p = -an.trace() / i;
    de.a_coeffs[static_cast<std::size_t>(i - 1)] = -p;
    if (i < m) {
      n = an + p * Eigen::MatrixXd::Identity(m, m);
      de.b_coeffs[static_cast<std::size_t>(i)] = ss.c.dot(n * ss.b);
    }
  }
  return de;
}

namespace {

// Largest root modulus of b_0 z^deg + b_1 z^{deg-1} + ... + b_deg, via the
// eigenvalues of the companion matrix of the monic polynomial. deg >= 1.
double max_root_modulus_of(const std::vector<double>& b, int deg) {
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int j = 1; j <= deg; ++j) {
    comp(0, j - 1) = -b[static_cast<std::size_t>(j)] / b[0];
  }
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  return comp.eigenvalues().cwiseAbs().maxCoeff();
}

// max over l of binom(l+deg-1, deg-1) x^l for 0 < x < 1. The term ratio
// x (l+deg)/(l+1) decreases in l, so the sequence is unimodal; walk the
// ratios while they exceed 1, or evaluate at the stationary point through
// lgamma when that walk would be too long.
double peak_composition_term(double x, int deg) {
  const double l_star = (x * deg - 1.0) / (1.0 - x);
  if (l_star < 1.0e6) {
    double term = 1.0;
    double peak = 1.0;
    for (std::size_t l = 0;; ++l) {
      const double ratio =
          x * (static_cast<double>(l) + deg) / (static_cast<double>(l) + 1.0);
      if (ratio < 1.0) break;
      term *= ratio;
      peak = std::max(peak, term);
    }
    return peak;
  }
  double peak = 1.0;
  for (const double l : {std::floor(l_star), std::ceil(l_star)}) {
    const double lt = std::lgamma(l + deg) - std::lgamma(l + 1.0) -
                      std::lgamma(static_cast<double>(deg)) + l * std::log(x);
    peak = std::max(peak, std::exp(lt));
  }
  return peak * (1.0 + 1e-6);  // slack for the lgamma/exp round-off
}

}  // namespace

ImpulseSeries f_impulse(const DifferenceEq& de, double tol, std::size_t max_len) {
  if (de.b_coeffs.empty() || de.b_coeffs[0] == 0.0) {
    throw DomainError("f_impulse: b_0 must be nonzero");
  }
  if (!(tol > 0.0)) throw DomainError("f_impulse: tol must be positive");
  if (max_len == 0) throw DomainError("f_impulse: max_len must be positive");
  const double b0 = de.b_coeffs[0];

  // Trailing zero coefficients only add roots at z = 0; drop them before
  // the root analysis.
  std::size_t nb = de.b_coeffs.size();
  while (nb > 1 && de.b_coeffs[nb - 1] == 0.0) --nb;
  const int deg = static_cast<int>(nb) - 1;

  if (deg == 0) {
    return ImpulseSeries{{1.0 / b0}, std::abs(1.0 / b0), 0.0, false, 0.0};
  }

  const double r0 = max_root_modulus_of(de.b_coeffs, deg);
  if (r0 >= 1.0 - kUnitCircleTol) {
    return ImpulseSeries{{1.0 / b0}, kInf, kInf, true, r0};
  }

  // F(z) is a product of deg geometric factors with ratios of modulus at
  // most r0, so |c_l| <= binom(l+deg-1, deg-1) r0^l / |b0|. Splitting off
  // rho^l with rho = (1+r0)/2 < 1 turns that into |c_l| <= cmax rho^l and
  // the tail after keeping c_0..c_{L} is at most cmax rho^{L+1}/(1-rho).
  const double r_safe = r0 + kUnitCircleTol;
  const double rho = 0.5 * (1.0 + r_safe);
  const double cmax = peak_composition_term(r_safe / rho, deg) / std::abs(b0);

  // Smallest n = L+1 >= 1 with cmax rho^n / (1-rho) <= tol.
  std::size_t n_keep = 1;
  const double log_goal =
      std::log(tol) + std::log1p(-rho) - std::log(cmax);  // n log rho <= this
  const double n_real = log_goal / std::log(rho);
  if (std::isnan(n_real)) {
    throw TruncationBudgetError("f_impulse: tail bound not representable", 0.0, 0);
  }
  if (n_real > 1.0) {
    if (n_real >= static_cast<double>(max_len) + 1.0) {
      n_keep = max_len + 1;  // trips the budget check below
    } else {
      n_keep = static_cast<std::size_t>(std::ceil(n_real));
    }
  }

  const std::size_t n_compute = std::min(n_keep, max_len);
  std::vector<double> c(n_compute);
  double partial = 0.0;
  for (std::size_t l = 0; l < n_compute; ++l) {
    double acc = (l == 0) ? 1.0 : 0.0;
    for (std::size_t j = 1; j < nb && j <= l; ++j) {
      acc -= de.b_coeffs[j] * c[l - j];
    }
    c[l] = acc / b0;
    partial += std::abs(c[l]);
  }
  if (n_keep > max_len) {
    throw TruncationBudgetError(
        "f_impulse: " + std::to_string(n_keep) +
            " coefficients needed to certify tol, budget is " +
            std::to_string(max_len),
        partial, n_compute);
  }

  const double tail =
      cmax * std::exp(static_cast<double>(n_keep) * std::log(rho)) / (1.0 - rho);
  return ImpulseSeries{std::move(c), partial + tail, tail, false, r0};
}

}  // namespace dsmkit
