#include "dsmkit/certify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

#include "dsmkit/errors.hpp"

namespace dsmkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* yn(bool b) { return b ? "true" : "false"; }

// Smallest M >= 1 with M delta > 1 and M delta > beta - delta, or 0 when
// no finite M works. The arithmetic candidate is fixed up by direct
// evaluation so boundary cases (M delta landing exactly on beta - delta)
// never come out one off.
long long min_applicable_m(double delta, double beta) {
  if (!(delta > 0.0) || delta > 2.0 || std::isinf(beta)) return 0;
  const auto ok = [&](long long m) {
    const double md = static_cast<double>(m) * delta;
    return md > 1.0 && md > beta - delta;
  };
  long long m = static_cast<long long>(
      std::ceil(std::max(1.0, beta - delta) / delta));
  if (m < 1) m = 1;
  while (!ok(m)) ++m;
  while (m > 1 && ok(m - 1)) --m;
  return m;
}

}  // namespace

double compute_beta(const DifferenceEq& de, double delta, double cb,
                    const ImpulseSeries& fs) {
  if (fs.divergent) return kInf;
  double sum_a = 0.0;
  for (double a : de.a_coeffs) sum_a += std::abs(a);
  double sum_b = 0.0;
  for (double b : de.b_coeffs) sum_b += std::abs(b);
  return (std::abs(cb) * 0.5 * delta * (sum_a + 1.0) + sum_b) * fs.l1_norm;
}

Certificate certify(const StateSpace& filter, const UniformQuantizer& quant,
                    const PhiFunction& phi) {
  int shifts = 0;
  const StateSpace f = extract_delay(filter, shifts);
  const double cb = f.cb();
  const DifferenceEq de = to_difference_eq(f);
  const ImpulseSeries fs = f_impulse(de);

  Certificate cert;
  cert.cb = cb;
  cert.delay_shifts = shifts;
  cert.delta = quant.delta();
  cert.m_delta = quant.max_level();
  cert.beta = compute_beta(de, cert.delta, cb, fs);
  cert.condition_cb_nonzero = cb != 0.0;
  cert.condition_delta_range = cert.delta > 0.0 && cert.delta <= 2.0;
  cert.condition_mdelta_gt_1 = cert.m_delta > 1.0;
  cert.condition_umax = cert.m_delta > cert.beta - cert.delta;
  cert.applicable = cert.condition_cb_nonzero && cert.condition_delta_range &&
                    cert.condition_mdelta_gt_1 && cert.condition_umax;
  cert.optimal_value = cert.applicable
                           ? phi(std::abs(cb) * cert.delta / 2.0)
                           : std::numeric_limits<double>::quiet_NaN();
  cert.min_applicable_m = min_applicable_m(cert.delta, cert.beta);
  cert.phi_name = phi.name();
  cert.difference_eq = de;
  cert.impulse_l1 = fs.l1_norm;
  cert.impulse_tail = fs.tail_bound;
  cert.max_root_modulus = fs.max_root_modulus;
  return cert;
}

std::string Certificate::to_text() const {
  std::ostringstream out;
  out << "cb = " << fmt(cb) << '\n';
  out << "delay_shifts = " << delay_shifts << '\n';
  out << "delta = " << fmt(delta) << '\n';
  out << "m_delta = " << fmt(m_delta) << '\n';
  out << "beta = " << fmt(beta) << '\n';
  out << "condition_cb_nonzero = " << yn(condition_cb_nonzero) << '\n';
  out << "condition_delta_range = " << yn(condition_delta_range) << '\n';
  out << "condition_mdelta_gt_1 = " << yn(condition_mdelta_gt_1) << '\n';
  out << "condition_umax = " << yn(condition_umax) << '\n';
  out << "applicable = " << yn(applicable) << '\n';
  out << "optimal_value = " << fmt(optimal_value) << '\n';
  out << "min_applicable_m = " << min_applicable_m << '\n';
  out << "phi = " << phi_name << '\n';
  out << "order_k = " << difference_eq.order() << '\n';
  out << "a_coeffs =";
  for (double a : difference_eq.a_coeffs) out << ' ' << fmt(a);
  out << '\n';
  out << "b_coeffs =";
  for (double b : difference_eq.b_coeffs) out << ' ' << fmt(b);
  out << '\n';
  out << "impulse_l1 = " << fmt(impulse_l1) << '\n';
  out << "impulse_tail_bound = " << fmt(impulse_tail) << '\n';
  out << "max_root_modulus = " << fmt(max_root_modulus) << '\n';
  out << "diagnostics.cb_nonzero = CB = " << fmt(cb)
      << (condition_cb_nonzero ? " (nonzero: ok)" : " (violated: CB must be nonzero)")
      << '\n';
  out << "diagnostics.delta_range = delta = " << fmt(delta)
      << (condition_delta_range ? " lies in (0, 2]" : " violates delta in (0, 2]")
      << '\n';
  out << "diagnostics.mdelta_gt_1 = M delta = " << fmt(m_delta)
      << (condition_mdelta_gt_1 ? " > 1" : " fails M delta > 1") << '\n';
  out << "diagnostics.umax = M delta = " << fmt(m_delta)
      << (condition_umax ? " > " : " fails the strict bound against ")
      << "beta - delta = " << fmt(beta - delta) << '\n';
  return out.str();
}

}  // namespace dsmkit
