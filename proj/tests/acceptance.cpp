// Acceptance gate: one PASS/FAIL line per criterion, exit code = number of
// failures. Tolerances are pinned here and nowhere else; keep them in sync
// with README.md.

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "dsmkit/adc.hpp"
#include "dsmkit/adversary.hpp"
#include "dsmkit/certify.hpp"
#include "dsmkit/lti.hpp"
#include "dsmkit/performance.hpp"
#include "dsmkit/presets.hpp"
#include "dsmkit/quantizer.hpp"
#include "dsmkit/rng.hpp"

#include "test_util.hpp"

using namespace dsmkit;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& label, bool ok,
            const std::string& detail = "") {
  if (ok) {
    std::cout << "PASS criterion " << id << ": " << label << '\n';
  } else {
    std::cout << "FAIL criterion " << id << ": " << label
              << (detail.empty() ? "" : "  [" + detail + "]") << '\n';
    ++failures;
  }
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

// beta on a shared delta grid, checked against a closed form.
void beta_criterion(int id, const std::string& name,
                    double (*closed_form)(double)) {
  const auto t0 = Clock::now();
  const StateSpace f = state_space_preset(name);
  const DifferenceEq de = to_difference_eq(f);
  const ImpulseSeries fs = f_impulse(de);
  double worst = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double delta = 2.0 * i / 100.0;
    const double beta = compute_beta(de, delta, f.cb(), fs);
    worst = std::max(worst, std::abs(beta - closed_form(delta)));
  }
  const double dt = seconds_since(t0);
  report(id, name + " beta closed form on the delta grid",
         worst <= 1e-12 && dt < 1.0,
         "max deviation " + fmt(worst) + ", " + fmt(dt) + "s");
}

}  // namespace

int main() {
  beta_criterion(1, "dsm1", +[](double d) { return d + 1.0; });
  beta_criterion(2, "dsm2", +[](double d) { return 2.0 * d + 1.0; });

  // 3 and 9 share the long iid runs: 3 checks the certified error bound,
  // 9 checks |u| <= beta and that the bounded quantizer never saturates
  // (its outputs match an unbounded twin exactly).
  bool c3_ok = true, c9_ok = true;
  std::string c3_detail, c9_detail;
  {
    const auto t0 = Clock::now();
    for (const std::string name : {"dsm1", "dsm2"}) {
      const StateSpace f = state_space_preset(name);
      for (const double delta : {0.25, 1.0, 2.0}) {
        const long long m =
            certify(f, UniformQuantizer(delta, 1), PhiFunction::abs())
                .min_applicable_m;
        if (m < 1) {
          c3_ok = false;
          c3_detail = name + " delta=" + fmt(delta) + ": no applicable M";
          continue;
        }
        const UniformQuantizer quant(delta, m);
        const Certificate cert = certify(f, quant, PhiFunction::abs());
        if (!cert.applicable) {
          c3_ok = false;
          c3_detail = name + ": certificate not applicable at minimal M";
          continue;
        }
        const double bound = std::abs(f.cb()) * delta / 2.0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
          GreedyAdc adc(f, quant);
          GreedyAdc twin(f, UniformQuantizer::unbounded(delta));
          Xorshift64Star rng(seed);
          double max_q = 0.0, max_u = 0.0;
          bool twin_equal = true;
          for (int n = 0; n < 100000; ++n) {
            const double r = rng.next_symmetric();
            const double u = adc.step(r);
            if (u != twin.step(r)) twin_equal = false;
            max_u = std::max(max_u, std::abs(u));
            max_q = std::max(max_q, std::abs(adc.q_psi()));
          }
          if (max_q > bound + 1e-12) {
            c3_ok = false;
            c3_detail = name + " delta=" + fmt(delta) + " seed=" +
                        std::to_string(seed) + ": max|q|=" + fmt(max_q);
          }
          if (!twin_equal || max_u > cert.beta + 1e-12) {
            c9_ok = false;
            c9_detail = name + " delta=" + fmt(delta) + " seed=" +
                        std::to_string(seed) + ": max|u|=" + fmt(max_u) +
                        (twin_equal ? "" : ", saturation hit");
          }
        }
      }
    }
    const double dt = seconds_since(t0);
    if (dt >= 10.0) {
      c3_ok = false;
      c3_detail = "took " + fmt(dt) + "s";
    }
    report(3, "greedy error stays within half a scaled step under iid drive",
           c3_ok, c3_detail);
  }

  {
    bool ok = true;
    std::string detail;
    for (const std::string name : {"dsm1", "dsm2"}) {
      const StateSpace f = state_space_preset(name);
      const double delta = 0.5;
      const long long m =
          certify(f, UniformQuantizer(delta, 1), PhiFunction::abs())
              .min_applicable_m;
      const UniformQuantizer quant(delta, m);
      for (const std::string target :
           {"greedy", "dsm-loop", "classical-dsm1", "memoryless"}) {
        const auto adc = make_adc(target, f, quant);
        const AttackResult res = attack(*adc, f, delta, 10000);
        if (!res.bound_satisfied || res.min_abs_q < res.bound - 1e-12) {
          ok = false;
          detail = name + "/" + target + ": min|q|=" + fmt(res.min_abs_q) +
                   " vs bound " + fmt(res.bound);
        }
      }
    }
    report(4, "adversarial input pins every ADC to the error floor", ok,
           detail);
  }

  {
    bool ok = true;
    std::string detail;
    for (const std::string name : {"dsm1", "dsm2"}) {
      const StateSpace f = state_space_preset(name);
      const double delta = 0.5;
      const long long m =
          certify(f, UniformQuantizer(delta, 1), PhiFunction::abs())
              .min_applicable_m;
      const UniformQuantizer quant(delta, m);
      GreedyAdc adc(f, quant);
      const AttackResult res = attack(adc, f, delta, 10000);
      for (const PhiFunction& phi : {PhiFunction::abs(), PhiFunction::square()}) {
        const double opt = optimal_performance(f, quant, phi);
        const double got =
            awai(res.q, phi, res.q.size() / 2).suffix_mean;
        if (std::abs(got - opt) > 1e-9) {
          ok = false;
          detail = name + "/" + phi.name() + ": awai=" + fmt(got) +
                   " vs optimal " + fmt(opt);
        }
      }
    }
    report(5, "attack attains the certified optimal intensity", ok, detail);
  }

  {
    bool ok = true;
    std::string detail;
    Xorshift64Star gen(2024);
    std::vector<StateSpace> filters;
    filters.push_back(state_space_preset("dsm1"));
    filters.push_back(state_space_preset("dsm2"));
    for (int i = 0; i < 20; ++i) {
      filters.push_back(testutil::random_rooted_filter(gen, 1 + (i % 3)));
    }
    for (std::size_t fi = 0; fi < filters.size() && ok; ++fi) {
      const StateSpace& f = filters[fi];
      const double delta = 0.5;
      const long long m =
          certify(f, UniformQuantizer(delta, 1), PhiFunction::abs())
              .min_applicable_m;
      if (m < 1) {
        ok = false;
        detail = "filter " + std::to_string(fi) + ": no applicable M";
        break;
      }
      GreedyAdc greedy(f, UniformQuantizer(delta, m));
      DsmLoopAdc loop(f, UniformQuantizer(delta, m));
      Xorshift64Star rng(1000 + fi);
      for (int n = 0; n < 10000; ++n) {
        const double r = rng.next_symmetric();
        const double ug = greedy.step(r);
        const double ul = loop.step(r);
        if (ug != ul) {
          ok = false;
          detail = "filter " + std::to_string(fi) + " step " +
                   std::to_string(n) + ": outputs diverge";
          break;
        }
        if (std::abs(greedy.last_pre_quantizer() - loop.last_pre_quantizer()) >
            1e-9) {
          ok = false;
          detail = "filter " + std::to_string(fi) + " step " +
                   std::to_string(n) + ": internal drift";
          break;
        }
      }
    }
    report(6, "DSM loop realization reproduces the greedy ADC", ok, detail);
  }

  {
    bool ok = true;
    std::string detail;
    Xorshift64Star rng(77);
    for (int i = 0; i < 1000 && ok; ++i) {
      const StateSpace ss =
          (i % 3 == 0)   ? state_space_preset("dsm1")
          : (i % 3 == 1) ? state_space_preset("dsm2")
                         : testutil::random_dense_system(rng, 1 + (i % 3));
      const double delta = (i % 2 == 0) ? 0.5 : 0.25 * (1 + (i % 4));
      const long long m = 1 + static_cast<long long>(rng.next_u64() % 6);
      const UniformQuantizer quant(delta, m);
      Eigen::VectorXd x(ss.dimension());
      for (int j = 0; j < ss.dimension(); ++j) x(j) = 2.0 * rng.next_symmetric();
      const double r = rng.next_symmetric();

      const double theta = ss.c.dot(ss.a * x) / ss.cb() + r;
      const double closed = quant.quantize(theta);

      double best_cost = std::numeric_limits<double>::infinity();
      double best_u = 0.0;
      for (long long k = -m; k <= m; ++k) {
        const double u = static_cast<double>(k) * delta;
        const double cost = std::abs(ss.c.dot(ss.a * x + ss.b * (r - u)));
        if (cost < best_cost) {
          best_cost = cost;
          best_u = u;
        }
      }
      if (closed != best_u) {
        ok = false;
        detail = "case " + std::to_string(i) + ": closed " + fmt(closed) +
                 " vs argmin " + fmt(best_u);
      }
    }
    report(7, "one-step quantization equals the brute-force argmin", ok,
           detail);
  }

  {
    bool ok = true;
    std::string detail;
    Xorshift64Star rng(5150);
    for (int i = 0; i < 50 && ok; ++i) {
      const StateSpace ss = testutil::random_dense_system(rng, 1 + (i % 4));
      std::vector<double> w(200);
      for (double& v : w) v = rng.next_symmetric();
      const std::vector<double> q_ss = simulate(ss, w);
      const std::vector<double> q_de = simulate(to_difference_eq(ss), w);
      double peak = 1.0, err = 0.0;
      for (std::size_t n = 0; n < q_ss.size(); ++n) {
        peak = std::max(peak, std::abs(q_ss[n]));
        err = std::max(err, std::abs(q_ss[n] - q_de[n]));
      }
      if (err > 1e-9 * peak) {
        ok = false;
        detail = "system " + std::to_string(i) + ": rel err " + fmt(err / peak);
      }
    }
    report(8, "difference equation tracks the state-space filter", ok, detail);
  }

  report(9, "outputs bounded by beta with the bounded quantizer never saturating",
         c9_ok, c9_detail);

  {
    bool ok = true;
    std::string detail;
    Xorshift64Star rng(31337);

    // quantizer: approximation bound, monotonicity, ties toward the lower level
    for (int i = 0; i < 1200 && ok; ++i) {
      const double deltas[4] = {0.25, 0.5, 1.0, 2.0};
      const double delta = deltas[i % 4];
      const long long m = 1 + static_cast<long long>(rng.next_u64() % 8);
      const UniformQuantizer quant(delta, m);
      const double span = (static_cast<double>(m) + 0.5) * delta;
      const double theta = span * rng.next_symmetric();
      const double u = quant.quantize(theta);
      if (std::abs(theta - u) > delta / 2.0 + 1e-12) {
        ok = false;
        detail = "bound violated at theta=" + fmt(theta);
      }
      const double theta2 = span * rng.next_symmetric();
      const double lo = std::min(theta, theta2), hi = std::max(theta, theta2);
      if (quant.quantize(lo) > quant.quantize(hi)) {
        ok = false;
        detail = "monotonicity violated";
      }
    }
    for (long long k = -500; k < 500 && ok; ++k) {
      const UniformQuantizer quant(0.25, 600);
      const double mid = (static_cast<double>(k) + 0.5) * 0.25;
      if (quant.quantize(mid) != static_cast<double>(k) * 0.25) {
        ok = false;
        detail = "tie at k=" + std::to_string(k);
      }
    }

    // causality: a different future never changes a past output
    const StateSpace f = state_space_preset("dsm1");
    const UniformQuantizer quant(0.5, 3);
    for (const std::string name :
         {"greedy", "dsm-loop", "classical-dsm1", "memoryless"}) {
      const auto adc = make_adc(name, f, quant);
      for (int c = 0; c < 250 && ok; ++c) {
        std::vector<double> prefix(40), tail_a(20), tail_b(20);
        for (double& v : prefix) v = rng.next_symmetric();
        for (double& v : tail_a) v = rng.next_symmetric();
        for (double& v : tail_b) v = rng.next_symmetric();
        std::vector<double> ua, ub;
        adc->reset();
        for (double v : prefix) ua.push_back(adc->step(v));
        for (double v : tail_a) ua.push_back(adc->step(v));
        adc->reset();
        for (double v : prefix) ub.push_back(adc->step(v));
        for (double v : tail_b) ub.push_back(adc->step(v));
        for (int n = 0; n < 40 && ok; ++n) {
          if (ua[static_cast<std::size_t>(n)] != ub[static_cast<std::size_t>(n)]) {
            ok = false;
            detail = name + ": prefix output changed at step " +
                     std::to_string(n);
          }
        }
      }
    }

    // adversary: every constructed input obeys |r| <= delta/2
    for (const std::string name : {"dsm1", "dsm2"}) {
      const StateSpace fp = state_space_preset(name);
      for (const double delta : {0.25, 1.0}) {
        GreedyAdc adc(fp, UniformQuantizer(delta, 12));
        const AttackResult res = attack(adc, fp, delta, 250);
        for (double r : res.r) {
          if (std::abs(r) > delta / 2.0 + 1e-12) {
            ok = false;
            detail = name + ": adversary emitted r=" + fmt(r);
          }
        }
      }
    }

    report(10, "property sweeps: quantizer bound, causality, adversary range",
           ok, detail);
  }

  std::cout << (failures == 0 ? "acceptance: all criteria passed"
                              : "acceptance: " + std::to_string(failures) +
                                    " criterion(s) failed")
            << '\n';
  return failures;
}
