#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dsmkit/adc.hpp"
#include "dsmkit/adversary.hpp"
#include "dsmkit/errors.hpp"
#include "dsmkit/performance.hpp"
#include "dsmkit/presets.hpp"
#include "dsmkit/quantizer.hpp"

using namespace dsmkit;

namespace {

// gain_row for dsm1 is the identity, so observe(0, -g) drives the
// adversary's internal prediction gain_row * x to exactly g
WorstCaseAdversary adversary_at(double g, double delta) {
  WorstCaseAdversary adv(state_space_preset("dsm1"), delta);
  adv.observe(0.0, -g);
  return adv;
}

}  // namespace

TEST_CASE("centering index picks the nearest half-integer grid point") {
  // g = 0: k = 0 and k = -1 are equidistant, tie to the smaller
  CHECK(adversary_at(0.0, 1.0).centering_index() == -1);
  // g = 0.5: k = 0 hits exactly
  CHECK(adversary_at(0.5, 1.0).centering_index() == 0);
  // g = 1.3, delta = 0.5: (2k+1)/4 closest at k = 2 (1.25, off by 0.05)
  CHECK(adversary_at(1.3, 0.5).centering_index() == 2);
  // fresh state
  WorstCaseAdversary adv(state_space_preset("dsm2"), 1.0);
  CHECK(adv.centering_index() == -1);
  CHECK(adv.delta() == 1.0);
  CHECK(adv.state().isZero());
}

TEST_CASE("the first adversarial sample centers between two levels") {
  WorstCaseAdversary adv(state_space_preset("dsm1"), 1.0);
  const double r = adv.next_r();
  CHECK(r == -0.5);
  // whatever level the ADC picks, the next error is at least delta/2 away
  for (double u : UniformQuantizer(1.0, 4).levels()) {
    CHECK(std::abs(r - u) >= 0.5);
  }
}

TEST_CASE("delta = 2 sits exactly on the admissible boundary") {
  WorstCaseAdversary adv(state_space_preset("dsm1"), 2.0);
  CHECK(adv.next_r() == -1.0);
  CHECK_NOTHROW(adv.next_r());
}

TEST_CASE("delta beyond 2 escapes [-1,1] and is refused") {
  WorstCaseAdversary adv(state_space_preset("dsm1"), 2.5);
  CHECK_THROWS_AS(adv.next_r(), ContractViolationError);
}

TEST_CASE("constructor preconditions") {
  CHECK_THROWS_AS(WorstCaseAdversary(state_space_preset("dsm1"), 0.0),
                  DomainError);
  CHECK_THROWS_AS(WorstCaseAdversary(state_space_preset("dsm1"), -1.0),
                  DomainError);
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 0, 0;
  Eigen::VectorXd b(2);
  b << 0, 1;
  Eigen::RowVectorXd c(2);
  c << 1, 0;
  CHECK_THROWS_AS(WorstCaseAdversary(StateSpace(a, b, c), 1.0), DomainError);
}

TEST_CASE("attack forces the universal lower bound on the baseline") {
  const StateSpace f = state_space_preset("dsm1");
  MemorylessAdc adc(UniformQuantizer(1.0, 4));
  const AttackResult res = attack(adc, f, 1.0, 100);
  CHECK(res.bound == 0.5);
  CHECK(res.bound_satisfied);
  CHECK(res.min_abs_q >= 0.5 - 1e-12);
  CHECK(res.r.size() == 100);
  CHECK(res.u.size() == 100);
  CHECK(res.q.size() == 101);
  CHECK(res.q[0] == 0.0);
}

TEST_CASE("attack pins the greedy ADC to exactly the optimal floor") {
  const StateSpace f = state_space_preset("dsm1");
  GreedyAdc adc(f, UniformQuantizer(1.0, 2));
  const AttackResult res = attack(adc, f, 1.0, 1000);
  CHECK(res.bound_satisfied);
  double max_q = 0.0;
  for (std::size_t n = 1; n < res.q.size(); ++n) {
    max_q = std::max(max_q, std::abs(res.q[n]));
  }
  // pincer: the upper bound of the greedy law meets the forced lower bound
  CHECK(res.min_abs_q >= 0.5 - 1e-12);
  CHECK(max_q <= 0.5 + 1e-12);

  const StateSpace f2 = state_space_preset("dsm2");
  GreedyAdc adc2(f2, UniformQuantizer(0.5, 6));
  const AttackResult res2 = attack(adc2, f2, 0.5, 1000);
  CHECK(res2.bound == 0.25);
  CHECK(res2.bound_satisfied);
  double max_q2 = 0.0;
  for (std::size_t n = 1; n < res2.q.size(); ++n) {
    max_q2 = std::max(max_q2, std::abs(res2.q[n]));
  }
  CHECK(max_q2 <= 0.25 + 1e-12);
}

TEST_CASE("attacking the classical loop yields the same intensity") {
  const StateSpace f = state_space_preset("dsm1");
  ClassicalDsm1Adc adc(UniformQuantizer(1.0, 2));
  const AttackResult res = attack(adc, f, 1.0, 10000);
  CHECK(res.bound_satisfied);
  const AwaiEstimate stats = awai(res.q, PhiFunction::abs(), 1000);
  CHECK(stats.suffix_mean == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("attack rejects outputs off the delta grid") {
  const StateSpace f = state_space_preset("dsm1");
  // the ADC's levels are multiples of 0.5; the adversary argues on the
  // grid delta = 1 and the very first output u = -0.5 betrays the mismatch
  MemorylessAdc adc(UniformQuantizer(0.5, 4));
  CHECK_THROWS_AS(attack(adc, f, 1.0, 10), IncompatibleLevelSetError);
  // a coarser ADC grid embeds into a finer argument grid just fine
  MemorylessAdc coarse(UniformQuantizer(1.0, 4));
  CHECK_NOTHROW(attack(coarse, f, 0.5, 10));
}

TEST_CASE("adversarial inputs never leave [-delta/2, delta/2]") {
  for (const char* preset : {"dsm1", "dsm2"}) {
    const StateSpace f = state_space_preset(preset);
    for (double delta : {0.25, 1.0, 2.0}) {
      GreedyAdc adc(f, UniformQuantizer(delta, 12));
      const AttackResult res = attack(adc, f, delta, 400);
      for (double r : res.r) {
        CHECK(std::abs(r) <= delta / 2.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("attack resets the target before running") {
  const StateSpace f = state_space_preset("dsm1");
  GreedyAdc adc(f, UniformQuantizer(1.0, 2));
  // pollute the state, then verify the attack still sees a fresh ADC
  adc.step(0.9);
  adc.step(-0.7);
  const AttackResult res = attack(adc, f, 1.0, 50);
  GreedyAdc fresh(f, UniformQuantizer(1.0, 2));
  const AttackResult ref = attack(fresh, f, 1.0, 50);
  CHECK(res.r == ref.r);
  CHECK(res.u == ref.u);
  CHECK(res.q == ref.q);
}
