#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <vector>

#include "dsmkit/adc.hpp"
#include "dsmkit/adversary.hpp"
#include "dsmkit/certify.hpp"
#include "dsmkit/errors.hpp"
#include "dsmkit/lti.hpp"
#include "dsmkit/performance.hpp"
#include "dsmkit/presets.hpp"
#include "dsmkit/quantizer.hpp"
#include "dsmkit/rng.hpp"

namespace py = pybind11;
using namespace dsmkit;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Delta-sigma ADC simulation, certification and attack toolkit";
  m.attr("__version__") = "0.1.0";

  // Exceptions. Base first; pybind11 matches derived classes because they
  // are registered later and translators run newest-first.
  auto err = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", err);
  py::register_exception<DegenerateFilterError>(m, "DegenerateFilterError", err);
  py::register_exception<ContractViolationError>(m, "ContractViolationError", err);
  py::register_exception<IncompatibleLevelSetError>(m, "IncompatibleLevelSetError", err);
  py::register_exception<NonFiniteError>(m, "NonFiniteError", err);
  py::register_exception<ConfigError>(m, "ConfigError", err);
  py::register_exception<TruncationBudgetError>(m, "TruncationBudgetError", err);

  py::class_<StateSpace>(m, "StateSpace")
      .def(py::init<Eigen::MatrixXd, Eigen::VectorXd, Eigen::RowVectorXd>(),
           py::arg("a"), py::arg("b"), py::arg("c"))
      .def_readonly("a", &StateSpace::a)
      .def_readonly("b", &StateSpace::b)
      .def_readonly("c", &StateSpace::c)
      .def("dimension", &StateSpace::dimension)
      .def("cb", &StateSpace::cb);

  py::class_<DifferenceEq>(m, "DifferenceEq")
      .def(py::init([](std::vector<double> a, std::vector<double> b) {
             return DifferenceEq{std::move(a), std::move(b)};
           }),
           py::arg("a_coeffs"), py::arg("b_coeffs"))
      .def_readonly("a_coeffs", &DifferenceEq::a_coeffs)
      .def_readonly("b_coeffs", &DifferenceEq::b_coeffs)
      .def("order", &DifferenceEq::order);

  py::class_<ImpulseSeries>(m, "ImpulseSeries")
      .def_readonly("coeffs", &ImpulseSeries::coeffs)
      .def_readonly("l1_norm", &ImpulseSeries::l1_norm)
      .def_readonly("tail_bound", &ImpulseSeries::tail_bound)
      .def_readonly("divergent", &ImpulseSeries::divergent)
      .def_readonly("max_root_modulus", &ImpulseSeries::max_root_modulus);

  m.def("markov_parameters", &markov_parameters, py::arg("ss"), py::arg("count"));
  m.def("extract_delay",
        py::overload_cast<const StateSpace&>(&extract_delay), py::arg("ss"));
  m.def("simulate",
        py::overload_cast<const StateSpace&, const std::vector<double>&>(&simulate),
        py::arg("ss"), py::arg("w"));
  m.def("simulate",
        py::overload_cast<const DifferenceEq&, const std::vector<double>&>(&simulate),
        py::arg("de"), py::arg("w"));
  m.def("to_difference_eq", &to_difference_eq, py::arg("ss"));
  m.def("f_impulse", &f_impulse, py::arg("de"), py::arg("tol") = 1e-12,
        py::arg("max_len") = std::size_t{1} << 20);

  m.def("round_half_down", &round_half_down, py::arg("v"));

  py::class_<UniformQuantizer>(m, "UniformQuantizer")
      .def(py::init<double, long long>(), py::arg("delta"), py::arg("m"))
      .def_static("unbounded", &UniformQuantizer::unbounded, py::arg("delta"))
      .def_property_readonly("delta", &UniformQuantizer::delta)
      .def_property_readonly("bounded", &UniformQuantizer::bounded)
      .def_property_readonly("m", &UniformQuantizer::m)
      .def("half_step", &UniformQuantizer::half_step)
      .def("max_level", &UniformQuantizer::max_level)
      .def("level_index", &UniformQuantizer::level_index, py::arg("theta"))
      .def("quantize", &UniformQuantizer::quantize, py::arg("theta"))
      .def("levels", &UniformQuantizer::levels);

  py::class_<PhiFunction>(m, "PhiFunction")
      .def_static("abs", &PhiFunction::abs)
      .def_static("square", &PhiFunction::square)
      .def_static("custom", &PhiFunction::custom, py::arg("name"), py::arg("f"))
      .def("__call__", &PhiFunction::operator(), py::arg("q"))
      .def_property_readonly("name", &PhiFunction::name);

  py::class_<AdcModel>(m, "AdcModel")
      .def("step", &AdcModel::step, py::arg("r"))
      .def("reset", &AdcModel::reset)
      .def_property_readonly("quantizer", &AdcModel::quantizer,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("name",
                             [](const AdcModel& a) { return std::string(a.name()); })
      .def("last_pre_quantizer", &AdcModel::last_pre_quantizer);

  py::class_<GreedyAdc, AdcModel>(m, "GreedyAdc")
      .def(py::init<StateSpace, UniformQuantizer>(), py::arg("filter"),
           py::arg("quant"))
      .def_property_readonly("filter", &GreedyAdc::filter,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("state",
                             [](const GreedyAdc& a) -> Eigen::VectorXd {
                               return a.state();
                             })
      .def("q_psi", &GreedyAdc::q_psi);

  py::class_<DsmLoopAdc, AdcModel>(m, "DsmLoopAdc")
      .def(py::init<StateSpace, UniformQuantizer>(), py::arg("filter"),
           py::arg("quant"))
      .def_property_readonly("state",
                             [](const DsmLoopAdc& a) -> Eigen::VectorXd {
                               return a.state();
                             });

  py::class_<ClassicalDsm1Adc, AdcModel>(m, "ClassicalDsm1Adc")
      .def(py::init<UniformQuantizer>(), py::arg("quant"))
      .def("integrator", &ClassicalDsm1Adc::integrator);

  py::class_<MemorylessAdc, AdcModel>(m, "MemorylessAdc")
      .def(py::init<UniformQuantizer>(), py::arg("quant"));

  m.def("make_adc", &make_adc, py::arg("name"), py::arg("filter"),
        py::arg("quant"));

  py::class_<WorstCaseAdversary>(m, "WorstCaseAdversary")
      .def(py::init<StateSpace, double>(), py::arg("filter"), py::arg("delta"))
      .def("centering_index", &WorstCaseAdversary::centering_index)
      .def("next_r", &WorstCaseAdversary::next_r)
      .def("observe", &WorstCaseAdversary::observe, py::arg("r"), py::arg("u"))
      .def("reset", &WorstCaseAdversary::reset)
      .def_property_readonly("state",
                             [](const WorstCaseAdversary& a) -> Eigen::VectorXd {
                               return a.state();
                             })
      .def_property_readonly("delta", &WorstCaseAdversary::delta);

  py::class_<AttackResult>(m, "AttackResult")
      .def_readonly("r", &AttackResult::r)
      .def_readonly("u", &AttackResult::u)
      .def_readonly("q", &AttackResult::q)
      .def_readonly("min_abs_q", &AttackResult::min_abs_q)
      .def_readonly("bound", &AttackResult::bound)
      .def_readonly("bound_satisfied", &AttackResult::bound_satisfied);

  m.def("attack", &attack, py::arg("adc"), py::arg("filter"), py::arg("delta"),
        py::arg("n_steps"));

  py::class_<AwaiEstimate>(m, "AwaiEstimate")
      .def_readonly("full_mean", &AwaiEstimate::full_mean)
      .def_readonly("suffix_mean", &AwaiEstimate::suffix_mean)
      .def_readonly("max_window_mean", &AwaiEstimate::max_window_mean)
      .def_readonly("horizon", &AwaiEstimate::horizon)
      .def_readonly("window", &AwaiEstimate::window);

  m.def("awai", &awai, py::arg("q"), py::arg("phi"), py::arg("window"));

  py::class_<InputSource>(m, "InputSource")
      .def("next", &InputSource::next)
      .def("observe", &InputSource::observe, py::arg("r"), py::arg("u"))
      .def("reset", &InputSource::reset)
      .def_property_readonly("name", &InputSource::name);

  py::class_<IidUniformSource, InputSource>(m, "IidUniformSource")
      .def(py::init<std::uint64_t>(), py::arg("seed"));

  py::class_<ConstantSource, InputSource>(m, "ConstantSource")
      .def(py::init<double>(), py::arg("value"));

  py::class_<SinusoidSource, InputSource>(m, "SinusoidSource")
      .def(py::init<double, double, double>(), py::arg("amplitude"),
           py::arg("frequency"), py::arg("phase") = 0.0);

  py::class_<AdversarialSource, InputSource>(m, "AdversarialSource")
      .def(py::init<StateSpace, double>(), py::arg("filter"), py::arg("delta"));

  py::class_<MemberPerformance>(m, "MemberPerformance")
      .def_readonly("source", &MemberPerformance::source)
      .def_readonly("stats", &MemberPerformance::stats)
      .def_readonly("max_abs_q", &MemberPerformance::max_abs_q)
      .def_readonly("max_abs_u", &MemberPerformance::max_abs_u);

  py::class_<PerformanceEstimate>(m, "PerformanceEstimate")
      .def_readonly("j_estimate", &PerformanceEstimate::j_estimate)
      .def_readonly("worst_source", &PerformanceEstimate::worst_source)
      .def_readonly("members", &PerformanceEstimate::members);

  m.def(
      "measure_performance",
      [](AdcModel& adc, const StateSpace& filter, const PhiFunction& phi,
         const std::vector<InputSource*>& ensemble, std::size_t n_steps,
         std::size_t window) {
        return measure_performance(adc, filter, phi, ensemble, n_steps, window);
      },
      py::arg("adc"), py::arg("filter"), py::arg("phi"), py::arg("ensemble"),
      py::arg("n_steps"), py::arg("window") = 0);

  m.def("optimal_performance", &optimal_performance, py::arg("filter"),
        py::arg("quant"), py::arg("phi"));

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("cb", &Certificate::cb)
      .def_readonly("delay_shifts", &Certificate::delay_shifts)
      .def_readonly("delta", &Certificate::delta)
      .def_readonly("m_delta", &Certificate::m_delta)
      .def_readonly("beta", &Certificate::beta)
      .def_readonly("condition_cb_nonzero", &Certificate::condition_cb_nonzero)
      .def_readonly("condition_delta_range", &Certificate::condition_delta_range)
      .def_readonly("condition_mdelta_gt_1", &Certificate::condition_mdelta_gt_1)
      .def_readonly("condition_umax", &Certificate::condition_umax)
      .def_readonly("applicable", &Certificate::applicable)
      .def_readonly("optimal_value", &Certificate::optimal_value)
      .def_readonly("min_applicable_m", &Certificate::min_applicable_m)
      .def_readonly("phi_name", &Certificate::phi_name)
      .def_readonly("difference_eq", &Certificate::difference_eq)
      .def_readonly("impulse_l1", &Certificate::impulse_l1)
      .def_readonly("impulse_tail", &Certificate::impulse_tail)
      .def_readonly("max_root_modulus", &Certificate::max_root_modulus)
      .def("to_text", &Certificate::to_text);

  m.def("compute_beta", &compute_beta, py::arg("de"), py::arg("delta"),
        py::arg("cb"), py::arg("fs"));
  m.def("certify", &certify, py::arg("filter"), py::arg("quant"), py::arg("phi"));

  m.def("state_space_preset",
        [](const std::string& name) { return state_space_preset(name); },
        py::arg("name"));

  py::class_<Xorshift64Star>(m, "Xorshift64Star")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("next_u64", &Xorshift64Star::next_u64)
      .def("next_unit", &Xorshift64Star::next_unit)
      .def("next_symmetric", &Xorshift64Star::next_symmetric);
}
