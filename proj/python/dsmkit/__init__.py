"""Delta-sigma ADC simulation, certification and attack toolkit."""

from dsmkit._core import (
    AdcModel,
    AdversarialSource,
    AttackResult,
    AwaiEstimate,
    Certificate,
    ClassicalDsm1Adc,
    ConfigError,
    ConstantSource,
    ContractViolationError,
    DegenerateFilterError,
    DifferenceEq,
    DomainError,
    DsmLoopAdc,
    Error,
    GreedyAdc,
    IidUniformSource,
    ImpulseSeries,
    IncompatibleLevelSetError,
    InputSource,
    MemberPerformance,
    MemorylessAdc,
    NonFiniteError,
    PerformanceEstimate,
    PhiFunction,
    SinusoidSource,
    StateSpace,
    TruncationBudgetError,
    UniformQuantizer,
    WorstCaseAdversary,
    Xorshift64Star,
    __version__,
    attack,
    awai,
    certify,
    compute_beta,
    extract_delay,
    f_impulse,
    make_adc,
    markov_parameters,
    measure_performance,
    optimal_performance,
    round_half_down,
    simulate,
    state_space_preset,
    to_difference_eq,
)

__all__ = [
    "AdcModel",
    "AdversarialSource",
    "AttackResult",
    "AwaiEstimate",
    "Certificate",
    "ClassicalDsm1Adc",
    "ConfigError",
    "ConstantSource",
    "ContractViolationError",
    "DegenerateFilterError",
    "DifferenceEq",
    "DomainError",
    "DsmLoopAdc",
    "Error",
    "GreedyAdc",
    "IidUniformSource",
    "ImpulseSeries",
    "IncompatibleLevelSetError",
    "InputSource",
    "MemberPerformance",
    "MemorylessAdc",
    "NonFiniteError",
    "PerformanceEstimate",
    "PhiFunction",
    "SinusoidSource",
    "StateSpace",
    "TruncationBudgetError",
    "UniformQuantizer",
    "WorstCaseAdversary",
    "Xorshift64Star",
    "__version__",
    "attack",
    "awai",
    "certify",
    "compute_beta",
    "extract_delay",
    "f_impulse",
    "make_adc",
    "markov_parameters",
    "measure_performance",
    "optimal_performance",
    "round_half_down",
    "simulate",
    "state_space_preset",
    "to_difference_eq",
]
