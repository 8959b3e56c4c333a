"""
차원 정규화 적분 모델 패키지

D = 1 - ε 차원의 베셀 함수 전파자, 반지름 적분, 분포 곱 적분 카탈로그,
3-루프 다이어그램과 ε → 0 외삽을 포함합니다.
"""

from .errors import (
    DegenerateGridError,
    DimRegError,
    DomainError,
    GammaPoleError,
    IntegrabilityError,
    QuadratureNonconvergence,
    UnknownNameError,
)
from .specfun import besselk, besselk_integral_rep, besselk_scaled, besselk_small_z, gamma
from .propagator import (
    RadialPoint,
    RegScheme,
    correlator_1d,
    correlator_1d_ddot_regular,
    correlator_1d_dot,
    delta,
    delta_at_zero,
    delta_grad_at_zero,
    delta_grad_radial,
    delta_lap_at_zero,
    delta_lap_regular,
    hessian_contraction,
    hessian_eigenvalues,
    hessian_invariants,
)
from .quadrature import (
    IntegralResult,
    RadialIntegrand,
    adaptive_integrate,
    besselk_power_series,
    integrate,
    integrate_continued,
    origin_exponent,
)
from .integrals import (
    INTEGRAL_NAMES,
    DualResult,
    catalogue,
    delta_sq_sum_rule,
    evaluate_integral,
    i_singular,
    int_delta_4,
    int_delta_sq,
    int_dsq_gradsq,
    int_dsq_hesssq,
    int_dsq_lapsq,
    int_grad_sq,
    int_gradsq_gradsq,
    int_lap_sq,
    int_mixed,
    omitted_term,
    limit_mass_power,
    partial_integration_residual,
    reference_limit,
)
from .diagrams import (
    DIAGRAM_IDS,
    DiagramReport,
    diagram_mass_power,
    diagram_report,
    diagram_result,
    diagram_value,
    energy,
    energy_coefficients,
    energy_contributions,
    paper_limit,
    watermelon_dimensional_form,
)
from .extrapolate import DEFAULT_EPS_GRID, EpsSeries, grid_degree, richardson

__all__ = [
    'DimRegError', 'DomainError', 'GammaPoleError', 'IntegrabilityError',
    'QuadratureNonconvergence', 'DegenerateGridError', 'UnknownNameError',
    'gamma', 'besselk', 'besselk_small_z', 'besselk_scaled', 'besselk_integral_rep',
    'RegScheme', 'RadialPoint', 'delta', 'delta_at_zero', 'delta_grad_radial',
    'delta_grad_at_zero', 'delta_lap_regular', 'delta_lap_at_zero', 'hessian_invariants',
    'hessian_eigenvalues', 'hessian_contraction', 'correlator_1d', 'correlator_1d_dot',
    'correlator_1d_ddot_regular',
    'RadialIntegrand', 'IntegralResult', 'origin_exponent', 'integrate', 'adaptive_integrate',
    'besselk_power_series', 'integrate_continued',
    'INTEGRAL_NAMES', 'DualResult', 'int_delta_sq', 'int_grad_sq', 'int_lap_sq',
    'omitted_term', 'delta_sq_sum_rule', 'int_delta_4', 'int_dsq_gradsq', 'i_singular',
    'int_mixed', 'int_gradsq_gradsq', 'int_dsq_lapsq', 'int_dsq_hesssq',
    'partial_integration_residual', 'evaluate_integral', 'catalogue', 'reference_limit',
    'limit_mass_power',
    'DIAGRAM_IDS', 'DiagramReport', 'diagram_value', 'diagram_result', 'diagram_report',
    'diagram_mass_power',
    'energy', 'energy_contributions', 'energy_coefficients', 'paper_limit',
    'watermelon_dimensional_form',
    'DEFAULT_EPS_GRID', 'EpsSeries', 'richardson', 'grid_degree',
]
