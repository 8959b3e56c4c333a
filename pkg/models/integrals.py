"""
분포 곱 적분 카탈로그

두 개와 네 개의 상관 함수 곱 적분을 D = 1 - ε 에서 계산합니다.
각 적분은 해석 경로(감마 함수 닫힌 형태 또는 환원 항등식)와
수치 경로(환원된 베셀 피적분 함수의 반지름 적분)를 가집니다.

δ^{(D)} 성분은 적분하기 전에 환원 규칙으로 모두 흡수되므로
수치 경로는 매끄러운 베셀 곱만 적분합니다.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Optional, Tuple

from .errors import DomainError, UnknownNameError
from .propagator import RegScheme, delta_at_zero
from .quadrature import (
    DEFAULT_REL_TOL,
    PANEL_SPLIT,
    IntegralResult,
    RadialIntegrand,
    adaptive_integrate,
    analytic_result,
    integrate,
    integrate_continued,
    linear_combination,
)
from .specfun import besselk, besselk_scaled, gamma

logger = logging.getLogger(__name__)

ANALYTIC = "analytic"
QUADRATURE = "quadrature"
PATHS = (ANALYTIC, QUADRATURE)

SINGULAR_EPS_MAX = 0.2

INTEGRAL_NAMES: Tuple[str, ...] = (
    "delta_sq",
    "grad_sq",
    "lap_sq",
    "delta_4",
    "dsq_gradsq",
    "i_singular",
    "mixed_dgdg_hess",
    "gradsq_gradsq",
    "dsq_lapsq",
    "dsq_hesssq",
    "omitted_term",
    "delta_sq_sum_rule",
)


@dataclass(frozen=True)
class DualResult:
    """
    해석 경로와 수치 경로 결과 쌍

    Parameters
    ----------
    analytic : IntegralResult
        닫힌 형태 또는 환원 항등식 값
    quadrature : IntegralResult, optional
        수치 적분 값 (극한 스킴에서 정의되지 않는 경우 None)
    """

    analytic: IntegralResult
    quadrature: Optional[IntegralResult] = None

    def select(self, path: str) -> IntegralResult:
        _check_path(path)
        if path == ANALYTIC:
            return self.analytic
        if self.quadrature is None:
            raise DomainError("이 지점에서는 수치 경로가 정의되지 않습니다.")
        return self.quadrature

    @property
    def relative_gap(self) -> float:
        """|해석 - 수치| / |해석|"""
        if self.quadrature is None:
            return math.nan
        scale = abs(self.analytic.value)
        gap = abs(self.analytic.value - self.quadrature.value)
        return gap / scale if scale > 0 else gap


def _check_path(path: str) -> None:
    if path not in PATHS:
        raise DomainError(f"경로는 {PATHS} 중 하나여야 합니다: {path}")


def resolve_path(scheme: RegScheme, path: Optional[str]) -> str:
    if path is None:
        return ANALYTIC if scheme.limit else QUADRATURE
    _check_path(path)
    return path


def _check_singular_eps(scheme: RegScheme, what: str) -> None:
    if not scheme.limit and scheme.eps > SINGULAR_EPS_MAX:
        raise DomainError(f"{what}는 eps <= {SINGULAR_EPS_MAX}에서만 계산합니다: {scheme.eps}")


def _measure(scheme: RegScheme, mass_power: float, c_power: int) -> float:
    """m^{mass_power} c_D^{c_power} S_D"""
    return scheme.m ** mass_power * scheme.c_D ** c_power * scheme.S_D


# ---------------------------------------------------------------------------
# 수치 경로의 반지름 적분 (스킴, 허용 오차별 캐시)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def _radial_delta_sq(scheme: RegScheme, rel_tol: float) -> IntegralResult:
    return integrate(RadialIntegrand(1.0, 1.0, [(scheme.order_delta, 2)]), rel_tol)


@lru_cache(maxsize=256)
def _radial_grad_sq(scheme: RegScheme, rel_tol: float) -> IntegralResult:
    return integrate(RadialIntegrand(1.0, 1.0, [(scheme.order_grad, 2)]), rel_tol)


@lru_cache(maxsize=256)
def _radial_delta_4(scheme: RegScheme, rel_tol: float) -> IntegralResult:
    return integrate(RadialIntegrand(1.0, 3.0 - scheme.D, [(scheme.order_delta, 4)]), rel_tol)


@lru_cache(maxsize=256)
def _radial_dsq_gradsq(scheme: RegScheme, rel_tol: float) -> IntegralResult:
    f = RadialIntegrand(1.0, 3.0 - scheme.D, [(scheme.order_grad, 2), (scheme.order_delta, 2)])
    return integrate(f, rel_tol)


def singular_integrand(scheme: RegScheme) -> RadialIntegrand:
    """I_D 의 반지름 피적분 함수 z^{2-D} K_{1-D/2} K³_{D/2}, 원점 지수 -1 + 2ε"""
    return RadialIntegrand(1.0, 2.0 - scheme.D, [(scheme.order_delta, 1), (scheme.order_grad, 3)])


@lru_cache(maxsize=256)
def _radial_singular(scheme: RegScheme, rel_tol: float, grading: bool) -> IntegralResult:
    if scheme.limit:
        raise DomainError("I_D 의 수치 경로는 eps > 0 에서만 정의됩니다.")
    return integrate(singular_integrand(scheme), rel_tol, grading=grading)


@lru_cache(maxsize=256)
def _continued_omitted_bracket(scheme: RegScheme, rel_tol: float) -> IntegralResult:
    terms = [
        RadialIntegrand(1.0, 0.0, [(scheme.order_grad, 1), (scheme.order_delta, 1)]),
        RadialIntegrand(0.5 * scheme.D, -1.0, [(scheme.order_grad, 2)]),
    ]
    return integrate_continued(terms, rel_tol)


# ---------------------------------------------------------------------------
# 두 분포 적분
# ---------------------------------------------------------------------------

def int_delta_sq(scheme: RegScheme, rel_tol: float = DEFAULT_REL_TOL) -> DualResult:
    """
    ∫d^Dx Δ²(x)

    해석: (2-D)/(2m²)·Δ(0), 수치: m^{-D} c_D² S_D ∫ z K²_{1-D/2}

    Parameters
    ----------
    scheme : RegScheme
        정규화 지점
    rel_tol : float
        수치 적분 상대 허용 오차

    Returns
    -------
    DualResult
        D → 1 에서 1/(4m³)
    """
    analytic = (2.0 - scheme.D) / (2.0 * scheme.m ** 2) * delta_at_zero(scheme)
    quadrature = _radial_delta_sq(scheme, rel_tol).scaled(_measure(scheme, -scheme.D, 2))
    return DualResult(analytic_result(analytic), quadrature)


def int_grad_sq(scheme: RegScheme, rel_tol: float = DEFAULT_REL_TOL) -> DualResult:
    """
    ∫d^Dx Δ_μ²(x)

    해석: (D/2)·Δ(0), 수치: m^{2-D} c_D² S_D ∫ z K²_{D/2}.
    부분 적분 항등식 ∫Δ_μ² = Δ(0) - m²∫Δ² 와 일치합니다.
    """
    analytic = 0.5 * scheme.D * delta_at_zero(scheme)
    quadrature = _radial_grad_sq(scheme, rel_tol).scaled(_measure(scheme, 2.0 - scheme.D, 2))
    return DualResult(analytic_result(analytic), quadrature)


def int_lap_sq(scheme: RegScheme, rel_tol: float = DEFAULT_REL_TOL) -> DualResult:
    """
    ∫d^Dx Δ_μμ²(x) = ∫d^Dx Δ_μν²(x)

    해석: -(1 + D/2) m² Δ(0).
    수치: m⁴·∫Δ²(수치) - 2m²·Δ(0), δ 함수 성분은 이미 대수적으로 흡수되어 있습니다.
    """
    m2 = scheme.m ** 2
    delta0 = delta_at_zero(scheme)
    analytic = -(1.0 + 0.5 * scheme.D) * m2 * delta0
    quadrature = linear_combination(
        [(m2 * m2, int_delta_sq(scheme, rel_tol).quadrature)],
        constant=-2.0 * m2 * delta0,
    )
    return DualResult(analytic_result(analytic), quadrature)


def omitted_term_gamma_form(scheme: RegScheme) -> float:
    """
    생략 항의 감마 곱 표현 -(π/4) Γ(1-ε/2) [Γ(ε/2) + Γ(-ε/2)] ε² Γ(ε)

    ε → 0 에서 선형으로 0 이 됩니다.
    """
    if scheme.limit:
        return 0.0
    eps = scheme.eps
    return (-0.25 * math.pi * gamma(1.0 - 0.5 * eps)
            * (gamma(0.5 * eps) + gamma(-0.5 * eps)) * eps ** 2 * gamma(eps))


def omitted_term(scheme: RegScheme, rel_tol: float = DEFAULT_REL_TOL) -> DualResult:
    """
    라플라시안 제곱 적분에서 생략된 베셀 적분

    (D-1)·[∫K_{D/2}K_{1-D/2} dz + (D/2)∫z^{-1}K²_{D/2} dz]

    두 적분은 원점에서 각각 발산하지만 z^{-1} 항이 합에서 상쇄되므로
    멱급수 해석 접속으로 괄호 전체를 계산합니다.

    Parameters
    ----------
    scheme : RegScheme
        eps <= 0.2 인 정규화 지점 또는 극한 스킴
    rel_tol : float
        꼬리 구간 상대 허용 오차

    Returns
    -------
    DualResult
        해석: 감마 곱 표현, 수치: 해석 접속된 괄호 (극한 스킴에서는 둘 다 0)
    """
    _check_singular_eps(scheme, "omitted_term")
    if scheme.limit:
        zero = analytic_result(0.0)
        return DualResult(zero, IntegralResult(0.0, 0.0, QUADRATURE))
    bracket = _continued_omitted_bracket(scheme, rel_tol)
    logger.debug("omitted_term(eps=%g): 괄호=%.16g", scheme.eps, bracket.value)
    return DualResult(
        analytic_result(omitted_term_gamma_form(scheme)),
        bracket.scaled(scheme.D - 1.0),
    )


def delta_sq_sum_rule(scheme: RegScheme, path: str = QUADRATURE,
                      rel_tol: float = DEFAULT_REL_TOL) -> IntegralResult:
    """
    δ 함수 제곱 적분 m⁴∫Δ² + 2m²∫Δ_μ² + ∫Δ_μμ² = 0

    해석 경로에서는 세 닫힌 형태가 항등적으로 상쇄됩니다.
    """
    _check_path(path)
    m2 = scheme.m ** 2
    return linear_combination([
        (m2 * m2, int_delta_sq(scheme, rel_tol).select(path)),
        (2.0 * m2, int_grad_sq(scheme, rel_tol).select(path)),
        (1.0, int_lap_sq(scheme, rel_tol).select(path)),
    ])


# ---------------------------------------------------------------------------
# 네 분포 적분
# ---------------------------------------------------------------------------

def int_delta_4(scheme: RegScheme, rel_tol: float = DEFAULT_REL_TOL) -> DualResult:
    """
    ∫d^Dx Δ⁴(x)

    수치: c_D⁴ m^{-D} S_D ∫ z^{3-D} K⁴_{1-D/2}.
    해석: 원점 주요항만 남긴 근사
    c_D⁴ m^{-D} S_D (π²/16) Γ⁴(3/2 - D/2) Γ(D) 2^{4(1-D)}, D = 1 에서 1/(32m⁵) 로 정확합니다.
    """
    D = scheme.D
    prefactor = _measure(scheme, -D, 4)
    analytic = prefactor * math.pi ** 2 / 16.0 * gamma(1.5 - 0.5 * D) ** 4 * gamma(D) * 2.0 ** (4.0 * (1.0 - D))
    quadrature = _radial_delta_4(scheme, rel_tol).scaled(prefactor)
    return DualResult(analytic_result(analytic), quadrature)


def int_dsq_gradsq(scheme: RegScheme, rel_tol: float = DEFAULT_REL_TOL) -> DualResult:
    """
    ∫d^Dx Δ²(x) Δ_μ²(x)

    수치: m^{2-D} c_D⁴ S_D ∫ z^{3-D} K²_{D/2} K²_{1-D/2}.
    해석: 환원 (1/3)[Δ³(0) - m²∫Δ⁴], ∫Δ⁴ 는 해석 경로 값을 사용합니다.
    """
    delta0 = delta_at_zero(scheme)
    delta_4 = int_delta_4(scheme, rel_tol)
    analytic = (delta0 ** 3 - scheme.m ** 2 * delta_4.analytic.value) / 3.0
    quadrature = _radial_dsq_gradsq(scheme, rel_tol).scaled(_measure(scheme, 2.0 - scheme.D, 4))
    return DualResult(analytic_result(analytic), quadrature)


def dsq_gradsq_reduction(scheme: RegScheme, rel_tol: float = DEFAULT_REL_TOL) -> IntegralResult:
    """수치 ∫Δ⁴ 를 사용한 환원 (1/3)[Δ³(0) - m²∫Δ⁴]"""
    delta0 = delta_at_zero(scheme)
    return linear_combination(
        [(-scheme.m ** 2 / 3.0, int_delta_4(scheme, rel_tol).quadrature)],
        constant=delta0 ** 3 / 3.0,
    )


def i_singular(scheme: RegScheme, rel_tol: float = DEFAULT_REL_TOL,
               grading: bool = True) -> DualResult:
    """
    특이 적분 I_D = (D-1) m^{4-D} c_D⁴ S_D ∫ z^{2-D} K_{1-D/2} K³_{D/2}

    (D-1) 인자의 영점이 원점의 z^{-1+2ε} 거동에서 오는 Γ(2ε) 극점과 상쇄되어
    D → 1 에서 유한한 값 -1/(16m) 을 가집니다.

    Parameters
    ----------
    scheme : RegScheme
        eps <= 0.2 인 정규화 지점 또는 극한 스킴
    rel_tol : float
        수치 적분 상대 허용 오차
    grading : bool
        원점 치환 사용 여부. False 이면 작은 eps 에서 수렴하지 않습니다.

    Returns
    -------
    DualResult
        해석: -(m^{4-D}c_D⁴S_D)·ε·(π²/4)Γ(1+ε/2)Γ³(1-ε/2)2^{-5ε}Γ(2ε).
        극한 스킴에서는 수치 경로가 None 입니다.

    Raises
    ------
    QuadratureNonconvergence
        원점 치환 없이 허용 오차에 도달하지 못한 경우
    """
    _check_singular_eps(scheme, "i_singular")
    prefactor = _measure(scheme, 4.0 - scheme.D, 4)
    eps = scheme.eps
    # ε Γ(2ε) → 1/2
    eps_pole = 0.5 if scheme.limit else eps * gamma(2.0 * eps)
    analytic = (-prefactor * eps_pole * 0.25 * math.pi ** 2 * gamma(1.0 + 0.5 * eps)
                * gamma(1.0 - 0.5 * eps) ** 3 * 2.0 ** (-5.0 * eps))
    if scheme.limit:
        return DualResult(analytic_result(analytic))
    quadrature = _radial_singular(scheme, rel_tol, grading).scaled((scheme.D - 1.0) * prefactor)
    return DualResult(analytic_result(analytic), quadrature)


def int_mixed(scheme: RegScheme, path: Optional[str] = None,
              rel_tol: float = DEFAULT_REL_TOL) -> IntegralResult:
    """∫Δ Δ_μ Δ_ν Δ_μν = m²∫Δ²Δ_μ² + I_D, D → 1 에서 -1/(32m)"""
    path = resolve_path(scheme, path)
    return linear_combination([
        (scheme.m ** 2, int_dsq_gradsq(scheme, rel_tol).select(path)),
        (1.0, i_singular(scheme, rel_tol).select(path)),
    ])


def int_gradsq_gradsq(scheme: RegScheme, path: Optional[str] = None,
                      rel_tol: float = DEFAULT_REL_TOL) -> IntegralResult:
    """∫Δ_μ²Δ_ν² = -3m²∫Δ²Δ_μ² - 2I_D, D → 1 에서 1/(32m)"""
    path = resolve_path(scheme, path)
    return linear_combination([
        (-3.0 * scheme.m ** 2, int_dsq_gradsq(scheme, rel_tol).select(path)),
        (-2.0, i_singular(scheme, rel_tol).select(path)),
    ])


def int_dsq_lapsq(scheme: RegScheme, path: Optional[str] = None,
                  rel_tol: float = DEFAULT_REL_TOL) -> IntegralResult:
    """
    ∫Δ²Δ_λλ² = [-2m²Δ³(0) + m⁴∫Δ⁴]_{D=1} = -7/(32m)

    ε 에 대해 연속하지 않고 항상 D = 1 극한 스킴에서 계산합니다.
    """
    path = resolve_path(scheme, path)
    limit = RegScheme.one_dimensional(scheme.m)
    m2 = limit.m ** 2
    return linear_combination(
        [(m2 * m2, int_delta_4(limit, rel_tol).select(path))],
        constant=-2.0 * m2 * delta_at_zero(limit) ** 3,
    )


def int_dsq_hesssq(scheme: RegScheme, path: Optional[str] = None,
                   rel_tol: float = DEFAULT_REL_TOL) -> IntegralResult:
    """∫Δ²Δ_μν² = ∫Δ²Δ_λλ² - 2I_D, D → 1 에서 -3/(32m)"""
    path = resolve_path(scheme, path)
    return linear_combination([
        (1.0, int_dsq_lapsq(scheme, path, rel_tol)),
        (-2.0, i_singular(scheme, rel_tol).select(path)),
    ])


def partial_integration_residual(scheme: RegScheme, z_lower: float = 1e-3,
                                 step: float = 1e-5,
                                 rel_tol: float = DEFAULT_REL_TOL) -> float:
    """
    부분 적분 항등식의 상대 잔차

    u(z) = z^{1-D/2} K_{1-D/2}(z) 에 대해 구간 [z_lower, ∞) 에서
    ∫ u² (K²_{D/2})' dz = -u²K²_{D/2}|_{z_lower} + 2∫ z^{2-D} K_{1-D/2} K³_{D/2} dz.
    좌변의 도함수는 중앙 차분 (간격 step·z) 으로 계산합니다.

    Parameters
    ----------
    scheme : RegScheme
        eps > 0 인 정규화 지점
    z_lower : float
        적분 하한 (> 0)
    step : float
        상대 차분 간격

    Returns
    -------
    float
        |좌변 - 우변| / |우변|
    """
    if scheme.limit:
        raise DomainError("부분 적분 잔차는 eps > 0 에서 계산합니다.")
    if not (0.0 < z_lower < PANEL_SPLIT):
        raise DomainError(f"z_lower는 (0, {PANEL_SPLIT}) 구간에 있어야 합니다: {z_lower}")
    a, b = scheme.order_delta, scheme.order_grad
    f = singular_integrand(scheme)
    cutoff = f.tail_cutoff()

    def lhs_integrand(z):
        h = step * z
        derivative = (besselk(b, z + h) ** 2 - besselk(b, z - h) ** 2) / (2.0 * h)
        return besselk_scaled(a, z) ** 2 * derivative

    lhs = adaptive_integrate(lhs_integrand, z_lower, cutoff, rel_tol=rel_tol)
    bulk = adaptive_integrate(f, z_lower, cutoff, rel_tol=rel_tol)
    boundary = (besselk_scaled(a, z_lower) * besselk(b, z_lower)) ** 2
    rhs = 2.0 * bulk.value - boundary
    residual = abs(lhs.value - rhs) / abs(rhs)
    logger.debug("partial_integration_residual(eps=%g): 좌변=%.16g, 우변=%.16g, 잔차=%.3g",
                 scheme.eps, lhs.value, rhs, residual)
    return residual


# ---------------------------------------------------------------------------
# 이름 기반 접근
# ---------------------------------------------------------------------------

def _composite(op: Callable[..., IntegralResult]) -> Callable[[RegScheme, float], DualResult]:
    def evaluate(scheme: RegScheme, rel_tol: float) -> DualResult:
        analytic = op(scheme, ANALYTIC, rel_tol)
        quadrature = None if scheme.limit and op is not int_dsq_lapsq else op(scheme, QUADRATURE, rel_tol)
        return DualResult(analytic, quadrature)
    return evaluate


def _sum_rule(scheme: RegScheme, rel_tol: float) -> DualResult:
    return DualResult(delta_sq_sum_rule(scheme, ANALYTIC, rel_tol),
                      delta_sq_sum_rule(scheme, QUADRATURE, rel_tol))


_EVALUATORS: Dict[str, Callable[[RegScheme, float], DualResult]] = {
    "delta_sq": int_delta_sq,
    "grad_sq": int_grad_sq,
    "lap_sq": int_lap_sq,
    "delta_4": int_delta_4,
    "dsq_gradsq": int_dsq_gradsq,
    "i_singular": i_singular,
    "mixed_dgdg_hess": _composite(int_mixed),
    "gradsq_gradsq": _composite(int_gradsq_gradsq),
    "dsq_lapsq": _composite(int_dsq_lapsq),
    "dsq_hesssq": _composite(int_dsq_hesssq),
    "omitted_term": omitted_term,
    "delta_sq_sum_rule": _sum_rule,
}


def evaluate_integral(name: str, scheme: RegScheme,
                      rel_tol: float = DEFAULT_REL_TOL) -> DualResult:
    """
    이름으로 적분 계산

    Raises
    ------
    UnknownNameError
        INTEGRAL_NAMES 에 없는 이름
    """
    if name not in _EVALUATORS:
        raise UnknownNameError(name, INTEGRAL_NAMES)
    return _EVALUATORS[name](scheme, rel_tol)


def catalogue(scheme: RegScheme, rel_tol: float = DEFAULT_REL_TOL) -> Dict[str, DualResult]:
    """INTEGRAL_NAMES 순서로 전체 카탈로그 계산"""
    return {name: evaluate_integral(name, scheme, rel_tol) for name in INTEGRAL_NAMES}


# 이름 → (m = 1 에서의 D → 1 극한값, D = 1 질량 거듭제곱)
_LIMITS: Dict[str, Tuple[float, int]] = {
    "delta_sq": (0.25, -3),
    "grad_sq": (0.25, -1),
    "lap_sq": (-0.75, 1),
    "delta_4": (1.0 / 32.0, -5),
    "dsq_gradsq": (1.0 / 32.0, -3),
    "i_singular": (-1.0 / 16.0, -1),
    "mixed_dgdg_hess": (-1.0 / 32.0, -1),
    "gradsq_gradsq": (1.0 / 32.0, -1),
    "dsq_lapsq": (-7.0 / 32.0, -1),
    "dsq_hesssq": (-3.0 / 32.0, -1),
    "omitted_term": (0.0, 0),
    "delta_sq_sum_rule": (0.0, 1),
}


def limit_mass_power(name: str) -> int:
    """D = 1 에서 적분 값의 질량 거듭제곱 p (값 ∝ m^p)"""
    if name not in _LIMITS:
        raise UnknownNameError(name, INTEGRAL_NAMES)
    return _LIMITS[name][1]


def reference_limit(name: str, m: float) -> float:
    """
    D → 1 기준 극한값

    Parameters
    ----------
    name : str
        INTEGRAL_NAMES 의 이름
    m : float
        질량

    Returns
    -------
    float
        m 으로 척도 변환된 극한값
    """
    power = limit_mass_power(name)
    return _LIMITS[name][0] * m ** power
