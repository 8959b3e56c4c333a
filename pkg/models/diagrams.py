"""
3-루프 파인만 다이어그램과 바닥 상태 에너지

여덟 개 다이어그램을 적분 카탈로그에 대응시키고 결합 상수 가중치를 곱해
바닥 상태 에너지 E = m/2 + g/4 + g²/(16m) 을 조립합니다.

δ^{(D)}(0) 을 포함하는 야코비안 다이어그램은 차원 정규화에서 0 이므로
다이어그램 목록에 포함하지 않습니다.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DomainError, UnknownNameError
from .extrapolate import DEFAULT_EPS_GRID, EpsSeries, grid_degree, richardson
from .integrals import (
    ANALYTIC,
    QUADRATURE,
    resolve_path,
    int_delta_4,
    int_delta_sq,
    int_dsq_hesssq,
    int_grad_sq,
    int_gradsq_gradsq,
    int_lap_sq,
    int_mixed,
)
from .propagator import RegScheme, delta_at_zero, delta_lap_at_zero
from .quadrature import DEFAULT_REL_TOL, IntegralResult, analytic_result

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagramSpec:
    """
    다이어그램 정의

    Parameters
    ----------
    tag : str
        다이어그램 이름
    order : int
        결합 상수 g 의 차수
    weight : Fraction
        에너지 전개에서의 가중치 (g^order 계수)
    description : str
        적분 구성 설명
    """

    tag: str
    order: int
    weight: Fraction
    description: str


# 2차 괄호 다이어그램은 -(g²/2!)·{4, 2, 2, 4, 16, 4}
DIAGRAMS: Tuple[DiagramSpec, ...] = (
    DiagramSpec("d6_local", 1, Fraction(-1), "-Δ(0)Δ_μμ(0)"),
    DiagramSpec("d7_local", 2, Fraction(9, 2), "-Δ²(0)Δ_μμ(0)"),
    DiagramSpec("d8_chain_d0", 2, Fraction(-2), "-Δ(0)Δ_μμ(0)∫Δ_μ²"),
    DiagramSpec("d9_chain_hh", 2, Fraction(-1), "Δ²(0)∫Δ_μν²"),
    DiagramSpec("d10_chain_00", 2, Fraction(-1), "Δ_μμ²(0)∫Δ²"),
    DiagramSpec("d11_watermelon_hess", 2, Fraction(-2), "∫Δ²Δ_μν²"),
    DiagramSpec("d12_watermelon_mixed", 2, Fraction(-8), "∫ΔΔ_μΔ_νΔ_μν"),
    DiagramSpec("d13_watermelon_grad", 2, Fraction(-2), "∫Δ_μ²Δ_ν²"),
)

DIAGRAM_IDS: Tuple[str, ...] = tuple(spec.tag for spec in DIAGRAMS)
_SPECS: Dict[str, DiagramSpec] = {spec.tag: spec for spec in DIAGRAMS}

WATERMELONS = ("d11_watermelon_hess", "d12_watermelon_mixed", "d13_watermelon_grad")


def diagram_spec(tag: str) -> DiagramSpec:
    if tag not in _SPECS:
        raise UnknownNameError(tag, DIAGRAM_IDS)
    return _SPECS[tag]


def diagram_result(tag: str, scheme: RegScheme, path: Optional[str] = None,
                   rel_tol: float = DEFAULT_REL_TOL) -> IntegralResult:
    """
    다이어그램 값과 오차 추정치

    Parameters
    ----------
    tag : str
        DIAGRAM_IDS 의 이름
    scheme : RegScheme
        정규화 지점 (극한 스킴 포함)
    path : str, optional
        'analytic' 또는 'quadrature'. 생략하면 극한 스킴은 해석 경로, 그 외는 수치 경로
    rel_tol : float
        수치 적분 상대 허용 오차

    Returns
    -------
    IntegralResult
        다이어그램 값
    """
    diagram_spec(tag)
    path = resolve_path(scheme, path)
    delta0 = delta_at_zero(scheme)
    lap0 = delta_lap_at_zero(scheme)

    if tag == "d6_local":
        return analytic_result(-delta0 * lap0)
    if tag == "d7_local":
        return analytic_result(-delta0 ** 2 * lap0)
    if tag == "d8_chain_d0":
        return int_grad_sq(scheme, rel_tol).select(path).scaled(-delta0 * lap0)
    if tag == "d9_chain_hh":
        return int_lap_sq(scheme, rel_tol).select(path).scaled(delta0 ** 2)
    if tag == "d10_chain_00":
        return int_delta_sq(scheme, rel_tol).select(path).scaled(lap0 ** 2)
    if tag == "d11_watermelon_hess":
        return int_dsq_hesssq(scheme, path, rel_tol)
    if tag == "d12_watermelon_mixed":
        return int_mixed(scheme, path, rel_tol)
    return int_gradsq_gradsq(scheme, path, rel_tol)


def diagram_value(tag: str, scheme: RegScheme, path: Optional[str] = None,
                  rel_tol: float = DEFAULT_REL_TOL) -> float:
    """다이어그램 값 (``diagram_result`` 의 값만 반환)"""
    return diagram_result(tag, scheme, path, rel_tol).value


def diagram_mass_power(tag: str) -> int:
    """D = 1 에서 다이어그램 값의 질량 거듭제곱: d6 은 0, g² 다이어그램은 -1"""
    return 0 if diagram_spec(tag).order == 1 else -1


def paper_limit(tag: str, m: float) -> float:
    """D → 1 기준 다이어그램 값 (m 척도 변환 포함)"""
    power = diagram_mass_power(tag)
    if not m > 0:
        raise DomainError(f"질량(m)은 0보다 커야 합니다: {m}")
    limits = {
        "d6_local": -0.25,
        "d7_local": -1.0 / 8.0,
        "d8_chain_d0": -1.0 / 16.0,
        "d9_chain_hh": -3.0 / 16.0,
        "d10_chain_00": 1.0 / 16.0,
        "d11_watermelon_hess": -3.0 / 32.0,
        "d12_watermelon_mixed": -1.0 / 32.0,
        "d13_watermelon_grad": 1.0 / 32.0,
    }
    return limits[tag] * m ** power


def watermelon_dimensional_form(tag: str, scheme: RegScheme,
                                delta_4: Optional[float] = None) -> float:
    """
    수박 다이어그램의 D 의존 닫힌 형태

    Δ³(0) 과 ∫Δ⁴ 로 표현되며 극 인자 1/(3D - 4) 를 가집니다.

    Parameters
    ----------
    tag : str
        d11_watermelon_hess, d12_watermelon_mixed, d13_watermelon_grad 중 하나
    scheme : RegScheme
        정규화 지점
    delta_4 : float, optional
        ∫Δ⁴ 값. 생략하면 극한 스킴은 해석 값, 그 외는 수치 값을 사용합니다.

    Returns
    -------
    float
        D → 1 에서 -3/(32m), -1/(32m), 1/(32m)
    """
    if tag not in WATERMELONS:
        raise UnknownNameError(tag, WATERMELONS)
    if delta_4 is None:
        dual = int_delta_4(scheme)
        delta_4 = dual.analytic.value if scheme.limit else dual.quadrature.value

    D = scheme.D
    m2 = scheme.m ** 2
    cube = delta_at_zero(scheme) ** 3
    pole = 3.0 * D - 4.0
    if tag == "d11_watermelon_hess":
        return m2 / (3.0 * pole) * ((8.0 - 7.0 * D) * cube + (D + 4.0) * m2 * delta_4)
    if tag == "d12_watermelon_mixed":
        return -m2 / (6.0 * pole) * ((5.0 * D - 8.0) * cube - 2.0 * (D - 4.0) * m2 * delta_4)
    return m2 / (3.0 * pole) * (2.0 * (D - 2.0) * cube + (D + 4.0) * m2 * delta_4)


def energy_coefficients(m: float, values: Dict[str, float]) -> Tuple[float, float, float]:
    """
    다이어그램 값으로부터 에너지 전개 계수 (g⁰, g¹, g²)

    Parameters
    ----------
    m : float
        질량
    values : dict
        다이어그램 이름 → 값 (해석 또는 외삽 값)

    Returns
    -------
    tuple
        (m/2, -d6, 가중 2차 합), 기준값 (m/2, 1/4, 1/(16m))
    """
    missing = [tag for tag in DIAGRAM_IDS if tag not in values]
    if missing:
        raise DomainError(f"다이어그램 값이 없습니다: {', '.join(missing)}")
    coeffs = [0.5 * m, 0.0, 0.0]
    for spec in DIAGRAMS:
        coeffs[spec.order] += float(spec.weight) * values[spec.tag]
    return coeffs[0], coeffs[1], coeffs[2]


def _check_energy_args(g: float, m: float, order: int) -> None:
    if g < 0:
        raise DomainError(f"결합 상수(g)는 0 이상이어야 합니다: {g}")
    if not m > 0:
        raise DomainError(f"질량(m)은 0보다 커야 합니다: {m}")
    if order not in (0, 1, 2):
        raise DomainError(f"차수(order)는 0, 1, 2 중 하나여야 합니다: {order}")


def energy_contributions(g: float, m: float, order: int = 2) -> List[float]:
    """
    차수별 에너지 기여 [m/2, g·c₁, g²·c₂] (order 까지)

    다이어그램 값은 D = 1 극한 스킴의 해석 경로를 사용합니다.
    """
    _check_energy_args(g, m, order)
    limit = RegScheme.one_dimensional(m)
    values = {tag: diagram_value(tag, limit, ANALYTIC) for tag in DIAGRAM_IDS}
    coeffs = energy_coefficients(m, values)
    return [coeffs[k] * g ** k for k in range(order + 1)]


def energy(g: float, m: float, order: int = 2) -> float:
    """
    바닥 상태 에너지 E = m/2 + g/4 + g²/(16m) (order 차까지)

    Parameters
    ----------
    g : float
        결합 상수 (>= 0)
    m : float
        질량 (> 0)
    order : int
        전개 차수 0, 1, 2

    Returns
    -------
    float
        에너지

    Examples
    --------
    >>> energy(1.0, 1.0, 2)
    0.8125
    """
    return sum(energy_contributions(g, m, order))


@dataclass(frozen=True)
class DiagramReport:
    """
    다이어그램별 외삽 결과

    Parameters
    ----------
    id : str
        다이어그램 이름
    value_limit : float
        수치 경로 외삽 극한값
    limit_error : float
        외삽 오차 추정치
    analytic_limit : float
        극한 스킴 해석 경로 값
    paper_limit : float
        기준 극한값
    eps_samples : EpsSeries
        m = 1 표본에 m^p 를 곱한 ε 표본열
    rel_err : float
        |value_limit - paper_limit| / |paper_limit|
    """

    id: str
    value_limit: float
    limit_error: float
    analytic_limit: float
    paper_limit: float
    eps_samples: EpsSeries
    rel_err: float


def diagram_report(tag: str, m: float = 1.0,
                   eps_grid: Sequence[float] = DEFAULT_EPS_GRID,
                   rel_tol: float = DEFAULT_REL_TOL,
                   degree: Optional[int] = None) -> DiagramReport:
    """
    ε 격자에서 수치 경로 값을 계산하고 외삽해 기준값과 비교합니다.

    표본은 m = 1 에서 계산한 뒤 D = 1 질량 척도 m^p 를 곱합니다.
    외삽 차수를 생략하면 ``grid_degree(len(eps_grid))`` 를 사용합니다.
    """
    power = diagram_mass_power(tag)
    if not m > 0:
        raise DomainError(f"질량(m)은 0보다 커야 합니다: {m}")
    scale = m ** power
    degree = grid_degree(len(eps_grid)) if degree is None else degree

    values = []
    for eps in eps_grid:
        values.append(scale * diagram_value(tag, RegScheme(m=1.0, eps=eps), QUADRATURE, rel_tol))
        logger.info("%s: eps=%g 값=%.12g", tag, eps, values[-1])
    series = EpsSeries.from_values(eps_grid, values)
    value_limit, limit_error = richardson(series, degree)
    reference = paper_limit(tag, m)
    return DiagramReport(
        id=tag,
        value_limit=value_limit,
        limit_error=limit_error,
        analytic_limit=diagram_value(tag, RegScheme.one_dimensional(m), ANALYTIC),
        paper_limit=reference,
        eps_samples=series,
        rel_err=abs(value_limit - reference) / abs(reference),
    )
