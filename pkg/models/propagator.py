"""
D = 1 - ε 차원 상관 함수 모듈

상관 함수 Δ(x)와 그 1차, 2차 도함수를 변형 베셀 함수로 표현하고,
정규화 상수 c_D 와 구면 면적 S_D 를 제공합니다.

원점의 δ 함수 성분은 여기서 수치 객체로 다루지 않습니다.
점별 연산은 원점 밖에서만 정의되며, 원점 값은 별도 함수로 제공합니다.
"""

import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .errors import DomainError
from .specfun import besselk_scaled, gamma

EPS_MAX = 0.5


@dataclass(frozen=True)
class RegScheme:
    """
    정규화 지점 (질량 m, ε, D = 1 - ε)

    Parameters
    ----------
    m : float
        질량 척도 (> 0)
    eps : float
        차원 정규화 매개변수, 0 < eps <= 0.5
    limit : bool
        True 이면 D = 1 정확한 극한점 (eps = 0). ``one_dimensional`` 로 생성합니다.

    Examples
    --------
    >>> scheme = RegScheme(m=1.0, eps=0.1)
    >>> round(scheme.D, 12)
    0.9
    """

    m: float
    eps: float
    limit: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.m) and self.m > 0):
            raise DomainError(f"질량(m)은 0보다 큰 유한한 값이어야 합니다: {self.m}")
        if self.limit:
            if self.eps != 0.0:
                raise DomainError("극한 스킴(limit=True)의 eps는 0이어야 합니다.")
        elif not (0.0 < self.eps <= EPS_MAX):
            raise DomainError(f"eps는 (0, {EPS_MAX}] 구간에 있어야 합니다: {self.eps}")

    @classmethod
    def one_dimensional(cls, m: float) -> "RegScheme":
        """D = 1 극한 스킴"""
        return cls(m=m, eps=0.0, limit=True)

    @property
    def D(self) -> float:
        return 1.0 - self.eps

    @property
    def c_D(self) -> float:
        """전파자 정규화 상수 m^{D-2} / (2π)^{D/2}"""
        return self.m ** (self.D - 2.0) / (2.0 * math.pi) ** (0.5 * self.D)

    @property
    def S_D(self) -> float:
        """D 차원 단위 구면 면적 2π^{D/2} / Γ(D/2)"""
        return 2.0 * math.pi ** (0.5 * self.D) / gamma(0.5 * self.D)

    @property
    def order_delta(self) -> float:
        """Δ 의 베셀 차수 1 - D/2"""
        return 1.0 - 0.5 * self.D

    @property
    def order_grad(self) -> float:
        """Δ_μ 의 베셀 차수 D/2"""
        return 0.5 * self.D

    def rescaled(self, factor: float) -> "RegScheme":
        """질량을 factor 배 한 스킴"""
        return RegScheme(m=self.m * factor, eps=self.eps, limit=self.limit)


@dataclass(frozen=True)
class RadialPoint:
    """
    반지름 r = |x| 인 점

    Parameters
    ----------
    r : float
        유클리드 노름 (>= 0)
    """

    r: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r >= 0):
            raise DomainError(f"반지름(r)은 0 이상이어야 합니다: {self.r}")

    def reduced(self, m: float) -> float:
        """축약 길이 z = m·r"""
        return m * self.r


PointLike = Union[RadialPoint, float]


def _off_origin(scheme: RegScheme, p: PointLike, what: str) -> Tuple[float, float]:
    point = p if isinstance(p, RadialPoint) else RadialPoint(float(p))
    if point.r == 0.0:
        raise DomainError(f"{what}는 원점에서 정의되지 않습니다. 원점 값 함수를 사용하세요.")
    return point.r, point.reduced(scheme.m)


def delta(scheme: RegScheme, p: PointLike) -> float:
    """
    상관 함수 Δ(x) = c_D z^{1-D/2} K_{1-D/2}(z)

    Parameters
    ----------
    scheme : RegScheme
        정규화 지점
    p : RadialPoint or float
        r > 0 인 점

    Returns
    -------
    float
        Δ(x) (양수, r에 대해 감소)
    """
    _, z = _off_origin(scheme, p, "delta")
    return scheme.c_D * besselk_scaled(scheme.order_delta, z)


def delta_at_zero(scheme: RegScheme) -> float:
    """
    원점 값 Δ(0) = m^{D-2} Γ(1 - D/2) / (4π)^{D/2}

    D → 1 에서 1/(2m) 로 수렴합니다.
    """
    if scheme.limit:
        return 0.5 / scheme.m
    D = scheme.D
    return scheme.m ** (D - 2.0) * gamma(1.0 - 0.5 * D) / (4.0 * math.pi) ** (0.5 * D)


def delta_grad_radial(scheme: RegScheme, p: PointLike) -> float:
    """
    1차 도함수의 반지름 성분 g(r), Δ_μ(x) = g(r) x̂_μ

    g(r) = -m c_D z^{1-D/2} K_{D/2}(z) 이며 r > 0 에서 항상 음수입니다.
    원점 값 Δ_μ(0)은 반대칭성에 의해 0 입니다 (``delta_grad_at_zero``).
    """
    _, z = _off_origin(scheme, p, "delta_grad_radial")
    D = scheme.D
    return -scheme.m * scheme.c_D * z ** (1.0 - D) * besselk_scaled(scheme.order_grad, z)


def delta_grad_at_zero(scheme: RegScheme) -> float:
    """반대칭성에 의한 원점 값 Δ_μ(0) = 0"""
    return 0.0


def delta_lap_regular(scheme: RegScheme, p: PointLike) -> float:
    """
    라플라시안의 원점 밖 성분 Δ_μμ(x) = m² Δ(x)

    δ^{(D)}(x) 성분은 적분 환원 규칙에서만 다룹니다.
    """
    return scheme.m ** 2 * delta(scheme, p)


def delta_lap_at_zero(scheme: RegScheme) -> float:
    """일치점 규칙 Δ_μμ(0) = m² Δ(0), D → 1 에서 m/2"""
    return scheme.m ** 2 * delta_at_zero(scheme)


def hessian_invariants(scheme: RegScheme, p: PointLike) -> Tuple[float, float]:
    """
    2차 도함수 분해 Δ_μν = a x̂_μx̂_ν + b (δ_μν - D x̂_μx̂_ν)

    Parameters
    ----------
    scheme : RegScheme
        정규화 지점
    p : RadialPoint or float
        r > 0 인 점

    Returns
    -------
    tuple
        (a, b), a = m²Δ(x), b = -c_D m^{2-D} r^{-D} z^{D/2} K_{D/2}(z) = g(r)/r
    """
    r, z = _off_origin(scheme, p, "hessian_invariants")
    D = scheme.D
    a = scheme.m ** 2 * scheme.c_D * besselk_scaled(scheme.order_delta, z)
    b = -scheme.c_D * scheme.m ** (2.0 - D) * r ** (-D) * besselk_scaled(scheme.order_grad, z)
    return a, b


def hessian_eigenvalues(scheme: RegScheme, p: PointLike) -> Tuple[float, float]:
    """
    Δ_μν 의 고유값 (반지름 방향, 횡방향)

    반지름 방향 a + (1-D)b 는 g'(r), 횡방향 b 는 g(r)/r 이며 중복도는 D-1 입니다.
    """
    a, b = hessian_invariants(scheme, p)
    return a + (1.0 - scheme.D) * b, b


def hessian_trace(scheme: RegScheme, p: PointLike) -> float:
    """대각합 Δ_μμ = 반지름 고유값 + (D-1)·횡방향 고유값"""
    radial, transverse = hessian_eigenvalues(scheme, p)
    return radial + (scheme.D - 1.0) * transverse


def hessian_contraction(scheme: RegScheme, p: PointLike) -> float:
    """완전 축약 Δ_μνΔ_μν = (a + (1-D)b)² + (D-1)b²"""
    radial, transverse = hessian_eigenvalues(scheme, p)
    return radial ** 2 + (scheme.D - 1.0) * transverse ** 2


def correlator_1d(m: float, tau: float) -> float:
    """1차원 상관 함수 e^{-m|τ|} / (2m)"""
    return math.exp(-m * abs(tau)) / (2.0 * m)


def correlator_1d_dot(m: float, tau: float) -> float:
    """1차원 1차 도함수 -(1/2) sgn(τ) e^{-m|τ|}, τ = 0 에서 0"""
    return -0.5 * float(np.sign(tau)) * math.exp(-m * abs(tau))


def correlator_1d_ddot_regular(m: float, tau: float) -> float:
    """1차원 2차 도함수의 정칙 부분 (m/2) e^{-m|τ|}"""
    return 0.5 * m * math.exp(-m * abs(tau))
