"""
특수 함수 모듈

감마 함수와 분수 차수의 제2종 변형 베셀 함수 K_ν(z)를 계산합니다.
전파자와 모든 닫힌 형태 공식은 이 모듈의 함수들로 구성됩니다.
"""

import logging
import math
from typing import Union

import numpy as np
from scipy import integrate, special

from .errors import DomainError, GammaPoleError, QuadratureNonconvergence

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# 베셀 차수 허용 범위 (열린 구간)
ORDER_MIN = 0.0
ORDER_MAX = 2.0

# K_ν(z) 정의역
Z_MIN = 1e-8
Z_MAX = 700.0

# 직접 계산 / 지수 스케일 계산 경계
Z_SWITCH = 2.0

SMALL_Z_LIMIT = 0.1

INTEGRAL_REP_Z_MIN = 1e-6
INTEGRAL_REP_Z_MAX = 50.0


def _check_order(order: float, upper: float = ORDER_MAX) -> float:
    nu = float(order)
    if not (ORDER_MIN < nu < upper):
        raise DomainError(f"베셀 차수(order)는 ({ORDER_MIN}, {upper}) 구간에 있어야 합니다: {nu}")
    return nu


def _scalar_or_array(values: np.ndarray) -> ArrayLike:
    return float(values) if np.ndim(values) == 0 else values


def gamma(x: float) -> float:
    """
    실수 감마 함수 Γ(x)

    음의 비정수 인자는 반사 공식 Γ(x) = π / (sin(πx) Γ(1-x)) 로 계산합니다.

    Parameters
    ----------
    x : float
        인자 (0, -1, -2, ... 제외)

    Returns
    -------
    float
        Γ(x)

    Raises
    ------
    GammaPoleError
        x가 0 또는 음의 정수인 경우
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"감마 함수의 인자는 유한해야 합니다: {x}")
    if x <= 0.0 and x == math.floor(x):
        raise GammaPoleError(f"감마 함수는 x={x:g}에서 극점을 가집니다.")
    if x > 0.0:
        return float(special.gamma(x))

    # sin(πx)의 정확도를 위해 주기 2로 인자를 축소
    reduced = x - 2.0 * math.floor(x / 2.0)
    return math.pi / (math.sin(math.pi * reduced) * float(special.gamma(1.0 - x)))


def besselk(order: float, z: ArrayLike) -> ArrayLike:
    """
    제2종 변형 베셀 함수 K_ν(z)

    z <= Z_SWITCH 에서는 직접 계산하고, 그보다 큰 z에서는
    지수 스케일된 K_ν(z)·e^z 에 e^{-z}를 곱해 계산합니다.

    Parameters
    ----------
    order : float
        차수 ν, 0 < ν < 2
    z : float or np.ndarray
        인자, Z_MIN <= z <= Z_MAX

    Returns
    -------
    float or np.ndarray
        K_ν(z)

    Raises
    ------
    DomainError
        차수나 인자가 정의역을 벗어난 경우
    """
    nu = _check_order(order)
    zz = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(zz)) or np.any(zz < Z_MIN) or np.any(zz > Z_MAX):
        raise DomainError(f"besselk의 인자 z는 [{Z_MIN:g}, {Z_MAX:g}] 구간에 있어야 합니다.")

    values = np.where(
        zz <= Z_SWITCH,
        special.kv(nu, zz),
        special.kve(nu, zz) * np.exp(-zz),
    )
    return _scalar_or_array(values)


def besselk_small_z(order: float, z: float) -> float:
    """
    K_ν(z)의 원점 근방 주요항 (1/2)Γ(ν)(z/2)^{-ν}

    Parameters
    ----------
    order : float
        차수 ν > 0
    z : float
        0 < z < SMALL_Z_LIMIT

    Returns
    -------
    float
        주요항 근사값
    """
    nu = _check_order(order)
    z = float(z)
    if not (0.0 < z < SMALL_Z_LIMIT):
        raise DomainError(f"besselk_small_z는 0 < z < {SMALL_Z_LIMIT}에서만 정의됩니다: {z}")
    return 0.5 * gamma(nu) * (0.5 * z) ** (-nu)


def besselk_scaled(order: float, z: ArrayLike) -> ArrayLike:
    """
    원점에서도 유한한 z^ν K_ν(z)

    z < Z_MIN 에서는 원점 전개
    2^{ν-1}Γ(ν)[1 + z²/(4(1-ν))] + 2^{-ν-1}Γ(-ν) z^{2ν}
    를 사용합니다. z = 0 에서의 값은 2^{ν-1}Γ(ν) 입니다.

    Parameters
    ----------
    order : float
        차수 ν, 0 < ν < 2
    z : float or np.ndarray
        0 <= z <= Z_MAX

    Returns
    -------
    float or np.ndarray
        z^ν K_ν(z)
    """
    nu = _check_order(order)
    zz = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(zz)) or np.any(zz < 0.0) or np.any(zz > Z_MAX):
        raise DomainError(f"besselk_scaled의 인자 z는 [0, {Z_MAX:g}] 구간에 있어야 합니다.")

    lead = 2.0 ** (nu - 1.0) * gamma(nu)
    if nu == 1.0:
        origin = np.full_like(zz, lead)
    else:
        origin = (
            lead * (1.0 + zz * zz / (4.0 * (1.0 - nu)))
            + 2.0 ** (-nu - 1.0) * gamma(-nu) * zz ** (2.0 * nu)
        )

    safe = np.maximum(zz, Z_MIN)
    regular = safe ** nu * np.asarray(besselk(nu, safe))
    return _scalar_or_array(np.where(zz < Z_MIN, origin, regular))


def besselk_integral_rep(order: float, z: float, rel_tol: float = 1e-9) -> float:
    """
    적분 표현을 이용한 K_ν(z) 독립 계산

    K_ν(z) = π^{-1/2} (z/2)^{-ν} Γ(1/2+ν) ∫₀^∞ dt (cosh t)^{-2ν} cos(z sinh t)

    s = sinh t 로 치환하면 ∫₀^∞ (1+s²)^{-ν-1/2} cos(zs) ds 가 되며,
    이를 푸리에형 적분 규칙으로 계산합니다.

    Parameters
    ----------
    order : float
        차수 ν, 0 < ν < 1
    z : float
        INTEGRAL_REP_Z_MIN <= z <= INTEGRAL_REP_Z_MAX
    rel_tol : float
        요구 상대 오차

    Returns
    -------
    float
        K_ν(z)

    Raises
    ------
    QuadratureNonconvergence
        진동 적분의 오차 추정치가 허용 오차를 넘는 경우
    """
    nu = _check_order(order, upper=1.0)
    z = float(z)
    if not (INTEGRAL_REP_Z_MIN <= z <= INTEGRAL_REP_Z_MAX):
        raise DomainError(
            f"적분 표현은 z ∈ [{INTEGRAL_REP_Z_MIN:g}, {INTEGRAL_REP_Z_MAX:g}]에서만 사용합니다: {z}"
        )

    exponent = -nu - 0.5

    def kernel(s: float) -> float:
        return (1.0 + s * s) ** exponent

    result = integrate.quad(kernel, 0.0, np.inf, weight="cos", wvar=z,
                            epsabs=0.01 * rel_tol, limlst=200, full_output=1)
    value, abserr = result[0], result[1]
    prefactor = (0.5 * z) ** (-nu) * gamma(0.5 + nu) / math.sqrt(math.pi)
    k_value = prefactor * value

    achieved = abserr / abs(value) if value != 0.0 else math.inf
    logger.debug("besselk_integral_rep(nu=%g, z=%g): 값=%.16g, 상대오차=%.3g", nu, z, k_value, achieved)
    if achieved > rel_tol:
        raise QuadratureNonconvergence(
            f"적분 표현이 수렴하지 않았습니다 (nu={nu:g}, z={z:g})",
            partial_value=k_value,
            achieved_tolerance=achieved,
        )
    return k_value
