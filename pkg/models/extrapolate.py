"""
ε → 0 외삽 모듈

감소하는 ε 격자의 표본에 다항식 value(ε) = c₀ + c₁ε + ... 을 맞추고
c₀ 를 D = 1 극한값으로 사용합니다.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import DegenerateGridError, DomainError

logger = logging.getLogger(__name__)

DEFAULT_EPS_GRID: Tuple[float, ...] = (0.2, 0.1, 0.05, 0.025)
DEFAULT_DEGREE = 2
MIN_SAMPLES = 3
RATIO_MIN = 1.5
RATIO_MAX = 4.0
# 검증 그리드의 외삽 차수 상한
GRID_DEGREE_MAX = 3


@dataclass(frozen=True)
class EpsSeries:
    """
    ε 표본열 ((eps, value), ...)

    Parameters
    ----------
    samples : sequence of (eps, value)
        eps 가 엄격히 감소하는 3개 이상의 표본, 이웃 비율 eps_k/eps_{k+1} ∈ [1.5, 4]

    Examples
    --------
    >>> series = EpsSeries.from_values([0.2, 0.1, 0.05], [1.0, 1.0, 1.0])
    >>> len(series)
    3
    """

    samples: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        samples = tuple((float(e), float(v)) for e, v in self.samples)
        object.__setattr__(self, "samples", samples)
        if len(samples) < MIN_SAMPLES:
            raise DomainError(f"외삽에는 최소 {MIN_SAMPLES}개의 ε 표본이 필요합니다: {len(samples)}개")
        eps = [e for e, _ in samples]
        if any(e <= 0 for e in eps):
            raise DomainError("ε 값은 0보다 커야 합니다.")
        for larger, smaller in zip(eps, eps[1:]):
            if smaller == larger:
                raise DegenerateGridError(f"ε 값이 중복되었습니다: {smaller}")
            if smaller > larger:
                raise DomainError("ε 값은 엄격히 감소해야 합니다.")
            ratio = larger / smaller
            if not (RATIO_MIN <= ratio <= RATIO_MAX):
                raise DomainError(
                    f"이웃 ε 비율은 [{RATIO_MIN}, {RATIO_MAX}] 구간에 있어야 합니다: {larger:g}/{smaller:g}"
                )

    @classmethod
    def from_values(cls, eps: Iterable[float], values: Iterable[float]) -> "EpsSeries":
        eps, values = list(eps), list(values)
        if len(eps) != len(values):
            raise DomainError("ε 목록과 값 목록의 길이가 다릅니다.")
        return cls(tuple(zip(eps, values)))

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def eps(self) -> np.ndarray:
        return np.array([e for e, _ in self.samples])

    @property
    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.samples])


def grid_degree(n_samples: int) -> int:
    """
    검증 그리드의 외삽 차수 min(3, n_samples - 1)

    기본 격자(표본 4개)에서는 모든 표본을 지나는 3차 다항식입니다.
    """
    if n_samples < MIN_SAMPLES:
        raise DomainError(f"외삽에는 최소 {MIN_SAMPLES}개의 ε 표본이 필요합니다: {n_samples}개")
    return min(GRID_DEGREE_MAX, n_samples - 1)


def _constant_term(eps: np.ndarray, values: np.ndarray) -> float:
    matrix = np.vander(eps, len(eps), increasing=True)
    try:
        coeffs = np.linalg.solve(matrix, values)
    except np.linalg.LinAlgError as exc:
        raise DegenerateGridError(f"외삽 연립방정식이 특이합니다: {exc}") from exc
    return float(coeffs[0])


def richardson(series: EpsSeries, degree: int = DEFAULT_DEGREE) -> Tuple[float, float]:
    """
    다항식 외삽

    가장 작은 degree+1 개 ε 표본을 지나는 degree 차 다항식의 상수항을 구합니다.

    Parameters
    ----------
    series : EpsSeries
        ε 표본열
    degree : int
        다항식 차수, 1 <= degree <= len(series) - 1

    Returns
    -------
    tuple
        (극한값, 오차 추정치 |c₀(degree) - c₀(degree-1)|)

    Raises
    ------
    DegenerateGridError
        연립방정식이 특이한 경우
    """
    if not (1 <= degree <= len(series) - 1):
        raise DomainError(f"차수는 1 이상 {len(series) - 1} 이하여야 합니다: {degree}")

    eps, values = series.eps, series.values
    limit = _constant_term(eps[-(degree + 1):], values[-(degree + 1):])
    lower = _constant_term(eps[-degree:], values[-degree:])
    err = abs(limit - lower)
    logger.debug("richardson(degree=%d): 극한=%.16g, 오차=%.3g", degree, limit, err)
    return limit, err
