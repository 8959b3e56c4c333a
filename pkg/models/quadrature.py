"""
반지름 적분 모듈

amplitude · z^α · ∏ K_{ν_i}(z)^{p_i} 꼴의 피적분 함수를 (0, ∞)에서 적분합니다.

- [0, 1] 구간: 원점 지수 p₀ 가 (-1, -0.25] 이면 z = u^{1/(p₀+1)} 치환으로
  피적분 함수를 유계로 만든 뒤 적분합니다.
- [1, Z] 구간: 지수 감쇠 포락선으로 상한 Z 를 정합니다.
- 두 구간 모두 가우스-르장드르 규칙과 이분법 적응 분할을 사용합니다.

원점 지수가 -1 이하인 항들의 합은 ``integrate_continued`` 에서
멱급수의 해석 접속으로 계산합니다.
"""

import heapq
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np
from scipy import special

from .errors import DomainError, IntegrabilityError, QuadratureNonconvergence
from .specfun import Z_MAX, besselk_scaled, gamma

logger = logging.getLogger(__name__)

GAUSS_ORDER = 16
DEFAULT_REL_TOL = 1e-8
REL_TOL_MIN = 1e-12
REL_TOL_MAX = 1e-4

GRADING_THRESHOLD = -0.25
PANEL_SPLIT = 1.0
TAIL_FRACTION = 1e-18
MAX_PANELS = 4000
MIN_PANEL_FRACTION = 1e-200

SERIES_SPAN = 40.0

ANALYTIC = "analytic"
QUADRATURE = "quadrature"

_NODES, _WEIGHTS = special.roots_legendre(GAUSS_ORDER)


class BesselFactor(NamedTuple):
    """피적분 함수의 인자 K_order(z)^power"""
    order: float
    power: int


@dataclass(frozen=True)
class IntegralResult:
    """
    적분 결과

    Parameters
    ----------
    value : float
        적분 값
    abs_error_estimate : float
        절대 오차 추정치 (>= 0, 유한)
    method : str
        'analytic' 또는 'quadrature'
    """

    value: float
    abs_error_estimate: float
    method: str

    def __post_init__(self):
        if self.method not in (ANALYTIC, QUADRATURE):
            raise ValueError(f"알 수 없는 방법 태그입니다: {self.method}")
        if not (math.isfinite(self.abs_error_estimate) and self.abs_error_estimate >= 0):
            raise ValueError("오차 추정치는 0 이상의 유한한 값이어야 합니다.")
        if self.method == QUADRATURE and self.abs_error_estimate == 0.0:
            object.__setattr__(self, "abs_error_estimate", math.ulp(abs(self.value)) or 5e-324)

    @property
    def relative_error(self) -> float:
        return self.abs_error_estimate / abs(self.value) if self.value != 0.0 else math.inf

    def scaled(self, factor: float) -> "IntegralResult":
        return IntegralResult(factor * self.value, abs(factor) * self.abs_error_estimate, self.method)


def analytic_result(value: float) -> IntegralResult:
    """닫힌 형태 값을 반올림 오차 수준의 추정치와 함께 감쌉니다."""
    return IntegralResult(float(value), 4.0 * math.ulp(abs(value)), ANALYTIC)


def linear_combination(terms: Iterable[Tuple[float, IntegralResult]],
                       constant: float = 0.0) -> IntegralResult:
    """
    Σ c_i·I_i + constant

    하나라도 수치 적분 결과이면 결과도 'quadrature' 로 표시합니다.
    """
    value = constant
    error = 4.0 * math.ulp(abs(constant))
    method = ANALYTIC
    for coeff, result in terms:
        value += coeff * result.value
        error += abs(coeff) * result.abs_error_estimate
        if result.method == QUADRATURE:
            method = QUADRATURE
    return IntegralResult(value, error, method)


@dataclass(frozen=True)
class RadialIntegrand:
    """
    f(z) = amplitude · z^alpha · ∏ K_{order}(z)^{power}

    Parameters
    ----------
    amplitude : float
        상수 계수
    alpha : float
        z 의 거듭제곱
    factors : sequence of (order, power)
        베셀 인자 목록, power 는 양의 정수

    Examples
    --------
    >>> f = RadialIntegrand(1.0, 1.0, [(0.5, 2)])
    >>> f.origin_exponent()
    0.0
    """

    amplitude: float
    alpha: float
    factors: Tuple[BesselFactor, ...]

    def __post_init__(self):
        factors = tuple(BesselFactor(float(order), int(power)) for order, power in self.factors)
        if not factors:
            raise DomainError("베셀 인자가 최소 하나 필요합니다.")
        for order, power in factors:
            if not (0.0 < order < 2.0):
                raise DomainError(f"베셀 차수는 (0, 2) 구간에 있어야 합니다: {order}")
            if power < 1:
                raise DomainError(f"베셀 인자의 거듭제곱은 양의 정수여야 합니다: {power}")
        object.__setattr__(self, "factors", factors)

    @property
    def decay_rate(self) -> int:
        """무한대에서의 감쇠율 k = Σ power"""
        return sum(power for _, power in self.factors)

    def origin_exponent(self) -> float:
        """원점 지수 p₀ = alpha - Σ power·order"""
        return self.alpha - sum(power * order for order, power in self.factors)

    def regular_part(self, z: np.ndarray) -> np.ndarray:
        """h(z) = f(z) / z^{p₀} = amplitude · ∏ (z^ν K_ν(z))^p, 원점에서 유한"""
        values = np.full_like(np.asarray(z, dtype=float), self.amplitude)
        for order, power in self.factors:
            values = values * np.asarray(besselk_scaled(order, z)) ** power
        return values

    def __call__(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        return z ** self.origin_exponent() * self.regular_part(z)

    def envelope(self, z: float) -> float:
        """큰 z 에서의 포락선 |amplitude| (π/2)^{k/2} z^{α-k/2} e^{-kz}"""
        k = self.decay_rate
        return abs(self.amplitude) * (0.5 * math.pi) ** (0.5 * k) * z ** (self.alpha - 0.5 * k) * math.exp(-k * z)

    def tail_cutoff(self) -> float:
        """포락선이 봉우리 값의 TAIL_FRACTION 아래로 떨어지는 상한 Z"""
        k = self.decay_rate
        peak_at = max(PANEL_SPLIT, (self.alpha - 0.5 * k) / k)
        peak = self.envelope(peak_at)
        cutoff = peak_at
        while cutoff < Z_MAX and self.envelope(cutoff) > TAIL_FRACTION * peak:
            cutoff += 1.0
        return min(cutoff, Z_MAX)


def origin_exponent(f: RadialIntegrand) -> float:
    """
    원점 지수 p₀ = alpha - Σ power_i·ν_i

    K_ν(z) ~ (1/2)Γ(ν)(z/2)^{-ν} 로부터 f(z) ~ z^{p₀} 입니다.
    """
    return f.origin_exponent()


def _check_rel_tol(rel_tol: float) -> None:
    if not (REL_TOL_MIN <= rel_tol <= REL_TOL_MAX):
        raise DomainError(f"rel_tol은 [{REL_TOL_MIN:g}, {REL_TOL_MAX:g}] 구간에 있어야 합니다: {rel_tol}")


def _gauss_panel(func: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> float:
    half = 0.5 * (b - a)
    nodes = 0.5 * (a + b) + half * _NODES
    return half * float(np.dot(_WEIGHTS, func(nodes)))


def adaptive_integrate(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = 0.0,
    max_panels: int = MAX_PANELS,
) -> IntegralResult:
    """
    유한 구간 [a, b] 적응 적분

    각 패널의 값은 두 반쪽 패널의 가우스-르장드르 합이고, 오차는 전체 패널
    규칙과의 차이로 추정합니다. 전체 오차가 max(abs_tol, rel_tol·|값|) 이하가 될
    때까지 오차가 가장 큰 패널을 이분합니다.

    Parameters
    ----------
    func : callable
        numpy 배열을 받는 벡터화된 피적분 함수
    a, b : float
        적분 구간
    rel_tol : float
        상대 허용 오차
    abs_tol : float
        절대 허용 오차
    max_panels : int
        최대 패널 수

    Returns
    -------
    IntegralResult
        method='quadrature'

    Raises
    ------
    QuadratureNonconvergence
        패널 수 또는 패널 폭 한계에 도달한 경우
    """
    if not (math.isfinite(a) and math.isfinite(b)) or b <= a:
        raise DomainError(f"적분 구간이 올바르지 않습니다: [{a}, {b}]")

    min_width = MIN_PANEL_FRACTION * (b - a)
    heap: List[Tuple[float, float, float, float, float, float]] = []

    def push(lo: float, hi: float, coarse: float) -> Tuple[float, float]:
        mid = 0.5 * (lo + hi)
        left = _gauss_panel(func, lo, mid)
        right = _gauss_panel(func, mid, hi)
        fine = left + right
        error = abs(fine - coarse)
        heapq.heappush(heap, (-error, lo, hi, fine, left, right))
        return fine, error

    total, total_error = push(a, b, _gauss_panel(func, a, b))
    iterations = 0
    while total_error > max(abs_tol, rel_tol * abs(total)):
        if not math.isfinite(total) or len(heap) >= max_panels:
            raise QuadratureNonconvergence(
                f"패널 {len(heap)}개에서 적분이 수렴하지 않았습니다 [{a:g}, {b:g}]",
                partial_value=total,
                achieved_tolerance=total_error / abs(total) if total else math.inf,
            )
        neg_error, lo, hi, fine, left, right = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if mid - lo < min_width:
            raise QuadratureNonconvergence(
                f"패널 폭 한계에 도달했습니다 (z≈{lo:.3g})",
                partial_value=total,
                achieved_tolerance=total_error / abs(total) if total else math.inf,
            )
        left_value, left_error = push(lo, mid, left)
        right_value, right_error = push(mid, hi, right)
        total += left_value + right_value - fine
        total_error += left_error + right_error + neg_error

        iterations += 1
        if iterations % 64 == 0:
            total = math.fsum(item[3] for item in heap)
            total_error = math.fsum(-item[0] for item in heap)

    total = math.fsum(item[3] for item in heap)
    total_error = math.fsum(-item[0] for item in heap)
    logger.debug("adaptive_integrate [%g, %g]: 패널 %d개, 값=%.16g, 오차=%.3g",
                 a, b, len(heap), total, total_error)
    return IntegralResult(total, total_error, QUADRATURE)


def integrate(
    f: RadialIntegrand,
    rel_tol: float = DEFAULT_REL_TOL,
    grading: bool = True,
    cutoff_factor: float = 1.0,
) -> IntegralResult:
    """
    ∫₀^∞ f(z) dz

    Parameters
    ----------
    f : RadialIntegrand
        피적분 함수 (p₀ > -1)
    rel_tol : float
        상대 허용 오차, [1e-12, 1e-4]
    grading : bool
        원점 근방 치환 사용 여부
    cutoff_factor : float
        꼬리 상한 Z 에 곱하는 배율 (>= 1)

    Returns
    -------
    IntegralResult
        method='quadrature'

    Raises
    ------
    IntegrabilityError
        p₀ <= -1 인 경우
    QuadratureNonconvergence
        허용 오차에 도달하지 못한 경우
    """
    _check_rel_tol(rel_tol)
    if cutoff_factor < 1.0:
        raise DomainError(f"cutoff_factor는 1 이상이어야 합니다: {cutoff_factor}")

    p0 = f.origin_exponent()
    if p0 <= -1.0:
        raise IntegrabilityError(f"원점 지수 p₀={p0:.6g} <= -1 이므로 적분이 발산합니다.")

    if grading and p0 <= GRADING_THRESHOLD:
        beta = 1.0 / (p0 + 1.0)
        logger.debug("원점 치환 사용: p₀=%.6g, z = u^%.6g", p0, beta)

        def near(u: np.ndarray) -> np.ndarray:
            return beta * f.regular_part(u ** beta)
    else:
        near = f

    head = adaptive_integrate(near, 0.0, PANEL_SPLIT, rel_tol=0.5 * rel_tol)

    cutoff = min(Z_MAX, f.tail_cutoff() * cutoff_factor)
    tail = adaptive_integrate(f, PANEL_SPLIT, cutoff, rel_tol=0.5 * rel_tol)
    logger.debug("integrate: p₀=%.6g, Z=%.4g, 원점 구간=%.16g, 꼬리=%.16g",
                 p0, cutoff, head.value, tail.value)
    return linear_combination([(1.0, head), (1.0, tail)])


def besselk_power_series(order: float, max_exponent: float = SERIES_SPAN) -> List[Tuple[float, float]]:
    """
    K_ν(z) = Σ_k [A_k z^{2k-ν} - B_k z^{2k+ν}] 의 (지수, 계수) 목록

    A_k = π/(2 sin πν) · 2^{ν-2k} / (k! Γ(k-ν+1)),
    B_k = π/(2 sin πν) · 2^{-ν-2k} / (k! Γ(k+ν+1))

    Parameters
    ----------
    order : float
        정수가 아닌 차수 ν ∈ (0, 2)
    max_exponent : float
        포함할 최대 지수

    Returns
    -------
    list of tuple
        지수 오름차순 (exponent, coefficient)
    """
    nu = float(order)
    if not (0.0 < nu < 2.0) or nu == 1.0:
        raise DomainError(f"급수 전개는 정수가 아닌 차수 ν ∈ (0, 2)에서만 가능합니다: {nu}")

    prefactor = math.pi / (2.0 * math.sin(math.pi * nu))
    terms = []
    k = 0
    while 2 * k - nu <= max_exponent:
        a_k = prefactor * 2.0 ** (nu - 2 * k) / (math.factorial(k) * gamma(k - nu + 1.0))
        terms.append((2 * k - nu, a_k))
        if 2 * k + nu <= max_exponent:
            b_k = prefactor * 2.0 ** (-nu - 2 * k) / (math.factorial(k) * gamma(k + nu + 1.0))
            terms.append((2 * k + nu, -b_k))
        k += 1
    return sorted(terms)


def _merge(series: Dict[float, float], exponent: float, coeff: float) -> None:
    key = round(exponent, 10)
    series[key] = series.get(key, 0.0) + coeff


def integrand_power_series(f: RadialIntegrand, max_exponent: float) -> Dict[float, float]:
    """피적분 함수의 원점 멱급수 {지수: 계수}, max_exponent 이하 항만 유지"""
    series: Dict[float, float] = {round(f.alpha, 10): f.amplitude}
    span = max_exponent - f.origin_exponent() + 2.0
    for order, power in f.factors:
        k_series = besselk_power_series(order, span)
        for _ in range(power):
            product: Dict[float, float] = {}
            for p, c in series.items():
                for q, d in k_series:
                    if p + q <= max_exponent:
                        _merge(product, p + q, c * d)
            series = product
    return series


def evaluate_power_series(series: Dict[float, float], z: float) -> float:
    """멱급수 Σ c z^p 의 값"""
    return math.fsum(c * z ** p for p, c in series.items())


def integrate_continued(
    terms: Sequence[RadialIntegrand],
    rel_tol: float = DEFAULT_REL_TOL,
) -> IntegralResult:
    """
    원점에서 개별적으로 발산할 수 있는 피적분 함수 합의 적분

    [0, 1] 구간은 멱급수 항별로 ∫₀¹ z^p dz = 1/(p+1) 해석 접속을 사용하고,
    z^{-1} 항은 합에서 서로 상쇄되어야 합니다. [1, ∞) 구간은 일반 적분입니다.

    Parameters
    ----------
    terms : sequence of RadialIntegrand
        피적분 함수 목록
    rel_tol : float
        꼬리 구간 상대 허용 오차

    Returns
    -------
    IntegralResult
        method='quadrature'

    Raises
    ------
    IntegrabilityError
        z^{-1} 항이 상쇄되지 않는 경우 (로그 발산)
    """
    _check_rel_tol(rel_tol)
    if not terms:
        raise DomainError("피적분 함수가 최소 하나 필요합니다.")

    max_exponent = min(t.origin_exponent() for t in terms) + SERIES_SPAN
    series: Dict[float, float] = {}
    for term in terms:
        for p, c in integrand_power_series(term, max_exponent).items():
            _merge(series, p, c)

    scale = max(abs(c) for c in series.values())
    log_coeff = series.pop(-1.0, 0.0)
    if abs(log_coeff) > 1e-10 * scale:
        raise IntegrabilityError(f"z^-1 항이 상쇄되지 않습니다 (계수={log_coeff:.6g}).")

    head = math.fsum(c / (p + 1.0) for p, c in series.items())
    truncation = math.fsum(abs(c) for p, c in series.items() if p > max_exponent - 2.0)
    head_error = max(truncation, 1e3 * math.ulp(scale)) + abs(log_coeff)

    def summed(z: np.ndarray) -> np.ndarray:
        return sum(term(z) for term in terms)

    cutoff = max(term.tail_cutoff() for term in terms)
    tail = adaptive_integrate(summed, PANEL_SPLIT, cutoff, rel_tol=0.5 * rel_tol)
    logger.debug("integrate_continued: 급수 항 %d개, 원점 구간=%.16g, 꼬리=%.16g",
                 len(series), head, tail.value)
    return IntegralResult(head + tail.value, head_error + tail.abs_error_estimate, QUADRATURE)
