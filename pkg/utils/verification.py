"""
검증 그리드 계산

ε 격자 위에서 적분 카탈로그와 다이어그램의 수치 경로 값을 계산하고,
외삽한 극한을 기준값과 비교해 항목별 통과 여부를 정합니다.
"""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from models.diagrams import DIAGRAM_IDS, diagram_mass_power, diagram_value, energy_coefficients, paper_limit
from models.errors import DimRegError, DomainError
from models.extrapolate import DEFAULT_EPS_GRID, EpsSeries, grid_degree, richardson
from models.integrals import INTEGRAL_NAMES, QUADRATURE, evaluate_integral, limit_mass_power, reference_limit
from models.propagator import RegScheme
from models.quadrature import DEFAULT_REL_TOL, REL_TOL_MAX, REL_TOL_MIN

logger = logging.getLogger(__name__)

THREADS_ENV = "DIMREG_THREADS"
DEFAULT_TOL_LIMIT = 1e-3


def resolve_threads(environ: Optional[Mapping[str, str]] = None) -> int:
    """
    DIMREG_THREADS 환경 변수로부터 작업 스레드 수 결정

    Parameters
    ----------
    environ : mapping, optional
        환경 변수 (기본값: os.environ)

    Returns
    -------
    int
        1 이상의 스레드 수, 0 또는 미설정이면 CPU 개수

    Raises
    ------
    DomainError
        정수가 아니거나 음수인 경우
    """
    environ = os.environ if environ is None else environ
    raw = environ.get(THREADS_ENV, "0").strip() or "0"
    try:
        threads = int(raw)
    except ValueError:
        raise DomainError(f"{THREADS_ENV}는 0 이상의 정수여야 합니다: {raw!r}") from None
    if threads < 0:
        raise DomainError(f"{THREADS_ENV}는 0 이상의 정수여야 합니다: {threads}")
    return threads or (os.cpu_count() or 1)


@dataclass(frozen=True)
class RunConfig:
    """
    검증 실행 설정

    Parameters
    ----------
    m : float
        질량
    eps_grid : tuple of float
        감소하는 ε 격자
    tol_quadrature : float
        수치 적분 상대 허용 오차
    tol_limit : float
        극한값 상대 허용 오차
    degree : int, optional
        외삽 다항식 차수 (생략하면 grid_degree(len(eps_grid)))
    threads : int
        작업 스레드 수
    """

    m: float = 1.0
    eps_grid: Tuple[float, ...] = DEFAULT_EPS_GRID
    tol_quadrature: float = DEFAULT_REL_TOL
    tol_limit: float = DEFAULT_TOL_LIMIT
    degree: Optional[int] = None
    threads: int = 1

    def __post_init__(self):
        object.__setattr__(self, "eps_grid", tuple(float(e) for e in self.eps_grid))
        if not (math.isfinite(self.m) and self.m > 0):
            raise DomainError(f"질량(m)은 0보다 커야 합니다: {self.m}")
        if not (REL_TOL_MIN <= self.tol_quadrature <= REL_TOL_MAX):
            raise DomainError(
                f"tol_quadrature는 [{REL_TOL_MIN:g}, {REL_TOL_MAX:g}] 구간에 있어야 합니다: {self.tol_quadrature}"
            )
        if not self.tol_limit > 0:
            raise DomainError(f"tol_limit은 0보다 커야 합니다: {self.tol_limit}")
        if self.threads < 1:
            raise DomainError(f"스레드 수는 1 이상이어야 합니다: {self.threads}")
        # 격자 조건 검사
        EpsSeries.from_values(self.eps_grid, [0.0] * len(self.eps_grid))
        if self.degree is None:
            object.__setattr__(self, "degree", grid_degree(len(self.eps_grid)))
        if not (1 <= self.degree <= len(self.eps_grid) - 1):
            raise DomainError(f"외삽 차수는 1 이상 {len(self.eps_grid) - 1} 이하여야 합니다: {self.degree}")

    def parameters(self) -> Dict[str, object]:
        return {
            "m": self.m,
            "eps": list(self.eps_grid),
            "tol_quadrature": self.tol_quadrature,
            "tol_limit": self.tol_limit,
            "degree": self.degree,
        }


@dataclass
class VerificationEntry:
    """
    검증 항목 하나의 결과

    quadrature 는 ε 순서의 (eps, value) 목록으로, m = 1 에서 계산한 값에 D = 1 질량 척도 m^p 를
    곱한 것입니다. rel_err 는 기준값이 0 인 항목에서 외삽 값의 절댓값입니다.
    """

    name: str
    kind: str
    paper_limit: float
    analytic: Optional[float] = None
    quadrature: List[Tuple[float, float]] = field(default_factory=list)
    extrapolated: Optional[float] = None
    extrapolation_error: Optional[float] = None
    rel_err: Optional[float] = None
    passed: bool = False
    message: str = ""

    def judge(self, tol_limit: float) -> None:
        if self.extrapolated is None:
            self.passed = False
            return
        gap = abs(self.extrapolated - self.paper_limit)
        self.rel_err = gap / abs(self.paper_limit) if self.paper_limit != 0.0 else gap
        self.passed = self.rel_err <= tol_limit
        if not self.passed:
            logger.warning("%s: 허용 오차 초과 (rel_err=%.3g > %.3g)", self.name, self.rel_err, tol_limit)

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "kind": self.kind,
            "analytic": self.analytic,
            "quadrature": [{"eps": eps, "value": value} for eps, value in self.quadrature],
            "extrapolated": self.extrapolated,
            "extrapolation_error": self.extrapolation_error,
            "paper_limit": self.paper_limit,
            "rel_err": self.rel_err,
            "pass": self.passed,
            "message": self.message,
        }


@dataclass(frozen=True)
class _Sample:
    value: Optional[float]
    error: str = ""


def _integral_sample(name: str, scheme: RegScheme, rel_tol: float) -> float:
    return evaluate_integral(name, scheme, rel_tol).quadrature.value


def _diagram_sample(name: str, scheme: RegScheme, rel_tol: float) -> float:
    return diagram_value(name, scheme, QUADRATURE, rel_tol)


_SAMPLERS = {"integral": _integral_sample, "diagram": _diagram_sample}


def _evaluate_at_eps(config: RunConfig, eps: float,
                     targets: Sequence[Tuple[str, str]]) -> Dict[Tuple[str, str], _Sample]:
    # 무차원 값 (m = 1)
    scheme = RegScheme(m=1.0, eps=eps)
    samples = {}
    for kind, name in targets:
        try:
            samples[(kind, name)] = _Sample(_SAMPLERS[kind](name, scheme, config.tol_quadrature))
        except DimRegError as exc:
            logger.warning("%s (eps=%g) 계산 실패: %s", name, eps, exc)
            samples[(kind, name)] = _Sample(None, str(exc))
    logger.info("eps=%g: %d개 항목 계산 완료", eps, len(targets))
    return samples


def _analytic_limit(kind: str, name: str, m: float) -> float:
    limit = RegScheme.one_dimensional(m)
    if kind == "integral":
        return evaluate_integral(name, limit).analytic.value
    return diagram_value(name, limit)


def _reference(kind: str, name: str, m: float) -> float:
    return reference_limit(name, m) if kind == "integral" else paper_limit(name, m)


def _mass_scale(kind: str, name: str, m: float) -> float:
    power = limit_mass_power(name) if kind == "integral" else diagram_mass_power(name)
    return m ** power


def evaluate_entries(config: RunConfig,
                     targets: Sequence[Tuple[str, str]]) -> List[VerificationEntry]:
    """
    (종류, 이름) 목록의 항목들을 ε 격자 전체에서 계산하고 외삽합니다.

    표본은 m = 1 에서 계산하고 D = 1 질량 척도를 곱하므로 판정은 m 에 의존하지 않습니다.
    ε 별 계산은 스레드 풀에서 병렬로 수행되며, 결과 조립은 targets 순서를 따릅니다.
    """
    with ThreadPoolExecutor(max_workers=min(config.threads, len(config.eps_grid))) as pool:
        per_eps = list(pool.map(lambda eps: _evaluate_at_eps(config, eps, targets), config.eps_grid))

    entries = []
    for kind, name in targets:
        entry = VerificationEntry(
            name=name,
            kind=kind,
            paper_limit=_reference(kind, name, config.m),
            analytic=_analytic_limit(kind, name, config.m),
        )
        scale = _mass_scale(kind, name, config.m)
        samples = [(eps, result[(kind, name)]) for eps, result in zip(config.eps_grid, per_eps)]
        failures = [f"eps={eps:g}: {s.error}" for eps, s in samples if s.value is None]
        entry.quadrature = [(eps, scale * s.value) for eps, s in samples if s.value is not None]
        if failures:
            entry.message = "; ".join(failures)
        else:
            try:
                series = EpsSeries(tuple(entry.quadrature))
                entry.extrapolated, entry.extrapolation_error = richardson(series, config.degree)
            except DimRegError as exc:
                entry.message = str(exc)
        entry.judge(config.tol_limit)
        entries.append(entry)
    return entries


def energy_entries(config: RunConfig, diagrams: Sequence[VerificationEntry]) -> List[VerificationEntry]:
    """
    외삽된 다이어그램 값으로 에너지 전개의 1차, 2차 계수를 재구성합니다.

    기준값은 1/4 와 1/(16m) 입니다.
    """
    by_name = {entry.name: entry for entry in diagrams}
    analytic = energy_coefficients(config.m, {tag: by_name[tag].analytic for tag in DIAGRAM_IDS})
    references = (None, 0.25, 1.0 / (16.0 * config.m))

    missing = [tag for tag in DIAGRAM_IDS if by_name[tag].extrapolated is None]
    extrapolated = None
    if not missing:
        extrapolated = energy_coefficients(config.m, {tag: by_name[tag].extrapolated for tag in DIAGRAM_IDS})

    entries = []
    for order in (1, 2):
        entry = VerificationEntry(
            name=f"energy_g{order}",
            kind="energy",
            paper_limit=references[order],
            analytic=analytic[order],
        )
        if extrapolated is None:
            entry.message = f"외삽 값이 없는 다이어그램: {', '.join(missing)}"
        else:
            entry.extrapolated = extrapolated[order]
        entry.judge(config.tol_limit)
        entries.append(entry)
    return entries


def run_verification(config: RunConfig) -> List[VerificationEntry]:
    """전체 검증: 적분 카탈로그, 여덟 개 다이어그램, 에너지 계수"""
    targets = [("integral", name) for name in INTEGRAL_NAMES]
    targets += [("diagram", tag) for tag in DIAGRAM_IDS]
    logger.info("검증 시작: m=%g, eps=%s, 항목 %d개", config.m, config.eps_grid, len(targets))
    entries = evaluate_entries(config, targets)
    diagrams = [entry for entry in entries if entry.kind == "diagram"]
    return entries + energy_entries(config, diagrams)
