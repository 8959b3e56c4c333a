"""
차원 정규화 적분 검증 - 명령행 진입점

사용 예:
    python cli.py verify --m 1 --eps 0.2,0.1,0.05,0.025 --format json
    python cli.py integral delta_4 --m 1 --eps 0.05
    python cli.py diagram d12_watermelon_mixed --m 1
    python cli.py energy --g 1 --m 1 --order 2

보고서는 표준 출력(또는 --output 파일)으로, 로그는 표준 오류로 출력됩니다.
종료 코드: 0 통과, 1 허용 오차 초과 또는 계산 실패, 2 인자 오류
"""

import argparse
import logging
import os
import sys
from typing import Optional, Sequence, Tuple

# 경로 설정
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from models.diagrams import DIAGRAM_IDS, diagram_report, energy_contributions
from models.errors import DimRegError, UnknownNameError
from models.extrapolate import DEFAULT_EPS_GRID
from models.integrals import INTEGRAL_NAMES, evaluate_integral
from models.propagator import RegScheme
from models.quadrature import DEFAULT_REL_TOL, REL_TOL_MAX, REL_TOL_MIN
from utils.report import FORMATS, ReportDocument, render
from utils.verification import (
    DEFAULT_TOL_LIMIT,
    RunConfig,
    VerificationEntry,
    resolve_threads,
    run_verification,
)

logger = logging.getLogger("dimreg")


def parse_eps_list(text: str) -> Tuple[float, ...]:
    """'0.2,0.1,0.05' 형식의 ε 목록"""
    try:
        values = tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"ε 목록은 쉼표로 구분된 실수여야 합니다: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("ε 목록이 비어 있습니다.")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=float, default=1.0, help="질량 척도 (기본값: 1.0)")
    common.add_argument("--tol-quadrature", type=float, default=DEFAULT_REL_TOL,
                        help=f"수치 적분 상대 허용 오차, [{REL_TOL_MIN:g}, {REL_TOL_MAX:g}] (기본값: 1e-8)")
    common.add_argument("--tol-limit", type=float, default=DEFAULT_TOL_LIMIT,
                        help="극한값 상대 허용 오차 (기본값: 1e-3)")
    common.add_argument("--format", choices=FORMATS, default="json", help="보고서 형식")
    common.add_argument("--output", default=None, help="보고서를 저장할 파일 경로")
    common.add_argument("-v", "--verbose", action="count", default=0, help="로그 상세도 (-v, -vv)")

    default_grid = ",".join(f"{eps:g}" for eps in DEFAULT_EPS_GRID)
    parser = argparse.ArgumentParser(
        prog="dimreg",
        description="D = 1 - ε 차원 정규화 적분과 다이어그램 극한 검증",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", parents=[common], help="전체 검증 실행")
    verify.add_argument("--eps", type=parse_eps_list, default=DEFAULT_EPS_GRID,
                        help=f"감소하는 ε 격자 (기본값: {default_grid})")
    verify.add_argument("--degree", type=int, default=None,
                        help="외삽 다항식 차수 (기본값: 격자 점 수 - 1, 최대 3)")

    integral = commands.add_parser("integral", parents=[common], help="적분 하나 계산")
    integral.add_argument("name", help=f"적분 이름 ({', '.join(INTEGRAL_NAMES)})")
    integral.add_argument("--eps", type=float, default=0.1, help="ε 값 (기본값: 0.1)")

    diagram = commands.add_parser("diagram", parents=[common], help="다이어그램 하나 외삽")
    diagram.add_argument("name", help=f"다이어그램 이름 ({', '.join(DIAGRAM_IDS)})")
    diagram.add_argument("--eps", type=parse_eps_list, default=DEFAULT_EPS_GRID,
                         help=f"감소하는 ε 격자 (기본값: {default_grid})")
    diagram.add_argument("--degree", type=int, default=None,
                         help="외삽 다항식 차수 (기본값: 격자 점 수 - 1, 최대 3)")

    energy = commands.add_parser("energy", parents=[common], help="바닥 상태 에너지 전개")
    energy.add_argument("--g", type=float, default=1.0, help="결합 상수 (기본값: 1.0)")
    energy.add_argument("--order", type=int, choices=(0, 1, 2), default=2, help="전개 차수")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _run_config(parser: argparse.ArgumentParser, args: argparse.Namespace) -> RunConfig:
    try:
        return RunConfig(
            m=args.m,
            eps_grid=args.eps,
            tol_quadrature=args.tol_quadrature,
            tol_limit=args.tol_limit,
            degree=args.degree,
            threads=resolve_threads(),
        )
    except DimRegError as exc:
        parser.error(str(exc))


def cmd_verify(parser: argparse.ArgumentParser, args: argparse.Namespace) -> ReportDocument:
    """적분 카탈로그 전체와 여덟 개 다이어그램을 검증합니다."""
    config = _run_config(parser, args)
    entries = run_verification(config)
    return ReportDocument(
        command="verify",
        parameters=config.parameters(),
        entries=[entry.to_dict() for entry in entries],
        passed=all(entry.passed for entry in entries),
    )


def cmd_integral(parser: argparse.ArgumentParser, args: argparse.Namespace) -> ReportDocument:
    """주어진 ε 에서 적분 하나의 해석 경로와 수치 경로 값을 출력합니다."""
    if args.name not in INTEGRAL_NAMES:
        parser.error(str(UnknownNameError(args.name, INTEGRAL_NAMES)))
    if not (REL_TOL_MIN <= args.tol_quadrature <= REL_TOL_MAX):
        parser.error(f"--tol-quadrature는 [{REL_TOL_MIN:g}, {REL_TOL_MAX:g}] 구간에 있어야 합니다: {args.tol_quadrature}")
    try:
        scheme = RegScheme(m=args.m, eps=args.eps)
    except DimRegError as exc:
        parser.error(str(exc))

    parameters = {"m": args.m, "eps": args.eps, "tol_quadrature": args.tol_quadrature}
    entry = {"name": args.name, "kind": "integral"}
    try:
        dual = evaluate_integral(args.name, scheme, args.tol_quadrature)
    except DimRegError as exc:
        logger.error("%s 계산 실패: %s", args.name, exc)
        entry["message"] = str(exc)
        return ReportDocument("integral", parameters, [entry], passed=False)

    entry.update({
        "analytic": dual.analytic.value,
        "analytic_error": dual.analytic.abs_error_estimate,
        "quadrature": [{"eps": args.eps, "value": dual.quadrature.value}],
        "quadrature_error": dual.quadrature.abs_error_estimate,
        "relative_gap": dual.relative_gap,
    })
    return ReportDocument("integral", parameters, [entry])


def cmd_diagram(parser: argparse.ArgumentParser, args: argparse.Namespace) -> ReportDocument:
    """ε 격자에서 다이어그램 하나를 계산하고 외삽합니다."""
    if args.name not in DIAGRAM_IDS:
        parser.error(str(UnknownNameError(args.name, DIAGRAM_IDS)))
    config = _run_config(parser, args)
    entry = VerificationEntry(name=args.name, kind="diagram", paper_limit=0.0)
    try:
        report = diagram_report(args.name, config.m, config.eps_grid, config.tol_quadrature, config.degree)
    except DimRegError as exc:
        logger.error("%s 계산 실패: %s", args.name, exc)
        entry.message = str(exc)
        return ReportDocument("diagram", config.parameters(), [entry.to_dict()], passed=False)

    entry.paper_limit = report.paper_limit
    entry.analytic = report.analytic_limit
    entry.quadrature = list(report.eps_samples.samples)
    entry.extrapolated = report.value_limit
    entry.extrapolation_error = report.limit_error
    entry.judge(config.tol_limit)
    return ReportDocument("diagram", config.parameters(), [entry.to_dict()], passed=entry.passed)


def cmd_energy(parser: argparse.ArgumentParser, args: argparse.Namespace) -> ReportDocument:
    """바닥 상태 에너지와 차수별 기여를 출력합니다."""
    try:
        contributions = energy_contributions(args.g, args.m, args.order)
    except DimRegError as exc:
        parser.error(str(exc))
    entries = [{"name": f"order_{k}", "kind": "energy", "value": value}
               for k, value in enumerate(contributions)]
    entries.append({"name": "energy", "kind": "energy", "value": sum(contributions)})
    parameters = {"g": args.g, "m": args.m, "order": args.order}
    return ReportDocument("energy", parameters, entries)


COMMANDS = {
    "verify": cmd_verify,
    "integral": cmd_integral,
    "diagram": cmd_diagram,
    "energy": cmd_energy,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    document = COMMANDS[args.command](parser, args)
    text = render(document, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        logger.info("보고서 저장: %s", args.output)
    else:
        sys.stdout.write(text)
    return document.exit_code()


if __name__ == "__main__":
    sys.exit(main())
