"""
보고서 직렬화

같은 입력이면 바이트 단위로 같은 출력이 나오도록 키 순서를 고정하고
실수는 유효숫자 17자리로 기록합니다.
"""

import io
import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import pandas as pd

FORMATS = ("json", "csv")
FLOAT_FORMAT = ".17g"

CSV_COLUMNS = [
    "name", "kind", "row", "eps", "value", "analytic", "paper_limit", "rel_err", "pass", "message",
]


@dataclass
class ReportDocument:
    """
    검증 보고서

    Parameters
    ----------
    command : str
        실행한 명령 (verify, integral, diagram, energy)
    parameters : dict
        실행 매개변수
    entries : list of dict
        항목별 결과 (키 순서 고정)
    passed : bool, optional
        전체 통과 여부, 판정이 없는 명령은 None
    """

    command: str
    parameters: Dict[str, object]
    entries: List[Dict[str, object]] = field(default_factory=list)
    passed: Optional[bool] = None

    def to_dict(self) -> Dict[str, object]:
        document = {"command": self.command, "parameters": self.parameters, "entries": self.entries}
        if self.passed is not None:
            document["pass"] = self.passed
        return document

    def exit_code(self) -> int:
        return 0 if self.passed in (None, True) else 1


def _format_float(value: float) -> str:
    if not math.isfinite(value):
        return "null"
    return format(value, FLOAT_FORMAT)


def _encode(value: object, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        return _format_float(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, indent, level + 1)}"
                 for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"직렬화할 수 없는 형식입니다: {type(value).__name__}")


def to_json(document: ReportDocument, indent: int = 2) -> str:
    """
    결정적 JSON 문자열

    json.dumps 는 실수를 최단 표현으로 쓰므로, 실수 형식을 고정하기 위해
    직접 인코딩합니다. 비유한 실수는 null 로 기록합니다.
    """
    return _encode(document.to_dict(), indent, 0) + "\n"


def _rows(entry: Dict[str, object]) -> List[Dict[str, object]]:
    base = {
        "name": entry.get("name"),
        "kind": entry.get("kind"),
        "analytic": entry.get("analytic"),
        "paper_limit": entry.get("paper_limit"),
        "message": entry.get("message", ""),
    }
    rows = []
    for sample in entry.get("quadrature", []):
        rows.append({**base, "row": "sample", "eps": sample["eps"], "value": sample["value"]})
    rows.append({
        **base,
        "row": "limit",
        "eps": None,
        "value": entry.get("extrapolated", entry.get("value")),
        "rel_err": entry.get("rel_err"),
        "pass": entry.get("pass"),
    })
    return rows


def to_csv(document: ReportDocument) -> str:
    """항목마다 ε 표본 행과 극한 행 하나씩"""
    rows = [row for entry in document.entries for row in _rows(entry)]
    frame = pd.DataFrame(rows, columns=CSV_COLUMNS)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format="%" + FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def render(document: ReportDocument, fmt: str = "json") -> str:
    if fmt not in FORMATS:
        raise ValueError(f"지원하지 않는 형식입니다: {fmt} (가능: {', '.join(FORMATS)})")
    return to_json(document) if fmt == "json" else to_csv(document)
