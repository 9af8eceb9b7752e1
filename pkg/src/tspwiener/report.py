"""Report documents: exact rationals on the wire, decimals as annotation.

Every numeric value is serialized as {"exact": "p/q", "decimal": "..."}. The
exact field round-trips through Fraction; the decimal field is a 12
significant digit half-even rendering meant for human eyes and plotters,
never for parsing back. CSV output flattens the same tree, so both formats
carry identical numeric content.
"""

from __future__ import annotations

import csv
import decimal
import io
import json
from dataclasses import dataclass, field, fields, is_dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .metric import Number

SCHEMA_VERSION = 1

_DISPLAY_DIGITS = 12


def rational_str(x: Number) -> str:
    """Exact serialization: integers bare, fractions as "p/q" (reduced)."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return str(int(x))


def parse_rational(s: str) -> Number:
    """Inverse of rational_str."""
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return int(s)


def decimal_str(x: Number) -> str:
    """Display-only rendering: 12 significant digits, round half even."""
    fr = Fraction(x)
    with decimal.localcontext() as ctx:
        ctx.prec = _DISPLAY_DIGITS
        ctx.rounding = decimal.ROUND_HALF_EVEN
        d = decimal.Decimal(fr.numerator) / decimal.Decimal(fr.denominator)
    return str(d)


def _is_number(x: Any) -> bool:
    return isinstance(x, (int, Fraction, np.integer)) and not isinstance(x, bool)


def to_jsonable(obj: Any) -> Any:
    """Recursive conversion to JSON-ready structures.

    Numbers become {"exact", "decimal"} objects, dataclasses become field
    dicts, tuples become lists, dict keys become strings.
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, np.integer):
        obj = int(obj)
    if _is_number(obj):
        if isinstance(obj, Fraction):
            exact: Number = obj
        else:
            exact = int(obj)
        return {"exact": rational_str(exact), "decimal": decimal_str(exact)}
    if isinstance(obj, float):
        # floats never carry verdicts; serialize as display text only
        return {"exact": None, "decimal": repr(obj)}
    if is_dataclass(obj) and not isinstance(obj, type):
        out = {}
        for f in fields(obj):
            out[f.name] = to_jsonable(getattr(obj, f.name))
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in seq]
    raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


@dataclass
class ReportDocument:
    """The single machine-readable artifact every command emits."""

    tool: str
    command: list[str]
    instance: dict
    parameters: dict
    results: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    findings: list = field(default_factory=list)
    timing_ms: dict = field(default_factory=dict)
    seed: int | None = None
    schema: int = SCHEMA_VERSION

    def jsonable(self) -> dict:
        return {
            "schema": self.schema,
            "tool": self.tool,
            "command": list(self.command),
            "instance": to_jsonable(self.instance),
            "parameters": to_jsonable(self.parameters),
            "results": to_jsonable(self.results),
            "verdicts": to_jsonable(self.verdicts),
            "findings": to_jsonable(self.findings),
            "seed": self.seed,
            "timing_ms": {k: round(float(v), 3) for k, v in self.timing_ms.items()},
        }


def render_json(doc: ReportDocument) -> str:
    return json.dumps(doc.jsonable(), indent=2) + "\n"


def _flatten(prefix: str, node: Any, rows: list[tuple[str, str, str]]) -> None:
    if isinstance(node, dict):
        if set(node) == {"exact", "decimal"}:
            exact = node["exact"]
            rows.append((prefix, "" if exact is None else exact, node["decimal"]))
            return
        for key in node:
            _flatten(f"{prefix}.{key}" if prefix else str(key), node[key], rows)
        return
    if isinstance(node, list):
        for i, item in enumerate(node):
            _flatten(f"{prefix}[{i}]", item, rows)
        return
    if node is None:
        rows.append((prefix, "", ""))
    elif isinstance(node, bool):
        rows.append((prefix, "true" if node else "false", ""))
    else:
        rows.append((prefix, str(node), ""))


def render_csv(doc: ReportDocument) -> str:
    """Flatten the JSON tree into field,exact,decimal rows (same content)."""
    rows: list[tuple[str, str, str]] = []
    _flatten("", doc.jsonable(), rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["field", "exact", "decimal"])
    writer.writerows(rows)
    return buf.getvalue()
