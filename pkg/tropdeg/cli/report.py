"""
Reports

A report is a table of rows plus metadata. CSV output starts with
``# key: value`` lines (command, model sha256, options, version) followed by
the pandas ``to_csv`` body; JSON output is one document with ``metadata`` and
``rows``. Rationals are exact ``p/q`` strings unless ``decimals`` is given.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import pandas as pd

from ..algebra.scalars import PerturbedScalar, format_rational, format_scalar

CSV = "csv"
JSON = "json"
FORMATS = (CSV, JSON)


@dataclass(frozen=True)
class Report:
    command: str
    columns: Tuple[str, ...]
    rows: Tuple[Mapping[str, Any], ...]
    metadata: Mapping[str, str] = field(default_factory=dict)
    refuted: bool = False
    diagnostic: Optional[str] = None
    attachment: Optional[Dict[str, Any]] = field(default=None, compare=False)

    @property
    def exit_code(self) -> int:
        return 1 if self.refuted else 0

    def with_metadata(self, metadata: Mapping[str, str]) -> "Report":
        return replace(self, metadata=dict(metadata))

    def to_frame(self, decimals: Optional[int] = None) -> pd.DataFrame:
        records = [{c: render_value(row.get(c), decimals) for c in self.columns} for row in self.rows]
        return pd.DataFrame(records, columns=list(self.columns))

    def render(self, fmt: str = CSV, decimals: Optional[int] = None) -> str:
        if fmt == JSON:
            document: Dict[str, Any] = {
                "metadata": dict(self.metadata),
                "rows": [{c: json_value(row.get(c), decimals) for c in self.columns} for row in self.rows],
            }
            if self.attachment is not None:
                document["certificate"] = self.attachment
            return json.dumps(document, indent=2) + "\n"
        if fmt != CSV:
            raise ValueError(f"unknown report format {fmt!r}")
        header = "".join(f"# {key}: {value}\n" for key, value in self.metadata.items())
        return header + self.to_frame(decimals).to_csv(index=False, lineterminator="\n")


def decimal_string(value: Fraction, places: int) -> str:
    """Decimal rendering rounded half-even to ``places`` digits."""

    digits = len(str(abs(value.numerator) // value.denominator)) + places + 10
    with localcontext() as context:
        context.prec = digits
        quotient = Decimal(value.numerator) / Decimal(value.denominator)
        return str(quotient.quantize(Decimal(1).scaleb(-places)))


def render_value(value: Any, decimals: Optional[int] = None) -> Any:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return decimal_string(value, decimals) if decimals is not None else format_rational(value)
    if isinstance(value, PerturbedScalar):
        if decimals is not None and value.is_finite and not value.is_perturbed:
            return render_value(value.real, decimals)
        return format_scalar(value)
    return value


def json_value(value: Any, decimals: Optional[int] = None) -> Any:
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return render_value(value, decimals)


def build_metadata(
    command: str,
    digest: str,
    options: Mapping[str, Any],
    version: str,
    extra: Sequence[Tuple[str, Any]] = (),
) -> Dict[str, str]:
    """Metadata in a fixed key order; ``options`` are sorted by name."""

    rendered: List[str] = [f"{key}={'' if value is None else value}" for key, value in sorted(options.items())]
    metadata = {
        "command": command,
        "model_sha256": digest,
        "options": " ".join(rendered),
        "version": version,
    }
    for key, value in extra:
        metadata[key] = str(value)
    return metadata
