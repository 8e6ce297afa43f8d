"""
CSV/JSON emission for patterns, echo traces, contrast curves and reports
File: gaussfactor/services/output_writer.py
"""

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from gaussfactor.config import settings
from gaussfactor.models.scan import ContrastPoint, FactorReport, InterferencePattern, PatternRecord
from gaussfactor.models.spin import EchoTrace
from gaussfactor.utils.exceptions import ValidationError

logger = logging.getLogger(__name__)

PATTERN_COLUMNS = ["ell", "re", "im", "magnitude", "is_factor"]
CONTRAST_COLUMNS = ["M", "V"]
OUTPUT_FORMATS = ("csv", "json")


def format_number(value: float, decimals: Optional[int] = None) -> str:
    """Fixed-point text with a fixed number of decimals, no signed zero"""
    decimals = settings.CSV_DECIMALS if decimals is None else decimals
    text = f"{value:.{decimals}f}"
    if text.startswith("-") and text.strip("-0.") == "":
        text = text[1:]
    return text


def format_bool(value: bool) -> str:
    return "true" if value else "false"


def parse_bool(text: str) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise ValidationError(f"expected true or false, got {text!r}")


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _json_text(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _rounded(value: float) -> float:
    return float(format_number(value))


class OutputWriter:
    """Serializes results in one output format and writes them out"""

    def __init__(self, output_format: str = "csv"):
        if output_format not in OUTPUT_FORMATS:
            raise ValidationError(f"output format must be one of {OUTPUT_FORMATS}, got {output_format!r}")
        self.output_format = output_format

    def pattern(self, pattern: InterferencePattern) -> str:
        records = pattern.records
        if self.output_format == "json":
            return _json_text({
                "ell": [r.ell for r in records],
                "re": [_rounded(r.re) for r in records],
                "im": [_rounded(r.im) for r in records],
                "magnitude": [_rounded(r.magnitude) for r in records],
                "is_factor": [r.is_factor for r in records],
            })
        rows = [
            [str(r.ell), format_number(r.re), format_number(r.im),
             format_number(r.magnitude), format_bool(r.is_factor)]
            for r in records
        ]
        return _csv_text(PATTERN_COLUMNS, rows)

    def trace(
        self,
        trace: EchoTrace,
        damped: Optional[EchoTrace] = None,
        include_times: bool = False,
    ) -> str:
        """
        Serialize an echo trace

        Args:
            trace: Simulated echo heights
            damped: Damped copy of the trace, written as damped_s_m
            include_times: Add the echo time t in seconds after m

        Returns:
            Text with columns m[,t],s_m[,damped_s_m]
        """
        columns: Dict[str, List[Any]] = {"m": list(range(trace.m_max + 1))}
        if include_times:
            columns["t"] = trace.schedule.echo_times
        columns["s_m"] = trace.values
        if damped is not None:
            columns["damped_s_m"] = damped.values

        if self.output_format == "json":
            return _json_text({
                name: values if name == "m" else [_rounded(v) for v in values]
                for name, values in columns.items()
            })

        names = list(columns)
        rows = []
        for index in range(trace.m_max + 1):
            rows.append([
                str(columns[name][index]) if name == "m" else format_number(columns[name][index])
                for name in names
            ])
        return _csv_text(names, rows)

    def contrast_curve(self, points: Sequence[ContrastPoint]) -> str:
        if self.output_format == "json":
            return _json_text({
                "M": [p.m_max for p in points],
                "V": [_rounded(p.contrast) for p in points],
            })
        return _csv_text(CONTRAST_COLUMNS, [[str(p.m_max), format_number(p.contrast)] for p in points])

    @staticmethod
    def report(report: FactorReport) -> str:
        payload = report.model_dump(mode="json")
        for key in ("contrast_v", "resource_estimate", "log_n", "max_non_factor_magnitude"):
            if payload[key] is not None:
                payload[key] = _rounded(payload[key])
        return _json_text(payload)

    @staticmethod
    def emit(text: str, out_path: Optional[str] = None) -> None:
        """Write to the given path, or to stdout"""
        if out_path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        path = Path(out_path)
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        logger.info(f"Wrote {len(text)} bytes to {path}")


def read_pattern_csv(text: str) -> List[PatternRecord]:
    """Parse a pattern CSV written by OutputWriter back into records"""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != PATTERN_COLUMNS:
        raise ValidationError(f"unexpected pattern header {reader.fieldnames}")
    return [
        PatternRecord(
            ell=int(row["ell"]),
            re=float(row["re"]),
            im=float(row["im"]),
            magnitude=float(row["magnitude"]),
            is_factor=parse_bool(row["is_factor"]),
        )
        for row in reader
    ]
