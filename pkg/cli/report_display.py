"""
Report rendering for the command line.

Reports render two ways:
- json: a stable, versioned object {"version", "command", "verdict",
  "witness", "residuals"} (plus "error" for input errors)
- text: aligned key/value lines with the verdict highlighted

Exact rationals print as "p/q", complex numbers as [re, im] and floats
with repr precision, so equal inputs give byte-identical reports.
"""

import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

import numpy as np

REPORT_VERSION = 1

# ANSI verdict colors
COLOR_SCHEMES = {
    'plain': {'true': '', 'false': '', 'error': '', 'reset': ''},
    'ansi': {
        'true': '\033[32m',    # green
        'false': '\033[33m',   # yellow
        'error': '\033[31m',   # red
        'reset': '\033[0m',
    },
}

# Current color mode (mutable global): auto, always, never
_color_mode = os.environ.get('EA_COLOR', 'auto').lower()


def get_color_mode() -> str:
    return _color_mode


def set_color_mode(mode: str) -> bool:
    global _color_mode
    if mode in ('auto', 'always', 'never'):
        _color_mode = mode
        return True
    return False


def _scheme(stream) -> dict:
    if _color_mode == 'always' or (_color_mode == 'auto' and stream.isatty()):
        return COLOR_SCHEMES['ansi']
    return COLOR_SCHEMES['plain']


@dataclass
class Report:
    """
    Result of one command.

    Attributes:
        command: the command echo, e.g. "ic decide"
        verdict: True / False, or None after an input error
        witness: JSON-able data supporting the verdict
        residuals: numeric residuals of quantum checks
        error: message (with location) when the input was rejected
    """

    command: str
    verdict: Optional[bool] = None
    witness: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return 2
        return 0 if self.verdict else 1


def to_jsonable(value):
    """Convert Fractions, numpy values, complex numbers and tuples to JSON types."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


def render_json(report: Report) -> str:
    payload = {
        "version": REPORT_VERSION,
        "command": report.command,
        "verdict": report.verdict,
        "witness": to_jsonable(report.witness),
        "residuals": to_jsonable(report.residuals),
    }
    if report.error is not None:
        payload["error"] = report.error
    return json.dumps(payload, indent=2, sort_keys=False)


def format_value(value) -> str:
    """Compact text form: (1/2, 1/4) for rational vectors, rounded reals otherwise."""
    value = to_jsonable(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, list):
        return "(" + ", ".join(format_value(v) for v in value) + ")"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {format_value(v)}" for k, v in value.items()) + "}"
    return str(value)


def render_text(report: Report, stream=None) -> List[str]:
    """Report as text lines (verdict colored when the stream is a terminal)."""
    colors = _scheme(stream or sys.stdout)
    lines = [f"command   {report.command}"]
    if report.error is not None:
        lines.append(f"error     {colors['error']}{report.error}{colors['reset']}")
        return lines
    key = 'true' if report.verdict else 'false'
    lines.append(f"verdict   {colors[key]}{str(report.verdict).upper()}{colors['reset']}")
    if report.witness:
        lines.append("witness")
        width = max(len(str(k)) for k in report.witness)
        for k, v in report.witness.items():
            lines.append(f"  {str(k):<{width}}  {format_value(v)}")
    if report.residuals:
        lines.append("residuals")
        width = max(len(str(k)) for k in report.residuals)
        for k, v in report.residuals.items():
            lines.append(f"  {str(k):<{width}}  {format_value(v)}")
    return lines
