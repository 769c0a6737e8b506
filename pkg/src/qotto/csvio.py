"""CSV formatting shared by the command-line driver and histogram export."""

from __future__ import annotations

import math
import os
import sys
import tempfile

MISSING = "NA"
DEFAULT_PRECISION = 12


def format_number(value, precision: int = DEFAULT_PRECISION) -> str:
    if value is None:
        return MISSING
    if isinstance(value, str):
        return value
    value = float(value)
    if math.isnan(value):
        return MISSING
    if value == 0.0:
        return "0"
    return f"{value:.{precision}g}"


def render(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(row) for row in rows]
    return "\n".join(lines) + "\n"


def write_text(text: str, path=None) -> None:
    """Write ``text`` to ``path`` atomically, or to stdout when ``path`` is None."""
    if path is None:
        sys.stdout.write(text)
        return
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
