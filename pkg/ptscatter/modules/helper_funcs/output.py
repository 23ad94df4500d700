import csv
import math
import os
import tempfile
from typing import Any, Dict, Iterable, Sequence

import simplejson

from ptscatter import LOGGER, PTSCATTER_VERSION


def format_float(value) -> str:
    """17 significant digits, lowercase scientific; None becomes an empty cell."""
    if value is None:
        return ""
    return format(float(value), ".16e")


def _cell(value):
    if isinstance(value, str) or (isinstance(value, int) and not isinstance(value, bool)):
        return value
    return format_float(value)


def _atomic_write(path: str, write) -> str:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    handle, temp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as out:
            write(out)
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise
    LOGGER.debug("wrote %s", path)
    return path


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Comma separated, header first; floats go through ``format_float``."""

    def write(out):
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(value) for value in row])

    return _atomic_write(path, write)


def _fixed_floats(value):
    """Floats as raw JSON numbers in the ``format_float`` layout, recursively."""
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r} cannot be written to JSON")
        return simplejson.RawJSON(format_float(value))
    if isinstance(value, dict):
        return {key: _fixed_floats(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_fixed_floats(item) for item in value]
    return value


def write_json(path: str, data: Dict[str, Any]) -> str:
    """Indented JSON; every float is written like a CSV cell."""

    def write(out):
        simplejson.dump(_fixed_floats(data), out, indent=2, ensure_ascii=False, allow_nan=False)
        out.write("\n")

    return _atomic_write(path, write)


def summary(command: str, config: Dict[str, Any], **fields) -> Dict[str, Any]:
    """JSON summary skeleton carrying the resolved run config."""
    return {"command": command, "version": PTSCATTER_VERSION, "config": config, **fields}


def resonance_fields(resonance) -> Dict[str, float]:
    return {
        "position": resonance.position,
        "height": resonance.height,
        "fwhm": resonance.fwhm,
        "q": resonance.q,
        "prominence": resonance.prominence,
    }


def fit_fields(fit) -> Dict[str, Any]:
    return {
        "abscissa": fit.abscissa,
        "A": fit.A,
        "B": fit.B,
        "residual": fit.residual,
        "gamma_range": list(fit.gamma_range),
        "n_points": fit.n_points,
    }
