"""Artifact writers - CSV and JSON renderings of every command's output.

Numbers are rounded to 15 significant digits and written with repr, so files
are byte-stable and an exact 1 prints as ``1.0``.
"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from app.models import Distribution, LimitDensity

DISTRIBUTION_HEADER = ("position", "probability")
DENSITY_HEADER = ("x", "f")
SPECTRUM_HEADER = ("k", "re_lambda0", "im_lambda0", "re_lambda1", "im_lambda1", "h0", "h1")
MOMENTS_HEADER = ("r", "empirical", "density", "fourier")


def number(value: Optional[float]) -> Optional[float]:
    if value is None:
        return None
    return float(f"{float(value):.15g}")


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(number(value))


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


def to_json(payload: Any) -> str:
    if isinstance(payload, BaseModel):
        return payload.model_dump_json(by_alias=True, indent=2) + "\n"
    return json.dumps(payload, indent=2) + "\n"


def distribution_csv(dist: Distribution) -> str:
    return to_csv(DISTRIBUTION_HEADER, dist.entries)


def distribution_json(dist: Distribution) -> str:
    return to_json(
        {
            "time": dist.time,
            "entries": [[x, number(p)] for x, p in dist.entries],
            "total": number(dist.total),
        }
    )


def density_csv(xs: np.ndarray, fs: np.ndarray) -> str:
    return to_csv(DENSITY_HEADER, zip(xs.tolist(), fs.tolist()))


def density_json(d: LimitDensity, xs: np.ndarray, fs: np.ndarray) -> str:
    return to_json(
        {
            "density": d.model_dump(mode="json"),
            "x": [number(x) for x in xs.tolist()],
            "f": [number(f) for f in fs.tolist()],
        }
    )


def table_csv(header: Sequence[str], columns: Mapping[str, np.ndarray]) -> str:
    data = [np.asarray(columns[name]).tolist() for name in header]
    return to_csv(header, zip(*data))


def table_json(columns: Mapping[str, Any]) -> str:
    return to_json(
        {
            name: [number(v) if isinstance(v, float) else v for v in np.asarray(values).tolist()]
            for name, values in columns.items()
        }
    )


def moments_csv(rows: Sequence[Mapping[str, Optional[float]]]) -> str:
    return to_csv(MOMENTS_HEADER, ([row[name] for name in MOMENTS_HEADER] for row in rows))


def write_text(text: str, out: Optional[str], stream) -> None:
    """Write to ``out`` when given, otherwise to ``stream``."""
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        stream.write(text)
