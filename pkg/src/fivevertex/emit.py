"""CSV / JSON / SVG emission with reproducible, parse-back-able formatting.

Every data file starts with a JSON header block on '#'-prefixed lines holding
the full parameter set, the schema version and the tool version.  Floats are
written with shortest round-trip `repr`, so identical runs produce
byte-identical files.
"""

from __future__ import annotations

import json
import os
from typing import Iterable, Sequence

import numpy as np

from . import __version__

SCHEMA_VERSION = 1


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def header_block(meta: dict) -> str:
    payload = dict(meta)
    payload.setdefault("tool", "fivevertex")
    payload.setdefault("version", __version__)
    payload.setdefault("schema", SCHEMA_VERSION)
    return "# " + json.dumps(payload, sort_keys=True) + "\n"


def write_csv(path: str, meta: dict, columns: dict[str, Sequence]) -> None:
    names = list(columns)
    cols = [np.asarray(columns[k]) for k in names]
    length = len(cols[0]) if cols else 0
    for c in cols:
        if len(c) != length:
            raise ValueError("column length mismatch")
    with open(path, "w") as fh:
        fh.write(header_block(meta))
        fh.write(",".join(names) + "\n")
        for row in range(length):
            fh.write(",".join(_fmt(c[row]) for c in cols) + "\n")


def read_csv(path: str) -> tuple[dict, dict[str, np.ndarray]]:
    """Parse a file written by write_csv back into (meta, columns)."""
    meta = {}
    with open(path) as fh:
        lines = fh.read().splitlines()
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        meta = json.loads(lines[i][1:].strip())
        i += 1
    names = lines[i].split(",") if i < len(lines) else []
    raw = [ln.split(",") for ln in lines[i + 1:] if ln]
    cols: dict[str, np.ndarray] = {}
    for k, name in enumerate(names):
        vals = [row[k] for row in raw]
        try:
            cols[name] = np.array([float(v) for v in vals])
        except ValueError:
            cols[name] = np.array(vals)
    return meta, cols


def write_json(path: str, meta: dict, payload: dict) -> None:
    doc = {"meta": {**meta, "tool": "fivevertex", "version": __version__,
                    "schema": SCHEMA_VERSION},
           "data": payload}
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=1, default=_json_default)
        fh.write("\n")


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, complex):
        return {"re": o.real, "im": o.imag}
    raise TypeError(f"not JSON serializable: {type(o)}")


def write_svg_polylines(path: str, meta: dict,
                        pieces: Iterable[tuple[str, Sequence[float], Sequence[float]]],
                        width: int = 640, margin: float = 0.05,
                        colors: Sequence[str] = ("green", "blue", "red", "purple",
                                                 "black", "orange")) -> None:
    """Polyline-per-piece SVG with an auto-fitted viewBox (y axis flipped)."""
    pieces = [(name, np.asarray(xs, float), np.asarray(ys, float))
              for name, xs, ys in pieces]
    allx = np.concatenate([p[1] for p in pieces if len(p[1])]) if pieces else np.array([0.0])
    ally = np.concatenate([p[2] for p in pieces if len(p[2])]) if pieces else np.array([0.0])
    x0, x1 = float(allx.min()), float(allx.max())
    y0, y1 = float(ally.min()), float(ally.max())
    dx, dy = max(x1 - x0, 1e-9), max(y1 - y0, 1e-9)
    x0 -= margin * dx
    x1 += margin * dx
    y0 -= margin * dy
    y1 += margin * dy
    height = int(width * (y1 - y0) / (x1 - x0)) or width
    with open(path, "w") as fh:
        fh.write("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n")
        fh.write(f"<!-- {header_block(meta).strip('# ').strip()} -->\n")
        fh.write(f"<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" "
                 f"height=\"{height}\" viewBox=\"{_fmt(x0)} {_fmt(-y1)} "
                 f"{_fmt(x1 - x0)} {_fmt(y1 - y0)}\">\n")
        for k, (name, xs, ys) in enumerate(pieces):
            if len(xs) == 0:
                continue
            pts = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in zip(xs, ys))
            color = colors[k % len(colors)]
            fh.write(f"  <polyline id=\"{name}\" fill=\"none\" stroke=\"{color}\" "
                     f"stroke-width=\"{_fmt(0.004 * (x1 - x0))}\" points=\"{pts}\"/>\n")
        fh.write("</svg>\n")


def resolve_outdir(path_arg: str | None) -> str:
    """Output directory: flag wins, then FIVEVERTEX_OUTDIR, then cwd."""
    out = path_arg or os.environ.get("FIVEVERTEX_OUTDIR") or "."
    os.makedirs(out, exist_ok=True)
    return out
