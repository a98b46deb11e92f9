"""Text forms, canonical hashing and atomic output for certificates."""

from __future__ import annotations

import csv
import datetime as _dt
import hashlib
import io
import json
import os
import re
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .. import SCHEMA_VERSION, __version__
from ..exactnum.interval import Interval
from ..exactnum.rational import format_rational, parse_rational, round_down, round_up

CSV_VERSION = "umlab-csv/1"
CSV_COLUMNS = ("n", "h_alpha", "v_n", "h_beta", "w_n")

# published enclosures: widen by this relative margin, then round outward
PUBLISH_BITS = 64
PUBLISH_SLACK = Fraction(1, 1 << 96)

# w_n, v_n and friends live on this grid
GRID = 1 << 32

_SCALED_RE = re.compile(r"^\s*([^*]+?)\s*\*\s*(\d+)\s*\^\s*([+-]?\d+)\s*$")


def format_scaled(coeff: Fraction | int, base: int, exponent: int) -> str:
    """``coeff * base^exponent`` without expanding the power."""
    return f"{format_rational(coeff)}*{base}^{exponent}"


def format_exact(x: Fraction | int) -> str:
    """Rational text; dyadics with large exponents keep the ``m*2^e`` form."""
    x = Fraction(x)
    if x == 0:
        return "0"
    num, den = x.numerator, x.denominator
    if den & (den - 1) == 0 and den.bit_length() > 64:
        return format_scaled(num, 2, -(den.bit_length() - 1))
    if den == 1 and num % 2 == 0 and abs(num).bit_length() > 128:
        tz = (abs(num) & -abs(num)).bit_length() - 1
        return format_scaled(num >> tz, 2, tz)
    return format_rational(x)


def parse_exact(text: str | int) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    match = _SCALED_RE.match(text)
    if match is None:
        return parse_rational(text)
    coeff = parse_rational(match.group(1))
    base, exponent = int(match.group(2)), int(match.group(3))
    return coeff * Fraction(base) ** exponent


def publish_upper(x: Fraction) -> Fraction:
    return round_up(x + abs(x) * PUBLISH_SLACK, PUBLISH_BITS)


def publish_lower(x: Fraction) -> Fraction:
    return round_down(x - abs(x) * PUBLISH_SLACK, PUBLISH_BITS)


def publish_interval(box: Interval) -> Interval:
    """Short outward rendering of a much tighter enclosure."""
    return Interval(publish_lower(box.lo), publish_upper(box.hi))


def publish_box(box) -> dict:
    """Published ``{"re", "im"}`` form of a real interval or complex box."""
    re, im = (box, Interval.point(0)) if isinstance(box, Interval) else (box.re, box.im)
    out = {}
    for key, part in (("re", re), ("im", im)):
        out[key] = interval_to_json(part if part.is_point() and part.lo == 0 else publish_interval(part))
    return out


def interval_to_json(box: Interval) -> list[str]:
    return [format_exact(box.lo), format_exact(box.hi)]


def interval_from_json(data: list[str]) -> Interval:
    return Interval(parse_exact(data[0]), parse_exact(data[1]))


def render_float(x: Fraction | int) -> str:
    return repr(float(Fraction(x)))


# -- documents -------------------------------------------------------------


def canonical_bytes(doc: dict) -> bytes:
    body = {k: v for k, v in doc.items() if k not in ("generated_at", "sha256")}
    return json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode()


def document_hash(doc: dict) -> str:
    return hashlib.sha256(canonical_bytes(doc)).hexdigest()


def make_document(kind: str, payload: dict, run: dict | None = None, timestamp: str | None = None) -> dict:
    doc: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "kind": kind,
        "tool": {"name": "umlab", "version": __version__},
        "run": run or {},
        "payload": payload,
    }
    doc["generated_at"] = timestamp or _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()
    doc["sha256"] = document_hash(doc)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def atomic_write_text(path: str | os.PathLike, text: str) -> Path:
    """Write through a temporary file in the target directory, then rename."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_document(path: str | os.PathLike, doc: dict) -> Path:
    return atomic_write_text(path, dumps(doc))


def load_document(path: str | os.PathLike) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def rows_to_csv(rows: Iterable[dict]) -> str:
    """Plot table with fixed columns; the first line names the format version."""
    buf = io.StringIO()
    buf.write(f"# {CSV_VERSION}\n")
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row.get(k, "") for k in CSV_COLUMNS})
    return buf.getvalue()
