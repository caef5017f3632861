"""Byte-deterministic CSV/JSON emission and the resumable scan cache."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from dataclasses import fields
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, Optional

from .curve_q import CurveQ, PointQ
from .support import ReductionRecord

HEADER = ["p", "n1", "ord1", "n2", "ord2", "divides", "ap1", "ap2"]
CACHE_ENV = "REDRIGID_CACHE_DIR"
KEY_PREFIX = "# key: "


def records_to_csv(records: Iterable[ReductionRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in records:
        w.writerow([r.p, r.n1, r.ord1, r.n2, r.ord2, int(r.divides), r.ap1, r.ap2])
    return buf.getvalue()


def records_from_csv(text: str) -> List[ReductionRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != HEADER:
        raise ValueError("missing or wrong CSV header")
    out = []
    for row in rows[1:]:
        p, n1, o1, n2, o2, d, a1, a2 = (int(x) for x in row)
        if d not in (0, 1):
            raise ValueError(f"divides must be 0/1, got {d}")
        out.append(ReductionRecord(p, n1, o1, n2, o2, bool(d), a1, a2))
    if any(a.p >= b.p for a, b in zip(out, out[1:])):
        raise ValueError("rows must be strictly increasing in p")
    return out


def scan_key(E1: CurveQ, P: PointQ, E2: CurveQ, Q: PointQ) -> str:
    return f"curve1={E1.a},{E1.b};point1={P};curve2={E2.a},{E2.b};point2={Q}"


def default_cache_path(key: str) -> Optional[Path]:
    d = os.environ.get(CACHE_ENV)
    if not d:
        return None
    return Path(d) / f"scan-{hashlib.sha256(key.encode()).hexdigest()[:16]}.csv"


def write_cache(path: Path, key: str, records: Iterable[ReductionRecord]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(KEY_PREFIX + key + "\n" + records_to_csv(records))
    tmp.replace(path)


def read_cache(path: Path, key: str) -> List[ReductionRecord]:
    """Cached records for this key; [] when the file is absent, unreadable, or bound to another key."""
    path = Path(path)
    if not path.exists():
        return []
    text = path.read_text()
    first, _, rest = text.partition("\n")
    if first != KEY_PREFIX + key:
        return []
    try:
        return records_from_csv(rest)
    except ValueError:
        return []


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "__dataclass_fields__"):
        return {f.name: _jsonable(getattr(x, f.name)) for f in fields(x)}
    return x


def to_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"
