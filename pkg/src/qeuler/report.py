"""Deterministic reports and the persistent result cache.

A report's canonical body contains no timestamps or timings; elapsed time
lives in a side-channel section excluded from canonical serialization and
hashing, so byte-identical configs yield byte-identical canonical bodies.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from .exactarith import PolyQ, RatFuncQ
from .identities import ERROR, FAILS, HOLDS, HOLDS_TO_PRECISION
from .qintegral import IntegralResult

REPORT_SCHEMA = "qeuler-report/1"
CACHE_SCHEMA = "qeuler-cache/1"
TOOL_VERSION = "0.1.0"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True)


def ratfunc_to_obj(f: RatFuncQ) -> dict:
    return {"num": [str(c) for c in f.num.coeffs],
            "den": [str(c) for c in f.den.coeffs]}


def ratfunc_from_obj(d: dict) -> RatFuncQ:
    num = PolyQ([Fraction(s) for s in d["num"]])
    den = PolyQ([Fraction(s) for s in d["den"]])
    return RatFuncQ(num, den)


@dataclass
class Report:
    """A grid of verification results or table rows, with summary counts
    and a timing side channel."""

    config: dict
    items: List[dict]
    timing: dict = field(default_factory=dict)

    @property
    def summary(self) -> dict:
        counts = {HOLDS: 0, FAILS: 0, HOLDS_TO_PRECISION: 0, ERROR: 0}
        for item in self.items:
            verdict = item.get("verdict")
            if verdict in counts:
                counts[verdict] += 1
        return {
            "holds": counts[HOLDS],
            "fails": counts[FAILS],
            "holds_to_precision": counts[HOLDS_TO_PRECISION],
            "errors": counts[ERROR],
            "total": len(self.items),
        }

    def body(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "version": TOOL_VERSION,
            "config": self.config,
            "items": self.items,
            "summary": self.summary,
        }

    def canonical(self) -> str:
        return canonical_json(self.body())

    def sha256(self) -> str:
        return hashlib.sha256(self.canonical().encode("ascii")).hexdigest()

    def exit_code(self) -> int:
        """0 unless a non-printed verification item failed or errored."""
        for item in self.items:
            verdict = item.get("verdict")
            if verdict in (FAILS, ERROR):
                ident = item.get("id", "")
                if not ident.endswith("_PRINTED"):
                    return 1
        return 0

    def to_json(self) -> str:
        doc = self.body()
        doc["canonical_sha256"] = self.sha256()
        doc["timing"] = self.timing
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Report":
        doc = json.loads(text)
        if doc.get("schema") != REPORT_SCHEMA:
            raise ValueError(f"unsupported report schema {doc.get('schema')!r}")
        return cls(config=doc["config"], items=doc["items"],
                   timing=doc.get("timing", {}))

    def _columns(self) -> List[str]:
        cols: List[str] = []
        for item in self.items:
            for key in item:
                if key not in cols:
                    cols.append(key)
        return cols

    def to_csv(self) -> str:
        import csv
        import io

        cols = self._columns()
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for item in self.items:
            writer.writerow([_cell(item.get(c)) for c in cols])
        return buf.getvalue()

    def to_pretty(self) -> str:
        cols = self._columns()
        rows = [[_cell(item.get(c)) for c in cols] for item in self.items]
        widths = [max([len(c)] + [len(r[i]) for r in rows]) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
        lines.append("  ".join("-" * w for w in widths))
        for r in rows:
            lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
        s = self.summary
        lines.append("")
        lines.append(
            f"holds={s['holds']} fails={s['fails']} "
            f"holds-to-precision={s['holds_to_precision']} errors={s['errors']} "
            f"total={s['total']}")
        return "\n".join(lines) + "\n"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, dict):
        return canonical_json(value)
    return str(value)


class ResultCache:
    """Single-file JSON cache for computed number tables and numeric
    integrals; hits are bit-identical to recomputation."""

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path is not None else None
        self.entries: Dict[str, dict] = {}
        self.dirty = False
        if self.path is not None and self.path.exists():
            doc = json.loads(self.path.read_text())
            if doc.get("schema") != CACHE_SCHEMA:
                raise ValueError(f"unsupported cache schema {doc.get('schema')!r}")
            self.entries = doc["entries"]

    def save(self):
        if self.path is None or not self.dirty:
            return
        doc = {"schema": CACHE_SCHEMA, "entries": self.entries}
        self.path.write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")
        self.dirty = False

    # -- euler numbers -----------------------------------------------------

    @staticmethod
    def _euler_key(n: int) -> str:
        return f"euler:n={n}"

    def get_euler(self, n: int) -> Optional[RatFuncQ]:
        obj = self.entries.get(self._euler_key(n))
        return ratfunc_from_obj(obj) if obj is not None else None

    def put_euler(self, n: int, value: RatFuncQ):
        key = self._euler_key(n)
        if key not in self.entries:
            self.entries[key] = ratfunc_to_obj(value)
            self.dirty = True

    # -- numeric integrals ---------------------------------------------------

    @staticmethod
    def _integral_key(kind: str, n: int, p: int, q: Fraction, target: int,
                      guard: int, max_level: int) -> str:
        return (f"{kind}:n={n}:p={p}:q={q}:K={target}"
                f":guard={guard}:nmax={max_level}")

    def get_integral(self, kind, n, p, q, target, guard, max_level
                     ) -> Optional[IntegralResult]:
        obj = self.entries.get(
            self._integral_key(kind, n, p, q, target, guard, max_level))
        return IntegralResult.from_dict(obj) if obj is not None else None

    def put_integral(self, kind, n, p, q, target, guard, max_level,
                     result: IntegralResult):
        key = self._integral_key(kind, n, p, q, target, guard, max_level)
        if key not in self.entries:
            self.entries[key] = result.as_dict()
            self.dirty = True
