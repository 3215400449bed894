"""Batch pipeline: compute all invariants per knot and test the rank
conjectures, emitting deterministic JSONL or CSV reports.

Each knot gets one report carrying its determinant data, the five-route
Arf result, reduced and unreduced Khovanov totals with mod-4/8 residues
per coefficient field, optional deformation-module data, and one boolean
flag per conjecture (true = the property holds for every computed field):

  c12_mod4        reduced rank = 1 (mod 4)
  folk_mod8       reduced rank = 1 (mod 8)
  c110_unreduced  unreduced rank = 2 (mod 4)
  arfq            reduced rank = 4*Arf +- 1 (mod 8)
  f2_doubling     unreduced F2 rank = 2 * reduced F2 rank
  levine          signed determinant = 4*Arf + 1 (mod 8)

Per-knot failures (resource budget, timeout, non-knot input) become
structured records with an ``error`` field and never halt the batch.
Reports are byte-identical for identical inputs and options regardless
of worker count; timings are therefore kept out of the serialized form
unless explicitly requested.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field

from .algebra import parse_field
from .alexander import alexander_polynomial
from .arf import arf
from .diagram import Diagram
from .khovanov import ResourceLimit, deformed_module, khovanov_pair

DEFAULT_FIELDS = ("f2", "f3", "f211", "q")

FLAG_NAMES = ("c12_mod4", "folk_mod8", "c110_unreduced", "arfq",
              "f2_doubling", "levine")


@dataclass
class KnotReport:
    name: str
    crossings: int = 0
    det: int | None = None
    signed_det: int | None = None
    arf: int | None = None
    arf_routes: dict = field(default_factory=dict)
    arf_consistent: bool | None = None
    reduced: dict = field(default_factory=dict)      # field name -> total
    unreduced: dict = field(default_factory=dict)
    deformed: dict = field(default_factory=dict)     # field name -> dict
    flags: dict = field(default_factory=dict)
    error: str | None = None
    time_ms: int = 0

    def record(self, include_timing: bool = False) -> dict:
        out = {
            "name": self.name,
            "crossings": self.crossings,
            "det": self.det,
            "signed_det": self.signed_det,
            "arf": self.arf,
            "arf_routes": {k: self.arf_routes[k] for k in sorted(self.arf_routes)},
            "arf_consistent": self.arf_consistent,
        }
        for f in sorted(self.reduced):
            total = self.reduced[f]
            out[f"khr_{f}"] = total
            out[f"khr_{f}_mod4"] = total % 4
            out[f"khr_{f}_mod8"] = total % 8
        for f in sorted(self.unreduced):
            total = self.unreduced[f]
            out[f"kh_{f}"] = total
            out[f"kh_{f}_mod4"] = total % 4
        for f in sorted(self.deformed):
            dm = self.deformed[f]
            out[f"deformed_{f}_free"] = dm["free"]
            out[f"deformed_{f}_torsion"] = dm["torsion"]
            out[f"deformed_{f}_xo"] = dm["xo"]
        for flag in FLAG_NAMES:
            out[f"flag_{flag}"] = self.flags.get(flag)
        if self.error is not None:
            out["error"] = self.error
        if include_timing:
            out["time_ms"] = self.time_ms
        return out


def compute_report(d: Diagram, fields, with_deformed: bool = False,
                   timeout: float | None = None,
                   max_generators: int | None = None) -> KnotReport:
    """All invariants and conjecture flags for one diagram."""
    report = KnotReport(name=d.name or "?", crossings=len(d.crossings))
    deadline = time.monotonic() + timeout if timeout else None
    t0 = time.monotonic()
    try:
        if not d.is_knot:
            raise ValueError(f"not a knot ({d.n_components} components)")
        delta = alexander_polynomial(d)
        report.signed_det = delta.evaluate(-1)
        report.det = abs(report.signed_det)
        res = arf(d)
        report.arf = res.value
        report.arf_routes = dict(res.routes)
        report.arf_consistent = res.consistent
        for f in fields:
            fld = parse_field(f) if isinstance(f, str) else f
            red, unred = khovanov_pair(d, fld, max_generators=max_generators,
                                       deadline=deadline)
            report.reduced[fld.name] = red.total
            report.unreduced[fld.name] = unred.total
            if with_deformed and fld.char != 2:
                dm = deformed_module(d, fld, max_generators=max_generators,
                                     deadline=deadline)
                report.deformed[fld.name] = {
                    "free": dm.free_rank,
                    "torsion": sorted(a for a, _ in dm.torsion),
                    "xo": dm.x_torsion_order(),
                }
        report.flags = _flags(report)
    except (ResourceLimit, ValueError, ArithmeticError) as exc:
        report.error = f"{type(exc).__name__}: {exc}"
    report.time_ms = int(1000 * (time.monotonic() - t0))
    return report


def _flags(r: KnotReport) -> dict:
    flags = {}
    flags["c12_mod4"] = all(v % 4 == 1 for v in r.reduced.values())
    flags["folk_mod8"] = all(v % 8 == 1 for v in r.reduced.values())
    flags["c110_unreduced"] = all(v % 4 == 2 for v in r.unreduced.values())
    flags["arfq"] = all(v % 8 in ((4 * r.arf + 1) % 8, (4 * r.arf - 1) % 8)
                        for v in r.reduced.values())
    if "f2" in r.reduced and "f2" in r.unreduced:
        flags["f2_doubling"] = r.unreduced["f2"] == 2 * r.reduced["f2"]
    else:
        flags["f2_doubling"] = None
    flags["levine"] = r.signed_det % 8 == (4 * r.arf + 1) % 8
    return flags


def scan(diagrams, fields=DEFAULT_FIELDS, jobs: int = 1,
         with_deformed: bool = False, timeout: float | None = None,
         max_generators: int | None = None) -> list[KnotReport]:
    """One report per diagram, in input order regardless of parallelism."""
    tasks = [(i, d, tuple(fields), with_deformed, timeout, max_generators)
             for i, d in enumerate(diagrams)]
    if jobs <= 1 or len(tasks) <= 1:
        return [compute_report(d, f, w, t, m) for _, d, f, w, t, m in tasks]
    import multiprocessing as mp

    with mp.Pool(jobs) as pool:
        indexed = pool.map(_scan_task, tasks)
    indexed.sort(key=lambda pair: pair[0])
    return [r for _, r in indexed]


def _scan_task(task):
    i, d, fields, with_deformed, timeout, max_generators = task
    return i, compute_report(d, fields, with_deformed, timeout, max_generators)


# ---------------------------------------------------------------------------
# serialization


def summarize(reports) -> dict:
    out = {
        "knots": len(reports),
        "aborted": sum(1 for r in reports if r.error is not None),
    }
    for flag in FLAG_NAMES:
        out[f"violations_{flag}"] = sum(
            1 for r in reports if r.flags.get(flag) is False)
    return out


def render_jsonl(reports, include_timing: bool = False) -> str:
    lines = [json.dumps(r.record(include_timing), sort_keys=False)
             for r in reports]
    lines.append(json.dumps({"summary": summarize(reports)}))
    return "\n".join(lines) + "\n"


def parse_report_jsonl(text: str):
    """Inverse of render_jsonl: (records, summary)."""
    records = []
    summary = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if "summary" in obj and "name" not in obj:
            summary = obj["summary"]
        else:
            records.append(obj)
    return records, summary


def render_csv(reports, include_timing: bool = False) -> str:
    keys: list = []
    rows = []
    for r in reports:
        rec = r.record(include_timing)
        rec["arf_routes"] = ";".join(f"{k}={v}" for k, v in rec["arf_routes"].items())
        for k, v in list(rec.items()):
            if isinstance(v, list):
                rec[k] = ";".join(str(x) for x in v)
        rows.append(rec)
        for k in rec:
            if k not in keys:
                keys.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    writer.writeheader()
    for rec in rows:
        writer.writerow(rec)
    for k, v in summarize(reports).items():
        buf.write(f"# {k}={v}\n")
    return buf.getvalue()
