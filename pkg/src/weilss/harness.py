"""Parameter sweeps comparing criterion predictions with computed verdicts.

A survey expands a JSON grid into curve instances, predicts each one from the
character side, computes its L-polynomial from point counts, and classifies
the pair.  Proven implications are enforced: a contradicting row raises
:class:`TheoremContradiction` instead of being written.  The Artin-Schreier
rows where the mu_n condition fails are the experiment, and are tallied.
"""

from __future__ import annotations

import csv
import json
import logging
import os
import re
import tempfile
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from ._arith import prime_power
from .errors import CacheConflict, CorruptCache, FieldTooLarge, InternalDisagreement, NoClosedForm, TheoremContradiction
from .families import INAPPLICABLE, NOT_SUPERSINGULAR, SUPERSINGULAR, l_polynomial_from_eigenvalues, predict
from .finite_field import DEFAULT_FIELD_CAP
from .weil import is_supersingular
from .zeta import (
    DEFAULT_POINT_CAP,
    ArtinSchreier,
    CurveInstance,
    FermatCurve,
    ThreePointCover,
    genus,
    l_polynomial,
)

log = logging.getLogger(__name__)

CACHE_VERSION = 1
REPORT_SCHEMA = 1
_KEY_RE = re.compile(r"^[a-z-]+/\d+/r=\d+,[a-z_]+=\d+(,[a-z_]+=\d+)*/\d+$")


class PointCountCache:
    """JSON file of N_k values, keyed by ``zeta.cache_key``.

    Entries are write-once.  ``flush`` rewrites the file atomically; writers
    in one process are serialised by a lock.
    """

    def __init__(self, path: Optional[os.PathLike] = None):
        self.path = Path(path) if path is not None else None
        self._lock = threading.Lock()
        self._entries: dict[str, int] = {}
        self._dirty = False
        if self.path is not None and self.path.exists():
            self._entries = self._load(self.path)

    @staticmethod
    def _load(path: Path) -> dict[str, int]:
        hint = f"delete {path} to rebuild it"
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError) as exc:
            raise CorruptCache(f"cannot parse point-count cache ({exc}); {hint}") from exc
        if not isinstance(data, dict) or data.get("version") != CACHE_VERSION:
            raise CorruptCache(f"cache version {data.get('version') if isinstance(data, dict) else None!r} "
                               f"!= {CACHE_VERSION}; {hint}")
        entries = data.get("entries")
        if not isinstance(entries, dict) or not all(
            isinstance(k, str) and isinstance(v, int) and not isinstance(v, bool) for k, v in entries.items()
        ):
            raise CorruptCache(f"malformed cache entries; {hint}")
        return dict(entries)

    @staticmethod
    def _check_key(key: str) -> None:
        if not _KEY_RE.match(key):
            raise ValueError(f"malformed cache key {key!r}")

    def get(self, key: str) -> Optional[int]:
        self._check_key(key)
        with self._lock:
            return self._entries.get(key)

    def put(self, key: str, value: int) -> None:
        self._check_key(key)
        value = int(value)
        with self._lock:
            old = self._entries.get(key)
            if old is not None and old != value:
                raise CacheConflict(f"{key}: cached {old}, new value {value}")
            if old is None:
                self._entries[key] = value
                self._dirty = True

    def __len__(self) -> int:
        return len(self._entries)

    def flush(self) -> None:
        if self.path is None:
            return
        with self._lock:
            if not self._dirty:
                return
            payload = json.dumps({"version": CACHE_VERSION, "entries": dict(sorted(self._entries.items()))},
                                 indent=0)
            self.path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=self.path.name, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(payload)
            os.replace(tmp, self.path)
            self._dirty = False


@dataclass
class SurveyRecord:
    family: str
    p: int
    r: int
    parameters: str
    genus: int
    criterion_prediction: str
    witness_s: Optional[int]
    computed_verdict: str  # supersingular, not-supersingular or skipped
    slopes: str
    agreement: str  # true, n/a or converse-counterexample-candidate (never false: that aborts)
    l_polynomial: str = ""
    by_cyclotomic: Optional[bool] = None
    by_newton: Optional[bool] = None
    eigen_check: str = "n/a"
    status: str = "ok"
    elapsed_ms: float = 0.0

    CSV_FIELDS = (
        "family", "p", "r", "parameters", "genus", "criterion_prediction", "witness_s",
        "computed_verdict", "slopes", "agreement", "l_polynomial", "by_cyclotomic",
        "by_newton", "eigen_check", "status", "elapsed_ms",
    )

    @property
    def skipped(self) -> bool:
        return self.computed_verdict == "skipped"

    @property
    def converse_row(self) -> bool:
        return self.family == ArtinSchreier.family and self.criterion_prediction == INAPPLICABLE


@dataclass
class SurveyConfig:
    families: list[dict[str, Any]]
    cap_points: int = DEFAULT_POINT_CAP
    field_cap: int = DEFAULT_FIELD_CAP
    phi_bound: Optional[int] = None
    workers: int = 1
    cross_check: bool = False

    @classmethod
    def from_json(cls, data: dict) -> "SurveyConfig":
        known = {"families", "cap_points", "field_cap", "phi_bound", "workers", "cross_check"}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown survey config keys {sorted(extra)}")
        return cls(
            families=list(data.get("families", [])),
            cap_points=int(data.get("cap_points", DEFAULT_POINT_CAP)),
            field_cap=int(data.get("field_cap", DEFAULT_FIELD_CAP)),
            phi_bound=None if data.get("phi_bound") is None else int(data["phi_bound"]),
            workers=int(data.get("workers", 1)),
            cross_check=bool(data.get("cross_check", False)),
        )


@dataclass
class SurveyResult:
    records: list[SurveyRecord]
    summary: dict = field(default_factory=dict)


def _values(axis, name: str) -> list[int]:
    """A grid axis: an int, a list of ints, or {"min": a, "max": b} inclusive."""
    if axis is None:
        raise ValueError(f"grid axis {name!r} is missing")
    if isinstance(axis, int):
        return [axis]
    if isinstance(axis, dict):
        return list(range(int(axis["min"]), int(axis["max"]) + 1))
    return [int(v) for v in axis]


def expand_grid(families: Iterable[dict]) -> list[CurveInstance]:
    """Valid instances of each grid entry, in deterministic order.

    Parameter combinations that do not define a curve (n divisible by p,
    reducible three-point covers) are not instances and are left out.
    """
    out: list[CurveInstance] = []
    for entry in families:
        fam = entry.get("family")
        if fam == ArtinSchreier.family:
            for p in _values(entry.get("p"), "p"):
                qas_axis = entry.get("q_as", "p")
                qs = [p] if qas_axis == "p" else _values(qas_axis, "q_as")
                for q_as in qs:
                    for n in _values(entry.get("n"), "n"):
                        if n >= 1 and n % p and prime_power(q_as)[0] == p:
                            out.append(ArtinSchreier(p, q_as, n))
        elif fam in (FermatCurve.family, ThreePointCover.family):
            for q in _values(entry.get("q"), "q"):
                p, r = prime_power(q)
                for n in _values(entry.get("n"), "n"):
                    if n < 1 or n % p == 0:
                        continue
                    if fam == FermatCurve.family:
                        out.append(FermatCurve(n, p, r))
                        continue
                    for a in _values(entry.get("a", {"min": 1, "max": n - 1}), "a"):
                        for b in _values(entry.get("b", {"min": 1, "max": n - 1}), "b"):
                            if 0 < a < n and 0 < b < n and (a + b) % n and gcd(gcd(a, b), n) == 1:
                                out.append(ThreePointCover(n, a, b, p, r))
        else:
            raise ValueError(f"unknown family {fam!r}")
    return out


def _fmt_slopes(v) -> str:
    return ";".join(f"{s.numerator}/{s.denominator}:{n}" for s, n in v.slopes.segments)


def _classify(rec: SurveyRecord) -> str:
    pred, verdict = rec.criterion_prediction, rec.computed_verdict
    if verdict == "skipped":
        return "n/a"
    if pred == SUPERSINGULAR:
        if verdict != SUPERSINGULAR:
            raise TheoremContradiction(f"sufficiency contradicted: {rec}")
        return "true"
    if pred == NOT_SUPERSINGULAR:
        if verdict != NOT_SUPERSINGULAR:
            raise TheoremContradiction(f"necessity contradicted: {rec}")
        return "true"
    if rec.family == ArtinSchreier.family:
        # the open converse: not-supersingular agrees with it, supersingular would refute it
        return "converse-counterexample-candidate" if verdict == SUPERSINGULAR else "true"
    return "n/a"


def run_instance(C: CurveInstance, config: SurveyConfig, cache=None) -> SurveyRecord:
    t0 = time.perf_counter()
    g = genus(C)
    pred = predict(C)
    rec = SurveyRecord(C.family, C.p, C.r, C.params, g, pred.prediction, pred.witness_s, "skipped", "", "n/a")
    if C.q**g > config.cap_points:
        rec.status = f"skipped: q^g = {C.q}^{g} exceeds cap {config.cap_points}"
    elif config.phi_bound is not None and 2 * g > config.phi_bound:
        rec.status = f"skipped: degree {2 * g} exceeds phi bound {config.phi_bound}"
    else:
        try:
            L = l_polynomial(C, cache, point_cap=config.cap_points, field_cap=config.field_cap)
        except FieldTooLarge as exc:
            rec.status = f"skipped: {exc}"
        else:
            v = is_supersingular(L)
            rec.computed_verdict = SUPERSINGULAR if v.supersingular else NOT_SUPERSINGULAR
            rec.slopes = _fmt_slopes(v)
            rec.l_polynomial = " ".join(str(c) for c in L.coeffs)
            rec.by_cyclotomic, rec.by_newton = v.by_cyclotomic, v.by_newton
            if config.cross_check:
                rec.eigen_check = _eigen_check(C, L, config)
    rec.agreement = _classify(rec)
    rec.elapsed_ms = round((time.perf_counter() - t0) * 1000, 3)
    return rec


def _eigen_check(C: CurveInstance, L, config: SurveyConfig) -> str:
    try:
        E = l_polynomial_from_eigenvalues(C, field_cap=config.field_cap)
    except (NoClosedForm, FieldTooLarge):
        return "n/a"
    if E.coeffs != L.coeffs:
        raise InternalDisagreement(f"exponential sums give {E.coeffs}, point counts {L.coeffs} for {C}")
    return "true"


def summarize(records: Sequence[SurveyRecord]) -> dict:
    cells: dict[str, int] = {}
    for rec in records:
        key = f"{rec.criterion_prediction}|{rec.computed_verdict}"
        cells[key] = cells.get(key, 0) + 1
    converse = [r for r in records if r.converse_row and not r.skipped]
    return {
        "total": len(records),
        "skipped": sum(r.skipped for r in records),
        "cells": dict(sorted(cells.items())),
        "converse_rows": len(converse),
        "converse_supersingular": sum(r.computed_verdict == SUPERSINGULAR for r in converse),
        "cross_test_disagreements": sum(
            r.by_cyclotomic is not None and r.by_cyclotomic != r.by_newton for r in records
        ),
    }


def survey(config: SurveyConfig | dict, cache: Optional[PointCountCache] = None) -> SurveyResult:
    if isinstance(config, dict):
        config = SurveyConfig.from_json(config)
    instances = expand_grid(config.families)
    log.info("survey of %d instances", len(instances))

    def job(C):
        rec = run_instance(C, config, cache)
        if cache is not None:
            cache.flush()
        return rec

    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            records = list(pool.map(job, instances))
    else:
        records = [job(C) for C in instances]
    return SurveyResult(records, summarize(records))


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def write_csv(records: Sequence[SurveyRecord], path: os.PathLike, with_timing: bool = True) -> None:
    fields = [f for f in SurveyRecord.CSV_FIELDS if with_timing or f != "elapsed_ms"]
    with open(path, "w", newline="") as fh:
        fh.write(f"# weilss survey report, schema {REPORT_SCHEMA}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(fields)
        for rec in records:
            d = asdict(rec)
            w.writerow([_cell(d[f]) for f in fields])


def read_csv(path: os.PathLike) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        first = fh.readline()
        if not first.startswith("# weilss survey report, schema "):
            raise ValueError(f"{path} is not a survey report")
        schema = int(first.rsplit(" ", 1)[1])
        if schema != REPORT_SCHEMA:
            raise ValueError(f"report schema {schema} != {REPORT_SCHEMA}")
        return list(csv.DictReader(fh))


def write_jsonl(records: Sequence[SurveyRecord], path: os.PathLike, with_timing: bool = True) -> None:
    with open(path, "w") as fh:
        for rec in records:
            d = asdict(rec)
            if not with_timing:
                d.pop("elapsed_ms")
            fh.write(json.dumps({"schema": REPORT_SCHEMA, **d}, sort_keys=True) + "\n")
