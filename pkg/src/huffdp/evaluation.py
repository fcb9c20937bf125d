"""Dataset ingestion, utility metrics and experiment reports."""

from __future__ import annotations

import csv
import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .budget_selection import Selector
from .pipeline import Mechanism, PerturbationResult, RunConfig, run_baseline, run_huffdp

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
DEFAULT_CAP = 5000
PLOT_PREFIX = 500


def fmt(x: float) -> str:
    return f"{x:.6g}"


def sig6(x: float) -> float:
    return float(fmt(x))


def quantize(values, width: float | None):
    """Snap each value to the nearest multiple of ``width`` (numpy rounding, half to even)."""
    if width is None:
        return [float(v) for v in values]
    if not width > 0:
        raise ValueError("quantization width must be > 0")
    return (np.round(np.asarray(values, dtype=float) / width) * width).tolist()


@dataclass
class Dataset:
    name: str
    column: list[float]
    source_path: str | None = None
    quantization: float | None = None
    skipped_rows: int = 0

    def __post_init__(self):
        if not self.column:
            raise ValueError("dataset has no numeric rows")


def _parse_float(text):
    try:
        v = float(text)
    except (TypeError, ValueError):
        return None
    return v if math.isfinite(v) else None


def ingest_csv(path, column: str | int = 0, quantization: float | None = None,
               cap: int | None = DEFAULT_CAP) -> Dataset:
    """Read one numeric column from a CSV file.

    A string ``column`` names a header field; an integer picks a field by
    position, and a non-numeric first row is then treated as a header.
    Rows whose field does not parse as a finite number are skipped and
    counted. At most ``cap`` numeric values are kept.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such file: {path}")

    with path.open(newline="") as fh:
        rows = csv.reader(fh)
        header = None
        if isinstance(column, str):
            header = next(rows, None)
            if header is None or column not in [h.strip() for h in header]:
                raise ValueError(f"column {column!r} not found in header")
            idx = [h.strip() for h in header].index(column)
        else:
            idx = int(column)
            if idx < 0:
                raise ValueError("column index must be >= 0")

        values = []
        skipped = 0
        first = True
        for row in rows:
            if not row:
                continue
            if idx >= len(row):
                raise ValueError(f"column index {idx} out of range")
            v = _parse_float(row[idx])
            if v is None:
                if not (first and header is None):
                    skipped += 1
            else:
                values.append(v)
            first = False
            if cap is not None and len(values) >= cap:
                break

    if skipped:
        log.warning("%s: skipped %d non-numeric rows", path, skipped)
    if not values:
        raise ValueError(f"{path}: no numeric rows in column {column!r}")
    return Dataset(
        name=path.stem,
        column=quantize(values, quantization),
        source_path=str(path),
        quantization=quantization,
        skipped_rows=skipped,
    )


def mae(original: Sequence[float], perturbed: Sequence[float]) -> float:
    if len(original) != len(perturbed):
        raise ValueError("length mismatch")
    if len(original) == 0:
        raise ValueError("empty input")
    a = np.asarray(original, dtype=float)
    b = np.asarray(perturbed, dtype=float)
    return float(np.mean(np.abs(a - b)))


@dataclass(frozen=True)
class MechanismSpec:
    """What to run: Huff-DP with a selector and beta, or a fixed-epsilon baseline."""

    mechanism: Mechanism = Mechanism.HUFFDP
    selector: Selector | None = Selector.STATIC
    beta: float | None = 1.0
    epsilon: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "mechanism", Mechanism(self.mechanism))
        if self.mechanism is Mechanism.HUFFDP:
            object.__setattr__(self, "selector", Selector(self.selector or Selector.STATIC))
            object.__setattr__(self, "epsilon", None)
        else:
            object.__setattr__(self, "selector", None)
            object.__setattr__(self, "beta", None)
            if self.epsilon is None:
                object.__setattr__(self, "epsilon", 1.0)

    @property
    def id(self) -> str:
        if self.mechanism is Mechanism.HUFFDP:
            return f"huffdp-{self.selector.value}-b{fmt(self.beta)}"
        return f"{self.mechanism.value}-e{fmt(self.epsilon)}"


@dataclass
class EvalReport:
    mechanism: str
    selector: str | None
    beta: float | None
    epsilon: float | None
    mae: float
    noise_computation_count: int
    instance_count: int
    level_epsilon: dict[int, dict[str, float]] = field(default_factory=dict)
    runtime_ms: int = 0
    dataset: str = ""
    schema: int = SCHEMA_VERSION

    def __post_init__(self):
        # hold values at reported precision so serialisation round-trips
        for name in ("beta", "epsilon", "mae"):
            v = getattr(self, name)
            if v is not None:
                setattr(self, name, sig6(v))
        self.level_epsilon = {int(k): {s: sig6(x) for s, x in v.items()}
                              for k, v in self.level_epsilon.items()}

    def to_dict(self) -> dict:
        d = asdict(self)
        d["level_epsilon"] = {str(k): v for k, v in self.level_epsilon.items()}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EvalReport":
        return cls(**d)


def level_summary(result: PerturbationResult) -> dict[int, dict[str, float]]:
    by_level: dict[int, list[float]] = {}
    for rec in result.per_value.values():
        if rec.level is not None:
            by_level.setdefault(rec.level, []).append(rec.epsilon)
    return {lv: {"min": min(e), "mean": float(np.mean(e)), "max": max(e)}
            for lv, e in sorted(by_level.items())}


def run_mechanism(stream: Sequence[float], spec: MechanismSpec, cfg: RunConfig) -> PerturbationResult:
    if spec.mechanism is Mechanism.HUFFDP:
        budget = replace(cfg.budget, selector=spec.selector, beta=spec.beta)
        return run_huffdp(stream, replace(cfg, budget=budget))
    return run_baseline(stream, spec.mechanism, spec.epsilon, cfg)


def write_perturbed_csv(path, original, perturbed, limit: int | None = None):
    n = len(original) if limit is None else min(limit, len(original))
    with open(path, "w", newline="") as fh:
        fh.write("index,original,perturbed\n")
        for i in range(n):
            fh.write(f"{i},{fmt(original[i])},{fmt(perturbed[i])}\n")


def write_reports(path, reports: Sequence[EvalReport]):
    with open(path, "w") as fh:
        json.dump([r.to_dict() for r in reports], fh, indent=2)
        fh.write("\n")


def read_reports(path) -> list[EvalReport]:
    with open(path) as fh:
        return [EvalReport.from_dict(d) for d in json.load(fh)]


def run_experiment(dataset: Dataset, mechanisms: Sequence[MechanismSpec], cfg: RunConfig,
                   out_dir=None) -> list[EvalReport]:
    """Run each mechanism on ``dataset`` and optionally write its artifacts.

    With ``out_dir`` set, writes ``<id>.csv`` (full stream), ``<id>_first500.csv``
    and ``report.json``. Reports keep the order of ``mechanisms``.
    """
    stream = dataset.column
    reports = []
    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)

    for spec in mechanisms:
        t0 = time.perf_counter()
        result = run_mechanism(stream, spec, cfg)
        elapsed = time.perf_counter() - t0
        reports.append(EvalReport(
            mechanism=spec.mechanism.value,
            selector=spec.selector.value if spec.selector else None,
            beta=spec.beta,
            epsilon=spec.epsilon,
            mae=mae(stream, result.perturbed),
            noise_computation_count=result.noise_computation_count,
            instance_count=len(stream),
            level_epsilon=level_summary(result),
            runtime_ms=int(round(elapsed * 1000)),
            dataset=dataset.name,
        ))
        if out is not None:
            write_perturbed_csv(out / f"{spec.id}.csv", stream, result.perturbed)
            write_perturbed_csv(out / f"{spec.id}_first{PLOT_PREFIX}.csv", stream,
                                result.perturbed, limit=PLOT_PREFIX)

    if out is not None:
        write_reports(out / "report.json", reports)
    return reports
