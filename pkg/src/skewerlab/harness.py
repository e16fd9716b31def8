"""Seeded trial runner and the report it produces.

Every trial draws from its own generator, seeded by ``(seed, trial index)``,
so results do not depend on execution order or on how trials are split
between worker processes.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import Degeneracy, TooManyResamples

MAX_RESAMPLES = 100

TrialFn = Callable[[np.random.Generator], dict]


@dataclass
class TrialReport:
    theorem: str
    geometry: str
    seed: int
    tol: float
    trials: int
    completed: int = 0
    resamples: int = 0
    aborted: int = 0
    assertions: dict = field(default_factory=dict)  # name -> {"max": .., "mean": ..}
    failures: list = field(default_factory=list)  # {"trial", "assertion", "residual"}
    wall_ms: float = 0.0

    @property
    def max_residual(self) -> float:
        return max((a["max"] for a in self.assertions.values()), default=0.0)

    @property
    def mean_residual(self) -> float:
        total = sum(a["mean"] * a["count"] for a in self.assertions.values())
        count = sum(a["count"] for a in self.assertions.values())
        return total / count if count else 0.0

    @property
    def passed(self) -> bool:
        return not self.failures and self.aborted == 0

    @property
    def vacuous(self) -> bool:
        return self.completed == 0

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "theorem": self.theorem,
            "geometry": self.geometry,
            "trials": self.trials,
            "completed": self.completed,
            "resamples": self.resamples,
            "seed": self.seed,
            "tol": self.tol,
            "max_residual": self.max_residual,
            "mean_residual": self.mean_residual,
            "failures": list(self.failures),
            "assertions": {k: dict(v) for k, v in self.assertions.items()},
            "aborted": self.aborted,
            "vacuous": self.vacuous,
            "wall_ms": self.wall_ms if timing else 0.0,
        }
        return d

    def summary(self) -> str:
        status = "PASS" if self.passed and not self.vacuous else ("VACUOUS" if self.vacuous else "FAIL")
        return (
            f"{self.theorem} [{self.geometry}] {status}: {self.completed}/{self.trials} trials, "
            f"max residual {self.max_residual:.3e}, {len(self.failures)} failures, "
            f"{self.resamples} resamples, {self.wall_ms:.0f} ms"
        )


def trial_generator(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(index)])


def run_one(trial_fn: TrialFn, seed: int, index: int) -> tuple[dict | None, int]:
    """Run a single trial; returns ``(residuals or None if aborted, resamples)``."""
    rng = trial_generator(seed, index)
    for attempt in range(MAX_RESAMPLES + 1):
        try:
            return trial_fn(rng), attempt
        except Degeneracy:
            continue
    return None, MAX_RESAMPLES + 1


def _run_chunk(trial_fn: TrialFn, seed: int, indices: list) -> list:
    return [(i, *run_one(trial_fn, seed, i)) for i in indices]


def run_trials(
    name: str,
    geometry: str,
    trial_fn: TrialFn,
    trials: int,
    seed: int,
    tol: float,
    workers: int = 1,
    raise_on_abort: bool = True,
) -> TrialReport:
    """Execute ``trials`` independent trials and aggregate their residuals.

    ``trial_fn`` maps a generator to ``{assertion name: residual}``. Trials
    that raise a Degeneracy are resampled, at most MAX_RESAMPLES times.
    """
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    start = time.perf_counter()
    indices = list(range(trials))
    if workers > 1 and trials > 1:
        chunks = [indices[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_run_chunk, [trial_fn] * workers, [seed] * workers, chunks)
            results = [r for part in parts for r in part]
    else:
        results = _run_chunk(trial_fn, seed, indices)
    results.sort(key=lambda r: r[0])

    report = TrialReport(theorem=name, geometry=geometry, seed=int(seed), tol=float(tol), trials=trials)
    collected: dict[str, list] = {}
    for index, residuals, resamples in results:
        report.resamples += min(resamples, MAX_RESAMPLES)
        if residuals is None:
            report.aborted += 1
            continue
        report.completed += 1
        for key, value in residuals.items():
            value = float(value)
            collected.setdefault(key, []).append(value)
            if not value <= tol:  # NaN counts as a failure
                report.failures.append({"trial": index, "assertion": key, "residual": value})
    for key, values in collected.items():
        arr = np.array(values)
        report.assertions[key] = {
            "max": float(arr.max()) if not np.isnan(arr).any() else math.inf,
            "mean": float(arr.mean()),
            "count": len(values),
        }
    report.wall_ms = (time.perf_counter() - start) * 1000.0
    if report.aborted and raise_on_abort:
        raise TooManyResamples(f"{report.aborted} trial(s) exceeded {MAX_RESAMPLES} resamples", report)
    return report
