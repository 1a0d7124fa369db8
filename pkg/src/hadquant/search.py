"""Empirical worst-case search for pipeline error and output magnitude.

Every evaluated input is checked against the proven bound for the box
``||x||_inf <= xmax``; exceeding it raises :class:`BoundViolation`.  Random
streams come from numpy's PCG64 seeded through ``SeedSequence``, with one
spawned child stream per restart, so results depend only on the config.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import hadamard as hd
from .bounds import full_report
from .errors import BoundViolation, DimensionError, SizeLimitError
from .pipeline import run, run_batch
from .quantization import QuantizerBank

__all__ = ["SearchConfig", "SearchResult", "STRATEGIES", "worst_error", "worst_magnitude", "search"]

STRATEGIES = ("random", "coordinate-ascent", "exhaustive")
OBJECTIVES = ("error", "magnitude")


@dataclass(frozen=True)
class SearchConfig:
    xmax: int
    budget: int = 10_000
    seed: int = 0
    strategy: str = "coordinate-ascent"
    restarts: int = 8
    enum_cap: int = 2_000_000
    starts: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if self.xmax < 0:
            raise ValueError("xmax must be nonnegative")
        if self.budget < 0 or self.restarts < 1:
            raise ValueError("budget must be >= 0 and restarts >= 1")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}")
        object.__setattr__(self, "starts", tuple(tuple(int(v) for v in s) for s in self.starts))


@dataclass(frozen=True)
class SearchResult:
    objective: str
    strategy: str
    x: tuple[int, ...]
    value: int
    bound: int
    evaluations: int

    @property
    def ratio(self) -> Fraction:
        """Found value over the proven bound (0 when the bound is 0)."""
        return Fraction(self.value, self.bound) if self.bound else Fraction(0)

    def to_json(self) -> dict:
        return {
            "objective": self.objective,
            "strategy": self.strategy,
            "x": list(self.x),
            "value": self.value,
            "bound": self.bound,
            "ratio": str(self.ratio),
            "evaluations": self.evaluations,
        }


def _objective_value(h, bank, objective, x) -> int:
    tr = run(h, bank, x)
    return tr.err_inf if objective == "error" else tr.mag_inf


def _bound(h, bank, objective, xmax) -> int:
    rep = full_report(h.order, bank, xmax)
    return rep.err_bound_general if objective == "error" else rep.mag_combined


def _better(a: tuple[int, tuple], b: tuple[int, tuple] | None) -> bool:
    # higher value wins; ties go to the lexicographically smaller x
    if b is None:
        return True
    return a[0] > b[0] or (a[0] == b[0] and a[1] < b[1])


class _Evaluator:
    def __init__(self, h, bank, objective, xmax):
        self.h, self.bank, self.objective = h, bank, objective
        self.bound = _bound(h, bank, objective, xmax)
        self.count = 0

    def __call__(self, x: tuple[int, ...]) -> int:
        v = _objective_value(self.h, self.bank, self.objective, x)
        self.count += 1
        if v > self.bound:
            raise BoundViolation(
                f"{self.objective} {v} exceeds the proven bound {self.bound} at x={list(x)}"
            )
        return v


def _check_start(start, n, xmax):
    if len(start) != n:
        raise DimensionError(f"start vector has length {len(start)}, expected {n}")
    if any(abs(v) > xmax for v in start):
        raise ValueError("start vector lies outside the box")


def _climb(ev: _Evaluator, x: list[int], budget: int, steps: Sequence[int], xmax: int):
    n = len(x)
    cur = ev(tuple(x))
    used = 1
    best = (cur, tuple(x))
    improved = True
    while improved and used < budget:
        improved = False
        for i in range(n):
            candidates = {min(xmax, x[i] + s) for s in steps} | {max(-xmax, x[i] - s) for s in steps}
            candidates |= {xmax, -xmax}
            candidates.discard(x[i])
            for c in sorted(candidates):
                if used >= budget:
                    break
                trial = list(x)
                trial[i] = c
                v = ev(tuple(trial))
                used += 1
                if v > cur:
                    x, cur = trial, v
                    best = (cur, tuple(x))
                    improved = True
                    break
    return best, used


def _restart(args):
    h, bank, objective, cfg, r, child = args
    ev = _Evaluator(h, bank, objective, cfg.xmax)
    rng = np.random.Generator(np.random.PCG64(child))
    n = h.order
    per = max(1, cfg.budget // cfg.restarts)
    if r < len(cfg.starts):
        x = list(cfg.starts[r])
    else:
        x = [int(v) for v in rng.integers(-cfg.xmax, cfg.xmax + 1, n)]
    steps = sorted({1, *bank.Delta, *bank.Gamma, max(1, cfg.xmax // 2)})
    best, _ = _climb(ev, x, per, steps, cfg.xmax)
    return best, ev.count


def _exhaustive(h, bank, objective, cfg: SearchConfig, bound: int) -> SearchResult:
    n = h.order
    base = 2 * cfg.xmax + 1
    total = base ** n
    if total > cfg.enum_cap:
        raise SizeLimitError(
            f"exhaustive search needs {total} evaluations, above the cap {cfg.enum_cap}"
        )
    powers = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
    best = None
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        xs = (idx[:, None] // powers) % base - cfg.xmax
        try:
            xp = run_batch(h, bank, xs)
            vals = np.abs(xp - xs).max(axis=1) if objective == "error" else np.abs(xp).max(axis=1)
        except SizeLimitError:
            vals = np.array([_objective_value(h, bank, objective, tuple(map(int, r))) for r in xs])
        top = int(vals.max())
        if top > bound:
            j = int(np.argmax(vals))
            raise BoundViolation(
                f"{objective} {top} exceeds the proven bound {bound} at x={xs[j].tolist()}"
            )
        j = int(np.argmax(vals))  # first maximum is lexicographically smallest
        cand = (top, tuple(int(v) for v in xs[j]))
        if _better(cand, best):
            best = cand
    return SearchResult(objective, "exhaustive", best[1], best[0], bound, total)


def search(
    h: hd.HadamardMatrix,
    bank: QuantizerBank,
    cfg: SearchConfig,
    objective: str = "error",
    workers: int = 1,
) -> SearchResult:
    """Maximise the chosen objective over integer ``x`` with ``||x||_inf <= cfg.xmax``."""
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    n = h.order
    if bank.n != n:
        raise DimensionError(f"bank has {bank.n} channels but the matrix order is {n}")
    for s in cfg.starts:
        _check_start(s, n, cfg.xmax)
    bound = _bound(h, bank, objective, cfg.xmax)
    if cfg.strategy == "exhaustive":
        return _exhaustive(h, bank, objective, cfg, bound)

    root = np.random.SeedSequence(cfg.seed)
    if cfg.strategy == "random":
        ev = _Evaluator(h, bank, objective, cfg.xmax)
        rng = np.random.Generator(np.random.PCG64(root))
        best = None
        for s in cfg.starts:
            cand = (ev(s), s)
            if _better(cand, best):
                best = cand
        for _ in range(cfg.budget):
            x = tuple(int(v) for v in rng.integers(-cfg.xmax, cfg.xmax + 1, n))
            cand = (ev(x), x)
            if _better(cand, best):
                best = cand
        if best is None:
            x = (0,) * n
            best = (ev(x), x)
        return SearchResult(objective, "random", best[1], best[0], bound, ev.count)

    restarts = max(cfg.restarts, len(cfg.starts))
    jobs = [(h, bank, objective, cfg, r, child) for r, child in enumerate(root.spawn(restarts))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_restart, jobs))
    else:
        outcomes = [_restart(j) for j in jobs]
    best = None
    evaluations = 0
    for cand, count in outcomes:
        evaluations += count
        if _better(cand, best):
            best = cand
    return SearchResult(objective, "coordinate-ascent", best[1], best[0], bound, evaluations)


def worst_error(h, bank, cfg: SearchConfig, workers: int = 1) -> tuple[tuple[int, ...], int]:
    res = search(h, bank, cfg, "error", workers)
    return res.x, res.value


def worst_magnitude(h, bank, cfg: SearchConfig, workers: int = 1) -> tuple[tuple[int, ...], int]:
    res = search(h, bank, cfg, "magnitude", workers)
    return res.x, res.value
