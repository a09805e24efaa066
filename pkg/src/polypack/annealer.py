"""Simulated annealing for weighted polygon layouts.

Iteration ``i`` perturbs polygon ``i mod k`` inside a window that shrinks
from 0.55 to 0.05 of its full size, accepts by the Metropolis rule, and
multiplies the temperature by ``cool`` every ``cmax`` iterations.

Random numbers come from numpy's PCG64 generator. A run seeded with ``seed``
draws its initial layout first, then one ``(imax, 4)`` block of uniforms on
[0, 1): three per iteration for the move and one for the acceptance test.
Campaign run ``n`` uses the ``n``-th child of ``SeedSequence(seed)``.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels as K
from .geometry import EPS, ValidationError
from .model import EnergyWeights, Instance, Layout, energy_terms, validate_solution

PERTURB_MODES = ("delta", "absolute")


@dataclass(frozen=True)
class AnnealConfig:
    imax: int
    cmax: int
    t0: float = 100.0
    cool: float = 0.95
    emax: float = 0.0
    weights: EnergyWeights = field(default_factory=EnergyWeights)
    seed: int = 0
    perturb_mode: str = "delta"
    trace_points: int = 200

    def __post_init__(self):
        if int(self.imax) != self.imax or self.imax < 1:
            raise ValidationError(f"imax must be a positive integer, got {self.imax}")
        if int(self.cmax) != self.cmax or self.cmax < 1:
            raise ValidationError(f"cmax must be a positive integer, got {self.cmax}")
        if not (math.isfinite(self.t0) and self.t0 > 0):
            raise ValidationError(f"t0 must be positive, got {self.t0}")
        if not (0.0 < self.cool < 1.0):
            raise ValidationError(f"cooling factor must lie in (0, 1), got {self.cool}")
        if not (math.isfinite(self.emax) and self.emax >= 0):
            raise ValidationError(f"emax must be non-negative, got {self.emax}")
        if not (0 <= self.seed < 2**64):
            raise ValidationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.perturb_mode not in PERTURB_MODES:
            raise ValidationError(f"perturb_mode must be one of {PERTURB_MODES}, got {self.perturb_mode!r}")
        if self.trace_points < 1:
            raise ValidationError("trace_points must be positive")

    @classmethod
    def for_instance(cls, inst: Instance, **overrides) -> AnnealConfig:
        """Default budget: ``imax = 20000 k`` and ``cmax = 100 k``."""
        params = {"imax": 20000 * inst.k, "cmax": 100 * inst.k}
        params.update(overrides)
        return cls(**params)


@dataclass
class SolveReport:
    instance: str
    seed: int
    best_layout: Layout
    best_radius: float
    best_energy: float
    best_overlap: float
    feasible: bool
    iterations_used: int
    final_layout: Layout
    final_energy: float
    final_temperature: float
    energy_trace: list[tuple[int, float, float]]
    uphill: dict[str, int]
    wall_time: float


@dataclass
class CampaignStats:
    runs: int
    r_best: float
    r_mean: float
    r_variance: float
    r_std: float
    mean_time: float
    best_run: int
    feasible_runs: int


def neighborhood_scale(i: float, imax: float) -> float:
    """Window factor ``imax / (i - 2 imax) + 1.05``: 0.55 at the start, 0.05 at the end."""
    return imax / (i - 2.0 * imax) + 1.05


def temperature(i: int, cfg: AnnealConfig) -> float:
    """Temperature in effect after iteration ``i`` has finished."""
    return cfg.t0 * cfg.cool ** float((i + 1) // cfg.cmax)


def perturb(L: Layout, j: int, scale: float, r0: float, rng: np.random.Generator,
            mode: str = "delta") -> Layout:
    """Copy of ``L`` with polygon ``j`` moved; all other rows are untouched."""
    u = 2.0 * rng.random(3) - 1.0
    return _move(L, j, scale, r0, u, mode)


def _move(L: Layout, j: int, scale: float, r0: float, u, mode: str) -> Layout:
    a = np.array(L.array)
    if mode == "delta":
        a[j, 0] = a[j, 0] + scale * r0 * u[0]
        a[j, 1] = a[j, 1] + scale * r0 * u[1]
        a[j, 2] = K.wrap_angle(a[j, 2] + scale * math.pi * u[2])
    elif mode == "absolute":
        a[j, 0] = scale * r0 * u[0]
        a[j, 1] = scale * r0 * u[1]
        a[j, 2] = K.wrap_angle(scale * math.pi * u[2])
    else:
        raise ValidationError(f"unknown perturb mode {mode!r}")
    return Layout(a)


def accept(delta_e: float, t: float, rng: np.random.Generator) -> bool:
    """Metropolis rule: downhill always, uphill with probability ``exp(-delta_e / t)``."""
    if delta_e < 0:
        return True
    return bool(rng.random() < math.exp(-delta_e / t))


def random_initial_layout(inst: Instance, r0: float, rng: np.random.Generator) -> Layout:
    xy = rng.uniform(-r0, r0, size=(inst.k, 2))
    alpha = rng.uniform(0.0, 2 * math.pi, size=inst.k)
    return Layout(np.column_stack([xy, alpha]))


def anneal(inst: Instance, cfg: AnnealConfig, initial: Layout | None = None) -> SolveReport:
    """Run one annealing search and report the best layout it visited.

    The best layout is re-scored from scratch before it is reported, so
    ``best_energy`` always equals :func:`polypack.model.energy` on it.
    """
    start = time.perf_counter()
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    r0 = inst.initial_radius
    X0 = random_initial_layout(inst, r0, rng) if initial is None else initial
    if len(X0) != inst.k:
        raise ValidationError(f"initial layout has {len(X0)} states, instance has {inst.k}")
    U = rng.random((cfg.imax, 4))
    S = np.array(X0.array)
    w = cfg.weights
    trace_every = max(1, cfg.imax // cfg.trace_points)
    best_S, _, used, t_final, ti, te, tb, stats = K.anneal_loop(
        *inst.packed, S, U, cfg.imax, cfg.cmax, float(cfg.t0), float(cfg.cool), float(cfg.emax),
        float(w.lambda1), float(w.lambda2), float(r0), cfg.perturb_mode == "absolute",
        trace_every, EPS)
    best = Layout(best_S)
    final = Layout(S)
    ove, rad = energy_terms(inst, best)
    fo, fr = energy_terms(inst, final)
    check = validate_solution(inst, best)
    return SolveReport(
        instance=inst.name,
        seed=cfg.seed,
        best_layout=best,
        best_radius=rad,
        best_energy=w.lambda1 * ove + w.lambda2 * rad,
        best_overlap=ove,
        feasible=check.feasible,
        iterations_used=int(used),
        final_layout=final,
        final_energy=w.lambda1 * fo + w.lambda2 * fr,
        final_temperature=float(t_final),
        energy_trace=[(int(a), float(b), float(c)) for a, b, c in zip(ti, te, tb)],
        uphill={"early_proposed": int(stats[0]), "early_accepted": int(stats[1]),
                "late_proposed": int(stats[2]), "late_accepted": int(stats[3])},
        wall_time=time.perf_counter() - start,
    )


def run_seeds(seed: int, n_runs: int) -> list[int]:
    """Per-run seeds split from ``seed`` through ``SeedSequence.spawn``."""
    children = np.random.SeedSequence(seed).spawn(n_runs)
    return [int(c.generate_state(2, dtype=np.uint64)[0]) for c in children]


def summarize(reports: list[SolveReport]) -> CampaignStats:
    radii = np.array([r.best_radius for r in reports])
    return CampaignStats(
        runs=len(reports),
        r_best=float(radii.min()),
        r_mean=float(radii.mean()),
        r_variance=float(radii.var()),
        r_std=float(radii.std()),
        mean_time=float(np.mean([r.wall_time for r in reports])),
        best_run=int(np.argmin(radii)),
        feasible_runs=sum(r.feasible for r in reports),
    )


def run_campaign(inst: Instance, cfg: AnnealConfig, n_runs: int, jobs: int = 1,
                 progress=None) -> tuple[CampaignStats, list[SolveReport]]:
    """``n_runs`` independent anneals; statistics use population variance.

    Runs may execute on ``jobs`` threads (the kernel releases the GIL); the
    reports come back in run order regardless.
    """
    if n_runs < 1:
        raise ValidationError(f"n_runs must be at least 1, got {n_runs}")
    cfgs = [replace(cfg, seed=s) for s in run_seeds(cfg.seed, n_runs)]

    def one(c):
        rep = anneal(inst, c)
        if progress is not None:
            progress(rep)
        return rep

    if jobs <= 1:
        reports = [one(c) for c in cfgs]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(one, cfgs))
    return summarize(reports), reports
