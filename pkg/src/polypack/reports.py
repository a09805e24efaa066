"""JSON serialization of solve reports and campaigns (``schema: 1``)."""

from __future__ import annotations

import json
from dataclasses import asdict
from os import PathLike
from pathlib import Path

from .annealer import AnnealConfig, CampaignStats, SolveReport
from .model import Layout

SCHEMA = 1

#: Fields that depend on the clock rather than on (instance, config, seed).
TIMING_FIELDS = ("wall_time", "mean_time")


def config_dict(cfg: AnnealConfig) -> dict:
    return asdict(cfg)


def report_dict(rep: SolveReport, cfg: AnnealConfig | None = None) -> dict:
    d = {
        "schema": SCHEMA,
        "instance": rep.instance,
        "seed": rep.seed,
        "best_radius": rep.best_radius,
        "best_energy": rep.best_energy,
        "best_overlap": rep.best_overlap,
        "feasible": rep.feasible,
        "iterations_used": rep.iterations_used,
        "final_energy": rep.final_energy,
        "final_temperature": rep.final_temperature,
        "best_layout": rep.best_layout.to_list(),
        "final_layout": rep.final_layout.to_list(),
        "energy_trace": [list(t) for t in rep.energy_trace],
        "uphill": dict(rep.uphill),
        "wall_time": rep.wall_time,
    }
    if cfg is not None:
        d["config"] = config_dict(cfg)
    return d


def campaign_dict(stats: CampaignStats, reports: list[SolveReport], cfg: AnnealConfig) -> dict:
    return {
        "schema": SCHEMA,
        "instance": reports[0].instance,
        "config": config_dict(cfg),
        "runs": stats.runs,
        "r_best": stats.r_best,
        "r_mean": stats.r_mean,
        "r_variance": stats.r_variance,
        "r_std": stats.r_std,
        "mean_time": stats.mean_time,
        "best_run": stats.best_run,
        "feasible_runs": stats.feasible_runs,
        "reports": [report_dict(r) for r in reports],
    }


def dumps(d: dict) -> str:
    return json.dumps(d, indent=2, allow_nan=False) + "\n"


def write(d: dict, path: str | PathLike) -> Path:
    p = Path(path)
    p.write_text(dumps(d), encoding="utf-8")
    return p


def read(path: str | PathLike) -> dict:
    d = json.loads(Path(path).read_text(encoding="utf-8"))
    if d.get("schema") != SCHEMA:
        raise ValueError(f"{path}: unsupported report schema {d.get('schema')!r}")
    return d


def best_layout(d: dict) -> Layout:
    """Best layout of a report, or of the best run of a campaign."""
    if "reports" in d:
        d = d["reports"][d["best_run"]]
    return Layout(d["best_layout"])


def strip_timing(d):
    """Copy of a report/campaign dict without clock-dependent fields."""
    if isinstance(d, dict):
        return {k: strip_timing(v) for k, v in d.items() if k not in TIMING_FIELDS}
    if isinstance(d, list):
        return [strip_timing(v) for v in d]
    return d
