"""Command-line front end: ``polypack {solve,bench,render,validate,gen}``.

Exit codes: 0 success, 1 infeasible result where feasibility was required,
2 usage or validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import instances, reports
from .annealer import AnnealConfig, anneal, run_campaign
from .geometry import ValidationError
from .instances import InstanceFormatError
from .model import EnergyWeights, Instance, validate_solution
from .render import render_svg

log = logging.getLogger("polypack")

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    instance: str
    overrides: dict = field(default_factory=dict)
    n_runs: int = 1
    out: Path = Path(".")
    svg: bool = False
    jobs: int = 1

    def resolve_instance(self) -> Instance:
        if self.instance in instances.BUILTIN_IDS:
            return instances.builtin(self.instance)
        path = Path(self.instance)
        if not path.is_file():
            raise UsageError(f"instance {self.instance!r} is neither a built-in id nor a readable file")
        try:
            return instances.load(path)
        except (InstanceFormatError, ValidationError) as e:
            raise UsageError(str(e)) from None

    def config(self, inst: Instance) -> AnnealConfig:
        o = dict(self.overrides)
        params = {
            "imax": instances.RECT_IMAX.get(inst.name, 20000 * inst.k),
            "cmax": 100 * inst.k,
        }
        for key in ("imax", "cmax", "t0", "cool", "emax", "seed", "perturb_mode"):
            if o.get(key) is not None:
                params[key] = o[key]
        params["weights"] = EnergyWeights(o.get("lambda1") or 100.0, o.get("lambda2") or 100.0)
        return AnnealConfig(**params)


def _manifest(args) -> RunManifest:
    overrides = {k: getattr(args, k, None) for k in
                 ("imax", "cmax", "t0", "cool", "emax", "seed", "perturb_mode", "lambda1", "lambda2")}
    if overrides["lambda1"] is not None and overrides["lambda1"] <= 0:
        raise UsageError("--lambda1 must be positive")
    if overrides["lambda2"] is not None and overrides["lambda2"] <= 0:
        raise UsageError("--lambda2 must be positive")
    runs = getattr(args, "runs", 1)
    if runs < 1:
        raise UsageError("--runs must be at least 1")
    return RunManifest(args.instance, overrides, runs, Path(args.out), getattr(args, "svg", False),
                       max(1, getattr(args, "jobs", 1)))


def _prepare_out(out: Path) -> None:
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OSError(f"cannot create output directory {out}: {e}") from None


def cmd_solve(args) -> int:
    m = _manifest(args)
    inst = m.resolve_instance()
    cfg = m.config(inst)
    rep = anneal(inst, cfg)
    _prepare_out(m.out)
    reports.write(reports.report_dict(rep, cfg), m.out / "report.json")
    if m.svg:
        render_svg(inst, rep.best_layout, m.out / "layout.svg")
    print(f"instance={rep.instance} seed={rep.seed} best_radius={rep.best_radius!r} "
          f"best_energy={rep.best_energy!r} feasible={rep.feasible} "
          f"iterations_used={rep.iterations_used} wall_time={rep.wall_time:.3f}")
    if args.require_feasible and not rep.feasible:
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_bench(args) -> int:
    m = _manifest(args)
    inst = m.resolve_instance()
    cfg = m.config(inst)

    def progress(rep):
        log.info("run seed=%d radius=%.6f feasible=%s", rep.seed, rep.best_radius, rep.feasible)

    stats, reps = run_campaign(inst, cfg, m.n_runs, jobs=m.jobs, progress=progress)
    _prepare_out(m.out)
    reports.write(reports.campaign_dict(stats, reps, cfg), m.out / "campaign.json")
    if m.svg:
        render_svg(inst, reps[stats.best_run].best_layout, m.out / "layout.svg")
    print(f"instance={inst.name} runs={stats.runs} r_best={stats.r_best!r} r_mean={stats.r_mean!r} "
          f"r_variance={stats.r_variance!r} r_std={stats.r_std!r} mean_time={stats.mean_time:.3f} "
          f"feasible_runs={stats.feasible_runs}")
    if args.require_feasible and stats.feasible_runs < stats.runs:
        return EXIT_INFEASIBLE
    return EXIT_OK


def _read_report(path: str) -> dict:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"report {path!r} not found")
    try:
        return reports.read(p)
    except ValueError as e:
        raise UsageError(f"{path}: {e}") from None


def cmd_render(args) -> int:
    inst = RunManifest(args.instance).resolve_instance()
    d = _read_report(args.report)
    layout = reports.best_layout(d)
    if len(layout) != inst.k:
        raise UsageError(f"report layout has {len(layout)} polygons, instance {inst.name} has {inst.k}")
    out = Path(args.out)
    _prepare_out(out)
    path = render_svg(inst, layout, out / "layout.svg")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_validate(args) -> int:
    inst = RunManifest(args.instance).resolve_instance()
    print(f"instance={inst.name} k={inst.k} r0={inst.initial_radius!r} valid=True")
    if args.report is None:
        return EXIT_OK
    d = _read_report(args.report)
    layout = reports.best_layout(d)
    if len(layout) != inst.k:
        raise UsageError(f"report layout has {len(layout)} polygons, instance {inst.name} has {inst.k}")
    check = validate_solution(inst, layout)
    print(f"feasible={check.feasible} radius={check.radius!r} max_pair_overlap={check.max_pair_overlap!r} "
          f"overlapping_pairs={list(check.overlapping_pairs)}")
    return EXIT_OK if check.feasible else EXIT_INFEASIBLE


def cmd_gen(args) -> int:
    try:
        inst = instances.random_rectangles(args.k, (args.size_min, args.size_max),
                                           (args.mass_min, args.mass_max), seed=args.seed or 0)
    except ValidationError as e:
        raise UsageError(str(e)) from None
    instances.save(inst, args.out)
    print(f"wrote {args.out} k={inst.k} r0={inst.initial_radius!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polypack", description="Weighted polygon packing by simulated annealing.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def solver_flags(sp):
        sp.add_argument("--instance", required=True, help="built-in id (opt-1..6, rect-1..4) or instance file")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--imax", type=int)
        sp.add_argument("--cmax", type=int)
        sp.add_argument("--t0", type=float)
        sp.add_argument("--cool", type=float)
        sp.add_argument("--emax", type=float)
        sp.add_argument("--lambda1", type=float)
        sp.add_argument("--lambda2", type=float)
        sp.add_argument("--perturb-mode", choices=("delta", "absolute"))
        sp.add_argument("--out", default=".")
        sp.add_argument("--svg", action="store_true", help="also write layout.svg")
        sp.add_argument("--require-feasible", action="store_true")

    sp = sub.add_parser("solve", help="run one anneal, write report.json")
    solver_flags(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("bench", help="run a seeded campaign, write campaign.json")
    solver_flags(sp)
    sp.add_argument("--runs", type=int, default=40)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("render", help="draw the best layout of a report as layout.svg")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--report", required=True)
    sp.add_argument("--out", default=".")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("validate", help="check an instance and optionally a report's layout")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("gen", help="write a random rectangle instance")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--size-min", type=float, default=2.0)
    sp.add_argument("--size-max", type=float, default=10.0)
    sp.add_argument("--mass-min", type=float, default=5.0)
    sp.add_argument("--mass-max", type=float, default=30.0)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
