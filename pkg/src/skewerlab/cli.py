"""Command-line front end: ``verify``, ``demo``, ``export`` and ``list``.

Exit codes: 0 success, 1 assertion failures, 2 too many resamples,
64 usage error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import functools
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import congruences as cg
from .configurations import clifford, hesse_configuration, sylvester_check
from .configurations.library import get_program, theorem_library
from .configurations.models import GEOMETRIES
from .configurations.dsl import run_program
from .configurations.scene import export_scene
from .errors import TooManyResamples, UnsupportedN
from .harness import run_trials

EXIT_OK, EXIT_FAIL, EXIT_RESAMPLE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 64, 74
SEED_ENV = "SKEWERLAB_SEED"
DEMOS = ("sylvester-hesse", "fuss", "poncelet-search", "clifford")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    theorem: Optional[str] = None
    geometry: Optional[str] = None
    trials: int = 1000
    seed: int = 0
    tol: float = 1e-8
    output: Optional[str] = None
    export: Optional[str] = None
    workers: int = 1
    perturbed: bool = False
    trial: int = 0

    def validate(self) -> None:
        if self.theorem is not None:
            lib = theorem_library()
            if self.theorem not in lib:
                raise UsageError(f"unknown theorem {self.theorem!r}; known: {', '.join(lib)}")
            program = lib[self.theorem]
            if self.geometry is None:
                self.geometry = program.supported[0]
            elif not program.in_geometry(self.geometry):
                raise UsageError(f"{self.theorem} supports {', '.join(program.supported)}, not {self.geometry}")
        if self.trials < 1:
            raise UsageError("--trials must be a positive integer")
        if not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        if not 0 < self.tol < 1:
            raise UsageError("--tol must lie in (0, 1)")
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")
        if self.trial < 0:
            raise UsageError("--trial must be nonnegative")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def write_json_atomic(path: str, payload: dict) -> None:
    """Write to a temporary file in the target directory, then rename over ``path``."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".skewerlab-", suffix=".json", dir=directory)
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_verify(cfg: RunConfig) -> int:
    program = get_program(cfg.theorem)
    if cfg.perturbed:
        program = program.perturbed()
    code = EXIT_OK
    try:
        report = run_program(program, cfg.trials, cfg.seed, cfg.tol, geometry=cfg.geometry, workers=cfg.workers)
    except TooManyResamples as exc:
        report, code = exc.report, EXIT_RESAMPLE
        print(f"error: {exc}", file=sys.stderr)
    print(report.summary())
    if code == EXIT_OK and not report.passed:
        code = EXIT_FAIL
    if cfg.output:
        write_json_atomic(cfg.output, report.to_dict())
    return code


def cmd_export(cfg: RunConfig) -> int:
    program = get_program(cfg.theorem)
    try:
        scene = export_scene(program, cfg.geometry, cfg.seed, cfg.trial)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    except TooManyResamples as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESAMPLE
    write_json_atomic(cfg.export, scene)
    print(f"wrote {len(scene['lines'])} lines and {len(scene['incidences'])} incidences to {cfg.export}")
    return EXIT_OK


def demo_sylvester(args) -> int:
    forms, triples = hesse_configuration()
    report = sylvester_check(forms, triples)
    print(f"Hesse configuration: 9 lines, {len(triples)} collinear triples")
    print(f"worst pair residual {report.worst:.3e}; third singular value {report.third_singular_value:.6f}")
    print(report.summary())
    return EXIT_OK if report.sylvester and report.no_common_skewer else EXIT_FAIL


def demo_fuss(args) -> int:
    n, r, R, d = args.n, args.r, args.R, args.d
    if not (0 < r < R and d >= 0):
        raise UsageError("need 0 < r < R and d >= 0")
    try:
        corrected = cg.fuss_residual(n, r, R, d)
    except UnsupportedN as exc:
        raise UsageError(str(exc)) from None
    if n == 3:
        print(f"n=3 (Euler) residual R^2 - d^2 - 2rR = {corrected:.6g}")
    else:
        printed = cg.fuss4_printed_residual(r, R, d)
        print(f"n=4 corrected residual (R^2-d^2)^2 - 2r^2(R^2+d^2) = {corrected:.6g}")
        print(f"n=4 printed-variant residual (R^2-r^2)^2 - 2r^2(R^2+d^2) = {printed:.6g}")
    return EXIT_OK


def demo_poncelet(args) -> int:
    n, rng = args.n, np.random.default_rng(args.seed)
    if n < 3:
        raise UsageError("--n must be at least 3")
    if args.geometry == "hyperbolic":
        P1, R, P2 = 0.2 + 1.0j, 1.0, cg.h2_circle_point(0.2 + 1.0j, 0.25, 0.7)
        r = cg.closing_h2_radius(P1, R, P2, n)
        C1, C2 = cg.h2_poncelet_congruences(P1, R, P2, r)
        print(f"H^2 circles: R={R}, center offset 0.25, closing inner radius r={r:.15f}")
        defects = []
        for _ in range(20):
            l1 = C1.member(complex(*rng.normal(size=2)))
            defects.append(cg.hyperbolic_poncelet_defect(C1, C2, l1, cg.orthogonal_members(C2, l1)[0], n))
    else:
        outer = cg.SphericalCircle([0.0, 0.0, 1.0], 1.0)
        inner_center = np.array([np.sin(0.2), 0.0, np.cos(0.2)])
        inner = cg.closing_inner_circle(outer, inner_center, n)
        print(f"S^2 circles: outer rho=1.0, inner center offset 0.2, closing inner rho={inner.rho:.15f}")
        defects = [cg.poncelet_chain(outer, inner, outer.point(t), 1, n) for t in rng.uniform(0, 2 * np.pi, 20)]
    worst, spread = max(defects), float(np.std(defects))
    print(f"closure defect over 20 starts: max {worst:.3e}, std {spread:.3e}")
    return EXIT_OK if worst < 1e-6 else EXIT_FAIL


def demo_clifford(args) -> int:
    code = EXIT_OK
    for n, tol in ((4, 1e-8), (5, 1e-8), (6, 1e-6)):
        fn = functools.partial(clifford.sphere_pair_trial, n)
        try:
            report = run_trials(f"clifford{n}", "elliptic", fn, args.trials, args.seed, tol)
        except TooManyResamples as exc:
            print(exc.report.summary())
            return EXIT_RESAMPLE
        print(report.summary())
        if not report.passed:
            code = EXIT_FAIL
    return code


def cmd_list(args) -> int:
    for name, program in theorem_library().items():
        print(f"{name:24s} {', '.join(program.supported):32s} {program.description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="skewerlab", description="Randomized verification of skewer configuration theorems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, theorem=True):
        if theorem:
            p.add_argument("theorem")
            p.add_argument("--geometry", choices=GEOMETRIES)
        p.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV}, else 0")

    v = sub.add_parser("verify", help="run a seeded verification campaign")
    common(v)
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--json", dest="output", help="write the JSON report here")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--perturbed", action="store_true", help="run the negative control instead")

    d = sub.add_parser("demo", help="run a named demonstration")
    d.add_argument("name", choices=DEMOS)
    d.add_argument("--n", type=int, default=None)
    d.add_argument("--r", type=float, default=1.0)
    d.add_argument("--R", type=float, default=2.0)
    d.add_argument("--d", type=float, default=0.0)
    d.add_argument("--trials", type=int, default=200)
    d.add_argument("--geometry", choices=("elliptic", "hyperbolic"), default="elliptic")
    d.add_argument("--seed", type=int, default=None)

    e = sub.add_parser("export", help="write the scene of one trial")
    common(e)
    e.add_argument("--trial", type=int, default=0)
    e.add_argument("--out", dest="export", required=True)

    sub.add_parser("list", help="list the theorem programs")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "list":
            return cmd_list(args)
        if args.seed is None:
            args.seed = _default_seed()
        if args.command == "demo":
            if args.n is None:
                args.n = {"fuss": 4, "poncelet-search": 5}.get(args.name, 0)
            if args.trials < 1:
                raise UsageError("--trials must be a positive integer")
            handler = {
                "sylvester-hesse": demo_sylvester,
                "fuss": demo_fuss,
                "poncelet-search": demo_poncelet,
                "clifford": demo_clifford,
            }[args.name]
            return handler(args)
        cfg = RunConfig(
            command=args.command,
            theorem=args.theorem,
            geometry=args.geometry,
            seed=args.seed,
            trials=getattr(args, "trials", 1000),
            tol=getattr(args, "tol", 1e-8),
            output=getattr(args, "output", None),
            export=getattr(args, "export", None),
            workers=getattr(args, "workers", 1),
            perturbed=getattr(args, "perturbed", False),
            trial=getattr(args, "trial", 0),
        )
        cfg.validate()
        return cmd_verify(cfg) if cfg.command == "verify" else cmd_export(cfg)
    except UsageError as exc:
        print(f"skewerlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"skewerlab: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
