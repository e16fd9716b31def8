"""Run every theorem program in each supported geometry and write one JSON report per campaign.

    python scripts/run_campaigns.py --trials 1000 --seed 0 --out results/
"""

import argparse
import json
from dataclasses import asdict, dataclass
from pathlib import Path

from skewerlab.configurations import run_program, theorem_library
from skewerlab.errors import TooManyResamples


@dataclass
class CampaignConfig:
    trials: int = 1000
    seed: int = 0
    tol: float = 1e-8
    workers: int = 1
    out: str = "results"
    controls: bool = True


def main(cfg: CampaignConfig) -> int:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name, program in theorem_library().items():
        variants = [(program, True)]
        if cfg.controls:
            variants.append((program.perturbed(), False))
        for geometry in program.supported:
            for prog, should_pass in variants:
                try:
                    report = run_program(prog, cfg.trials, cfg.seed, cfg.tol, geometry=geometry, workers=cfg.workers)
                except TooManyResamples as exc:
                    report = exc.report
                print(report.summary())
                # controls are expected to fail nearly every trial
                ok = report.passed if should_pass else len(report.failures) > 0.99 * report.completed
                failed += not ok
                path = out / f"{prog.name}_{geometry}.json"
                path.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    (out / "config.json").write_text(json.dumps(asdict(cfg), indent=2) + "\n")
    print(f"{failed} campaign(s) did not behave as expected")
    return 1 if failed else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = CampaignConfig()
    p.add_argument("--trials", type=int, default=defaults.trials)
    p.add_argument("--seed", type=int, default=defaults.seed)
    p.add_argument("--tol", type=float, default=defaults.tol)
    p.add_argument("--workers", type=int, default=defaults.workers)
    p.add_argument("--out", default=defaults.out)
    p.add_argument("--no-controls", dest="controls", action="store_false")
    raise SystemExit(main(CampaignConfig(**vars(p.parse_args()))))
