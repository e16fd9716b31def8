"""Compare both quadrilateral Fuss relations with a brute-force planar closure.

For random (r, d) the outer radius closing a bicentric quadrilateral is found by
bisection on the swept angle of the tangent chain; the corrected relation
vanishes there and the variant with (R^2 - r^2) does not.

    python scripts/fuss_check.py --pairs 50
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from skewerlab import congruences as cg

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from oracles import bicentric_outer_radius  # noqa: E402


@dataclass
class FussConfig:
    pairs: int = 50
    seed: int = 0
    r_max: float = 2.0
    d_max: float = 1.5


def main(cfg: FussConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    worst_corrected, printed = 0.0, []
    print(f"{'r':>8s} {'d':>8s} {'R (oracle)':>12s} {'n=3 R':>12s} {'corrected':>11s} {'printed':>11s}")
    for k in range(cfg.pairs):
        r, d = rng.uniform(0.2, cfg.r_max), rng.uniform(0.0, cfg.d_max)
        R4 = bicentric_outer_radius(4, r, d)
        R3 = bicentric_outer_radius(3, r, d)
        c, p = cg.fuss_residual(4, r, R4, d), cg.fuss4_printed_residual(r, R4, d)
        worst_corrected = max(worst_corrected, abs(c))
        printed.append(abs(p))
        if k < 10:
            print(f"{r:8.4f} {d:8.4f} {R4:12.8f} {R3:12.8f} {c:11.2e} {p:11.2e}")
    print(f"corrected relation: worst |residual| {worst_corrected:.2e} over {cfg.pairs} closures")
    print(f"printed variant: |residual| ranges over [{min(printed):.2e}, {max(printed):.2e}]")
    print(f"concentric square (r=1, R=sqrt 2, d=0): corrected {cg.fuss_residual(4, 1, np.sqrt(2), 0):.2e}, "
          f"printed {cg.fuss4_printed_residual(1, np.sqrt(2), 0):.3f}")
    return 0 if worst_corrected < 1e-9 else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    d = FussConfig()
    for name in ("pairs", "seed"):
        p.add_argument(f"--{name}", type=int, default=getattr(d, name))
    p.add_argument("--r-max", dest="r_max", type=float, default=d.r_max)
    p.add_argument("--d-max", dest="d_max", type=float, default=d.d_max)
    raise SystemExit(main(FussConfig(**vars(p.parse_args()))))
