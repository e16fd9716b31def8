"""Find closing inner radii for Poncelet chains on S^2 and in H^2, then re-verify from random starts.

    python scripts/poncelet_search.py --n 3 4 5 6 --offset 0.2 --starts 20
"""

import argparse
from dataclasses import dataclass, field

import numpy as np

from skewerlab import congruences as cg


@dataclass
class SearchConfig:
    n: list = field(default_factory=lambda: [3, 4, 5, 6])
    outer: float = 1.0  # outer radius (angular on S^2, hyperbolic in H^2)
    offset: float = 0.2  # distance between the centers
    starts: int = 20
    seed: int = 0


def spherical(cfg: SearchConfig, n: int, rng) -> tuple:
    outer = cg.SphericalCircle([0.0, 0.0, 1.0], cfg.outer)
    inner = cg.closing_inner_circle(outer, np.array([np.sin(cfg.offset), 0.0, np.cos(cfg.offset)]), n)
    defects = [cg.poncelet_chain(outer, inner, outer.point(t), 1, n) for t in rng.uniform(0, 2 * np.pi, cfg.starts)]
    return inner.rho, defects


def hyperbolic(cfg: SearchConfig, n: int, rng) -> tuple:
    P1 = 1.0j
    P2 = cg.h2_circle_point(P1, cfg.offset, 0.0)
    r = cg.closing_h2_radius(P1, cfg.outer, P2, n)
    C1, C2 = cg.h2_poncelet_congruences(P1, cfg.outer, P2, r)
    defects = []
    for _ in range(cfg.starts):
        # complex starting lines: the porism holds for the whole complexified congruence
        l1 = C1.member(complex(*rng.normal(size=2)))
        defects.append(cg.hyperbolic_poncelet_defect(C1, C2, l1, cg.orthogonal_members(C2, l1)[0], n))
    return r, defects


def main(cfg: SearchConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    print(f"{'model':10s} {'n':>3s} {'inner radius':>20s} {'max defect':>12s} {'std':>10s}")
    worst = 0.0
    for n in cfg.n:
        for model, fn in (("S^2", spherical), ("H^2 lines", hyperbolic)):
            radius, defects = fn(cfg, n, rng)
            worst = max(worst, max(defects))
            print(f"{model:10s} {n:3d} {radius:20.15f} {max(defects):12.3e} {np.std(defects):10.2e}")
    return 0 if worst < 1e-6 else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    d = SearchConfig()
    p.add_argument("--n", type=int, nargs="+", default=d.n)
    p.add_argument("--outer", type=float, default=d.outer)
    p.add_argument("--offset", type=float, default=d.offset)
    p.add_argument("--starts", type=int, default=d.starts)
    p.add_argument("--seed", type=int, default=d.seed)
    raise SystemExit(main(SearchConfig(**vars(p.parse_args()))))
