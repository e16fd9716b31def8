"""Clifford's chain of circles on S^2, one instance per sphere factor.

Circle ``i`` passes through a common point P; ``ij`` is the second
intersection of circles ``i`` and ``j``; circle ``ijk`` passes through
``ij, jk, ki``. Level 4 points ``ijkl`` are second intersections of two
level-3 circles, level 5 circles pass through level-4 points; the theorem
claims the remaining incidences hold.
"""

from __future__ import annotations

import itertools

import numpy as np

from .. import congruences as cg
from ..errors import DegenerateCircle

# minimum angular separation between points a construction relies on
SEPARATION = 0.05


def _unit(v):
    return v / np.linalg.norm(v)


def _apart(*pts) -> None:
    for p, q in itertools.combinations(pts, 2):
        if np.linalg.norm(p - q) < SEPARATION or np.linalg.norm(p + q) < SEPARATION:
            raise DegenerateCircle("chain points too close for a well-conditioned circle")


def _circle(p1, p2, p3) -> cg.SphericalCircle:
    _apart(p1, p2, p3)
    return cg.circle_through(p1, p2, p3)


class Chain:
    """Lazily evaluated Clifford chain over ``n`` initial circles through ``P``."""

    def __init__(self, P: np.ndarray, circles: list):
        self.P = P
        self.base = circles
        self._pts: dict = {}
        self._circ: dict = {}

    @classmethod
    def sample(cls, rng: np.random.Generator, n: int) -> "Chain":
        P = _unit(rng.normal(size=3))
        circles = [_circle(P, _unit(rng.normal(size=3)), _unit(rng.normal(size=3))) for _ in range(n)]
        return cls(P, circles)

    def point(self, idx: tuple) -> np.ndarray:
        """Point labelled by an even-size index set (2 or 4)."""
        idx = tuple(sorted(idx))
        if idx not in self._pts:
            if len(idx) == 2:
                i, j = idx
                p = cg.second_intersection(self.base[i], self.base[j], self.P)
            else:
                # two level-3 circles sharing the point on their common pair
                a, b, c, d = idx
                p = cg.second_intersection(self.circle((a, b, c)), self.circle((b, c, d)), self.point((b, c)))
            _apart(p, self.P)
            self._pts[idx] = p
        return self._pts[idx]

    def circle(self, idx: tuple) -> cg.SphericalCircle:
        """Circle labelled by an odd-size index set (3 or 5)."""
        idx = tuple(sorted(idx))
        if idx not in self._circ:
            subsets = list(itertools.combinations(idx, len(idx) - 1))
            pts = [self.point(s) for s in subsets[:3]]
            self._circ[idx] = _circle(*pts)
        return self._circ[idx]

    def concurrency4(self, idx=(0, 1, 2, 3)) -> float:
        """The four level-3 circles of ``idx`` through the level-4 point."""
        p = self.point(idx)
        return max(self.circle(t).residual(p) for t in itertools.combinations(idx, 3))

    def concyclic5(self, idx=(0, 1, 2, 3, 4)) -> float:
        """The five level-4 points of ``idx`` on the level-5 circle."""
        c = self.circle(idx)
        return max(c.residual(self.point(s)) for s in itertools.combinations(idx, 4))

    def concurrency6(self) -> float:
        """The six level-5 circles through one point."""
        idx = tuple(range(6))
        subsets = list(itertools.combinations(idx, 5))
        first, second = self.circle(subsets[0]), self.circle(subsets[1])
        shared = tuple(sorted(set(subsets[0]) & set(subsets[1])))
        p = cg.second_intersection(first, second, self.point(shared))
        return max(self.circle(s).residual(p) for s in subsets)


def clifford_residual(rng: np.random.Generator, n: int) -> float:
    chain = Chain.sample(rng, n)
    if n == 4:
        return chain.concurrency4()
    if n == 5:
        return max(chain.concyclic5(), *(chain.concurrency4(t) for t in itertools.combinations(range(5), 4)))
    if n == 6:
        return chain.concurrency6()
    raise ValueError(f"chains are implemented for n = 4, 5, 6 (got {n})")


def clifford_control(rng: np.random.Generator, n: int) -> float:
    """The same chain with point 01 slid along circle 1, off circle 0."""
    chain = Chain.sample(rng, n)
    c1 = chain.base[1]
    theta = c1.angle_of(chain.point((0, 1))) + 0.05
    chain._pts[(0, 1)] = c1.point(theta)
    return {4: chain.concurrency4, 5: chain.concyclic5, 6: chain.concurrency6}[n]()


def sphere_pair_trial(n: int, rng: np.random.Generator, geometry: str = "elliptic", control: bool = False) -> dict:
    """One chain on each sphere factor; the elliptic residual is their max."""
    fn = clifford_control if control else clifford_residual
    return {f"clifford{n}": max(fn(rng, n), fn(rng, n))}
