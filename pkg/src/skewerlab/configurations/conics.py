"""Conics in the plane of coefficient vectors, and the Hesse configuration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .. import hyperbolic_forms as hf
from ..hyperbolic_forms import QForm

SYLVESTER_TOL = 1e-10
RANK_GATE = 0.1


def veronese(v: np.ndarray) -> np.ndarray:
    a, b, c = v
    return np.array([a * a, a * b, a * c, b * b, b * c, c * c])


def conic_fit_residual(forms) -> float:
    """Smallest singular value of the N x 6 matrix of normalized Veronese lifts.

    Zero iff the coefficient vectors lie on one conic of CP^2.
    """
    if len(forms) < 6:
        raise ValueError("a conic fit needs at least six forms")
    rows = []
    for f in forms:
        v = hf._vec(f)
        w = veronese(v / np.linalg.norm(v))
        rows.append(w / np.linalg.norm(w))
    return float(np.linalg.svd(np.array(rows), compute_uv=False)[5])


def hesse_configuration() -> tuple[list, list]:
    """Nine inflection points of the Fermat cubic, as forms, and their 12 collinear triples."""
    omega = np.exp(2j * np.pi / 3)
    forms = []
    for k in range(3):
        w = omega**k
        forms += [QForm(0, 1, -w), QForm(1, 0, -w), QForm(1, -w, 0)]
    triples = [
        t for t in itertools.combinations(range(9), 3)
        if abs(hf.triple_det(*(forms[i].normalized() for i in t))) < SYLVESTER_TOL
    ]
    return forms, triples


def distinct_forms(forms, tol: float = SYLVESTER_TOL) -> list:
    out = []
    for f in forms:
        if all(hf.same_line_residual(f, g) > tol for g in out):
            out.append(f)
    return out


def real_part_control(forms) -> list:
    """The distinct real parts of ``forms`` (the Hesse control configuration)."""
    return distinct_forms([QForm(f.a.real, f.b.real, f.c.real) for f in forms])


@dataclass
class SylvesterReport:
    pairs: int
    pairs_ok: int
    worst: float  # largest over pairs of the best third-line residual
    third_singular_value: float

    @property
    def sylvester(self) -> bool:
        return self.pairs_ok == self.pairs

    @property
    def no_common_skewer(self) -> bool:
        return self.third_singular_value > RANK_GATE

    def summary(self) -> str:
        verdict = "none exists" if self.no_common_skewer else "one exists"
        return (
            f"{self.pairs_ok}/{self.pairs} pairs satisfy skewer Sylvester property; "
            f"common-skewer rank {3 if self.no_common_skewer else 2} ({verdict})"
        )


def sylvester_check(forms, triples=None, tol: float = SYLVESTER_TOL) -> SylvesterReport:
    """For every pair, find a third line sharing a skewer with the two.

    Candidate third lines come from ``triples`` when given (a pair covered by
    no triple fails), otherwise from all remaining lines.
    """
    vecs = [hf._vec(f) / np.linalg.norm(hf._vec(f)) for f in forms]
    n = len(vecs)
    for i, j in itertools.combinations(range(n), 2):
        if hf.same_line_residual(vecs[i], vecs[j]) < tol:
            raise ValueError(f"lines {i} and {j} coincide; the check needs distinct lines")
    ok, worst = 0, 0.0
    for i, j in itertools.combinations(range(n), 2):
        if triples is None:
            thirds = [m for m in range(n) if m not in (i, j)]
        else:
            thirds = [m for t in triples if i in t and j in t for m in t if m not in (i, j)]
        br = hf.bracket_vec(vecs[i], vecs[j])
        best = min((abs(hf.delta_pairing(br, vecs[m])) for m in thirds), default=np.inf)
        worst = max(worst, best)
        ok += bool(best < tol)
    third = float(np.linalg.svd(np.array(vecs), compute_uv=False)[2])
    return SylvesterReport(n * (n - 1) // 2, ok, worst, third)
