"""The named theorem programs."""

from __future__ import annotations

import functools

import numpy as np

from .. import congruences as cg
from .. import fenchel
from . import clifford
from .dsl import ProgramBuilder, TheoremProgram

ALL = ("hyperbolic", "elliptic", "euclidean")
PONCELET_STARTS = 5
CONIC_MEMBERS = 7


def pappus1() -> tuple:
    p = ProgramBuilder()
    sa, sb = p.free(), p.free()
    a = [p.pencil(sa) for _ in range(3)]
    b = [p.pencil(sb) for _ in range(3)]
    tops = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        tops.append(p.skewer(p.skewer(a[i], b[j]), p.skewer(a[j], b[i])))
    p.assert_common_skewer(*tops)
    return p.build()


def desargues() -> tuple:
    p = ProgramBuilder()
    s = p.free()
    t = [p.pencil(s) for _ in range(3)]
    a, b = [], []
    for ti in t:
        a.append(p.pencil(ti))
        b.append(p.pencil(ti))
    tops = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        tops.append(p.skewer(p.skewer(a[i], a[j]), p.skewer(b[i], b[j])))
    p.assert_common_skewer(*tops)
    return p.build()


def petersen_morley() -> tuple:
    p = ProgramBuilder()
    a, b, c = p.free(), p.free(), p.free()
    tops = [p.skewer(p.skewer(a, b), c), p.skewer(p.skewer(b, c), a), p.skewer(p.skewer(c, a), b)]
    p.assert_common_skewer(*tops)
    return p.build()


def pascal() -> tuple:
    p = ProgramBuilder()
    C = p.congruence()
    A = [p.member(C) for _ in range(6)]
    tops = []
    for i in range(3):
        first = p.skewer(A[i], A[(i + 1) % 6])
        second = p.skewer(A[(i + 3) % 6], A[(i + 4) % 6])
        tops.append(p.skewer(first, second))
    p.assert_common_skewer(*tops)
    return p.build()


def projection_involution() -> tuple:
    p = ProgramBuilder()
    O, a, b = p.free(), p.free(), p.free()
    l = p.pencil(a)
    m = p.skewer(p.skewer(l, O), b)
    back = p.skewer(p.skewer(m, O), a)
    p.assert_same_line(l, back)
    return p.build()


def braikenridge_maclaurin(members: int = CONIC_MEMBERS) -> tuple:
    p = ProgramBuilder()
    O, P, Q, A, B = (p.free() for _ in range(5))
    conic = []
    for _ in range(members):
        l = p.pencil(P)
        m = p.skewer(p.skewer(l, O), Q)
        conic.append(p.skewer(p.skewer(l, A), p.skewer(m, B)))
    p.assert_conic(conic)
    return p.build()


# -- Poncelet ------------------------------------------------------------------


def _spherical_instance(rng):
    outer = cg.SphericalCircle(rng.normal(size=3), rng.uniform(0.6, 1.3))
    e1, e2 = cg.tangent_frame(outer.center)
    offset = rng.uniform(0.0, 0.3 * outer.rho)
    t = rng.uniform(0, 2 * np.pi)
    inner_center = np.cos(offset) * outer.center + np.sin(offset) * (np.cos(t) * e1 + np.sin(t) * e2)
    n = int(rng.integers(3, 6))
    return outer, cg.closing_inner_circle(outer, inner_center, n), n


def _h2_instance(rng):
    P1 = complex(rng.normal(), np.exp(rng.uniform(-0.5, 0.5)))
    R = rng.uniform(0.5, 1.5)
    P2 = cg.h2_circle_point(P1, rng.uniform(0.0, 0.3 * R), rng.uniform(0, 2 * np.pi))
    n = int(rng.integers(3, 6))
    return P1, R, P2, cg.closing_h2_radius(P1, R, P2, n), n


def poncelet_trial(rng, geometry: str, detune: float = 0.0) -> dict:
    """Close a chain by bisection from one start, then measure closure from fresh starts.

    ``detune`` rescales the inner radius after the search (negative control).
    """
    if geometry == "elliptic":
        outer, inner, n = _spherical_instance(rng)
        inner = cg.SphericalCircle(inner.center, inner.rho * (1 + detune))
        defects = [cg.poncelet_chain(outer, inner, outer.point(t), 1, n) for t in rng.uniform(0, 2 * np.pi, PONCELET_STARTS)]
    elif geometry == "hyperbolic":
        P1, R, P2, r, n = _h2_instance(rng)
        C1, C2 = cg.h2_poncelet_congruences(P1, R, P2, r * (1 + detune))
        defects = []
        for _ in range(PONCELET_STARTS):
            l1 = C1.member(complex(*rng.normal(size=2)))
            l2 = cg.orthogonal_members(C2, l1)[0]
            defects.append(cg.hyperbolic_poncelet_defect(C1, C2, l1, l2, n))
    else:
        raise ValueError(f"poncelet is not implemented in the {geometry} model")
    return {"closure": max(defects)}


def _library() -> dict:
    progs = [
        TheoremProgram("pappus1", ALL, pappus1(), description="skewer Pappus theorem I"),
        TheoremProgram("desargues", ALL, desargues(), description="skewer Desargues theorem"),
        TheoremProgram("petersen_morley", ALL, petersen_morley(), description="Petersen-Morley theorem"),
        TheoremProgram("pascal", ALL, pascal(), description="skewer Pascal theorem"),
        TheoremProgram("projection_involution", ALL, projection_involution(), description="central projection is involutive"),
        TheoremProgram(
            "braikenridge_maclaurin", ("hyperbolic",), braikenridge_maclaurin(), description="skewer conic lies on a conic of CP^2"
        ),
    ]
    for n in (4, 5, 6):
        progs.append(
            TheoremProgram(
                f"clifford{n}",
                ("elliptic",),
                trial_fn=functools.partial(clifford.sphere_pair_trial, n),
                control_fn=functools.partial(clifford.sphere_pair_trial, n, control=True),
                description=f"Clifford chain of circles, n = {n}, on both sphere factors",
            )
        )
    progs.append(
        TheoremProgram(
            "poncelet",
            ("elliptic", "hyperbolic"),
            trial_fn=poncelet_trial,
            control_fn=functools.partial(poncelet_trial, detune=1e-3),
            description="skewer Poncelet theorem (spherical reduction; line-level chain in H^3)",
        )
    )
    progs.append(
        TheoremProgram(
            "pappus2",
            ("hyperbolic",),
            trial_fn=_pappus2_trial,
            control_fn=_pappus2_control,
            description="skewer Pappus theorem II with line and point matrices",
        )
    )
    return {p.name: p for p in progs}


def _pappus2_trial(rng, geometry):
    return fenchel.pappus2_trial(rng)


def _pappus2_control(rng, geometry):
    return fenchel.pappus2_trial(rng, perturb=1e-2)


@functools.lru_cache(maxsize=None)
def _cached() -> dict:
    return _library()


def theorem_library() -> dict:
    """Name -> TheoremProgram for every verified theorem."""
    return dict(_cached())


def get_program(name: str) -> TheoremProgram:
    lib = _cached()
    if name not in lib:
        raise KeyError(f"unknown theorem {name!r}; known: {', '.join(lib)}")
    return lib[name]
