"""Export one executed trial as line segments plus incidence annotations."""

from __future__ import annotations

from .. import harness
from ..errors import Degeneracy, TooManyResamples
from . import dsl
from .models import get_model

SCENE_VERSION = 1


def _line_id(index: int) -> str:
    return f"L{index}"


def _role(ins) -> str:
    if isinstance(ins, dsl.Skewer):
        return "skewer"
    if isinstance(ins, dsl.SamplePencil):
        return "pencil"
    if isinstance(ins, dsl.SampleCongruence):
        return "congruence"
    return "given"


def build_scene(program: dsl.TheoremProgram, geometry: str, env: list) -> dict:
    model = get_model(geometry)
    lines, incidences = [], []

    def add_line(ident, line, role):
        p0, p1 = model.segment(line)
        lines.append({"id": ident, "p0": [float(x) for x in p0], "p1": [float(x) for x in p1], "role": role})

    for index, ins in enumerate(program.instructions):
        if isinstance(ins, dsl.LINE_PRODUCERS):
            add_line(_line_id(index), env[index], _role(ins))
        if isinstance(ins, dsl.Skewer):
            for other in (ins.i, ins.j):
                incidences.append({"a": _line_id(index), "b": _line_id(other), "relation": "right_angle"})
        elif isinstance(ins, dsl.SamplePencil):
            incidences.append({"a": _line_id(index), "b": _line_id(ins.axis), "relation": "right_angle"})
        elif isinstance(ins, dsl.AssertCommonSkewer):
            ident = f"S{index}"
            add_line(ident, model.skewer(env[ins.i], env[ins.j]), "common_skewer")
            for other in (ins.i, ins.j, ins.k):
                incidences.append({"a": ident, "b": _line_id(other), "relation": "right_angle"})
        elif isinstance(ins, dsl.AssertRightAngle):
            incidences.append({"a": _line_id(ins.i), "b": _line_id(ins.j), "relation": "right_angle"})
        elif isinstance(ins, dsl.AssertSameLine):
            incidences.append({"a": _line_id(ins.i), "b": _line_id(ins.j), "relation": "same_line"})
        elif isinstance(ins, dsl.AssertConic):
            incidences.append({"members": [_line_id(r) for r in ins.refs], "relation": "conic"})
    return {
        "version": SCENE_VERSION,
        "theorem": program.name,
        "geometry": geometry,
        "lines": lines,
        "incidences": incidences,
    }


def export_scene(program: dsl.TheoremProgram, geometry: str, seed: int, trial: int = 0) -> dict:
    """Scene of trial ``trial`` of a seeded campaign (same generator stream as run_program)."""
    if program.custom:
        raise ValueError(f"{program.name} is not an instruction program; nothing to export")
    if not program.in_geometry(geometry):
        raise ValueError(f"{program.name} is not supported in the {geometry} model")
    if trial < 0:
        raise ValueError("trial index must be nonnegative")
    rng = harness.trial_generator(seed, trial)
    for _ in range(harness.MAX_RESAMPLES + 1):
        try:
            env, _ = dsl.execute(program.instructions, geometry, rng)
            scene = build_scene(program, geometry, env)
        except Degeneracy:
            continue
        scene.update({"seed": int(seed), "trial": int(trial)})
        return scene
    raise TooManyResamples("no nondegenerate sample for the export")
