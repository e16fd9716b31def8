"""A tiny instruction language for skewer configuration theorems.

A program is a list of instructions. Sampling and Skewer instructions produce
values, referred to later by their position in the list; assertion
instructions produce named residuals. Running a program once per seeded
trial, with resampling on degeneracy, is the randomized verification.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from ..harness import TrialReport, run_trials
from .models import GEOMETRIES, get_model


@dataclass(frozen=True)
class SampleFree:
    """A line in general position."""


@dataclass(frozen=True)
class SamplePencil:
    """A random line meeting line ``axis`` at a right angle."""

    axis: int


@dataclass(frozen=True)
class SampleAxialCongruence:
    """A random axial congruence (not a line; only usable by SampleCongruence)."""


@dataclass(frozen=True)
class SampleCongruence:
    """A random member of the congruence produced by instruction ``congruence``."""

    congruence: int


@dataclass(frozen=True)
class Skewer:
    i: int
    j: int


@dataclass(frozen=True)
class AssertRightAngle:
    i: int
    j: int
    label: str = "right_angle"


@dataclass(frozen=True)
class AssertCommonSkewer:
    i: int
    j: int
    k: int
    label: str = "common_skewer"


@dataclass(frozen=True)
class AssertSameLine:
    i: int
    j: int
    label: str = "same_line"


@dataclass(frozen=True)
class AssertConic:
    refs: tuple
    label: str = "conic"


ASSERTIONS = (AssertRightAngle, AssertCommonSkewer, AssertSameLine, AssertConic)
LINE_PRODUCERS = (SampleFree, SamplePencil, SampleCongruence, Skewer)


def _refs(ins) -> tuple:
    if isinstance(ins, SamplePencil):
        return (ins.axis,)
    if isinstance(ins, SampleCongruence):
        return (ins.congruence,)
    if isinstance(ins, (Skewer, AssertRightAngle, AssertSameLine)):
        return (ins.i, ins.j)
    if isinstance(ins, AssertCommonSkewer):
        return (ins.i, ins.j, ins.k)
    if isinstance(ins, AssertConic):
        return tuple(ins.refs)
    return ()


@dataclass(frozen=True)
class TheoremProgram:
    """A named configuration theorem.

    ``trial_fn(rng, geometry)`` replaces the instruction interpreter for
    theorems that are not phrased through skewers alone (chains of circles,
    Poncelet, point-matrix theorems); ``control_fn`` is its negative control.
    """

    name: str
    supported: tuple
    instructions: tuple = ()
    trial_fn: Optional[Callable] = None
    control_fn: Optional[Callable] = None
    description: str = ""

    def __post_init__(self):
        for g in self.supported:
            if g not in GEOMETRIES:
                raise ValueError(f"unknown geometry {g!r}")
        if self.trial_fn is None:
            validate(self.instructions)

    def in_geometry(self, geometry: str) -> bool:
        return geometry in self.supported

    @property
    def custom(self) -> bool:
        return self.trial_fn is not None

    def perturbed(self) -> "TheoremProgram":
        """Negative control: the same assertions with one hypothesis dropped."""
        if self.custom:
            if self.control_fn is None:
                raise ValueError(f"{self.name} has no negative control")
            return replace(self, name=self.name + "_perturbed", trial_fn=self.control_fn, control_fn=None)
        return replace(self, name=self.name + "_perturbed", instructions=perturb_instructions(self.instructions))


def validate(instructions) -> None:
    if not any(isinstance(ins, ASSERTIONS) for ins in instructions):
        raise ValueError("a program needs at least one assertion")
    for index, ins in enumerate(instructions):
        for r in _refs(ins):
            if not 0 <= r < index:
                raise ValueError(f"instruction {index} refers to {r}, which is not an earlier instruction")
            target = instructions[r]
            if isinstance(ins, SampleCongruence):
                if not isinstance(target, SampleAxialCongruence):
                    raise ValueError(f"instruction {index} needs a congruence at {r}")
            elif not isinstance(target, LINE_PRODUCERS):
                raise ValueError(f"instruction {index} needs a line at {r}")
        if isinstance(ins, AssertConic) and len(ins.refs) < 6:
            raise ValueError("a conic assertion needs at least six lines")


def perturb_instructions(instructions) -> tuple:
    """Replace the first constrained sample by a free one; for all-free
    programs, point the last assertion at a fresh free line instead."""
    instructions = list(instructions)
    for index, ins in enumerate(instructions):
        if isinstance(ins, (SamplePencil, SampleCongruence)):
            instructions[index] = SampleFree()
            return tuple(instructions)
    last = max(i for i, ins in enumerate(instructions) if isinstance(ins, ASSERTIONS))
    # assertions produce no value, so their slot can hold the fresh line
    ins, fresh = instructions[last], last
    instructions[last] = SampleFree()
    if isinstance(ins, AssertCommonSkewer):
        ins = replace(ins, k=fresh)
    elif isinstance(ins, AssertConic):
        ins = replace(ins, refs=tuple(ins.refs[:-1]) + (fresh,))
    else:
        ins = replace(ins, j=fresh)
    instructions.append(ins)
    return tuple(instructions)


def execute(instructions, geometry: str, rng: np.random.Generator) -> tuple[list, dict]:
    """Run the instruction list once; returns the value environment and residuals."""
    model = get_model(geometry)
    env: list = []
    residuals: dict = {}
    for ins in instructions:
        value = None
        if isinstance(ins, SampleFree):
            value = model.sample_free(rng)
        elif isinstance(ins, SamplePencil):
            value = model.sample_pencil(env[ins.axis], rng)
        elif isinstance(ins, SampleAxialCongruence):
            value = model.sample_congruence(rng)
        elif isinstance(ins, SampleCongruence):
            value = model.congruence_member(env[ins.congruence], rng)
        elif isinstance(ins, Skewer):
            value = model.skewer(env[ins.i], env[ins.j])
        else:
            r = _assertion(model, ins, env)
            residuals[ins.label] = max(r, residuals.get(ins.label, 0.0))
        env.append(value)
    return env, residuals


def _assertion(model, ins, env) -> float:
    if isinstance(ins, AssertRightAngle):
        return model.right_angle(env[ins.i], env[ins.j])
    if isinstance(ins, AssertCommonSkewer):
        return model.common_skewer(env[ins.i], env[ins.j], env[ins.k])
    if isinstance(ins, AssertSameLine):
        return model.same_line(env[ins.i], env[ins.j])
    if isinstance(ins, AssertConic):
        return model.conic([env[r] for r in ins.refs])
    raise TypeError(f"not an instruction: {ins!r}")


def program_trial(program: TheoremProgram, geometry: str, rng: np.random.Generator) -> dict:
    if program.custom:
        return program.trial_fn(rng, geometry)
    return execute(program.instructions, geometry, rng)[1]


def run_program(
    program: TheoremProgram,
    trials: int,
    seed: int,
    tol: float = 1e-8,
    geometry: Optional[str] = None,
    workers: int = 1,
) -> TrialReport:
    """Seeded campaign of ``trials`` independent executions of ``program``."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    geometry = geometry or program.supported[0]
    if not program.in_geometry(geometry):
        raise ValueError(f"{program.name} is not supported in the {geometry} model")
    fn = functools.partial(program_trial, program, geometry)
    return run_trials(program.name, geometry, fn, trials, seed, tol, workers=workers)


class ProgramBuilder:
    """Helper for writing instruction lists with named references."""

    def __init__(self):
        self.instructions: list = []

    def _add(self, ins) -> int:
        self.instructions.append(ins)
        return len(self.instructions) - 1

    def free(self) -> int:
        return self._add(SampleFree())

    def pencil(self, axis: int) -> int:
        return self._add(SamplePencil(axis))

    def congruence(self) -> int:
        return self._add(SampleAxialCongruence())

    def member(self, congruence: int) -> int:
        return self._add(SampleCongruence(congruence))

    def skewer(self, i: int, j: int) -> int:
        return self._add(Skewer(i, j))

    def assert_common_skewer(self, i: int, j: int, k: int):
        self._add(AssertCommonSkewer(i, j, k))

    def assert_right_angle(self, i: int, j: int, label: str = "right_angle"):
        self._add(AssertRightAngle(i, j, label))

    def assert_same_line(self, i: int, j: int):
        self._add(AssertSameLine(i, j))

    def assert_conic(self, refs):
        self._add(AssertConic(tuple(refs)))

    def build(self) -> tuple:
        return tuple(self.instructions)
