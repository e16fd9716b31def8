"""Theorem programs, their interpreter and the catalogue of verified theorems."""

from .conics import conic_fit_residual, hesse_configuration, real_part_control, sylvester_check
from .dsl import (
    AssertCommonSkewer,
    AssertConic,
    AssertRightAngle,
    AssertSameLine,
    ProgramBuilder,
    SampleAxialCongruence,
    SampleCongruence,
    SampleFree,
    SamplePencil,
    Skewer,
    TheoremProgram,
    execute,
    run_program,
)
from .library import get_program, theorem_library
from .models import GEOMETRIES, get_model

__all__ = [
    "AssertCommonSkewer",
    "AssertConic",
    "AssertRightAngle",
    "AssertSameLine",
    "GEOMETRIES",
    "ProgramBuilder",
    "SampleAxialCongruence",
    "SampleCongruence",
    "SampleFree",
    "SamplePencil",
    "Skewer",
    "TheoremProgram",
    "conic_fit_residual",
    "execute",
    "get_model",
    "get_program",
    "hesse_configuration",
    "real_part_control",
    "run_program",
    "sylvester_check",
    "theorem_library",
]
