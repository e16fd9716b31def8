"""Line geometry of 3-space in three models, and a randomized verifier for skewer configuration theorems."""

from . import congruences, elliptic_lines, euclidean_lines, fenchel, hyperbolic_forms
from .errors import Degeneracy, GeometryError, TooManyResamples
from .harness import TrialReport, run_trials

__version__ = "0.1.0"

__all__ = [
    "Degeneracy",
    "GeometryError",
    "TooManyResamples",
    "TrialReport",
    "congruences",
    "elliptic_lines",
    "euclidean_lines",
    "fenchel",
    "hyperbolic_forms",
    "run_trials",
]
