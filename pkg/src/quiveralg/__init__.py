"""Exact computations with bound quiver algebras ``KQ/I``.

Layers: :mod:`quiver` (combinatorics), :mod:`algebra` (normal forms and
ideal data), :mod:`modules` and :mod:`sequence` (right modules, syzygies,
periods), :mod:`screening` (necessary conditions for tame symmetric
algebras of period four), :mod:`textformat` and :mod:`cli` (I/O).
"""

from .algebra import (AlgebraElement, AlgebraError, BoundTooSmall, NotAdmissible, NotFiniteDimensional,
                      PresentedAlgebra, build)
from .field import FieldSpec
from .modules import (RightModule, modules_isomorphic, omega_period, projective, projective_cover, simple,
                      syzygy)
from .quiver import Quiver, canonical_form, enumerate_biserial_quivers, validate, vertex_profile
from .screening import ScreeningReport, run_pipeline
from .sequence import ExactSequenceData, GeneratorCountMismatch, PeriodNot4, exact_sequence_data
from .textformat import InputDocument, parse, render

__all__ = [
    "AlgebraElement", "AlgebraError", "BoundTooSmall", "ExactSequenceData", "FieldSpec", "GeneratorCountMismatch",
    "InputDocument", "NotAdmissible", "NotFiniteDimensional", "PeriodNot4", "PresentedAlgebra", "Quiver",
    "RightModule", "ScreeningReport", "build", "canonical_form", "enumerate_biserial_quivers",
    "exact_sequence_data", "modules_isomorphic", "omega_period", "parse", "projective", "projective_cover",
    "render", "run_pipeline", "simple", "syzygy", "validate", "vertex_profile",
]
