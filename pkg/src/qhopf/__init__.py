"""Exact computer algebra for q-deformed instantons on quantum Euclidean R^4."""

from .coeff import Field, PoleAtPoint, Rat, qfield
from .ncalg import Algebra, NCElem, algebra
from .suites import Context, suite_names
from .report import verify

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "Context",
    "Field",
    "NCElem",
    "PoleAtPoint",
    "Rat",
    "algebra",
    "qfield",
    "suite_names",
    "verify",
    "__version__",
]
