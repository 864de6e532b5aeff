"""Exact computations with Hilbert coefficients, reductions and Ratliff-Rush closures."""

__version__ = "0.1.0"

from .field import Field, RATIONALS  # noqa: E402
from .ideal import Ideal  # noqa: E402
from .poly import Polynomial, Ring  # noqa: E402

__all__ = ["Field", "RATIONALS", "Ideal", "Polynomial", "Ring", "__version__"]
