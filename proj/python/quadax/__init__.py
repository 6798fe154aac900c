"""Principal axes of an ellipsoid from conjugate semi-diameters.

The heavy lifting happens in the compiled ``_core`` module; results come back
as dicts with the same layout as the JSON reports of the ``quadax`` CLI.
"""

from ._core import (
    DegenerateError,
    InvalidInputError,
    QuadaxError,
    axes_oracle,
    chasles_axes,
    instance_constructibility,
    lambda_roots,
    quartic_constructibility,
    rytz_axes,
    sum_of_squares,
    volume,
)

__all__ = [
    "DegenerateError",
    "InvalidInputError",
    "QuadaxError",
    "axes_oracle",
    "chasles_axes",
    "instance_constructibility",
    "lambda_roots",
    "quartic_constructibility",
    "rytz_axes",
    "sum_of_squares",
    "volume",
]
