"""Minimal average action (Mather beta function) for standard-like twist maps.

Two independent computation routes:

* ``variational`` -- minimize the periodic discrete action at rational
  rotation numbers p/q;
* ``conjugacy`` + ``beta`` -- solve the conjugacy equation of the invariant
  curve spectrally at (real or complex) Diophantine frequencies and average
  along the curve.

``diophantine`` certifies frequency membership, ``twist_map`` holds the map
family and its generating function, ``fourier`` the spectral arithmetic, and
``cli`` the batch front end.
"""

from . import beta, cli, conjugacy, diophantine, fourier, twist_map, variational
from .errors import (
    ConfigError,
    MatherBetaError,
    NoConvergence,
    NonZeroMean,
    RejectedResidual,
    ResidualStagnation,
    SaddlePoint,
    ShiftOverflow,
    SmallDivisorBreakdown,
)

__version__ = "0.1.0"

__all__ = [
    "beta",
    "cli",
    "conjugacy",
    "diophantine",
    "fourier",
    "twist_map",
    "variational",
    "ConfigError",
    "MatherBetaError",
    "NoConvergence",
    "NonZeroMean",
    "RejectedResidual",
    "ResidualStagnation",
    "SaddlePoint",
    "ShiftOverflow",
    "SmallDivisorBreakdown",
]
