"""Standard-like twist maps T_g(x,y) = (x+y+g(x), y+g(x)) and their generating function.

g is a 1-periodic real-analytic function of zero mean, held here as a finite
Fourier series; G is its zero-mean primitive.  The generating function is
h(x, x') = (x'-x)^2/2 + G(x), from which the map is reconstructed via
y1 = d h/d x1 and y0 = -d h/d x0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .fourier import FourierSeries


@dataclass(frozen=True)
class MapSpec:
    """Immutable description of one standard-like twist map.

    Attributes:
        g: forcing profile (real on the real line, zero mean).
        G: zero-mean primitive of g.
        eps_scale: multiplier applied to the base profile (standard family:
            base sin(2 pi x), eps_scale = eps).
        R1: strip half-width used for norm reporting.
        norm_R1: computable upper bound sum_k |g_k| e^{2 pi |k| R1} for the
            sup of g on that strip.
        label: human-readable tag for output provenance.
    """

    g: FourierSeries
    G: FourierSeries
    eps_scale: float
    R1: float
    norm_R1: float
    label: str

    def __post_init__(self):
        if abs(self.g.coeff(0)) > 0.0:
            raise ValueError("g must have zero mean")
        if not self.g.real_symmetric:
            raise ValueError("g must be real on the real line (real_symmetric)")

    @classmethod
    def from_profile(cls, g: FourierSeries, eps_scale: float = 1.0,
                     R1: float = 0.5, label: str = "custom") -> "MapSpec":
        G = g.primitive_zero_mean()
        return cls(g=g, G=G, eps_scale=eps_scale, R1=R1,
                   norm_R1=g.weighted_l1(R1), label=label)

    @classmethod
    def standard(cls, eps: float, R1: float = 0.5) -> "MapSpec":
        """g(x) = eps sin(2 pi x): the standard map in lift coordinates."""
        g = FourierSeries.from_sin_cos([0.0], [0.0, eps])
        return cls.from_profile(g, eps_scale=eps, R1=R1, label=f"standard(eps={eps:g})")

    @classmethod
    def two_mode(cls, eps1: float, eps2: float, R1: float = 0.5) -> "MapSpec":
        """g(x) = eps1 sin(2 pi x) + eps2 sin(4 pi x)."""
        g = FourierSeries.from_sin_cos([0.0], [0.0, eps1, eps2])
        return cls.from_profile(g, eps_scale=1.0, R1=R1,
                                label=f"two-mode(eps1={eps1:g},eps2={eps2:g})")

    @classmethod
    def integrable(cls, R1: float = 0.5) -> "MapSpec":
        return cls.from_profile(FourierSeries.zero(0), eps_scale=0.0, R1=R1,
                                label="integrable")

    @classmethod
    def from_coefficients(cls, cos_coeffs, sin_coeffs, R1: float = 0.5,
                          label: str = "custom") -> "MapSpec":
        g = FourierSeries.from_sin_cos(cos_coeffs, sin_coeffs)
        if abs(g.coeff(0)) > 1e-15 * max(g.l1_norm(), 1.0):
            raise ValueError("cosine coefficient a_0 must be 0 (zero mean)")
        g = FourierSeries.from_coeff_dict(
            {k: g.coeff(k) for k in range(-g.N, g.N + 1) if k != 0},
            real_symmetric=True,
        )
        return cls.from_profile(g, eps_scale=1.0, R1=R1, label=label)

    def scaled(self, factor: float) -> "MapSpec":
        """Map with g replaced by factor*g (used for continuation in eps)."""
        return MapSpec.from_profile(self.g * factor, eps_scale=self.eps_scale * factor,
                                    R1=self.R1, label=f"{self.label}*{factor:g}")

    def g_prime(self) -> FourierSeries:
        return self.g.derivative()


@dataclass(frozen=True)
class PhasePoint:
    x: float
    y: float


def apply(m: MapSpec, p: PhasePoint) -> PhasePoint:
    """One step of the lifted map."""
    kick = float(m.g.evaluate_real(p.x))
    return PhasePoint(p.x + p.y + kick, p.y + kick)


def apply_xy(m: MapSpec, x, y):
    """Vectorized map step on arrays of lift coordinates."""
    kick = m.g.evaluate_real(np.asarray(x, dtype=float))
    y1 = np.asarray(y, dtype=float) + kick
    return np.asarray(x, dtype=float) + y1, y1


def generating_h(m: MapSpec, x0, x1):
    """h(x0, x1) = (x1-x0)^2/2 + G(x0); accepts real or complex arguments."""
    x0c = np.asarray(x0, dtype=np.complex128)
    if np.all(x0c.imag == 0.0):
        Gv = m.G.evaluate_real(np.asarray(x0, dtype=float))
    else:
        Gv = m.G.evaluate(x0c)
    out = 0.5 * (np.asarray(x1) - np.asarray(x0)) ** 2 + Gv
    if np.ndim(out) == 0 and np.imag(out) == 0.0:
        return float(np.real(out))
    return out


def partial_derivatives_h(m: MapSpec, x0, x1):
    """(d1 h, d2 h); the map is recovered via y0 = -d1, y1 = d2."""
    d1 = -(np.asarray(x1) - np.asarray(x0)) + m.g.evaluate_real(np.asarray(x0, dtype=float))
    d2 = np.asarray(x1) - np.asarray(x0)
    return d1, d2


def h_symmetry_defects(m: MapSpec, x: float, xp: float, m_int: int):
    """Defects of the two generating-function identities behind the beta symmetries.

    d1 = h(x+m, x'+m+1) - h(x,x') - (x'-x) - 1/2
    d2 = h(x',x) - h(x,x') - G(x') + G(x)

    Both vanish identically for this family.
    """
    h0 = generating_h(m, x, xp)
    d1 = generating_h(m, x + m_int, xp + m_int + 1) - h0 - (xp - x) - 0.5
    d2 = (
        generating_h(m, xp, x)
        - h0
        - float(m.G.evaluate_real(xp))
        + float(m.G.evaluate_real(x))
    )
    return float(d1), float(d2)


def orbit(m: MapSpec, p0: PhasePoint, n_steps: int) -> np.ndarray:
    """Iterate the map; returns an (n_steps+1, 2) array of (x, y) rows."""
    out = np.empty((n_steps + 1, 2), dtype=float)
    out[0] = (p0.x, p0.y)
    x, y = p0.x, p0.y
    g = m.g
    for i in range(1, n_steps + 1):
        kick = float(g.evaluate_real(x))
        y = y + kick
        x = x + y
        out[i] = (x, y)
    return out


class RotationEstimate(NamedTuple):
    value: float
    error_indicator: float


def rotation_number_estimate(orbit_or_x) -> RotationEstimate:
    """Birkhoff average (x_n - x_0)/n with the half-sample error indicator."""
    arr = np.asarray(orbit_or_x, dtype=float)
    xs = arr[:, 0] if arr.ndim == 2 else arr
    n = xs.size - 1
    if n < 2:
        raise ValueError("need at least two map steps")
    full = (xs[n] - xs[0]) / n
    half = (xs[n // 2] - xs[0]) / (n // 2)
    return RotationEstimate(float(full), float(abs(full - half)))
