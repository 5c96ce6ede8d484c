"""Truncated Fourier series of 1-periodic functions.

Coefficients are stored for modes k = -N..N.  All operations are spectrally
exact on the represented modes: shift and derivative act coefficient-wise,
means and product-means are finite sums, and sampling/projection on grids
with n >= 2N+1 points round-trips to machine precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonZeroMean, ShiftOverflow

# Exponent budget for e^{2 pi N |Im z|} factors in shift/evaluate.  Beyond
# this, results are dominated by amplified rounding noise long before the
# actual double-precision overflow at e^{709}.
EXPONENT_BUDGET = 40.0

_SYMMETRY_TOL = 1e-12


def _as_coeff_array(coeffs) -> np.ndarray:
    arr = np.asarray(coeffs, dtype=np.complex128).copy()
    if arr.ndim != 1 or arr.size % 2 == 0:
        raise ValueError(f"coefficient array must be 1-d of odd length, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class FourierSeries:
    """Finitely truncated Fourier series sum_k c_k e^{2 pi i k theta}.

    Attributes:
        coeffs: complex coefficients, length 2N+1, ordered k = -N..N.
        real_symmetric: asserts c_{-k} = conj(c_k); enforced exactly at
            construction (coefficients are symmetrized after a tolerance
            check), so the series is real on the real line.
    """

    coeffs: np.ndarray
    real_symmetric: bool = False

    def __post_init__(self):
        arr = _as_coeff_array(self.coeffs)
        if self.real_symmetric:
            defect = np.max(np.abs(arr[::-1].conj() - arr))
            scale = max(np.sum(np.abs(arr)), 1.0)
            if defect > _SYMMETRY_TOL * scale:
                raise ValueError(
                    f"real_symmetric requested but max |c_-k - conj(c_k)| = {defect:.3e}"
                )
            arr = 0.5 * (arr + arr[::-1].conj())
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    # -- basic structure -------------------------------------------------

    @property
    def N(self) -> int:
        return (self.coeffs.size - 1) // 2

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    def coeff(self, k: int) -> complex:
        if abs(k) > self.N:
            return 0.0 + 0.0j
        return complex(self.coeffs[k + self.N])

    @classmethod
    def zero(cls, N: int = 0) -> "FourierSeries":
        return cls(np.zeros(2 * N + 1, dtype=np.complex128), real_symmetric=True)

    @classmethod
    def from_coeff_dict(cls, d: dict, real_symmetric: bool = False) -> "FourierSeries":
        N = max((abs(k) for k in d), default=0)
        arr = np.zeros(2 * N + 1, dtype=np.complex128)
        for k, c in d.items():
            arr[k + N] = c
        return cls(arr, real_symmetric=real_symmetric)

    @classmethod
    def from_sin_cos(cls, cos_coeffs, sin_coeffs) -> "FourierSeries":
        """Real series a_0/... convention: sum_k a_k cos(2 pi k x) + b_k sin(2 pi k x).

        ``cos_coeffs[k]`` and ``sin_coeffs[k]`` are the k-th harmonics, k >= 0
        (``sin_coeffs[0]`` is ignored if present).
        """
        a = np.atleast_1d(np.asarray(cos_coeffs, dtype=float))
        b = np.atleast_1d(np.asarray(sin_coeffs, dtype=float))
        N = max(a.size, b.size) - 1
        arr = np.zeros(2 * N + 1, dtype=np.complex128)
        for k in range(N + 1):
            ak = a[k] if k < a.size else 0.0
            bk = b[k] if (0 < k < b.size) else 0.0
            if k == 0:
                arr[N] += ak
            else:
                arr[N + k] += 0.5 * ak - 0.5j * bk
                arr[N - k] += 0.5 * ak + 0.5j * bk
        return cls(arr, real_symmetric=True)

    def pad_to(self, N: int) -> "FourierSeries":
        if N < self.N:
            raise ValueError("pad_to target smaller than current cutoff")
        extra = N - self.N
        arr = np.pad(self.coeffs, (extra, extra))
        return FourierSeries(arr, real_symmetric=self.real_symmetric)

    def truncate(self, N: int) -> "FourierSeries":
        if N >= self.N:
            return self
        cut = self.N - N
        return FourierSeries(self.coeffs[cut:-cut], real_symmetric=self.real_symmetric)

    # -- norms and diagnostics -------------------------------------------

    def l1_norm(self) -> float:
        return float(np.sum(np.abs(self.coeffs)))

    def weighted_l1(self, R: float) -> float:
        """Upper bound sum_k |c_k| e^{2 pi |k| R} for the sup norm on the strip |Im z| < R."""
        return float(np.sum(np.abs(self.coeffs) * np.exp(2.0 * np.pi * np.abs(self.modes) * R)))

    def tail_indicator(self) -> float:
        """|c_N| + |c_{N-1}|, the truncation-quality report attached to solver output."""
        if self.N == 0:
            return float(abs(self.coeffs[0]))
        return float(abs(self.coeffs[-1]) + abs(self.coeffs[-2]))

    # -- pointwise evaluation ----------------------------------------------

    def evaluate(self, z, exponent_budget: float = EXPONENT_BUDGET):
        """Evaluate at complex point(s) z with |Im z| within the exponent budget."""
        z = np.asarray(z, dtype=np.complex128)
        im_max = float(np.max(np.abs(z.imag))) if z.size else 0.0
        if 2.0 * np.pi * self.N * im_max > exponent_budget:
            raise ShiftOverflow(
                f"2 pi N |Im z| = {2 * np.pi * self.N * im_max:.1f} exceeds budget {exponent_budget}"
            )
        phases = np.exp(2j * np.pi * np.multiply.outer(z, self.modes))
        out = phases @ self.coeffs
        if z.ndim == 0:
            return complex(out)
        return out

    def evaluate_real(self, x):
        """Evaluate at real points; returns a real array when real_symmetric.

        Uses two exponentials per point and incremental mode powers, so large
        point sets cost O(points * N) multiplies rather than exponentials.
        """
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.zeros(x.shape, dtype=np.complex128)
        step = 1 << 20
        N = self.N
        for i in range(0, x.size, step):
            xi = x[i : i + step]
            z = np.exp(2j * np.pi * xi)
            term = np.exp(-2j * np.pi * N * xi)
            acc = np.zeros(xi.shape, dtype=np.complex128)
            for c in self.coeffs:
                if c != 0.0:
                    acc += c * term
                term *= z
            out[i : i + step] = acc
        if self.real_symmetric:
            out = out.real
        if scalar:
            return float(out[0]) if self.real_symmetric else complex(out[0])
        return out

    # -- coefficient-wise operations ---------------------------------------

    def shift(self, omega: complex, exponent_budget: float = EXPONENT_BUDGET) -> "FourierSeries":
        """Series of theta -> s(theta + omega); coefficient k gains e^{2 pi i k omega}."""
        omega = complex(omega)
        if 2.0 * np.pi * self.N * abs(omega.imag) > exponent_budget:
            raise ShiftOverflow(
                f"2 pi N |Im omega| = {2 * np.pi * self.N * abs(omega.imag):.1f} "
                f"exceeds budget {exponent_budget}"
            )
        mult = np.exp(2j * np.pi * self.modes * omega)
        real_sym = self.real_symmetric and omega.imag == 0.0
        return FourierSeries(self.coeffs * mult, real_symmetric=real_sym)

    def derivative(self) -> "FourierSeries":
        return FourierSeries(
            self.coeffs * (2j * np.pi * self.modes), real_symmetric=self.real_symmetric
        )

    def primitive_zero_mean(self) -> "FourierSeries":
        """Antiderivative with zero mean; requires zero mean of self."""
        if abs(self.coeff(0)) > 0.0:
            raise NonZeroMean(f"mean coefficient is {self.coeff(0):.3e}, expected 0")
        k = self.modes.astype(np.complex128)
        k[self.N] = 1.0  # avoid 0/0; numerator there is 0 anyway
        out = self.coeffs / (2j * np.pi * k)
        out[self.N] = 0.0
        return FourierSeries(out, real_symmetric=self.real_symmetric)

    def mean(self) -> complex:
        return self.coeff(0)

    def reflect(self) -> "FourierSeries":
        """Series of theta -> s(-theta): c_k -> c_{-k}."""
        return FourierSeries(self.coeffs[::-1], real_symmetric=self.real_symmetric)

    def conj_series(self) -> "FourierSeries":
        """Series of theta -> conj(s(conj theta)): c_k -> conj(c_{-k})."""
        return FourierSeries(self.coeffs[::-1].conj(), real_symmetric=self.real_symmetric)

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        N = max(self.N, other.N)
        a, b = self.pad_to(N), other.pad_to(N)
        return FourierSeries(
            a.coeffs + b.coeffs, real_symmetric=self.real_symmetric and other.real_symmetric
        )

    def __sub__(self, other: "FourierSeries") -> "FourierSeries":
        N = max(self.N, other.N)
        a, b = self.pad_to(N), other.pad_to(N)
        return FourierSeries(
            a.coeffs - b.coeffs, real_symmetric=self.real_symmetric and other.real_symmetric
        )

    def __mul__(self, scalar) -> "FourierSeries":
        real_sym = self.real_symmetric and np.imag(scalar) == 0.0
        return FourierSeries(self.coeffs * scalar, real_symmetric=real_sym)

    __rmul__ = __mul__


@dataclass(frozen=True)
class Grid:
    """Samples on the uniform grid theta_j = j/n, j = 0..n-1; n a power of two."""

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.complex128).copy()
        n = arr.size
        if n < 2 or (n & (n - 1)) != 0:
            raise ValueError(f"grid size must be a power of two >= 2, got {n}")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def points(self) -> np.ndarray:
        return np.arange(self.n) / self.n


def next_pow2(n: int) -> int:
    return 1 << max(int(n) - 1, 1).bit_length()


def sample(s: FourierSeries, n: int) -> Grid:
    """Exact samples of s on the n-point uniform grid (n power of two, n >= 2N+1)."""
    if n < 2 * s.N + 1:
        raise ValueError(f"grid size {n} aliases modes of a series with N={s.N}")
    buf = np.zeros(n, dtype=np.complex128)
    N = s.N
    buf[: N + 1] = s.coeffs[N:]
    if N > 0:
        buf[-N:] = s.coeffs[:N]
    return Grid(np.fft.ifft(buf) * n)


def project(values, N: int, real_symmetric: bool | None = None) -> FourierSeries:
    """Project grid samples onto modes -N..N by the discrete Fourier transform."""
    if isinstance(values, Grid):
        values = values.values
    values = np.asarray(values, dtype=np.complex128)
    n = values.size
    if n < 2 * N + 1:
        raise ValueError(f"cannot extract {2 * N + 1} modes from {n} samples")
    spec = np.fft.fft(values) / n
    coeffs = np.concatenate([spec[-N:], spec[: N + 1]]) if N > 0 else spec[:1]
    if real_symmetric is None:
        scale = max(float(np.sum(np.abs(coeffs))), 1e-300)
        real_symmetric = float(np.max(np.abs(coeffs[::-1].conj() - coeffs))) <= 1e-13 * scale
    return FourierSeries(coeffs, real_symmetric=real_symmetric)


def product_mean(a: FourierSeries, b: FourierSeries) -> complex:
    """Integral of a(theta) b(theta) over one period: sum_k a_k b_{-k}.

    This is the analytic product (no conjugation), which is what the complex
    beta formula requires; for real series it equals the L2 pairing.
    """
    N = max(a.N, b.N)
    ca = a.pad_to(N).coeffs
    cb = b.pad_to(N).coeffs
    return complex(np.dot(ca, cb[::-1]))


def compose_id_plus(
    g: FourierSeries,
    u: FourierSeries,
    n: int | None = None,
    n_out: int | None = None,
    exponent_budget: float = EXPONENT_BUDGET,
) -> FourierSeries:
    """Series of theta -> g(theta + u(theta)), sampled on n points and projected.

    n must oversample the nonlinearity (n >= 4 (N_g + N_u) is enforced);
    the result keeps modes -n_out..n_out (default N_g + N_u).
    """
    if n_out is None:
        n_out = g.N + u.N
    n_min = max(4 * (g.N + u.N), 2 * n_out + 1, 8)
    if n is None:
        n = next_pow2(n_min)
    elif n < n_min:
        raise ValueError(f"composition grid n={n} below the oversampling floor {n_min}")
    theta = np.arange(n) / n
    u_vals = sample(u, n).values
    im_max = float(np.max(np.abs(u_vals.imag)))
    if 2.0 * np.pi * g.N * im_max > exponent_budget:
        raise ShiftOverflow(
            f"|Im u| = {im_max:.3e} drives g-evaluation past the exponent budget"
        )
    args = theta + u_vals
    phases = np.exp(2j * np.pi * np.multiply.outer(args, g.modes))
    vals = phases @ g.coeffs
    real_sym = g.real_symmetric and u.real_symmetric
    if real_sym:
        vals = vals.real.astype(np.complex128)
    return project(vals, n_out, real_symmetric=real_sym)
