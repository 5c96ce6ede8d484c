"""Variational route: minimal (p,q)-periodic configurations and beta at rationals.

The discrete action of a (p,q)-periodic configuration (x_0..x_{q-1}),
extended by x_{j+q} = x_j + p, is  S = sum_j h(x_j, x_{j+1})  and
beta(p/q) = min S / q.  Minimization is damped Newton on the q-dimensional
action (periodic tridiagonal Hessian: diagonal 2 + g'(x_j), off-diagonal -1,
corner -1), preceded by a short gradient-descent warm-up, multi-started over
equispaced x_0 phases to avoid the minimax orbit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
from scipy.linalg import solve_banded

from .errors import NoConvergence, SaddlePoint
from .twist_map import MapSpec

_WARMUP_STEPS = 20
_N_PHASES = 8
_SADDLE_EIG_TOL = -1e-10


@dataclass(frozen=True)
class PeriodicConfiguration:
    """A (p,q)-periodic configuration in lowest terms, normalized to x_0 in [0,1)."""

    p: int
    q: int
    x: np.ndarray

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"p/q = {self.p}/{self.q} not in lowest terms")
        arr = np.asarray(self.x, dtype=float).copy()
        if arr.size != self.q:
            raise ValueError(f"configuration length {arr.size} != q = {self.q}")
        arr -= math.floor(arr[0])
        arr.flags.writeable = False
        object.__setattr__(self, "x", arr)

    @classmethod
    def equispaced(cls, p: int, q: int, phase: float = 0.0) -> "PeriodicConfiguration":
        j = np.arange(q)
        return cls(p, q, phase + j * (p / q))

    def extended(self) -> np.ndarray:
        """x_{-1}..x_q (length q+2), using the periodic lift."""
        return np.concatenate([[self.x[-1] - self.p], self.x, [self.x[0] + self.p]])

    def momenta(self) -> np.ndarray:
        """y_j = x_j - x_{j-1}; with these, (x_j, y_j) is a map orbit iff critical."""
        ext = self.extended()
        return self.x - ext[:-2]

    def rotation_number(self) -> Fraction:
        return Fraction(self.p, self.q)


@dataclass(frozen=True)
class MinimizeReport:
    config: PeriodicConfiguration
    action_per_period: float
    beta_value: float
    iterations: int
    final_gradient_norm: float
    hessian_min_eigenvalue_estimate: float


def action_per_period(m: MapSpec, c: PeriodicConfiguration) -> float:
    return _action(m, c.p, c.x)


def _action(m: MapSpec, p: int, x: np.ndarray) -> float:
    x_next = np.roll(x, -1).copy()
    x_next[-1] += p
    gaps = x_next - x
    return float(0.5 * np.dot(gaps, gaps) + np.sum(m.G.evaluate_real(x)))


def action_gradient(m: MapSpec, p: int, x: np.ndarray) -> np.ndarray:
    """dS/dx_j = -(x_{j+1} - 2 x_j + x_{j-1}) + g(x_j)."""
    lap = np.roll(x, -1) + np.roll(x, 1) - 2.0 * x
    lap[-1] += p
    lap[0] -= p
    return -lap + m.g.evaluate_real(x)


def criticality_residual(m: MapSpec, c: PeriodicConfiguration) -> np.ndarray:
    """x_{j+1} - 2 x_j + x_{j-1} - g(x_j); zero iff the configuration lifts to an orbit."""
    return -action_gradient(m, c.p, c.x)


def hessian_dense(m: MapSpec, x: np.ndarray) -> np.ndarray:
    """Periodic tridiagonal Hessian of the action (dense form)."""
    q = x.size
    d = 2.0 + m.g_prime().evaluate_real(x)
    if q == 1:
        return np.array([[d[0] - 2.0]])
    H = np.zeros((q, q))
    np.fill_diagonal(H, d)
    for j in range(q - 1):
        H[j, j + 1] -= 1.0
        H[j + 1, j] -= 1.0
    H[0, q - 1] -= 1.0
    H[q - 1, 0] -= 1.0
    return H


def _solve_periodic_tridiagonal(diag: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve (tridiag(-1, diag, -1) + corner -1) s = rhs via Sherman-Morrison."""
    q = diag.size
    if q <= 3:
        H = np.zeros((q, q))
        np.fill_diagonal(H, diag)
        for j in range(q - 1):
            H[j, j + 1] -= 1.0
            H[j + 1, j] -= 1.0
        H[0, q - 1] -= 1.0
        H[q - 1, 0] -= 1.0
        return np.linalg.solve(H, rhs)
    c = -1.0
    dmod = diag.copy()
    dmod[0] -= c
    dmod[-1] -= c
    ab = np.zeros((3, q))
    ab[0, 1:] = c
    ab[1] = dmod
    ab[2, :-1] = c
    sols = solve_banded((1, 1), ab, np.column_stack([rhs, _corner_vector(q)]))
    y, z = sols[:, 0], sols[:, 1]
    denom = 1.0 + c * (z[0] + z[-1])
    if abs(denom) < 1e-300:
        raise np.linalg.LinAlgError("singular periodic correction")
    factor = c * (y[0] + y[-1]) / denom
    return y - factor * z


def _corner_vector(q: int) -> np.ndarray:
    u = np.zeros(q)
    u[0] = u[-1] = 1.0
    return u


def _minimize_q1(m: MapSpec, p: int, tol: float, max_iter: int):
    """q = 1: the action is x -> p^2/2 + G(x); coarse scan, golden section, Newton polish."""
    xs = np.arange(64) / 64.0
    vals = m.G.evaluate_real(xs)
    i = int(np.argmin(vals))
    a, b = xs[i] - 1.0 / 64.0, xs[i] + 1.0 / 64.0
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = float(m.G.evaluate_real(c)), float(m.G.evaluate_real(d))
    for _ in range(60):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = float(m.G.evaluate_real(c))
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = float(m.G.evaluate_real(d))
    x = 0.5 * (a + b)
    iters = 60
    for _ in range(max_iter):
        grad = float(m.g.evaluate_real(x))
        if abs(grad) <= tol:
            break
        curv = float(m.g_prime().evaluate_real(x))
        x -= grad / curv if abs(curv) > 1e-8 else math.copysign(1e-3, grad)
        iters += 1
    return np.array([x]), iters


def _minimize_single(m: MapSpec, p: int, q: int, x0: np.ndarray,
                     tol: float, max_iter: int):
    """Damped Newton from one start; returns (x, iterations) or raises NoConvergence."""
    x = x0.astype(float).copy()
    gp = m.g_prime()
    step_gd = 1.0 / (4.0 + gp.l1_norm())
    for _ in range(_WARMUP_STEPS):
        x -= step_gd * action_gradient(m, p, x)
    lam = 0.0
    action_cur = _action(m, p, x)
    gnorm = math.inf
    for it in range(1, max_iter + 1):
        grad = action_gradient(m, p, x)
        gnorm = float(np.max(np.abs(grad)))
        if not math.isfinite(gnorm):
            raise NoConvergence(f"gradient blew up at iteration {it}")
        if gnorm <= tol:
            return x, it
        diag = 2.0 + gp.evaluate_real(x)
        accepted = False
        for _ in range(30):
            try:
                step = _solve_periodic_tridiagonal(diag + lam, -grad)
            except np.linalg.LinAlgError:
                lam = max(10.0 * lam, 1e-8)
                continue
            x_try = x + step
            action_try = _action(m, p, x_try)
            if action_try <= action_cur + 1e-14 * max(1.0, abs(action_cur)):
                x, action_cur = x_try, action_try
                lam = 0.0 if lam < 1e-12 else lam / 10.0
                accepted = True
                break
            lam = max(10.0 * lam, 1e-8)
        if not accepted:
            raise NoConvergence(f"no descent step found at iteration {it}")
    raise NoConvergence(f"gradient norm {gnorm:.3e} after {max_iter} iterations")


class _BatchKernel:
    """Vectorized action pieces over a batch of configurations (rows)."""

    def __init__(self, m: MapSpec, p: int, q: int):
        self.p, self.q = p, q
        self.g_modes = m.g.modes
        self.g_coeffs = m.g.coeffs
        self.gp_coeffs = m.g.derivative().coeffs
        self.G_coeffs = m.G.coeffs
        self.G_modes = m.G.modes

    def _eval(self, coeffs, modes, X):
        phases = np.exp(2j * np.pi * np.multiply.outer(X, modes))
        return (phases @ coeffs).real

    def action(self, X: np.ndarray) -> np.ndarray:
        gaps = np.roll(X, -1, axis=1).copy()
        gaps[:, -1] += self.p
        gaps -= X
        return 0.5 * np.sum(gaps * gaps, axis=1) + np.sum(
            self._eval(self.G_coeffs, self.G_modes, X), axis=1)

    def gradient(self, X: np.ndarray) -> np.ndarray:
        lap = np.roll(X, -1, axis=1) + np.roll(X, 1, axis=1) - 2.0 * X
        lap[:, -1] += self.p
        lap[:, 0] -= self.p
        return -lap + self._eval(self.g_coeffs, self.g_modes, X)

    def hessians(self, X: np.ndarray) -> np.ndarray:
        n, q = X.shape
        H = np.zeros((n, q, q))
        idx = np.arange(q)
        H[:, idx, idx] = 2.0 + self._eval(self.gp_coeffs, self.g_modes, X)
        H[:, idx[:-1], idx[1:]] -= 1.0
        H[:, idx[1:], idx[:-1]] -= 1.0
        H[:, 0, q - 1] -= 1.0
        H[:, q - 1, 0] -= 1.0
        return H


def _minimize_multistart(m: MapSpec, p: int, q: int, X0: np.ndarray,
                         tol: float, max_iter: int):
    """Damped Newton on all starts at once (rows of X0); returns per-row results.

    Returns (X, iterations, ok) where ok marks rows whose gradient reached tol.
    """
    kern = _BatchKernel(m, p, q)
    X = X0.astype(float).copy()
    n_rows = X.shape[0]
    step_gd = 1.0 / (4.0 + float(np.sum(np.abs(kern.gp_coeffs))))
    for _ in range(_WARMUP_STEPS):
        X -= step_gd * kern.gradient(X)
    lam = np.zeros(n_rows)
    action_cur = kern.action(X)
    done = np.zeros(n_rows, dtype=bool)
    failed = np.zeros(n_rows, dtype=bool)
    iters = np.zeros(n_rows, dtype=int)
    eye = np.eye(q)
    for it in range(1, max_iter + 1):
        grad = kern.gradient(X)
        gnorm = np.max(np.abs(grad), axis=1)
        bad = ~np.isfinite(gnorm)
        failed |= bad & ~done
        newly = (gnorm <= tol) & ~done & ~failed
        iters[newly] = it
        done |= newly
        active = ~done & ~failed
        if not active.any():
            break
        H = kern.hessians(X[active])
        pending = np.nonzero(active)[0]
        for _trial in range(30):
            if pending.size == 0:
                break
            rows = np.searchsorted(np.nonzero(active)[0], pending)
            Hmod = H[rows] + lam[pending, None, None] * eye
            try:
                steps = np.linalg.solve(Hmod, -grad[pending][:, :, None])[:, :, 0]
            except np.linalg.LinAlgError:
                lam[pending] = np.maximum(10.0 * lam[pending], 1e-8)
                continue
            X_try = X[pending] + steps
            action_try = kern.action(X_try)
            ok = action_try <= action_cur[pending] + 1e-14 * np.maximum(
                1.0, np.abs(action_cur[pending]))
            ok &= np.isfinite(action_try)
            acc = pending[ok]
            X[acc] = X_try[ok]
            action_cur[acc] = action_try[ok]
            lam[acc] = np.where(lam[acc] < 1e-12, 0.0, lam[acc] / 10.0)
            rej = pending[~ok]
            lam[rej] = np.maximum(10.0 * lam[rej], 1e-8)
            pending = rej
        failed[pending] = True
    failed |= ~done
    return X, iters, done & ~failed


def minimize_periodic(m: MapSpec, p: int, q: int, init=None,
                      tol: float = 1e-12, max_iter: int = 200,
                      n_phases: int = _N_PHASES) -> MinimizeReport:
    """Least-action (p,q)-configuration and beta(p/q) = action/q.

    Without an explicit init, starts from equispaced configurations at
    n_phases different x_0 offsets and keeps the least converged action;
    converged saddles (Hessian eigenvalue < -1e-10) are retried from a
    perturbed phase and discarded if they persist.
    """
    frac = Fraction(p, q)
    p, q = frac.numerator, frac.denominator
    rng = np.random.default_rng(12345)

    best = None
    saddles = 0
    failures: list[str] = []
    if init is not None or q == 1:
        if init is not None and len(np.atleast_1d(init)) != q:
            raise ValueError(f"init length {len(np.atleast_1d(init))} != q = {q}")
        starts = ([np.atleast_1d(np.asarray(init, dtype=float))]
                  if init is not None else [np.zeros(1)])
        for x0 in starts:
            attempt = x0
            for _retry in range(3):
                try:
                    if q == 1:
                        x, iters = _minimize_q1(m, p, tol, max_iter)
                    else:
                        x, iters = _minimize_single(m, p, q, attempt, tol, max_iter)
                except NoConvergence as exc:
                    failures.append(str(exc))
                    break
                min_eig = float(np.linalg.eigvalsh(hessian_dense(m, x)).min())
                if min_eig >= _SADDLE_EIG_TOL:
                    act = _action(m, p, x)
                    if best is None or act < best[0]:
                        grad = action_gradient(m, p, x)
                        best = (act, x, iters, float(np.max(np.abs(grad))), min_eig)
                    break
                saddles += 1
                attempt = x + rng.normal(scale=0.02, size=q)
            else:
                failures.append("persistent saddle point")
    else:
        X0 = np.stack([PeriodicConfiguration.equispaced(p, q, k / n_phases).x
                       for k in range(n_phases)])
        for _round in range(3):
            X, iters_arr, ok = _minimize_multistart(m, p, q, X0, tol, max_iter)
            if not ok.any():
                failures.append("no start converged")
                break
            actions = np.where(ok, _BatchKernel(m, p, q).action(X), np.inf)
            for i in np.argsort(actions):
                if not ok[i]:
                    break
                min_eig = float(np.linalg.eigvalsh(hessian_dense(m, X[i])).min())
                if min_eig >= _SADDLE_EIG_TOL:
                    grad = action_gradient(m, p, X[i])
                    best = (float(actions[i]), X[i], int(iters_arr[i]),
                            float(np.max(np.abs(grad))), min_eig)
                    break
                saddles += 1
            if best is not None:
                break
            X0 = X + rng.normal(scale=0.02, size=X.shape)
    if best is None:
        if saddles and not failures:
            raise SaddlePoint(f"all starts converged to saddles for (p,q)=({p},{q})")
        raise NoConvergence(
            f"no start converged for (p,q)=({p},{q}): {failures[:2]}")
    act, x, iters, gnorm, min_eig = best
    config = PeriodicConfiguration(p, q, x)
    return MinimizeReport(
        config=config,
        action_per_period=act,
        beta_value=act / q,
        iterations=iters,
        final_gradient_norm=gnorm,
        hessian_min_eigenvalue_estimate=min_eig,
    )


_beta_cache: dict = {}


def beta_rational(m: MapSpec, p: int, q: int) -> float:
    """beta(p/q) by action minimization (cached per map and reduced fraction)."""
    frac = Fraction(p, q)
    key = (m.g.coeffs.tobytes(), frac.numerator, frac.denominator)
    if key not in _beta_cache:
        _beta_cache[key] = minimize_periodic(m, frac.numerator, frac.denominator).beta_value
    return _beta_cache[key]


def birkhoff_ordering_ok(c: PeriodicConfiguration) -> bool:
    """Exact combinatorial check: cyclic order of x_j mod 1 matches that of j p/q mod 1."""
    if c.q == 1:
        return True
    residues = (np.arange(c.q) * c.p) % c.q
    expected = tuple(np.argsort(residues))
    actual = tuple(np.argsort(np.mod(c.x, 1.0)))
    doubled = expected + expected
    return any(tuple(doubled[i:i + c.q]) == actual for i in range(c.q))


# -- approach to irrationals --------------------------------------------------


def continued_fraction(omega: float, depth: int = 64,
                       q_max: int | None = None) -> list[Fraction]:
    """Continued-fraction convergents p_k/q_k of omega (floating-point input).

    Stops after `depth` terms, when the expansion terminates (rational
    input), or when denominators exceed q_max.
    """
    x = float(omega)
    convergents: list[Fraction] = []
    p_prev, q_prev = 1, 0
    p_cur, q_cur = math.floor(x), 1
    convergents.append(Fraction(p_cur, q_cur))
    frac = x - math.floor(x)
    for _ in range(depth - 1):
        if frac < 1e-12:
            break
        x = 1.0 / frac
        a = math.floor(x)
        frac = x - a
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        if q_max is not None and q_cur > q_max:
            break
        convergents.append(Fraction(p_cur, q_cur))
    return convergents


class ConvergentsReport(NamedTuple):
    records: tuple
    final: float
    final_fraction: Fraction
    last_decrement: float
    slope_below: float | None
    slope_above: float | None


def beta_by_convergents(m: MapSpec, omega: float, q_max: int) -> ConvergentsReport:
    """beta along the convergent ladder of an irrational omega.

    Returns every (p_k/q_k, beta(p_k/q_k)) with q_k <= q_max, the final value
    (error bar: the last decrement, heuristic), and the chord slopes built
    from the last two convergents on each side of omega, which bracket
    beta'(omega) by convexity.
    """
    convs = continued_fraction(omega, q_max=q_max)
    if len(convs) < 2:
        raise ValueError(f"no nontrivial convergents with q <= {q_max} for omega={omega}")
    records = [(f, beta_rational(m, f.numerator, f.denominator)) for f in convs]
    final_fraction, final = records[-1]
    last_decrement = abs(records[-1][1] - records[-2][1])

    def chord(side_records):
        if len(side_records) < 2:
            return None
        (f1, b1), (f2, b2) = side_records[-2], side_records[-1]
        return (b2 - b1) / float(f2 - f1)

    below = [(f, b) for f, b in records if float(f) < omega]
    above = [(f, b) for f, b in records if float(f) > omega]
    return ConvergentsReport(
        records=tuple(records),
        final=final,
        final_fraction=final_fraction,
        last_decrement=float(last_decrement),
        slope_below=chord(below),
        slope_above=chord(above),
    )


def chord_slopes(m: MapSpec, p: int, q: int,
                 multipliers: Sequence[int] = (8, 16, 32, 64)):
    """One-sided chord slopes at p/q from neighbors (p k +- 1)/(q k).

    Returns (right_slopes, left_slopes) in multiplier order; by convexity the
    right slopes decrease to beta'(p/q+) and the left ones increase to
    beta'(p/q-).
    """
    beta0 = beta_rational(m, p, q)
    rights, lefts = [], []
    for k in multipliers:
        br = beta_rational(m, p * k + 1, q * k)
        bl = beta_rational(m, p * k - 1, q * k)
        rights.append((br - beta0) * q * k)
        lefts.append((beta0 - bl) * q * k)
    return np.array(rights), np.array(lefts)


def one_sided_derivative_gap(m: MapSpec, p: int, q: int,
                             multipliers: Sequence[int] = (8, 16, 32, 64)) -> float:
    """Richardson-extrapolated gap beta'(p/q+) - beta'(p/q-), >= 0.

    A positive gap detects the corner at p/q (no invariant circle of
    periodic orbits there); chords err like 1/k, so Richardson levels on the
    doubling multiplier ladder cancel 1/k, then 1/k^2, terms.
    """
    rights, lefts = chord_slopes(m, p, q, multipliers)
    lvl = (rights - lefts).astype(float)
    weight = 2.0
    while lvl.size > 1:
        lvl = (weight * lvl[1:] - lvl[:-1]) / (weight - 1.0)
        weight *= 2.0
    return max(float(lvl[0]), 0.0)
