"""Spectral solver for the invariant-curve conjugacy equation.

At a fixed frequency omega (real Diophantine or complex), find the 1-periodic
zero-mean u with

    u(theta+omega) - 2 u(theta) + u(theta-omega) = g(theta + u(theta)),

which parametrizes an invariant curve U = theta + u, V = omega + v with
v = u - u(.-omega).  The linear part is diagonal in Fourier modes with symbol
2(cos(2 pi k omega) - 1); iteration is Picard warm-up followed by Newton on
the mean-projected equation, with the final mean of g(theta+u) reported as a
convergence certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .diophantine import DiophantineClass, check_AMC, check_AMR
from .errors import (
    NoConvergence,
    ResidualStagnation,
    ShiftOverflow,
    SmallDivisorBreakdown,
)
from .fourier import FourierSeries, next_pow2
from .twist_map import MapSpec

# Largest exponent allowed in any e^{2 pi k Im omega} factor; keeps every
# intermediate finite in double precision (overflow starts at e^{709}).
_MAX_LOG = 500.0
_STAGNATION_FACTOR = 0.9
_STAGNATION_RUN = 10


@dataclass(frozen=True)
class SolverConfig:
    """Knobs of one conjugacy solve."""

    N: int = 128
    n_grid: int | None = None
    tol_residual: float = 1e-12
    max_iter: int = 60
    delta_min: float = 1e-14
    scheme: str = "auto"  # "auto" = picard warm-up then newton; "picard"; "newton"
    picard_warmup: int = 5
    continuation: bool = True

    def __post_init__(self):
        if self.scheme not in ("auto", "picard", "newton"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.n_grid is not None and (self.n_grid & (self.n_grid - 1)) != 0:
            raise ValueError("n_grid must be a power of two")


@dataclass(frozen=True)
class CurveSolution:
    """Converged conjugacy solution at one frequency, with diagnostics."""

    omega: complex
    u: FourierSeries
    v: FourierSeries
    residual_sup: float
    invariance_defect: float
    mean_defect: float
    tail_indicator: float
    iterations: int
    scheme: str
    residual_history: tuple
    n_modes: int
    diophantine_note: str = "unchecked"

    def to_json_dict(self) -> dict:
        return {
            "omega": [self.omega.real, self.omega.imag],
            "N": self.u.N,
            "u_hat": [[c.real, c.imag] for c in self.u.coeffs],
            "residual_sup": self.residual_sup,
            "invariance_defect": self.invariance_defect,
            "mean_defect": self.mean_defect,
            "iterations": self.iterations,
            "scheme": self.scheme,
        }


def small_divisor(k: int, omega: complex) -> complex:
    """Symbol 2(cos(2 pi k omega) - 1) of the linear part on mode k."""
    return complex(2.0 * (np.cos(2.0 * np.pi * k * complex(omega)) - 1.0))


def _divisors(ks: np.ndarray, omega: complex) -> np.ndarray:
    """Small divisors as -4 sin^2(pi (k omega - round(Re k omega))).

    The integer reduction avoids the cancellation of cos(2 pi k omega) - 1
    near real resonances; the value is unchanged by periodicity.
    """
    z = ks * complex(omega)
    z = z - np.rint(z.real)
    return -4.0 * np.sin(np.pi * z) ** 2


def effective_cutoff(N_cfg: int, N_g: int, im_omega: float) -> int:
    """Mode cutoff actually used at a given Im omega.

    Shrinks the basis at large |Im omega| so every e^{2 pi k Im omega} factor
    stays within double range; discarded modes decay like e^{-2 pi k Im omega}
    and sit far below the residual tolerance.
    """
    ay = abs(im_omega)
    if ay == 0.0:
        return N_cfg
    n_allow = int(_MAX_LOG / (2.0 * np.pi * ay))
    if n_allow < N_g + 1:
        raise ShiftOverflow(
            f"|Im omega| = {ay:g} too large for a forcing with {N_g} harmonics"
        )
    if ay <= 0.2:
        return min(N_cfg, n_allow)
    n_want = max(N_g + 4, math.ceil(10.0 / ay))
    return min(N_cfg, n_want, n_allow)


def apply_L_inverse(f: FourierSeries, omega: complex,
                    delta_min: float = 1e-14) -> FourierSeries:
    """Invert the linear part on a zero-mean series: coefficient k -> f_k / D_k."""
    if abs(f.coeff(0)) > 0.0:
        raise ValueError("apply_L_inverse requires a zero-mean series")
    D = _divisors(f.modes, omega)
    D[f.N] = 1.0
    small = np.abs(D) < delta_min
    if small.any():
        i = int(np.nonzero(small)[0][0])
        raise SmallDivisorBreakdown(int(f.modes[i]), complex(D[i]))
    out = f.coeffs / D
    out[f.N] = 0.0
    return FourierSeries(out)


def _eval_modes_on_grid(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Values on theta_j = j/n of the series with the given -N..N coefficients."""
    N = (coeffs.size - 1) // 2
    buf = np.zeros(n, dtype=np.complex128)
    buf[: N + 1] = coeffs[N:]
    if N > 0:
        buf[-N:] = coeffs[:N]
    return np.fft.ifft(buf) * n


def _eval_g_at(g: FourierSeries, args: np.ndarray) -> np.ndarray:
    """g evaluated at (possibly complex) points; guards the exponent range."""
    im_max = float(np.max(np.abs(args.imag))) if np.iscomplexobj(args) else 0.0
    if 2.0 * np.pi * g.N * im_max > _MAX_LOG:
        raise ShiftOverflow(
            f"|Im u| = {im_max:.3e} drives the forcing evaluation out of double range"
        )
    phases = np.exp(2j * np.pi * np.multiply.outer(args, g.modes))
    return phases @ g.coeffs


def _project_modes(values: np.ndarray, N: int) -> np.ndarray:
    spec = np.fft.fft(values) / values.size
    if N == 0:
        return spec[:1].copy()
    return np.concatenate([spec[-N:], spec[: N + 1]])


class _Workspace:
    """Precomputed mode data for one (omega, cutoff, grid) combination."""

    def __init__(self, omega: complex, N: int, n: int, delta_min: float):
        self.omega = omega
        self.N = N
        self.n = n
        self.theta = np.arange(n) / n
        self.ks = np.arange(-N, N + 1)
        D = _divisors(self.ks, omega)
        D[N] = 1.0
        small = np.abs(D) < delta_min
        small[N] = False
        if small.any():
            i = int(np.nonzero(small)[0][0])
            raise SmallDivisorBreakdown(int(self.ks[i]), complex(D[i]))
        self.invD = 1.0 / D
        self.invD[N] = 0.0
        D = D.copy()
        D[N] = 0.0
        self.D = D
        self.s_minus = np.exp(-2j * np.pi * self.ks * omega)


def _solve_raw(m: MapSpec, omega: complex, cfg: SolverConfig,
               init: FourierSeries | None, note: str) -> CurveSolution:
    omega = complex(omega)
    real_case = omega.imag == 0.0 and m.g.real_symmetric
    N = effective_cutoff(cfg.N, m.g.N, omega.imag)
    n = cfg.n_grid or next_pow2(max(4 * (m.g.N + N), 4 * N + 1, 16))
    ws = _Workspace(omega, N, n, cfg.delta_min)
    gp = m.g.derivative()

    u_hat = np.zeros(2 * N + 1, dtype=np.complex128)
    if init is not None:
        lo = min(N, init.N)
        u_hat[N - lo : N + lo + 1] = init.coeffs[init.N - lo : init.N + lo + 1]
        u_hat[N] = 0.0

    history: list[float] = []
    mean_defect = math.nan
    scheme_used = "picard"
    for it in range(cfg.max_iter + 1):
        u_grid = _eval_modes_on_grid(u_hat, n)
        w_grid = _eval_g_at(m.g, ws.theta + u_grid)
        lu_grid = _eval_modes_on_grid(u_hat * ws.D, n)
        res_grid = lu_grid - w_grid
        residual_sup = float(np.max(np.abs(res_grid)))
        history.append(residual_sup)
        mean_defect = abs(complex(np.mean(w_grid)))
        if not math.isfinite(residual_sup):
            raise NoConvergence(
                f"residual not finite at iteration {it} (omega={omega})",
                diagnostics={"omega": omega, "history": tuple(history)},
            )
        if residual_sup <= cfg.tol_residual:
            break
        if it == cfg.max_iter:
            raise NoConvergence(
                f"residual {residual_sup:.3e} above tol after {it} iterations "
                f"(omega={omega})",
                diagnostics={"omega": omega, "history": tuple(history)},
            )
        if len(history) > _STAGNATION_RUN:
            recent = history[-_STAGNATION_RUN - 1 :]
            if all(recent[i + 1] > _STAGNATION_FACTOR * recent[i]
                   for i in range(_STAGNATION_RUN)):
                raise ResidualStagnation(
                    f"residual stalled at {residual_sup:.3e} (omega={omega})",
                    diagnostics={"omega": omega, "history": tuple(history),
                                 "u_hat": u_hat.copy()},
                )
        picard_phase = cfg.scheme == "picard" or (
            cfg.scheme == "auto" and it < cfg.picard_warmup
        )
        if picard_phase:
            w_hat = _project_modes(w_grid, N)
            w_hat[N] = 0.0
            u_hat = w_hat * ws.invD
            scheme_used = "picard"
        else:
            r_hat = _project_modes(res_grid, N)
            r_hat[N] = 0.0
            wp_grid = _eval_g_at(gp, ws.theta + u_grid)
            Np = min(2 * N, (n - 1) // 2)
            wp_hat = _project_modes(wp_grid, Np)
            wp_pad = np.zeros(4 * N + 1, dtype=np.complex128)
            wp_pad[2 * N - Np : 2 * N + Np + 1] = wp_hat
            K, L = np.meshgrid(ws.ks, ws.ks, indexing="ij")
            B = np.eye(2 * N + 1, dtype=np.complex128) - wp_pad[K - L + 2 * N] * ws.invD[None, :]
            B[N, :] = 0.0
            B[N, N] = 1.0
            rhs = -r_hat
            rhs[N] = 0.0
            try:
                eta = np.linalg.solve(B, rhs)
            except np.linalg.LinAlgError as exc:
                raise NoConvergence(
                    f"singular Newton system at iteration {it} (omega={omega})",
                    diagnostics={"omega": omega, "history": tuple(history)},
                ) from exc
            delta_hat = eta * ws.invD
            delta_hat[N] = 0.0
            u_hat = u_hat + delta_hat
            scheme_used = "newton"
        if real_case:
            u_hat = 0.5 * (u_hat + u_hat[::-1].conj())

    v_hat = u_hat * (1.0 - ws.s_minus)
    u_series = FourierSeries(u_hat, real_symmetric=real_case)
    v_series = FourierSeries(v_hat, real_symmetric=real_case)
    sol = CurveSolution(
        omega=omega,
        u=u_series,
        v=v_series,
        residual_sup=history[-1],
        invariance_defect=math.nan,
        mean_defect=mean_defect,
        tail_indicator=u_series.tail_indicator(),
        iterations=len(history) - 1,
        scheme=scheme_used,
        residual_history=tuple(history),
        n_modes=N,
        diophantine_note=note,
    )
    return replace(sol, invariance_defect=verify_invariance(m, sol))


def solve_conjugacy(m: MapSpec, omega: complex, cfg: SolverConfig = SolverConfig(),
                    dioph: DiophantineClass | None = None,
                    override_diophantine: bool = False,
                    init: FourierSeries | None = None) -> CurveSolution:
    """Solve the conjugacy equation at one frequency.

    When a DiophantineClass is supplied, the frequency must pass the real or
    complex membership check unless override_diophantine is set; the verdict
    (or the override) is recorded in the solution.  On non-convergence with
    continuation enabled, one retry warm-starts from the half-strength map's
    solution before giving up.
    """
    omega = complex(omega)
    note = "unchecked"
    if dioph is not None:
        cert = check_AMR(dioph, omega.real) if omega.imag == 0.0 else check_AMC(dioph, omega)
        if cert.member:
            note = cert.verdict
        elif override_diophantine:
            note = f"override({cert.verdict})"
        else:
            raise ValueError(
                f"omega={omega} is not certified Diophantine ({cert.verdict}); "
                "pass override_diophantine=True to force"
            )
    try:
        return _solve_raw(m, omega, cfg, init, note)
    except (NoConvergence, ResidualStagnation) as primary:
        if not cfg.continuation or init is not None:
            raise
        half_cfg = replace(cfg, continuation=False)
        try:
            half = _solve_raw(m.scaled(0.5), omega, half_cfg, None, note)
            full = _solve_raw(m, omega, half_cfg, half.u, f"{note}+continuation")
        except (NoConvergence, ResidualStagnation, SmallDivisorBreakdown):
            raise primary from None
        return replace(full, iterations=full.iterations + half.iterations)


def verify_invariance(m: MapSpec, sol: CurveSolution, n_check: int | None = None) -> float:
    """Sup over a grid of |T_g(U(theta), V(theta)) - (U(theta+omega), V(theta+omega))|.

    Evaluated with complex arithmetic throughout; for an exact solution both
    components coincide with the equation residual, so the defect of an
    accepted solve must stay within a small multiple of residual_sup.
    """
    omega = sol.omega
    N = sol.u.N
    n = n_check or next_pow2(max(4 * (m.g.N + N), 4 * N + 1, 16))
    theta = np.arange(n) / n
    s_plus = np.exp(2j * np.pi * sol.u.modes * omega)
    u_grid = _eval_modes_on_grid(sol.u.coeffs, n)
    v_grid = _eval_modes_on_grid(sol.v.coeffs, n)
    u_shift = _eval_modes_on_grid(sol.u.coeffs * s_plus, n)
    v_shift = _eval_modes_on_grid(sol.v.coeffs * s_plus, n)
    U = theta + u_grid
    V = omega + v_grid
    gU = _eval_g_at(m.g, U)
    x1 = U + V + gU
    y1 = V + gU
    dx = float(np.max(np.abs(x1 - (theta + omega + u_shift))))
    dy = float(np.max(np.abs(y1 - (omega + v_shift))))
    return max(dx, dy)


@dataclass(frozen=True)
class SymmetryReport:
    """Sup-differences of the frequency symmetries of u and v."""

    du_reflect: float   # u(theta, -omega) vs u(theta, omega)
    du_period: float    # u(theta, omega+1) vs u(theta, omega)
    du_conj: float      # conj(u(theta, omega)) vs u(theta, conj omega), real theta
    dv_reflect: float   # v(theta, -omega) vs -v(theta+omega, omega)
    solutions: dict


def symmetry_checks(m: MapSpec, omega: complex,
                    cfg: SolverConfig = SolverConfig()) -> SymmetryReport:
    """Solve at omega, -omega, omega+1 and conj(omega) and compare the curves."""
    omega = complex(omega)
    sols = {
        "omega": solve_conjugacy(m, omega, cfg),
        "minus": solve_conjugacy(m, -omega, cfg),
        "plus1": solve_conjugacy(m, omega + 1.0, cfg),
        "conj": solve_conjugacy(m, omega.conjugate(), cfg),
    }
    N_all = max(s.u.N for s in sols.values())
    n = next_pow2(max(4 * (m.g.N + N_all), 64))
    grids = {
        name: _eval_modes_on_grid(sol.u.pad_to(N_all).coeffs, n)
        for name, sol in sols.items()
    }
    du_reflect = float(np.max(np.abs(grids["minus"] - grids["omega"])))
    du_period = float(np.max(np.abs(grids["plus1"] - grids["omega"])))
    du_conj = float(np.max(np.abs(np.conj(grids["omega"]) - grids["conj"])))
    base, refl = sols["omega"], sols["minus"]
    Nv = max(base.v.N, refl.v.N)
    s_plus = np.exp(2j * np.pi * np.arange(-Nv, Nv + 1) * omega)
    v_shift = _eval_modes_on_grid(base.v.pad_to(Nv).coeffs * s_plus, n)
    v_refl = _eval_modes_on_grid(refl.v.pad_to(Nv).coeffs, n)
    dv_reflect = float(np.max(np.abs(v_refl + v_shift)))
    return SymmetryReport(du_reflect, du_period, du_conj, dv_reflect, sols)
