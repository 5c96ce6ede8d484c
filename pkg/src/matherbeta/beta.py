"""Assembly of the minimal-average-action function from invariant curves.

With a converged conjugacy solution (U = theta + u, V = omega + v) at
frequency omega,

    beta(omega)  = omega^2/2 + integral of [v^2/2 + G(theta + u)] dtheta,
    beta'(omega) = omega + integral of v d(theta)u dtheta,

where the square is the analytic one (no conjugation), so the same formulas
serve real and complex frequencies.  The variational route at rationals
cross-validates these values along continued-fraction convergents.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import variational
from .conjugacy import CurveSolution, SolverConfig, solve_conjugacy
from .diophantine import DiophantineClass, check_AMR
from .errors import RejectedResidual
from .fourier import compose_id_plus, product_mean
from .twist_map import MapSpec

RESIDUAL_ACCEPT = 1e-10


@dataclass(frozen=True)
class BetaSample:
    """One evaluation record of the minimal average action."""

    omega: complex
    beta: complex
    beta_prime: complex
    phi: complex                 # beta - omega^2/2, exactly as stored
    method: str                  # "kam" | "variational" | "convergent-extrapolation"
    error_estimate: float
    residual_sup: float = math.nan
    diophantine_verdict: str = "unchecked"
    M: float = math.nan
    tau: float = math.nan
    N: int = 0
    eps_scale: float = math.nan

    CSV_COLUMNS = (
        "omega_re", "omega_im", "beta_re", "beta_im", "beta_prime_re",
        "beta_prime_im", "phi_re", "phi_im", "method", "residual_sup",
        "error_estimate", "diophantine_verdict", "M", "tau", "N",
    )

    def csv_row(self) -> list:
        return [
            self.omega.real, self.omega.imag, self.beta.real, self.beta.imag,
            self.beta_prime.real, self.beta_prime.imag, self.phi.real,
            self.phi.imag, self.method, self.residual_sup,
            self.error_estimate, self.diophantine_verdict, self.M, self.tau,
            self.N,
        ]


def _with_metadata(sample: BetaSample, m: MapSpec,
                   dioph: DiophantineClass | None) -> BetaSample:
    from dataclasses import replace
    out = replace(sample, eps_scale=m.eps_scale)
    if dioph is not None:
        out = replace(out, M=dioph.M, tau=dioph.tau)
    return out


def beta_prime_from_curve(m: MapSpec, sol: CurveSolution) -> complex:
    """beta'(omega) = omega + integral of v d(theta)u, computed spectrally."""
    return complex(sol.omega) + product_mean(sol.v, sol.u.derivative())


def beta_from_curve(m: MapSpec, sol: CurveSolution,
                    residual_threshold: float = RESIDUAL_ACCEPT,
                    dioph: DiophantineClass | None = None) -> BetaSample:
    """Average the action along a converged invariant curve.

    The v^2 integral is the analytic product mean (coincides with |V|^2
    averaging for real omega); the G integral is the mean of the composed
    series G(theta + u).
    """
    if not sol.residual_sup <= residual_threshold:
        raise RejectedResidual(
            f"residual_sup = {sol.residual_sup:.3e} exceeds {residual_threshold:.1e}"
        )
    int_v2 = product_mean(sol.v, sol.v)
    int_G = compose_id_plus(m.G, sol.u).mean()
    phi = 0.5 * int_v2 + int_G
    omega = complex(sol.omega)
    beta_val = 0.5 * omega * omega + phi
    du = sol.u.derivative()
    error = sol.residual_sup * (1.0 + du.l1_norm())
    sample = BetaSample(
        omega=omega,
        beta=beta_val,
        beta_prime=beta_prime_from_curve(m, sol),
        phi=beta_val - 0.5 * omega * omega,
        method="kam",
        error_estimate=float(error),
        residual_sup=sol.residual_sup,
        diophantine_verdict=sol.diophantine_note,
        N=sol.n_modes,
    )
    return _with_metadata(sample, m, dioph)


def beta_sample_rational(m: MapSpec, p: int, q: int) -> BetaSample:
    """Variational-route sample at p/q (no two-sided derivative at rationals)."""
    report = variational.minimize_periodic(m, p, q)
    omega = complex(p / q)
    beta_val = complex(report.beta_value)
    return _with_metadata(
        BetaSample(
            omega=omega,
            beta=beta_val,
            beta_prime=complex(math.nan),
            phi=beta_val - 0.5 * omega * omega,
            method="variational",
            error_estimate=report.final_gradient_norm,
        ),
        m, None,
    )


def beta_sample_convergents(m: MapSpec, omega: float, q_max: int) -> BetaSample:
    """Extrapolation-route sample: last convergent value, error = last decrement."""
    rep = variational.beta_by_convergents(m, omega, q_max)
    om = complex(omega)
    bp = math.nan
    if rep.slope_below is not None and rep.slope_above is not None:
        bp = 0.5 * (rep.slope_below + rep.slope_above)
    return _with_metadata(
        BetaSample(
            omega=om,
            beta=complex(rep.final),
            beta_prime=complex(bp),
            phi=complex(rep.final) - 0.5 * om * om,
            method="convergent-extrapolation",
            error_estimate=rep.last_decrement,
        ),
        m, None,
    )


# -- property suites ----------------------------------------------------------


class SymmetrySuiteReport(NamedTuple):
    phi: complex
    d_period: float        # |Phi(omega+1) - Phi(omega)|
    d_reflect: float       # |Phi(-omega) - Phi(omega)|
    d_conj: float          # |conj(Phi(omega)) - Phi(conj omega)|
    d_real_shift: float    # |beta(omega+1) - beta(omega) - omega - 1/2| (real omega)
    samples: dict


def symmetry_suite(m: MapSpec, omega: complex, cfg: SolverConfig = SolverConfig(),
                   dioph: DiophantineClass | None = None) -> SymmetrySuiteReport:
    """Evenness, 1-periodicity and conjugation symmetry of Phi via independent solves."""
    omega = complex(omega)
    points = {"omega": omega, "plus1": omega + 1.0, "minus": -omega,
              "conj": omega.conjugate()}
    samples = {}
    for name, om in points.items():
        sol = solve_conjugacy(m, om, cfg, dioph=dioph)
        samples[name] = beta_from_curve(m, sol, dioph=dioph)
    phi0 = samples["omega"].phi
    d_real_shift = math.nan
    if omega.imag == 0.0:
        d_real_shift = abs(samples["plus1"].beta - samples["omega"].beta
                           - omega - 0.5)
    return SymmetrySuiteReport(
        phi=phi0,
        d_period=abs(samples["plus1"].phi - phi0),
        d_reflect=abs(samples["minus"].phi - phi0),
        d_conj=abs(phi0.conjugate() - samples["conj"].phi),
        d_real_shift=float(d_real_shift),
        samples=samples,
    )


class LimitProbeReport(NamedTuple):
    x: float
    y_list: tuple
    phis: tuple                # Phi(x + i y) along the ladder
    diffs: tuple               # |Phi(x+i y_{j+1}) - Phi(x+i y_j)|
    decay_factors: tuple       # diffs[j] / diffs[j+1]
    samples: tuple


def limit_at_infinity_probe(m: MapSpec, x: float, y_list: Sequence[float],
                            cfg: SolverConfig = SolverConfig()) -> LimitProbeReport:
    """Phi along a vertical frequency line; reports the empirical limit behavior.

    The successive differences must shrink for the limit at Im omega -> +inf
    to be visible; no closed-form limit value is asserted.
    """
    ys = tuple(float(y) for y in y_list)
    if any(b <= a for a, b in zip(ys, ys[1:])):
        raise ValueError("y_list must be strictly increasing")
    samples = []
    for y in ys:
        sol = solve_conjugacy(m, complex(x, y), cfg)
        samples.append(beta_from_curve(m, sol))
    phis = tuple(s.phi for s in samples)
    diffs = tuple(abs(b - a) for a, b in zip(phis, phis[1:]))
    factors = tuple(
        (d0 / d1 if d1 > 0.0 else math.inf) for d0, d1 in zip(diffs, diffs[1:])
    )
    return LimitProbeReport(float(x), ys, phis, diffs, factors, tuple(samples))


class CrossValidateReport(NamedTuple):
    kam: BetaSample
    records: tuple             # (Fraction, beta value) along the ladder
    deltas: tuple              # |beta_kam - beta(p_k/q_k)|
    delta_final: float
    slope_below: float | None
    slope_above: float | None
    bracket_ok: bool
    bracket_slack: float


def cross_validate(m: MapSpec, omega: float, q_max: int,
                   cfg: SolverConfig = SolverConfig(),
                   dioph: DiophantineClass | None = None,
                   bracket_slack: float = 1e-8) -> CrossValidateReport:
    """Compare the curve route against the variational convergent ladder.

    Reports |beta_kam - beta(p_k/q_k)| along the ladder and checks that
    Re beta'_kam is bracketed by the chord slopes of the last two convergents
    on each side (a consequence of convexity).
    """
    omega = float(omega)
    sol = solve_conjugacy(m, omega, cfg, dioph=dioph)
    kam = beta_from_curve(m, sol, dioph=dioph)
    ladder = variational.beta_by_convergents(m, omega, q_max)
    deltas = tuple(abs(kam.beta.real - b) for _, b in ladder.records)
    bp = kam.beta_prime.real
    ok = True
    if ladder.slope_below is not None:
        ok = ok and (ladder.slope_below <= bp + bracket_slack)
    if ladder.slope_above is not None:
        ok = ok and (bp <= ladder.slope_above + bracket_slack)
    return CrossValidateReport(
        kam=kam,
        records=ladder.records,
        deltas=deltas,
        delta_final=deltas[-1],
        slope_below=ladder.slope_below,
        slope_above=ladder.slope_above,
        bracket_ok=ok,
        bracket_slack=bracket_slack,
    )


def find_certified_step(dioph: DiophantineClass, omega: float, h0: float = 1e-3,
                        attempts: int = 200) -> float | None:
    """An h near h0 with both omega-h and omega+h certified, or None."""
    for j in range(attempts):
        h = h0 * (1.0 + j / 37.0)
        if (check_AMR(dioph, omega - h).member
                and check_AMR(dioph, omega + h).member):
            return h
    return None


# -- batch sweep ---------------------------------------------------------------


class SweepRow(NamedTuple):
    index: int
    omega: complex
    status: str                # "ok" | "skipped" | "failed"
    verdict: str
    sample: BetaSample | None
    message: str


def _sweep_one(args) -> SweepRow:
    index, omega, m, cfg, dioph, override = args
    omega = complex(omega)
    verdict = "unchecked"
    if dioph is not None:
        from .diophantine import check_AMC
        cert = check_AMC(dioph, omega)
        verdict = cert.verdict
        if not cert.member and not override:
            return SweepRow(index, omega, "skipped", verdict, None,
                            "outside the certified frequency domain")
    try:
        sol = solve_conjugacy(m, omega, cfg, dioph=None)
        sample = beta_from_curve(m, sol, dioph=dioph)
        from dataclasses import replace
        sample = replace(sample, diophantine_verdict=verdict)
        return SweepRow(index, omega, "ok", verdict, sample, "")
    except Exception as exc:  # solver failures become 'failed' rows
        return SweepRow(index, omega, "failed", verdict, None, str(exc))


def sweep(m: MapSpec, omegas: Sequence[complex], cfg: SolverConfig = SolverConfig(),
          dioph: DiophantineClass | None = None, threads: int = 1,
          override_diophantine: bool = False) -> list[SweepRow]:
    """Batch evaluation over a frequency grid; output order follows the input grid.

    Non-member frequencies are skipped by policy (recorded as such); solver
    failures are reported as failed rows, never as values.
    """
    jobs = [(i, om, m, cfg, dioph, override_diophantine)
            for i, om in enumerate(omegas)]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_sweep_one, jobs))
    else:
        rows = [_sweep_one(j) for j in jobs]
    rows.sort(key=lambda r: r.index)
    return rows
