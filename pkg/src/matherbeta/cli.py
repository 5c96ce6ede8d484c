"""Batch front end: config parsing, subcommands, deterministic CSV/JSON output.

Subcommands: compute-beta, solve-curve, check-diophantine, validate,
plot-data.  Exit codes: 0 success, 1 config error, 2 numerical failure,
3 certification failure (a claimed invariant violated by the validate suite).

Runs are driven by a YAML config of nested sections; unknown keys are
rejected with the offending field path, so typos never silently change a run.
All floating-point output uses 17 significant digits (round-trip safe).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
import yaml

from . import beta as beta_mod
from . import conjugacy, diophantine, fourier, twist_map, variational
from .errors import ConfigError, MatherBetaError

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_CERTIFICATION = 3


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _require_mapping(data, path: str) -> dict:
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a mapping, got {type(data).__name__}")
    return data


def _take(data: dict, known: dict, path: str) -> dict:
    """Convert the fields of one section; reject unknown keys with their path."""
    out = {}
    for key in data:
        if key not in known:
            raise ConfigError(f"{path}.{key}: unknown key (known: {sorted(known)})")
    for key, (conv, default) in known.items():
        if key in data:
            try:
                out[key] = conv(data[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{path}.{key}: {exc}") from None
        else:
            out[key] = default
    return out


def _float_list(v):
    return [float(x) for x in v]


def _pairs(v):
    out = []
    for item in v:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise ValueError(f"expected [re, im] pairs, got {item!r}")
        out.append(complex(float(item[0]), float(item[1])))
    return out


def _int_pairs(v):
    out = []
    for item in v:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise ValueError(f"expected [p, q] pairs, got {item!r}")
        out.append((int(item[0]), int(item[1])))
    return out


@dataclass
class RunConfig:
    map_spec: twist_map.MapSpec
    dioph: diophantine.DiophantineClass
    solver: conjugacy.SolverConfig
    seed: int
    threads: int
    compute_beta: dict
    solve_curve: dict
    check_dioph: dict
    plot_data: dict
    validate: dict

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        data = _require_mapping(data, "config")
        known_top = {"map", "diophantine", "solver", "seed", "threads",
                     "compute_beta", "solve_curve", "check_diophantine",
                     "plot_data", "validate"}
        for key in data:
            if key not in known_top:
                raise ConfigError(f"config.{key}: unknown section (known: {sorted(known_top)})")

        map_data = _take(_require_mapping(data.get("map"), "map"), {
            "preset": (str, "standard"),
            "eps": (float, 0.05),
            "eps2": (float, 0.0),
            "cos_coeffs": (_float_list, None),
            "sin_coeffs": (_float_list, None),
            "R1": (float, 0.5),
        }, "map")
        preset = map_data["preset"]
        if preset == "standard":
            mspec = twist_map.MapSpec.standard(map_data["eps"], R1=map_data["R1"])
        elif preset == "two-mode":
            mspec = twist_map.MapSpec.two_mode(map_data["eps"], map_data["eps2"],
                                               R1=map_data["R1"])
        elif preset == "integrable":
            mspec = twist_map.MapSpec.integrable(R1=map_data["R1"])
        elif preset == "coefficients":
            if map_data["cos_coeffs"] is None and map_data["sin_coeffs"] is None:
                raise ConfigError("map: preset 'coefficients' needs cos_coeffs/sin_coeffs")
            mspec = twist_map.MapSpec.from_coefficients(
                map_data["cos_coeffs"] or [0.0],
                map_data["sin_coeffs"] or [0.0],
                R1=map_data["R1"],
            )
        else:
            raise ConfigError(f"map.preset: unknown preset {preset!r}")

        dio_data = _take(_require_mapping(data.get("diophantine"), "diophantine"), {
            "tau": (float, 0.5),
            "M": (float, 6.0),
            "m_max": (int, 10 ** 5),
        }, "diophantine")
        try:
            dioph = diophantine.DiophantineClass.create(**dio_data)
        except ValueError as exc:
            raise ConfigError(f"diophantine: {exc}") from None

        sol_data = _take(_require_mapping(data.get("solver"), "solver"), {
            "N": (int, 64),
            "grid": (lambda v: None if v is None else int(v), None),
            "tol": (float, 1e-12),
            "max_iter": (int, 60),
            "scheme": (str, "auto"),
            "delta_min": (float, 1e-14),
            "continuation": (bool, True),
        }, "solver")
        try:
            solver = conjugacy.SolverConfig(
                N=sol_data["N"], n_grid=sol_data["grid"],
                tol_residual=sol_data["tol"], max_iter=sol_data["max_iter"],
                scheme=sol_data["scheme"], delta_min=sol_data["delta_min"],
                continuation=sol_data["continuation"],
            )
        except ValueError as exc:
            raise ConfigError(f"solver: {exc}") from None

        cb = _take(_require_mapping(data.get("compute_beta"), "compute_beta"), {
            "real_grid": (_float_list, None),
            "real_points": (_float_list, []),
            "complex_points": (_pairs, []),
        }, "compute_beta")
        if cb["real_grid"] is not None and len(cb["real_grid"]) != 3:
            raise ConfigError("compute_beta.real_grid: expected [start, stop, count]")

        sc = _take(_require_mapping(data.get("solve_curve"), "solve_curve"), {
            "omega": (_float_list, [diophantine.GOLDEN_MEAN, 0.0]),
        }, "solve_curve")
        if len(sc["omega"]) not in (1, 2):
            raise ConfigError("solve_curve.omega: expected [re] or [re, im]")

        cd = _take(_require_mapping(data.get("check_diophantine"), "check_diophantine"), {
            "omega": (_float_list, None),
            "window": (_float_list, None),
            "m_cap": (lambda v: None if v is None else int(v), 2000),
        }, "check_diophantine")
        if cd["window"] is not None and len(cd["window"]) != 2:
            raise ConfigError("check_diophantine.window: expected [a, b]")

        pd = _take(_require_mapping(data.get("plot_data"), "plot_data"), {
            "eps_list": (_float_list, [0.01, 0.05, 0.1]),
            "denominator_max": (int, 32),
            "complex_x": (_float_list, [0.3]),
            "complex_y": (_float_list, [1.0, 2.0, 3.0, 4.0]),
            "corner_targets": (_int_pairs, [(0, 1), (1, 2)]),
            "corner_multipliers": (lambda v: [int(x) for x in v], [8, 16, 32, 64]),
        }, "plot_data")

        va = _take(_require_mapping(data.get("validate"), "validate"), {
            "n_random": (int, 300),
            "farey_max": (int, 16),
            "q_max": (int, 233),
            "omega": (float, diophantine.GOLDEN_MEAN),
        }, "validate")

        seed = data.get("seed", 0)
        threads = data.get("threads", 1)
        if not isinstance(seed, int):
            raise ConfigError("config.seed: expected an integer")
        if not isinstance(threads, int) or threads < 1:
            raise ConfigError("config.threads: expected a positive integer")
        return cls(mspec, dioph, solver, seed, threads, cb, sc, cd, pd, va)


def load_config(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig.from_dict({})
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return RunConfig.from_dict(data if data is not None else {})


def _write_csv(path: Path, header, rows):
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])


# -- subcommands ---------------------------------------------------------------


def cmd_compute_beta(cfg: RunConfig, out_dir: Path, threads: int,
                     override: bool) -> int:
    omegas: list[complex] = []
    if cfg.compute_beta["real_grid"] is not None:
        a, b, count = cfg.compute_beta["real_grid"]
        omegas.extend(complex(x) for x in np.linspace(a, b, int(count)))
    omegas.extend(complex(x) for x in cfg.compute_beta["real_points"])
    omegas.extend(cfg.compute_beta["complex_points"])
    if not omegas:
        raise ConfigError("compute_beta: empty frequency grid")
    rows = beta_mod.sweep(cfg.map_spec, omegas, cfg.solver, dioph=cfg.dioph,
                          threads=threads, override_diophantine=override)
    out = []
    failed = 0
    nan = math.nan
    for r in rows:
        if r.sample is not None:
            out.append(r.sample.csv_row())
        else:
            if r.status == "failed":
                failed += 1
            out.append([r.omega.real, r.omega.imag, nan, nan, nan, nan, nan,
                        nan, r.status, nan, nan, r.verdict,
                        cfg.dioph.M, cfg.dioph.tau, cfg.solver.N])
    _write_csv(out_dir / "beta_samples.csv", beta_mod.BetaSample.CSV_COLUMNS, out)
    print(f"wrote {out_dir / 'beta_samples.csv'} "
          f"({len(rows)} points, {failed} failed)")
    return EXIT_NUMERICAL if failed else EXIT_OK


def cmd_solve_curve(cfg: RunConfig, omega: complex, out_dir: Path,
                    override: bool) -> int:
    sol = conjugacy.solve_conjugacy(cfg.map_spec, omega, cfg.solver,
                                    dioph=cfg.dioph,
                                    override_diophantine=override)
    with (out_dir / "curve.json").open("w") as fh:
        json.dump(sol.to_json_dict(), fh, indent=1)
    n = fourier.next_pow2(max(8 * sol.u.N, 256))
    theta = np.arange(n) / n
    ug = conjugacy._eval_modes_on_grid(sol.u.pad_to(sol.u.N).coeffs, n)
    vg = conjugacy._eval_modes_on_grid(sol.v.pad_to(sol.v.N).coeffs, n)
    U = theta + ug
    V = complex(omega) + vg
    rows = [[t, Uj.real, Uj.imag, Vj.real, Vj.imag]
            for t, Uj, Vj in zip(theta, U, V)]
    _write_csv(out_dir / "curve_grid.csv",
               ["theta", "U_re", "U_im", "V_re", "V_im"], rows)
    print(f"omega={omega}: residual_sup={sol.residual_sup:.3e} "
          f"invariance_defect={sol.invariance_defect:.3e} "
          f"iterations={sol.iterations} scheme={sol.scheme}")
    print(f"wrote {out_dir / 'curve.json'} and {out_dir / 'curve_grid.csv'}")
    return EXIT_OK


def cmd_check_diophantine(cfg: RunConfig, omega: complex | None,
                          window: tuple[float, float] | None,
                          out_dir: Path) -> int:
    d = cfg.dioph
    if omega is None and window is None:
        if cfg.check_dioph["omega"] is not None:
            vals = cfg.check_dioph["omega"]
            omega = complex(vals[0], vals[1] if len(vals) > 1 else 0.0)
        elif cfg.check_dioph["window"] is not None:
            window = tuple(cfg.check_dioph["window"])
        else:
            raise ConfigError("check_diophantine: provide omega or window")
    if omega is not None:
        cert = (diophantine.check_AMR(d, omega.real) if omega.imag == 0.0
                else diophantine.check_AMC(d, omega))
        payload = {
            "omega": [omega.real, omega.imag],
            "tau": d.tau, "M": d.M, "m_max": d.m_max,
            "member": cert.member, "verdict": cert.verdict,
            "margin": cert.margin, "witness": cert.witness,
            "all_m": cert.all_m, "note": cert.note,
        }
        with (out_dir / "certificate.json").open("w") as fh:
            json.dump(payload, fh, indent=1)
        print(f"omega={omega}: {cert.verdict} margin={cert.margin:.6e}")
        return EXIT_OK
    ivals = diophantine.excluded_intervals(d, window, m_cap=cfg.check_dioph["m_cap"])
    _write_csv(out_dir / "excluded_intervals.csv", ["left", "right", "n", "m"],
               [[iv.left, iv.right, iv.n, iv.m] for iv in ivals])
    total = sum(iv.right - iv.left for iv in ivals)
    print(f"window {window}: {len(ivals)} merged intervals, "
          f"excluded length {total:.6f} (m <= {min(cfg.check_dioph['m_cap'] or d.m_max, d.m_max)})")
    return EXIT_OK


def cmd_plot_data(cfg: RunConfig, out_dir: Path) -> int:
    # beta and Phi over [0,1] via the variational route, per eps
    rows = []
    for eps in cfg.plot_data["eps_list"]:
        m = twist_map.MapSpec.standard(eps)
        fracs = sorted({Fraction(p, q)
                        for q in range(1, cfg.plot_data["denominator_max"] + 1)
                        for p in range(0, q + 1)})
        for f in fracs:
            b = variational.beta_rational(m, f.numerator, f.denominator)
            om = float(f)
            rows.append([eps, om, b, b - 0.5 * om * om, f.numerator, f.denominator])
    _write_csv(out_dir / "beta_profile.csv",
               ["eps", "omega", "beta", "phi", "p", "q"], rows)

    # Phi along vertical complex lines (curve route)
    rows = []
    failed = 0
    for x in cfg.plot_data["complex_x"]:
        for y in cfg.plot_data["complex_y"]:
            om = complex(x, y)
            try:
                sol = conjugacy.solve_conjugacy(cfg.map_spec, om, cfg.solver)
                s = beta_mod.beta_from_curve(cfg.map_spec, sol)
                rows.append([x, y, s.phi.real, s.phi.imag, s.residual_sup])
            except MatherBetaError as exc:
                failed += 1
                rows.append([x, y, math.nan, math.nan, math.nan])
                print(f"complex line point {om} failed: {exc}", file=sys.stderr)
    _write_csv(out_dir / "phi_complex_lines.csv",
               ["x", "y", "phi_re", "phi_im", "residual_sup"], rows)

    # corner zoom: chord ladders and extrapolated gaps at rational targets
    chord_rows, gap_rows = [], []
    for (p, q) in cfg.plot_data["corner_targets"]:
        mult = cfg.plot_data["corner_multipliers"]
        rights, lefts = variational.chord_slopes(cfg.map_spec, p, q, mult)
        for k, r, l in zip(mult, rights, lefts):
            chord_rows.append([p, q, k, r, l, r - l])
        gap = variational.one_sided_derivative_gap(cfg.map_spec, p, q, mult)
        gap_rows.append([p, q, gap])
    _write_csv(out_dir / "corner_chords.csv",
               ["p", "q", "k", "chord_right", "chord_left", "gap_k"], chord_rows)
    _write_csv(out_dir / "corner_gaps.csv", ["p", "q", "gap"], gap_rows)
    print(f"wrote beta_profile.csv, phi_complex_lines.csv, corner_chords.csv, "
          f"corner_gaps.csv in {out_dir}")
    return EXIT_NUMERICAL if failed else EXIT_OK


def _validate_checks(cfg: RunConfig):
    """Yield (name, passed, detail) for the full invariant suite."""
    rng = np.random.default_rng(cfg.seed)
    m = cfg.map_spec
    d = cfg.dioph
    solver = cfg.solver

    # fourier round trips
    N = 24
    coeffs = rng.normal(size=2 * N + 1) + 1j * rng.normal(size=2 * N + 1)
    s = fourier.FourierSeries(coeffs)
    rt = fourier.project(fourier.sample(s, 64), N)
    err = float(np.max(np.abs(rt.coeffs - s.coeffs))) / s.l1_norm()
    yield "fourier round-trip", err <= 1e-13, f"rel err {err:.2e}"

    w1, w2 = 0.31, -0.47
    two = s.shift(w1).shift(w2)
    one = s.shift(w1 + w2)
    err = float(np.max(np.abs(two.coeffs - one.coeffs))) / s.l1_norm()
    yield "shift group action", err <= 1e-12, f"rel err {err:.2e}"

    grid = fourier.sample(s, 128).values
    quad = complex(np.mean(grid * grid))
    pm = fourier.product_mean(s, s)
    err = abs(pm - quad) / max(abs(pm), 1.0)
    yield "product mean vs quadrature", err <= 1e-12, f"rel err {err:.2e}"

    # generating function identities
    worst = 0.0
    for _ in range(cfg.validate["n_random"]):
        x, xp = rng.uniform(-2, 2, size=2)
        mi = int(rng.integers(-3, 4))
        d1, d2 = twist_map.h_symmetry_defects(m, x, xp, mi)
        worst = max(worst, abs(d1), abs(d2))
    yield "h symmetry defects", worst <= 1e-12, f"max defect {worst:.2e}"

    worst = 0.0
    gp = m.g_prime()
    for _ in range(cfg.validate["n_random"]):
        x = rng.uniform(0, 1)
        gpv = float(gp.evaluate_real(x))
        det = (1.0 + gpv) * 1.0 - gpv * 1.0
        worst = max(worst, abs(det - 1.0))
    yield "area preservation", worst <= 1e-12, f"max |det-1| {worst:.2e}"

    worst = 0.0
    for _ in range(cfg.validate["n_random"]):
        x0 = rng.uniform(0, 1)
        y0 = rng.uniform(-1, 1)
        pt = twist_map.apply(m, twist_map.PhasePoint(x0, y0))
        d1h, d2h = twist_map.partial_derivatives_h(m, x0, pt.x)
        worst = max(worst, abs(-d1h - y0), abs(d2h - pt.y))
    yield "generating function consistency", worst <= 1e-12, f"max defect {worst:.2e}"

    # beta symmetry suite at the configured frequency
    try:
        rep = beta_mod.symmetry_suite(m, cfg.validate["omega"], solver, dioph=d)
        worst = max(rep.d_period, rep.d_reflect, rep.d_conj)
        ok = worst <= 1e-9 and rep.d_real_shift <= 1e-10
        yield ("beta symmetry suite", ok,
               f"max Phi defect {worst:.2e}, shift defect {rep.d_real_shift:.2e}")
    except MatherBetaError as exc:
        yield "beta symmetry suite", False, f"solver failure: {exc}"

    # variational symmetries on rationals
    worst = 0.0
    for (p, q) in ((0, 1), (1, 3), (2, 5)):
        b = variational.beta_rational(m, p, q)
        b_shift = variational.beta_rational(m, p + q, q)
        b_neg = variational.beta_rational(m, -p, q)
        worst = max(worst, abs(b_shift - b - p / q - 0.5), abs(b_neg - b))
    yield "variational beta symmetries", worst <= 1e-10, f"max defect {worst:.2e}"

    # convexity on a small Farey grid
    fr = sorted({Fraction(p, q) for q in range(1, cfg.validate["farey_max"] + 1)
                 for p in range(0, q + 1)})
    vals = {f: variational.beta_rational(m, f.numerator, f.denominator) for f in fr}
    worst = -math.inf
    for f1, f2, f3 in zip(fr, fr[1:], fr[2:]):
        lam = float((f3 - f2) / (f3 - f1))
        excess = vals[f2] - (lam * vals[f1] + (1 - lam) * vals[f3])
        worst = max(worst, excess)
    yield "convexity on Farey grid", worst <= 1e-10, f"max excess {worst:.2e}"

    # cross-route agreement
    try:
        rep = beta_mod.cross_validate(m, cfg.validate["omega"],
                                      cfg.validate["q_max"], solver, dioph=d)
        tail = rep.deltas[2:]
        decreasing = all(b < a for a, b in zip(tail, tail[1:]))
        ok = rep.delta_final <= 1e-5 and decreasing and rep.bracket_ok
        yield ("cross-route agreement", ok,
               f"final delta {rep.delta_final:.2e}, bracket {rep.bracket_ok}")
    except MatherBetaError as exc:
        yield "cross-route agreement", False, f"solver failure: {exc}"

    # measure bound
    mrep = diophantine.measure_bound_check(d)
    yield ("diophantine measure bound", mrep.excluded_length < mrep.bound,
           f"{mrep.excluded_length:.5f} < {mrep.bound:.5f}")

    # integrable exactness
    mi_map = twist_map.MapSpec.integrable()
    worst = 0.0
    for _ in range(20):
        om = complex(rng.uniform(0.05, 0.95), rng.uniform(-1, 1) * 0.5)
        sol = conjugacy.solve_conjugacy(mi_map, om, solver)
        samp = beta_mod.beta_from_curve(mi_map, sol)
        worst = max(worst, abs(samp.beta - 0.5 * om * om),
                    abs(samp.beta_prime - om))
    yield "integrable exactness", worst <= 1e-12, f"max err {worst:.2e}"


def cmd_validate(cfg: RunConfig, out_dir: Path) -> int:
    results = list(_validate_checks(cfg))
    width = max(len(name) for name, _, _ in results)
    lines = []
    for name, ok, detail in results:
        lines.append(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}  {detail}")
        print(lines[-1])
    (out_dir / "validate_report.txt").write_text("\n".join(lines) + "\n")
    n_fail = sum(1 for _, ok, _ in results if not ok)
    print(f"{len(results) - n_fail}/{len(results)} checks passed")
    return EXIT_CERTIFICATION if n_fail else EXIT_OK


# -- argument handling ----------------------------------------------------------


def _parse_omega(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ConfigError(f"--omega: expected RE or RE,IM, got {text!r}")


def _parse_window(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"--window: expected A,B, got {text!r}")
    return float(parts[0]), float(parts[1])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matherbeta",
        description="Minimal average action of standard-like twist maps, "
                    "by variational and invariant-curve routes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("compute-beta", "sweep a frequency grid and write beta samples"),
        ("solve-curve", "solve the conjugacy equation at one frequency"),
        ("check-diophantine", "membership certificates / excluded intervals"),
        ("validate", "run the full invariant suite"),
        ("plot-data", "emit plot-ready CSV files"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", default=None, help="YAML run configuration")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--threads", type=int, default=None,
                       help="parallel frequency solves")
        p.add_argument("--override-diophantine", action="store_true",
                       help="solve even at non-certified frequencies")
        if name in ("solve-curve", "check-diophantine"):
            p.add_argument("--omega", default=None, help="frequency RE or RE,IM")
        if name == "check-diophantine":
            p.add_argument("--window", default=None, help="real window A,B")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        threads = args.threads if args.threads is not None else cfg.threads
        if args.command == "compute-beta":
            return cmd_compute_beta(cfg, out_dir, threads,
                                    args.override_diophantine)
        if args.command == "solve-curve":
            if args.omega is not None:
                omega = _parse_omega(args.omega)
            else:
                vals = cfg.solve_curve["omega"]
                omega = complex(vals[0], vals[1] if len(vals) > 1 else 0.0)
            return cmd_solve_curve(cfg, omega, out_dir, args.override_diophantine)
        if args.command == "check-diophantine":
            omega = _parse_omega(args.omega) if args.omega else None
            window = _parse_window(args.window) if args.window else None
            return cmd_check_diophantine(cfg, omega, window, out_dir)
        if args.command == "validate":
            return cmd_validate(cfg, out_dir)
        if args.command == "plot-data":
            return cmd_plot_data(cfg, out_dir)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MatherBetaError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
