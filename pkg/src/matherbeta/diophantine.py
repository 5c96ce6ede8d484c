"""Diophantine frequency domains: certification, excluded intervals, measure bound.

The real domain keeps frequencies at distance >= 1/(M m^{2+tau}) from every
rational n/m; its complex thickening admits omega iff dist(Re omega, real
domain) <= |Im omega|.  Membership is certified by finite scan up to m_max
(undecidable otherwise); quadratic irrationals additionally get a closed-form
certificate valid for all m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

_ZETA_TERMS = 10 ** 6


def zeta_series(s: float, terms: int = _ZETA_TERMS) -> float:
    """Riemann zeta(s) for s > 1 by direct summation plus Euler-Maclaurin tail.

    Truncation error is O(s K^{-s-3}), far below 1e-12 at the default depth.
    """
    if s <= 1.0:
        raise ValueError("zeta_series requires s > 1")
    K = terms
    head = float(np.sum(np.arange(1, K + 1, dtype=float) ** (-s)))
    tail = K ** (1.0 - s) / (s - 1.0) - 0.5 * K ** (-s) + (s / 12.0) * K ** (-s - 1.0)
    return head + tail


@dataclass(frozen=True)
class DiophantineClass:
    """Parameters (tau, M) of the Diophantine family, with certification depth m_max."""

    tau: float
    M: float
    m_max: int
    zeta_value: float

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError("tau must be positive")
        if self.M <= 2.0 * self.zeta_value:
            raise ValueError(
                f"M = {self.M} must exceed 2 zeta(1+tau) = {2 * self.zeta_value:.6f}"
            )
        if self.m_max < 1:
            raise ValueError("m_max must be >= 1")

    @classmethod
    def create(cls, tau: float = 0.5, M: float = 6.0, m_max: int = 10 ** 5) -> "DiophantineClass":
        return cls(tau=tau, M=M, m_max=m_max, zeta_value=zeta_series(1.0 + tau))

    def radius(self, m):
        """Exclusion radius 1/(M m^{2+tau}) around rationals with denominator m."""
        return 1.0 / (self.M * np.asarray(m, dtype=float) ** (2.0 + self.tau))


@dataclass(frozen=True)
class MembershipCertificate:
    """Outcome of a membership check.

    member=True means no violation was found for m <= m_checked (plus, when
    all_m is set, a closed-form bound covering every m).  member=False carries
    a concrete witness (n, m) with |omega - n/m| < 1/(M m^{2+tau}).
    margin is the smallest slack min_m (|omega - n/m| - radius_m) over the scan.
    """

    member: bool
    m_checked: int
    margin: float
    witness: tuple[int, int] | None = None
    all_m: bool = False
    note: str = ""

    @property
    def verdict(self) -> str:
        if not self.member:
            return f"excluded(n={self.witness[0]},m={self.witness[1]})"
        return "certified(all m)" if self.all_m else f"certified(m<={self.m_checked})"


def _scan(d: DiophantineClass, omega: float):
    m = np.arange(1, d.m_max + 1, dtype=float)
    n = np.rint(omega * m)
    slack = np.abs(omega - n / m) - d.radius(m)
    return m.astype(int), n.astype(int), slack


def check_AMR(d: DiophantineClass, omega: float) -> MembershipCertificate:
    """Real-domain membership, certified up to d.m_max."""
    omega = float(omega)
    m, n, slack = _scan(d, omega)
    i_min = int(np.argmin(slack))
    if slack[i_min] < 0.0:
        violators = np.nonzero(slack < 0.0)[0]
        i0 = int(violators[0])
        return MembershipCertificate(
            member=False, m_checked=d.m_max, margin=float(slack[i_min]),
            witness=(int(n[i0]), int(m[i0])),
        )
    return MembershipCertificate(member=True, m_checked=d.m_max, margin=float(slack[i_min]))


def quadratic_root(A: int, B: int, C: int) -> float:
    """The root (-B + sqrt(B^2 - 4AC)) / (2A) of an integer quadratic."""
    D = B * B - 4 * A * C
    if D <= 0 or math.isqrt(D) ** 2 == D:
        raise ValueError("discriminant must be positive and not a perfect square")
    return (-B + math.sqrt(D)) / (2 * A)


def check_AMR_quadratic(d: DiophantineClass, A: int, B: int, C: int) -> MembershipCertificate:
    """Closed-form certificate for the quadratic irrational (-B + sqrt(D))/(2A).

    Every rational satisfies |omega - n/m| >= c/m^2 with
    c = min(1/2, 1/(sqrt(D) + |A|/2)) because m^2 |A (n/m - omega)(n/m - conj)| >= 1;
    for tau >= 0 this certifies membership for ALL m whenever M c >= 1.
    The finite scan still runs to report the margin.
    """
    omega = quadratic_root(A, B, C)
    D = B * B - 4 * A * C
    c = min(0.5, 1.0 / (math.sqrt(D) + abs(A) / 2.0))
    cert = check_AMR(d, omega)
    if d.M * c >= 1.0 and cert.member:
        return MembershipCertificate(
            member=True, m_checked=d.m_max, margin=cert.margin, all_m=True,
            note=f"quadratic certificate: c={c:.6f}, M c = {d.M * c:.3f} >= 1",
        )
    return cert


GOLDEN_MEAN = quadratic_root(1, 1, -1)      # (sqrt(5)-1)/2
SILVER_FREQ = quadratic_root(1, 2, -1)      # sqrt(2)-1


class ExcludedInterval(NamedTuple):
    left: float
    right: float
    n: int
    m: int


def _merged_arrays(d: DiophantineClass, a: float, b: float, m_top: int):
    """Merged excluded intervals on [a, b] for m <= m_top, as flat arrays.

    Returns (lefts, rights, witness_n, witness_m) of the disjoint merged
    intervals; the witness is the lowest-denominator ball inside each.
    """
    m_arr = np.arange(1, m_top + 1, dtype=float)
    r_arr = d.radius(m_arr)
    n_lo = np.ceil((a - r_arr) * m_arr).astype(np.int64)
    n_hi = np.floor((b + r_arr) * m_arr).astype(np.int64)
    counts = np.maximum(n_hi - n_lo + 1, 0)
    total = int(counts.sum())
    if total == 0:
        return (np.empty(0),) * 2 + (np.empty(0, dtype=np.int64),) * 2
    m_rep = np.repeat(m_arr, counts)
    r_rep = np.repeat(r_arr, counts)
    starts_rep = np.repeat(np.cumsum(counts) - counts, counts)
    ns = np.repeat(n_lo, counts) + (np.arange(total) - starts_rep)
    centers = ns / m_rep
    lefts = np.clip(centers - r_rep, a, b)
    rights = np.clip(centers + r_rep, a, b)
    keep = rights > lefts
    lefts, rights, ns, m_rep = lefts[keep], rights[keep], ns[keep], m_rep[keep]
    ms = m_rep.astype(np.int64)

    order = np.argsort(lefts, kind="stable")
    lefts, rights, ns, ms = lefts[order], rights[order], ns[order], ms[order]
    running = np.maximum.accumulate(rights)
    new_group = np.ones(lefts.size, dtype=bool)
    new_group[1:] = lefts[1:] > running[:-1]
    groups = np.cumsum(new_group) - 1
    starts = np.nonzero(new_group)[0]
    merged_left = lefts[starts]
    merged_right = np.maximum.reduceat(rights, starts)
    by_m = np.lexsort((ms, groups))
    first_per_group = by_m[np.unique(groups[by_m], return_index=True)[1]]
    return merged_left, merged_right, ns[first_per_group], ms[first_per_group]


def excluded_intervals(d: DiophantineClass, window: tuple[float, float],
                       m_cap: int | None = None) -> list[ExcludedInterval]:
    """Merged open intervals excluded from the window by denominators m <= m_cap.

    Each merged interval carries the (n, m) of its lowest-denominator ball.
    The enumeration cost is ~ width * m_cap^2 / 2 + m_cap; pass a narrower
    window or an explicit m_cap for deep scans.
    """
    a, b = float(window[0]), float(window[1])
    if b <= a:
        raise ValueError("window must have positive length")
    m_top = d.m_max if m_cap is None else min(m_cap, d.m_max)
    lefts, rights, ns, ms = _merged_arrays(d, a, b, m_top)
    return [ExcludedInterval(float(l), float(r), int(n), int(m))
            for l, r, n, m in zip(lefts, rights, ns, ms)]


def _cover_reach(d: DiophantineClass, y: float):
    """(min left, max right) over balls strictly covering y, or None if uncovered."""
    m = np.arange(1, d.m_max + 1, dtype=float)
    n = np.rint(y * m)
    centers = n / m
    r = d.radius(m)
    mask = np.abs(y - centers) < r
    if not mask.any():
        return None
    return float(np.min(centers[mask] - r[mask])), float(np.max(centers[mask] + r[mask]))


def distance_to_AMR(d: DiophantineClass, x: float) -> float:
    """dist(x, real domain), using exclusions certified up to m_max.

    Walks outward over overlapping excluded balls; the returned endpoints are
    uncovered by every scanned denominator, so the distance is exact up to the
    finite-certification caveat (deeper m could only increase it).
    """
    x = float(x)
    if _cover_reach(d, x) is None:
        return 0.0
    right = x
    for _ in range(10_000):
        reach = _cover_reach(d, right)
        if reach is None or reach[1] <= right:
            break
        right = reach[1]
    left = x
    for _ in range(10_000):
        reach = _cover_reach(d, left)
        if reach is None or reach[0] >= left:
            break
        left = reach[0]
    return min(right - x, x - left)


def check_AMC(d: DiophantineClass, omega: complex) -> MembershipCertificate:
    """Complex-domain membership: dist(Re omega, real domain) <= |Im omega|.

    For real omega this reduces exactly to the real check.  The margin is
    |Im omega| - dist; on exclusion the witness is the ball covering Re omega.
    """
    omega = complex(omega)
    if omega.imag == 0.0:
        return check_AMR(d, omega.real)
    dist = distance_to_AMR(d, omega.real)
    margin = abs(omega.imag) - dist
    if margin >= 0.0:
        return MembershipCertificate(member=True, m_checked=d.m_max, margin=margin,
                                     note=f"dist(Re omega, real domain) = {dist:.3e}")
    inner = check_AMR(d, omega.real)
    return MembershipCertificate(member=False, m_checked=d.m_max, margin=margin,
                                 witness=inner.witness,
                                 note=f"dist(Re omega, real domain) = {dist:.3e}")


def totients(n: int) -> np.ndarray:
    """Euler phi(1..n) by sieve; index 0 unused."""
    phi = np.arange(n + 1)
    for p in range(2, n + 1):
        if phi[p] == p:  # p prime
            phi[p::p] -= phi[p::p] // p
    return phi


class MeasureReport(NamedTuple):
    excluded_length: float
    bound: float
    exact_length: float
    tail_bound: float
    m_merged: int
    m_max: int


def measure_bound_check(d: DiophantineClass, window: tuple[float, float] = (0.0, 1.0),
                        merge_cap: int = 3000) -> MeasureReport:
    """Excluded length of a unit window versus the bound 2 zeta(1+tau) / M.

    The length is the exact merged-interval union for m <= merge_cap plus,
    for merge_cap < m <= m_max, the per-level upper bound 2 phi(m) r_m
    (reduced fractions only; non-reduced balls sit inside lower-level ones).
    The reported value is therefore an upper estimate of the m_max-truncated
    excluded length, monotone nondecreasing in m_max.
    """
    a, b = float(window[0]), float(window[1])
    if abs((b - a) - 1.0) > 1e-12:
        raise ValueError("measure_bound_check is defined for windows of length 1")
    m_exact = min(d.m_max, merge_cap)
    lefts, rights, _, _ = _merged_arrays(d, a, b, m_exact)
    exact_length = float(np.sum(rights - lefts))
    tail = 0.0
    if d.m_max > m_exact:
        phi = totients(d.m_max)
        m = np.arange(m_exact + 1, d.m_max + 1)
        tail = float(np.sum(2.0 * phi[m] * d.radius(m)))
    bound = 2.0 * d.zeta_value / d.M
    return MeasureReport(
        excluded_length=exact_length + tail,
        bound=bound,
        exact_length=exact_length,
        tail_bound=tail,
        m_merged=m_exact,
        m_max=d.m_max,
    )


def map_E(omega: complex) -> complex:
    """E(omega) = e^{2 pi i omega}, sending the frequency strip to the disk picture."""
    return complex(np.exp(2j * np.pi * complex(omega)))
