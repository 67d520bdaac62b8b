"""Dynamics of birational maps: orbits, periodicity, periodic points,
leaf itineraries, and closed-form solution checks.

Exact mode iterates with big rationals and makes exact claims; float mode
uses arbitrary-precision floats (default 64 significant decimal digits)
and reports tolerances.  Global periodicity is certified symbolically —
a sampled screen proposes the candidate period, and the certificate is
the normal-form identity f^(p) = id.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import mpmath as mp

from .maps import BirationalMap, MonomialMap, random_positive_point, rng_substream

__all__ = [
    "DynamicsError",
    "DEFAULT_PRECISION",
    "Orbit",
    "PeriodReport",
    "PeriodicPoint",
    "LeafItinerary",
    "ScanReport",
    "ClosedFormReport",
    "iterate_orbit",
    "orbit_sequence",
    "detect_global_periodicity",
    "find_periodic_points",
    "leaf_itinerary",
    "first_integral_check",
    "no_periodic_points_scan",
    "verify_closed_form",
    "somos5_constrained_start",
    "plastic_root",
    "golden_ratio",
]

DEFAULT_PRECISION = 64


class DynamicsError(RuntimeError):
    """Orbit iteration or root finding failed; message records the step."""


# ---------------------------------------------------------------------------
# Orbits


@dataclass(frozen=True)
class Orbit:
    """points[0] = start; points[k+1] = map(points[k])."""

    map: BirationalMap
    start: tuple
    points: tuple
    mode: str
    precision: int | None = None

    def __len__(self) -> int:
        return len(self.points)


def iterate_orbit(
    f: BirationalMap,
    x0,
    n: int,
    mode: str = "exact",
    precision: int = DEFAULT_PRECISION,
) -> Orbit:
    """Iterate f for n steps from x0.

    Exact mode keeps rational coordinates; float mode evaluates with
    `precision` significant decimal digits.  A vanishing denominator
    raises DynamicsError naming the failing step.
    """
    if f.dim_out != f.dim_in:
        raise DynamicsError("orbits require a self-map")
    if mode == "exact":
        current = tuple(Fraction(v) for v in x0)
        points = [current]
        for step in range(n):
            try:
                current = f.evaluate(current)
            except ZeroDivisionError as exc:
                raise DynamicsError(f"denominator vanished at step {step + 1}") from exc
            points.append(current)
        return Orbit(f, points[0], tuple(points), "exact")
    if mode == "float":
        with mp.workdps(precision):
            current = tuple(
                mp.mpf(v.numerator) / v.denominator
                if isinstance(v, Fraction)
                else mp.mpf(v)
                for v in x0
            )
            points = [current]
            for step in range(n):
                try:
                    current = f.evaluate_mp(current)
                except ZeroDivisionError as exc:
                    raise DynamicsError(
                        f"denominator vanished at step {step + 1}"
                    ) from exc
                points.append(tuple(current))
        return Orbit(f, points[0], tuple(points), "float", precision)
    raise ValueError(f"unknown mode {mode!r}")


def orbit_sequence(orbit: Orbit) -> list:
    """The scalar sequence of a shift-like orbit.

    For a map whose first N-1 components shift the window (as cluster
    maps of 1-periodic quivers do), the orbit encodes the sequence
    x_1, x_2, ...: the full first window followed by the last coordinate
    of each subsequent point.
    """
    seq = list(orbit.points[0])
    for p in orbit.points[1:]:
        seq.append(p[-1])
    return seq


# ---------------------------------------------------------------------------
# Global periodicity


@dataclass(frozen=True)
class PeriodReport:
    """kind "global": f^(period) = id certified symbolically.
    kind "none": no global period up to p_max (sampled screen, or a
    candidate that failed certification — see note)."""

    kind: str
    period: int | None
    p_max: int
    certificate: str
    samples: int
    note: str = ""

    @property
    def is_periodic(self) -> bool:
        return self.kind == "global"


def detect_global_periodicity(
    f: BirationalMap,
    p_max: int = 12,
    samples: int = 25,
    seed: int = 0,
) -> PeriodReport:
    """Certified minimal global period up to p_max, or a negative report.

    Random orbits propose the candidate period as the least common
    multiple of their first-return times; the candidate is certified by
    composing f with itself stepwise and checking f^(p) = id in normal
    form.  Minimality is automatic: any global period is a multiple of
    every observed first-return time.
    """
    n = f.dim_in
    if f.dim_out != n:
        raise DynamicsError("global periodicity requires a self-map")
    candidate = 1
    for i in range(samples):
        rng = rng_substream(seed, i)
        x0 = random_positive_point(n, rng)
        try:
            orbit = iterate_orbit(f, x0, p_max, mode="exact")
        except DynamicsError:
            return PeriodReport(
                "none", None, p_max, "sampled", samples, "an orbit left the domain"
            )
        first_return = None
        for k in range(1, p_max + 1):
            if orbit.points[k] == orbit.points[0]:
                first_return = k
                break
        if first_return is None:
            return PeriodReport("none", None, p_max, "sampled", samples)
        candidate = lcm(candidate, first_return)
        if candidate > p_max:
            return PeriodReport("none", None, p_max, "sampled", samples)
    power = f.iterate(candidate)
    if power.is_identity():
        return PeriodReport("global", candidate, p_max, "symbolic", samples)
    return PeriodReport(
        "none",
        None,
        p_max,
        "sampled",
        samples,
        f"sampled candidate {candidate} failed the symbolic identity check",
    )


def first_integral_check(f: BirationalMap, pi: MonomialMap, p: int) -> bool:
    """Symbolic check that pi o f^(p) = pi.

    True exactly when every component of pi is invariant under the p-th
    iterate, i.e. pi is a vector-valued first integral of f^(p).  The
    composition proceeds one step at a time so intermediate expressions
    stay in reduced normal form.
    """
    if pi.dim_in != f.dim_in or f.dim_out != f.dim_in:
        raise DynamicsError("dimension mismatch in first-integral check")
    comps = list(pi.components())
    f_comps = list(f.components)
    for _ in range(p):
        comps = [c.compose(f_comps) for c in comps]
    return comps == list(pi.components())


# ---------------------------------------------------------------------------
# Periodic points (numeric, low dimension)


@dataclass(frozen=True)
class PeriodicPoint:
    """Numerically located solution of f^(p)(x) = x with minimal period p."""

    point: tuple
    residual: object
    period: int
    precision: int


def _divisors(p: int) -> list[int]:
    return [d for d in range(1, p) if p % d == 0]


def _newton_solve(g: BirationalMap, start, tol, max_iter: int = 120):
    """Damped Newton for g(x) = x; returns (point, residual) or None."""
    n = g.dim_in
    x = [mp.mpf(v) for v in start]

    def residual_at(vec):
        img = g.evaluate_mp(vec)
        diff = [img[i] - vec[i] for i in range(n)]
        return diff, max(abs(d) for d in diff)

    try:
        fvec, res = residual_at(x)
    except (ZeroDivisionError, ValueError):
        return None
    for _ in range(max_iter):
        if res < tol:
            return tuple(x), res
        try:
            jac = g.jacobian_mp(x)
        except (ZeroDivisionError, ValueError):
            return None
        jm = mp.matrix(n, n)
        for i in range(n):
            for j in range(n):
                jm[i, j] = jac[i][j] - (1 if i == j else 0)
        rhs = mp.matrix([-fvec[i] for i in range(n)])
        try:
            step = mp.lu_solve(jm, rhs)
        except (ZeroDivisionError, ValueError):
            return None
        damping = mp.mpf(1)
        improved = False
        for _ in range(40):
            trial = [x[i] + damping * step[i] for i in range(n)]
            if all(v > 0 for v in trial):
                try:
                    tvec, tres = residual_at(trial)
                except (ZeroDivisionError, ValueError):
                    tvec = None
                if tvec is not None and (tres < res or res == 0):
                    x, fvec, res = trial, tvec, tres
                    improved = True
                    break
            damping /= 2
        if not improved:
            return None
    return (tuple(x), res) if res < tol else None


def find_periodic_points(
    f: BirationalMap,
    p: int,
    box: tuple = (Fraction(1, 2), Fraction(3)),
    precision: int = DEFAULT_PRECISION,
    grid: int = 5,
    tol=None,
) -> list[PeriodicPoint]:
    """Positive solutions of f^(p)(x) = x with minimal period exactly p.

    Damped Newton iteration from a grid of starts over the box; roots
    whose period properly divides p are filtered out; duplicates merged.
    Desk-scale only: dimension at most 3.
    """
    n = f.dim_in
    if n > 3:
        raise DynamicsError("periodic-point search is supported for dimension <= 3")
    if f.dim_out != n:
        raise DynamicsError("periodic points require a self-map")
    with mp.workdps(precision):
        if tol is None:
            tol = mp.mpf(10) ** (-(precision - 24))
        g = f.iterate(p)
        lo = mp.mpf(box[0].numerator) / box[0].denominator if isinstance(box[0], Fraction) else mp.mpf(box[0])
        hi = mp.mpf(box[1].numerator) / box[1].denominator if isinstance(box[1], Fraction) else mp.mpf(box[1])
        ticks = [lo + (hi - lo) * k / (grid - 1) for k in range(grid)] if grid > 1 else [(lo + hi) / 2]
        starts = [[t] for t in ticks]
        for _ in range(n - 1):
            starts = [s + [t] for s in starts for t in ticks]
        divisor_maps = [f.iterate(d) for d in _divisors(p)]
        found: list[PeriodicPoint] = []
        merge_tol = mp.mpf(10) ** (-precision // 2)
        for s in starts:
            result = _newton_solve(g, s, tol)
            if result is None:
                continue
            point, res = result
            if any(v <= 0 for v in point):
                continue
            minimal = True
            for dmap in divisor_maps:
                try:
                    image = dmap.evaluate_mp(point)
                except (ZeroDivisionError, ValueError):
                    continue
                if max(abs(image[i] - point[i]) for i in range(n)) < mp.sqrt(tol):
                    minimal = False
                    break
            if not minimal:
                continue
            duplicate = False
            for other in found:
                if max(abs(point[i] - other.point[i]) for i in range(n)) < merge_tol:
                    duplicate = True
                    break
            if not duplicate:
                found.append(PeriodicPoint(point, res, p, precision))
        found.sort(key=lambda pp: tuple(float(v) for v in pp.point))
        return found


# ---------------------------------------------------------------------------
# Leaf itineraries


@dataclass(frozen=True)
class LeafItinerary:
    """Per-step leaf labels of an orbit under several submersions.

    labels[s][k] is the label tuple of orbit point k under submersion s;
    periods[s] is the minimal label-sequence period observed within the
    orbit (None when the sequence never repeats with the data at hand).
    """

    orbit: Orbit
    names: tuple[str, ...]
    labels: tuple
    periods: tuple

    def summary(self) -> str:
        lines = []
        for name, period in zip(self.names, self.periods):
            if period == 1:
                lines.append(f"{name}: orbit stays on a single leaf")
            elif period is not None:
                lines.append(f"{name}: orbit circulates between {period} leaves")
            else:
                lines.append(f"{name}: no leaf-cycle observed within the orbit")
        return "\n".join(lines)


def _label_period(labels, equal) -> int | None:
    count = len(labels)
    for d in range(1, count):
        if all(equal(labels[k], labels[k + d]) for k in range(count - d)):
            return d
    return None


def leaf_itinerary(
    phi: BirationalMap,
    submersions,
    x0,
    n: int,
    mode: str = "exact",
    precision: int = DEFAULT_PRECISION,
    names=None,
    float_tol=None,
) -> LeafItinerary:
    """Labels pi(orbit point) per step for each submersion, with cycle lengths.

    In exact mode label equality is exact; in float mode two labels are
    equal when all coordinates agree within float_tol (default
    10^-(precision/2)).
    """
    orbit = iterate_orbit(phi, x0, n, mode, precision)
    if names is None:
        names = [f"{s.kind}-{s.dim_out}d" for s in submersions]
    all_labels = []
    periods = []
    if mode == "float":
        with mp.workdps(precision):
            tol = float_tol if float_tol is not None else mp.mpf(10) ** (-precision // 2)
            for s in submersions:
                labels = tuple(tuple(s.evaluate_mp(p)) for p in orbit.points)
                equal = lambda a, b, _t=tol: all(abs(u - v) < _t for u, v in zip(a, b))
                all_labels.append(labels)
                periods.append(_label_period(labels, equal))
    else:
        for s in submersions:
            labels = tuple(s.evaluate(p) for p in orbit.points)
            all_labels.append(labels)
            periods.append(_label_period(labels, lambda a, b: a == b))
    return LeafItinerary(orbit, tuple(names), tuple(all_labels), tuple(periods))


# ---------------------------------------------------------------------------
# Negative evidence scan


@dataclass(frozen=True)
class ScanReport:
    """Outcome of a sampled periodic-point scan; evidence, not proof."""

    period_found: int | None
    witness: tuple | None
    p_max: int
    samples: int
    seed: int
    monotone_growth: bool
    growth_samples: int
    note: str = (
        "sampled evidence only: absence of periodic points among random "
        "starts does not prove there are none"
    )


def no_periodic_points_scan(
    f: BirationalMap,
    p_max: int = 20,
    samples: int = 25,
    seed: int = 0,
    growth_window: int = 10,
    growth_steps: int = 20,
) -> ScanReport:
    """Exact scan for periodic points along random orbits, plus growth evidence.

    Each sampled orbit is checked for an exact return to its start within
    p_max steps (a return reports the period and witness).  The orbit is
    continued for growth_steps further steps to look past the transient;
    growth evidence holds when the last coordinate strictly increases
    over the final growth_window steps of every sampled orbit.
    """
    n = f.dim_in
    growth_count = 0
    for i in range(samples):
        rng = rng_substream(seed, i)
        x0 = random_positive_point(n, rng)
        orbit = iterate_orbit(f, x0, p_max + growth_steps, mode="exact")
        for k in range(1, p_max + 1):
            if orbit.points[k] == orbit.points[0]:
                return ScanReport(k, x0, p_max, samples, seed, False, 0,
                                  note="periodic point found by the scan")
        tail = [pt[-1] for pt in orbit.points[-(growth_window + 1):]]
        if all(b > a for a, b in zip(tail, tail[1:])):
            growth_count += 1
    return ScanReport(
        None, None, p_max, samples, seed, growth_count == samples, growth_count
    )


# ---------------------------------------------------------------------------
# Somos-5 closed forms


def plastic_root(precision: int = DEFAULT_PRECISION):
    """The real root of x^3 = 1 + x (about 1.3247), at the given precision."""
    with mp.workdps(precision):
        return mp.findroot(lambda t: t**3 - t - 1, mp.mpf("1.3"))


def golden_ratio(precision: int = DEFAULT_PRECISION):
    """(1 + sqrt 5)/2 at the given precision."""
    with mp.workdps(precision):
        return (1 + mp.sqrt(5)) / 2


def somos5_constrained_start(x3, x4, lam, r, precision: int = DEFAULT_PRECISION):
    """Initial data (x1..x5) satisfying x1 x4 = r x2 x3, x2 x5 = r x3 x4,
    x3 x5 = lam x4^2 — the constraints of the singular Somos-5 solutions.

    The constrained set is carried into itself by the recurrence exactly
    when r is the plastic root (r^3 = r + 1); for other r the constraints
    hold at the start but are destroyed by the first step.
    """
    with mp.workdps(precision):
        x3 = mp.mpf(x3)
        x4 = mp.mpf(x4)
        lam = mp.mpf(lam)
        r = mp.mpf(r)
        x5 = lam * x4**2 / x3
        x2 = r * x3 * x4 / x5
        x1 = r * x2 * x3 / x4
        return (x1, x2, x3, x4, x5)


@dataclass(frozen=True)
class ClosedFormReport:
    """Comparison of an orbit against a closed-form solution family."""

    family: str
    ok: bool
    n_checked: int
    max_rel_error: object
    tol: object


def verify_closed_form(
    orbit: Orbit,
    family: str,
    x3,
    x4,
    lam,
    r,
    n_max: int = 20,
    tol=None,
) -> ClosedFormReport:
    """Check orbit terms of the Somos-5 recurrence against a closed form.

    Valid for orbits started on the constrained set of
    ``somos5_constrained_start`` with r the plastic root (r^3 = r + 1);
    lam is the free leaf parameter.

    family "principal" (lam = sqrt r):
        x_{n+5} = r^((n+2)(n+1)/4) x4^(n+2) / x3^(n+1),  n >= 1.
    family "general" (lam != sqrt r):
        x_{2n+4} = lam^n r^(n^2) x4^(2n+1) / x3^(2n),
        x_{2n+5} = lam^(n+1) r^(n(n+1)) x4^(2n+2) / x3^(2n+1),  n >= 1.

    The orbit must be in float mode and long enough to cover the terms.
    """
    if orbit.mode != "float":
        raise DynamicsError("closed-form verification expects a float-mode orbit")
    precision = orbit.precision or DEFAULT_PRECISION
    with mp.workdps(precision):
        if tol is None:
            tol = mp.mpf(10) ** (-(precision - 24))
        x3 = mp.mpf(x3)
        x4 = mp.mpf(x4)
        lam = mp.mpf(lam)
        r = mp.mpf(r)
        seq = orbit_sequence(orbit)

        def term(index_1based):
            if index_1based > len(seq):
                raise DynamicsError(
                    f"orbit too short: need term {index_1based}, have {len(seq)}"
                )
            return seq[index_1based - 1]

        max_err = mp.mpf(0)
        checked = 0
        if family == "principal":
            for n in range(1, n_max + 1):
                predicted = r ** (mp.mpf((n + 2) * (n + 1)) / 4) * x4 ** (n + 2) / x3 ** (n + 1)
                actual = term(n + 5)
                max_err = max(max_err, abs(predicted - actual) / abs(actual))
                checked += 1
        elif family == "general":
            for n in range(1, n_max + 1):
                even = lam**n * r ** (n * n) * x4 ** (2 * n + 1) / x3 ** (2 * n)
                odd = lam ** (n + 1) * r ** (n * (n + 1)) * x4 ** (2 * n + 2) / x3 ** (2 * n + 1)
                for predicted, idx in ((even, 2 * n + 4), (odd, 2 * n + 5)):
                    actual = term(idx)
                    max_err = max(max_err, abs(predicted - actual) / abs(actual))
                    checked += 1
        else:
            raise ValueError(f"unknown family {family!r}")
        return ClosedFormReport(family, max_err < tol, checked, max_err, tol)
