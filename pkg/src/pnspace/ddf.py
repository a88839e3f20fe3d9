"""Distance distribution functions as exact left-continuous step functions.

Every variant stores "value after the jump": the value attached to an
abscissa applies strictly to its right, so F(0) = 0 always and eps_a(a) = 0.
The two parametric families have a jump at every integer; all operations
over them take an explicit horizon and are exact on [0, horizon].
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._rational import fmt, is_inf, midpoints, q
from .report import Verdict
from .tnorm import TNorm, by_name

ZERO = Fraction(0)
ONE = Fraction(1)


class DDFDomainError(ValueError):
    pass


def _check_arg(x):
    if is_inf(x):
        return x
    x = q(x)
    if x < 0:
        raise DDFDomainError(f"d.d.f. evaluated at negative abscissa {fmt(x)}")
    return x


class DDF:
    """Common surface. Subclasses implement ``_value`` and ``steps``."""

    finite = True

    def value(self, x) -> Fraction:
        x = _check_arg(x)
        if is_inf(x):
            return ONE
        if x == 0:
            return ZERO
        return self._value(x)

    __call__ = value

    def _value(self, x: Fraction) -> Fraction:
        raise NotImplementedError

    def steps(self, horizon) -> tuple:
        """Jumps ``(abscissa, value_after)`` with abscissa in [0, horizon], in order."""
        raise NotImplementedError

    def jumps(self, horizon) -> tuple:
        return tuple(x for x, _ in self.steps(horizon))

    def to_record(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class UnitStep(DDF):
    """eps_a: 0 on [0, a], 1 beyond."""

    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", q(self.a))
        if self.a < 0:
            raise DDFDomainError("unit step abscissa must be nonnegative")

    def _value(self, x):
        return ZERO if x <= self.a else ONE

    def steps(self, horizon):
        return ((self.a, ONE),) if self.a <= q(horizon) else ()

    def to_record(self):
        return {"variant": "unit_step", "a": fmt(self.a)}


EPS0 = UnitStep(ZERO)


@dataclass(frozen=True)
class FiniteStep(DDF):
    """Finitely many jumps; beyond the last jump the last value persists."""

    points: tuple

    def __post_init__(self):
        cleaned = tuple((q(x), q(v)) for x, v in self.points)
        prev_x, prev_v = None, ZERO
        for x, v in cleaned:
            if x < 0:
                raise DDFDomainError(f"negative jump abscissa {fmt(x)}")
            if prev_x is not None and x <= prev_x:
                raise DDFDomainError("jump abscissae must be strictly increasing")
            if not (0 <= v <= 1):
                raise DDFDomainError(f"value {fmt(v)} outside [0,1]")
            if v < prev_v:
                raise DDFDomainError(f"values must be nondecreasing (drop at {fmt(x)})")
            prev_x, prev_v = x, v
        object.__setattr__(self, "points", cleaned)
        object.__setattr__(self, "_xs", tuple(x for x, _ in cleaned))

    def _value(self, x):
        idx = bisect_left(self._xs, x) - 1
        return ZERO if idx < 0 else self.points[idx][1]

    def steps(self, horizon):
        horizon = q(horizon)
        return tuple(s for s in self.points if s[0] <= horizon)

    def to_record(self):
        return {"variant": "finite_step", "jumps": [[fmt(x), fmt(v)] for x, v in self.points]}


@lru_cache(maxsize=50_000)
def _family_steps(F, horizon) -> tuple:
    """Jump layout shared by both families: 0, 1/(n+1) (n >= 1), then every integer."""
    n, values = F.n, F.branch_value
    horizon = q(horizon)
    out = [(ZERO, values(0))]
    if n >= 1:
        out.append((Fraction(1, n + 1), values(1)))
    m = 1
    while m <= horizon:
        out.append((Fraction(m), values(m + 1)))
        m += 1
    return tuple(s for s in out if s[0] <= horizon)


def _branch(n: int, x: Fraction) -> int:
    """0 on (0, 1/(n+1)], 1 on (1/(n+1), 1], m+1 on (m, m+1] for m >= 1."""
    if x <= Fraction(1, n + 1):
        return 0
    if x <= 1:
        return 1
    return math.ceil(x)


@dataclass(frozen=True)
class HohleFamily(DDF):
    """F_n: 1 - 1/(2^k N0 (n+1)) on branch k (see ``_branch``)."""

    n: int
    N0: int

    finite = False

    def __post_init__(self):
        if self.n < 0 or self.N0 < 2:
            raise DDFDomainError("HohleFamily needs n >= 0 and N0 >= 2")

    @property
    def K(self) -> int:
        return self.N0 * (self.n + 1)

    def branch_value(self, k: int) -> Fraction:
        return 1 - Fraction(1, 2 ** k * self.K)

    def _value(self, x):
        return self.branch_value(_branch(self.n, x))

    def steps(self, horizon):
        return _family_steps(self, q(horizon))

    def to_record(self):
        return {"variant": "hohle", "n": self.n, "N0": self.N0}


@lru_cache(maxsize=None)
def _t_power(T: TNorm, z: Fraction, r: int) -> Fraction:
    if r == 1:
        return T(z, z)
    prev = _t_power(T, z, r - 1)
    return T(prev, prev)


@dataclass(frozen=True)
class ArchFamily(DDF):
    """Archimedean-variant F_n with z = 1/(N0 (n+1)): 1 - z, then 1 - T^k(z, z) on branch k."""

    n: int
    N0: int
    tnorm: TNorm

    finite = False

    def __post_init__(self):
        if self.n < 0 or self.N0 < 2:
            raise DDFDomainError("ArchFamily needs n >= 0 and N0 >= 2")

    @property
    def z(self) -> Fraction:
        return Fraction(1, self.N0 * (self.n + 1))

    def deficit(self, k: int) -> Fraction:
        """1 - value on branch k."""
        return self.z if k == 0 else _t_power(self.tnorm, self.z, k)

    def branch_value(self, k: int) -> Fraction:
        return 1 - self.deficit(k)

    def _value(self, x):
        return self.branch_value(_branch(self.n, x))

    def steps(self, horizon):
        return _family_steps(self, q(horizon))

    def to_record(self):
        return {"variant": "archimedean", "n": self.n, "N0": self.N0, "tnorm": self.tnorm.name}


def from_record(record: dict, tnorm_resolver=by_name) -> DDF:
    kind = record.get("variant")
    if kind == "unit_step":
        return UnitStep(q(record["a"]))
    if kind == "finite_step":
        return FiniteStep(tuple((q(x), q(v)) for x, v in record["jumps"]))
    if kind == "hohle":
        return HohleFamily(int(record["n"]), int(record["N0"]))
    if kind == "archimedean":
        return ArchFamily(int(record["n"]), int(record["N0"]), tnorm_resolver(record["tnorm"]))
    raise ValueError(f"unknown d.d.f. variant {kind!r}")


def evaluate(F: DDF, x) -> Fraction:
    return F.value(x)


def probe_points(horizon, *fns: DDF) -> list:
    """Jump abscissae of all fns in [0, horizon], midpoints between them, and horizon.

    Both sides of any comparison are constant between consecutive jumps, so
    checking these points is exact on [0, horizon].
    """
    horizon = q(horizon)
    pts = {ZERO, horizon}
    for F in fns:
        pts.update(F.jumps(horizon))
    pts = sorted(pts)
    return sorted(set(pts) | set(midpoints(pts)))


@lru_cache(maxsize=200_000)
def pointwise_leq(F: DDF, G: DDF, horizon) -> Verdict:
    """F <= G on [0, horizon]; the witness is an abscissa where F > G."""
    horizon = q(horizon)
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    for x in probe_points(horizon, F, G):
        a, b = F.value(x), G.value(x)
        if a > b:
            return Verdict(False, {"x": fmt(x), "F": fmt(a), "G": fmt(b)})
    return Verdict(True, None)


def pointwise_equal(F: DDF, G: DDF, horizon) -> Verdict:
    if F == G:
        return Verdict(True, None)
    for x in probe_points(horizon, F, G):
        a, b = F.value(x), G.value(x)
        if a != b:
            return Verdict(False, {"x": fmt(x), "F": fmt(a), "G": fmt(b)})
    return Verdict(True, None)


# FiniteStep / UnitStep accept any horizon; this just means "all jumps"
INF_HORIZON = Fraction(10 ** 30)


def equal_everywhere(F: DDF, G: DDF) -> bool:
    """Exact equality on all of [0, inf), decidable when both have finitely many jumps."""
    if F == G:
        return True
    if not (F.finite and G.finite):
        return False
    last = max([ONE] + [x for x, _ in F.steps(INF_HORIZON)] + [x for x, _ in G.steps(INF_HORIZON)])
    return bool(pointwise_equal(F, G, last + 1))


def is_eps0(F: DDF) -> bool:
    steps = F.steps(ONE)
    return bool(steps) and steps[0] == (ZERO, ONE)


def audit(F: DDF, horizon) -> Verdict:
    """Exact d.d.f. sanity on [0, horizon]: zero at zero, in [0,1], nondecreasing,
    and left-continuous at every jump (value at the abscissa is the old value)."""
    if F.value(ZERO) != 0:
        return Verdict(False, {"x": "0", "value": fmt(F.value(ZERO))})
    prev = ZERO
    for x in probe_points(horizon, F):
        v = F.value(x)
        if not (0 <= v <= 1) or v < prev:
            return Verdict(False, {"x": fmt(x), "value": fmt(v), "previous": fmt(prev)})
        prev = v
    before = ZERO
    for x, after in F.steps(horizon):
        if x > 0 and F.value(x) != before:
            return Verdict(False, {"x": fmt(x), "reason": "not left-continuous"})
        before = after
    return Verdict(True, None)


@lru_cache(maxsize=200_000)
def levy_to_eps0(F: DDF) -> Fraction:
    """inf{t > 0 : F(t) > 1 - t}, the modified Levy distance from eps_0.

    On a plateau (a, b] of value v the condition reads t > max(a, 1 - v), and
    every t > 1 qualifies, so the answer is the least such lower end (<= 1).
    """
    best = ONE
    steps = F.steps(ONE)
    starts = [ZERO] + [x for x, _ in steps]
    vals = [ZERO] + [v for _, v in steps]
    ends = [x for x, _ in steps] + [None]
    if steps and steps[0][0] == 0:
        starts, vals, ends = starts[1:], vals[1:], ends[1:]
    for a, v, b in zip(starts, vals, ends):
        lo = max(a, 1 - v)
        if b is None or lo < b:
            best = min(best, lo)
    return best


def _levy_ok(F: DDF, G: DDF, h: Fraction) -> bool:
    """F(x) <= G(x+h) + h and G(x) <= F(x+h) + h for all x in (0, 1/h)."""
    top = 1 / h
    cuts = {ZERO, top}
    for D in (F, G):
        for x in D.jumps(top + h):
            for c in (x, x - h):
                if 0 < c < top:
                    cuts.add(c)
    cuts = sorted(cuts)
    probes = [c for c in cuts if 0 < c < top] + midpoints(cuts)
    for x in probes:
        if F.value(x) > G.value(x + h) + h or G.value(x) > F.value(x + h) + h:
            return False
    return True


def levy_distance(F: DDF, G: DDF, resolution) -> Fraction:
    """Modified Levy distance, bisected over h to within ``resolution``.

    The per-h test is exact; returns the smallest qualifying h found (an upper
    bound within resolution of the infimum), or 0 when F and G coincide.
    """
    resolution = q(resolution)
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    if equal_everywhere(F, G):
        return ZERO
    lo, hi = ZERO, ONE
    while hi - lo > resolution:
        mid = (lo + hi) / 2
        if _levy_ok(F, G, mid):
            hi = mid
        else:
            lo = mid
    return hi
