"""Vectors over Q^d, gauges, probabilistic norms and the PM/PN axiom checkers.

Sets are never enumerated: every axiom is checked at sampled instances and a
failing instance is reported with enough data to replay it by hand.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from ._rational import fmt, q
from .ddf import DDF, UnitStep, is_eps0, pointwise_equal, pointwise_leq, probe_points
from .report import FAIL, FINDING, CheckRecord, Tally
from .tnorm import Min, TNorm
from .triangle import TriangleFn

ZERO = Fraction(0)


@dataclass(frozen=True)
class Vector:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(q(c) for c in self.coords))

    @classmethod
    def of(cls, *coords) -> "Vector":
        return cls(tuple(coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Vector") -> "Vector":
        return Vector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Vector") -> "Vector":
        return Vector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Vector":
        return Vector(tuple(-a for a in self.coords))

    def scale(self, lam) -> "Vector":
        lam = q(lam)
        return Vector(tuple(lam * a for a in self.coords))

    __rmul__ = scale

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __iter__(self):
        return iter(self.coords)

    def show(self) -> list:
        return [fmt(c) for c in self.coords]


def theta(dim: int) -> Vector:
    return Vector((ZERO,) * dim)


def unit(dim: int, k: int, length=1) -> Vector:
    return Vector(tuple(q(length) if i == k else ZERO for i in range(dim)))


GAUGE_KINDS = ("l1", "linf", "l2sq", "table", "halfspace")


@dataclass(frozen=True)
class Gauge:
    """Nonnegative functional whose sublevel sets {gauge <= r} form a base.

    ``l2sq`` never materializes the (irrational) Euclidean norm: membership
    compares squared norms. ``table`` is a weighted sup-norm; a zero weight
    makes it a seminorm. ``halfspace`` is sup-norm plus the positive part of
    the first coordinate: positively but not absolutely homogeneous, so its
    balls are not symmetric.
    """

    kind: str
    weights: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in GAUGE_KINDS:
            raise ValueError(f"unknown gauge {self.kind!r}; known: {GAUGE_KINDS}")
        if self.kind == "table":
            if not self.weights:
                raise ValueError("table gauge needs weights")
            ws = tuple(q(w) for w in self.weights)
            if any(w < 0 for w in ws):
                raise ValueError("gauge weights must be nonnegative")
            object.__setattr__(self, "weights", ws)

    @property
    def name(self) -> str:
        return self.kind

    def value(self, p: Vector) -> Fraction:
        c = p.coords
        if self.kind == "l1":
            return sum((abs(a) for a in c), ZERO)
        if self.kind == "linf":
            return max((abs(a) for a in c), default=ZERO)
        if self.kind == "table":
            if len(self.weights) != len(c):
                raise ValueError("gauge weights do not match the dimension")
            return max((w * abs(a) for w, a in zip(self.weights, c)), default=ZERO)
        if self.kind == "halfspace":
            return max((abs(a) for a in c), default=ZERO) + max(c[0], ZERO)
        raise ValueError("l2sq gauge has no rational value; use within()")

    __call__ = value

    def within(self, p: Vector, r) -> bool:
        r = q(r)
        if self.kind == "l2sq":
            return sum((a * a for a in p.coords), ZERO) <= r * r
        return self.value(p) <= r

    def is_zero(self, p: Vector) -> bool:
        if self.kind == "l2sq":
            return p.is_zero()
        return self.value(p) == 0

    def unit_value(self, dim: int, k: int) -> Fraction:
        if self.kind == "l2sq":
            return Fraction(1)
        return self.value(unit(dim, k))


def l1(p: Vector) -> Fraction:
    return Gauge("l1").value(p)


def linf(p: Vector) -> Fraction:
    return Gauge("linf").value(p)


class ProbNorm:
    """Map from vectors to d.d.f.s, memoized per vector."""

    def __init__(self, name: str, rule: Callable[[Vector], DDF]) -> None:
        self.name = name
        self.rule = rule
        self._cache: dict = {}

    def __call__(self, p: Vector) -> DDF:
        try:
            return self._cache[p]
        except KeyError:
            value = self._cache[p] = self.rule(p)
            return value

    def __repr__(self) -> str:
        return f"ProbNorm({self.name!r})"


DEFAULT_LAMBDAS = tuple(Fraction(k, 20) for k in range(21))
DEFAULT_HORIZON = Fraction(5)
DEFAULT_XS = tuple(Fraction(k, 16) for k in range(16 * 5 + 1))


@dataclass
class PNSpaceSpec:
    """(S, nu, tau, tau_star) over Q^dim with its check grids.

    For a Menger space tau = tau_T and tau_star = tau_T*; the classical
    normed embedding uses tau_M for both.
    """

    nu: ProbNorm
    tau: TriangleFn
    tau_star: TriangleFn
    dim: int
    horizon: Fraction = DEFAULT_HORIZON
    lambda_grid: tuple = DEFAULT_LAMBDAS
    x_grid: tuple = DEFAULT_XS
    name: str = "pn"

    @classmethod
    def menger(cls, nu: ProbNorm, T: TNorm, dim: int, horizon=DEFAULT_HORIZON, **kw) -> "PNSpaceSpec":
        horizon = q(horizon)
        return cls(nu, TriangleFn(T, False, horizon), TriangleFn(T, True, horizon), dim, horizon, **kw)

    @property
    def tnorm(self) -> TNorm:
        return self.tau.tnorm

    def pm(self) -> "PMSpaceSpec":
        nu = self.nu
        return PMSpaceSpec(lambda p, r: nu(p - r), self.tau, self.horizon, name=self.name + ".pm")


@dataclass
class PMSpaceSpec:
    F: Callable[[Vector, Vector], DDF]
    tau: TriangleFn
    horizon: Fraction = DEFAULT_HORIZON
    name: str = "pm"


def sample_vectors(dim: int, count: int, seed: int, extras: Iterable[Vector] = ()) -> list:
    """Deterministic samples: theta, the unit vectors, ``extras``, then random
    vectors with coordinates in {-8..8} * 2^-k, k <= 5, up to ``count``."""
    rng = random.Random(seed)
    out: list = []
    seen: set = set()

    def push(v: Vector) -> None:
        if v not in seen and len(out) < count:
            seen.add(v)
            out.append(v)

    push(theta(dim))
    for k in range(dim):
        push(unit(dim, k))
    for v in extras:
        push(v)
    guard = 0
    while len(out) < count and guard < 100 * count:
        guard += 1
        push(Vector(tuple(Fraction(rng.randint(-8, 8), 2 ** rng.randint(0, 5)) for _ in range(dim))))
    return out


def sample_pairs(samples: Sequence[Vector]) -> list:
    return [(p, r) for i, p in enumerate(samples) for r in samples[i:]]


def sample_triples(samples: Sequence[Vector], count: int, seed: int) -> list:
    rng = random.Random(seed + 7919)
    return [tuple(rng.choice(samples) for _ in range(3)) for _ in range(count)]


@lru_cache(maxsize=100_000)
def _not_eps0_witness(F: DDF, horizon) -> Optional[Fraction]:
    for x in probe_points(horizon, F):
        if x > 0 and F.value(x) < 1:
            return x
    return None


def _finish(tally: Tally, start: float) -> CheckRecord:
    return tally.record(time.perf_counter() - start)


def check_N1(spec: PNSpaceSpec, samples: Sequence[Vector], check_id: str = "N1") -> CheckRecord:
    """nu_p = eps_0 iff p = theta."""
    zero = theta(spec.dim)
    if zero not in samples:
        raise ValueError("N1 check needs theta among the samples")
    t, start = Tally(check_id), time.perf_counter()
    for p in samples:
        F = spec.nu(p)
        if p == zero:
            if is_eps0(F):
                t.ok()
            else:
                t.bad({"p": p.show(), "nu_p": F.to_record(), "reason": "nu_theta is not eps_0"})
            continue
        x = _not_eps0_witness(F, spec.horizon)
        if x is not None:
            t.ok()
        else:
            t.bad({"p": p.show(), "nu_p": F.to_record(), "reason": "nu_p = eps_0 on [0, horizon] for p != theta"})
    return _finish(t, start)


def check_N2(spec: PNSpaceSpec, samples: Sequence[Vector], check_id: str = "N2") -> CheckRecord:
    """nu_{-p} = nu_p."""
    t, start = Tally(check_id), time.perf_counter()
    for p in samples:
        v = pointwise_equal(spec.nu(p), spec.nu(-p), spec.horizon)
        if v:
            t.ok()
        else:
            t.bad({"p": p.show(), "nu_p": spec.nu(p).to_record(), "nu_-p": spec.nu(-p).to_record(), **v.witness})
    return _finish(t, start)


def check_N3(spec: PNSpaceSpec, pairs: Sequence, check_id: str = "N3") -> CheckRecord:
    """nu_{p+q} >= tau(nu_p, nu_q) on [0, horizon]."""
    t, start = Tally(check_id), time.perf_counter()
    h = spec.horizon
    for p, r in pairs:
        conv = spec.tau.apply(spec.nu(p), spec.nu(r), h)
        v = pointwise_leq(conv, spec.nu(p + r), h)
        if v:
            t.ok()
        else:
            t.bad({"p": p.show(), "q": r.show(), "nu_p": spec.nu(p).to_record(),
                   "nu_q": spec.nu(r).to_record(), "nu_p+q": spec.nu(p + r).to_record(),
                   "x": v.witness["x"], "tau": v.witness["F"], "nu_p+q(x)": v.witness["G"]})
    return _finish(t, start)


def check_N4(spec: PNSpaceSpec, samples: Sequence[Vector], lambdas: Optional[Sequence] = None,
             check_id: str = "N4", on_violation: str = FAIL) -> CheckRecord:
    """nu_p <= tau_star(nu_{lam p}, nu_{(1-lam) p}) for lam in [0, 1]."""
    lambdas = tuple(q(l) for l in (lambdas if lambdas is not None else spec.lambda_grid))
    for must in (0, Fraction(1, 2), 1):
        if must not in lambdas:
            raise ValueError("N4 lambda grid must include 0, 1/2 and 1")
    if any(not (0 <= l <= 1) for l in lambdas):
        raise ValueError("N4 lambda grid must lie in [0, 1]")
    t, start = Tally(check_id, on_violation), time.perf_counter()
    h = spec.horizon
    for p in samples:
        Fp = spec.nu(p)
        for lam in lambdas:
            a, b = spec.nu(p.scale(lam)), spec.nu(p.scale(1 - lam))
            v = pointwise_leq(Fp, spec.tau_star.apply(a, b, h), h)
            if v:
                t.ok()
            else:
                t.bad({"p": p.show(), "lambda": fmt(lam), "nu_p": Fp.to_record(),
                       "nu_lam_p": a.to_record(), "nu_rest_p": b.to_record(),
                       "x": v.witness["x"], "nu_p(x)": v.witness["F"], "tau_star": v.witness["G"]})
    return _finish(t, start)


def check_M1_M2_M3(pm: PMSpaceSpec, samples: Sequence[Vector], triples: Sequence) -> list:
    """Identity of indiscernibles, symmetry and the tau-triangle inequality."""
    h = pm.horizon
    records = []
    t, start = Tally("M1"), time.perf_counter()
    for p in samples:
        if is_eps0(pm.F(p, p)):
            t.ok()
        else:
            t.bad({"p": p.show(), "q": p.show(), "reason": "F_pp is not eps_0"})
    for i, p in enumerate(samples):
        for r in samples[i + 1:]:
            if _not_eps0_witness(pm.F(p, r), h) is not None:
                t.ok()
            else:
                t.bad({"p": p.show(), "q": r.show(), "reason": "F_pq = eps_0 with p != q"})
    records.append(_finish(t, start))

    t, start = Tally("M2"), time.perf_counter()
    for i, p in enumerate(samples):
        for r in samples[i + 1:]:
            v = pointwise_equal(pm.F(p, r), pm.F(r, p), h)
            if v:
                t.ok()
            else:
                t.bad({"p": p.show(), "q": r.show(), **v.witness})
    records.append(_finish(t, start))

    t, start = Tally("M3"), time.perf_counter()
    for p, r, mid in triples:
        conv = pm.tau.apply(pm.F(p, mid), pm.F(mid, r), h)
        v = pointwise_leq(conv, pm.F(p, r), h)
        if v:
            t.ok()
        else:
            t.bad({"p": p.show(), "q": r.show(), "r": mid.show(), "x": v.witness["x"],
                   "tau(F_pr,F_rq)": v.witness["F"], "F_pq": v.witness["G"]})
    records.append(_finish(t, start))
    return records


def check_serstnev(spec: PNSpaceSpec, samples: Sequence[Vector], lambdas: Optional[Sequence] = None,
                   x_grid: Optional[Sequence] = None, expected: bool = True) -> list:
    """Scaling law nu_{lam p}(x) = nu_p(x/|lam|), the tau_M splitting identity
    nu_p = tau_M(nu_{lam p}, nu_{(1-lam) p}), and whether the two verdicts
    agree given N2. Violations are failures when ``expected`` else findings."""
    lambdas = tuple(q(l) for l in (lambdas if lambdas is not None else spec.lambda_grid))
    xs = tuple(q(x) for x in (x_grid if x_grid is not None else spec.x_grid))
    status = FAIL if expected else FINDING
    h = spec.horizon
    tau_m = TriangleFn(Min, False, h)
    records = []

    scale = Tally("serstnev.scaling", status)
    start = time.perf_counter()
    scalars = sorted({l for l in lambdas if l != 0} | {-l for l in lambdas if l != 0})
    for p in samples:
        Fp = spec.nu(p)
        for lam in scalars:
            Fl = spec.nu(p.scale(lam))
            bad = None
            for x in xs:
                a, b = Fl.value(x), Fp.value(x / abs(lam))
                if a != b:
                    bad = {"p": p.show(), "lambda": fmt(lam), "x": fmt(x),
                           "nu_lam_p(x)": fmt(a), "nu_p(x/|lam|)": fmt(b)}
                    break
            if bad:
                scale.bad(bad)
            else:
                scale.ok()
    records.append(_finish(scale, start))

    split = Tally("serstnev.tau_m_split", status)
    start = time.perf_counter()
    for p in samples:
        Fp = spec.nu(p)
        for lam in lambdas:
            conv = tau_m.apply(spec.nu(p.scale(lam)), spec.nu(p.scale(1 - lam)), h)
            v = pointwise_equal(Fp, conv, h)
            if v:
                split.ok()
            else:
                split.bad({"p": p.show(), "lambda": fmt(lam), "x": v.witness["x"],
                           "nu_p(x)": v.witness["F"], "tau_M(x)": v.witness["G"]})
    records.append(_finish(split, start))

    n2 = check_N2(spec, samples, check_id="serstnev.n2")
    agree = Tally("serstnev.equivalence", FINDING)
    lhs = scale.violations == 0
    rhs = split.violations == 0 and n2.status == "pass"
    agree.values = {"scaling": lhs, "n2_and_split": rhs}
    if lhs == rhs:
        agree.ok()
    else:
        agree.bad({"scaling_holds": lhs, "n2_and_split_hold": rhs,
                   "reason": "sampled verdicts disagree; sampling may be incomplete"})
    records.append(agree.record())
    return records


def embed_normed(norm: Callable[[Vector], Fraction], dim: int, name: str = "embedded", **kw) -> PNSpaceSpec:
    """nu_p = eps_{||p||} with tau_M on both sides."""

    def rule(p: Vector) -> DDF:
        value = q(norm(p))
        if value < 0:
            raise ValueError(f"norm returned negative value {fmt(value)} at {p.show()}")
        return UnitStep(value)

    horizon = q(kw.pop("horizon", DEFAULT_HORIZON))
    tau = TriangleFn(Min, False, horizon)
    return PNSpaceSpec(ProbNorm(name, rule), tau, tau, dim, horizon, name=name, **kw)


def embed_metric(d: Callable[[Vector, Vector], Fraction], horizon=DEFAULT_HORIZON, name: str = "metric") -> PMSpaceSpec:
    """F_{p,q} = eps_{d(p,q)} under tau_M."""

    def F(p: Vector, r: Vector) -> DDF:
        value = q(d(p, r))
        if value < 0:
            raise ValueError(f"metric returned negative value at {p.show()}, {r.show()}")
        return UnitStep(value)

    horizon = q(horizon)
    return PMSpaceSpec(F, TriangleFn(Min, False, horizon), horizon, name=name)
