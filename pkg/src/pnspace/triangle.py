"""Exact sup- and inf-convolutions of step d.d.f.s under a t-norm.

tau_T(F, G)(x) = sup {T(F(s), G(t)) : s + t = x}
tau_T*(F, G)(x) = inf {T*(F(s), G(t)) : s + t = x}

Only splits with s, t in [0, x] matter: a negative s gives F(s) = 0, which
contributes 0 to the sup and G(t) >= G(x) to the inf (already attained at s = 0).

On [0, x] F is a partition into plateaus {0}, (x_0, x_1], ..., and G(x - s)
is a partition of the same interval with the closed ends flipped. Every
plateau pair whose s-ranges meet contributes one candidate value; the two
partitions are swept in a single merge, so endpoint ownership (a jump's new
value applies only to the right of its abscissa) is decided by interval
closedness rather than by sampling.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from ._rational import fmt, q
from .ddf import DDF, EPS0, FiniteStep
from .report import Tally
from .tnorm import TNorm

ZERO = Fraction(0)


class NotLeftContinuous(ArithmeticError):
    """Convolution output could not be stored as a left-continuous step function."""


def _pieces(F: DDF, x: Fraction, steps: Optional[tuple] = None) -> list:
    """Ascending partition of [0, x]: (lo, lo_closed, hi, hi_closed, value).

    ``steps`` may be a precomputed ``F.steps(h)`` for some h >= x.
    """
    out = [(ZERO, True, ZERO, True, ZERO)]
    start, val = ZERO, ZERO
    for a, v in (steps if steps is not None else F.steps(x)):
        if a > x:
            break
        if a > start:
            out.append((start, False, a, True, val))
        start, val = a, v
    if x > start:
        out.append((start, False, x, True, val))
    return out


def _reflect(pieces: list, x: Fraction) -> list:
    return [(x - hi, hc, x - lo, lc, v) for lo, lc, hi, hc, v in reversed(pieces)]


def _meets(p, r) -> bool:
    lo1, lc1, hi1, hc1, _ = p
    lo2, lc2, hi2, hc2, _ = r
    if lo1 > lo2:
        lo, lc = lo1, lc1
    elif lo2 > lo1:
        lo, lc = lo2, lc2
    else:
        lo, lc = lo1, lc1 and lc2
    if hi1 < hi2:
        hi, hc = hi1, hc1
    elif hi2 < hi1:
        hi, hc = hi2, hc2
    else:
        hi, hc = hi1, hc1 and hc2
    return lo < hi or (lo == hi and lc and hc)


def plateau_pairs(F: DDF, G: DDF, x, f_steps=None, g_steps=None) -> set:
    """All value pairs (F(s), G(x - s)) realized for s in [0, x]."""
    x = q(x)
    if x < 0:
        raise ValueError("convolution abscissa must be nonnegative")
    A = _pieces(F, x, f_steps)
    B = _reflect(_pieces(G, x, g_steps), x)
    pairs = set()
    i = j = 0
    while i < len(A) and j < len(B):
        a, b = A[i], B[j]
        if _meets(a, b):
            pairs.add((a[4], b[4]))
        if a[2] < b[2]:
            i += 1
        elif b[2] < a[2]:
            j += 1
        elif a[3] and not b[3]:
            j += 1
        elif b[3] and not a[3]:
            i += 1
        else:
            i += 1
            j += 1
    return pairs


def tau_eval(T: TNorm, F: DDF, G: DDF, x) -> Fraction:
    return max(T(a, b) for a, b in plateau_pairs(F, G, x))


def tau_star_eval(T: TNorm, F: DDF, G: DDF, x) -> Fraction:
    S = T.dual
    return min(S(a, b) for a, b in plateau_pairs(F, G, x))


def _candidates(F: DDF, G: DDF, horizon: Fraction) -> list:
    """Abscissae where the convolution can change value: pairwise jump sums."""
    fx = {ZERO, *F.jumps(horizon)}
    gx = {ZERO, *G.jumps(horizon)}
    pts = {a + b for a in fx for b in gx if a + b <= horizon}
    pts.add(horizon)
    return sorted(pts)


def _materialize(fn, points: list) -> FiniteStep:
    if fn(ZERO) != 0:
        raise NotLeftContinuous("convolution is nonzero at 0")
    steps = []
    prev = ZERO
    for left, right in zip(points, points[1:]):
        inside = fn((left + right) / 2)
        if fn(right) != inside:
            raise NotLeftContinuous(f"value at {fmt(right)} differs from its left neighbourhood")
        if inside != prev:
            steps.append((left, inside))
            prev = inside
    return FiniteStep(tuple(steps))


def _convolve(T: TNorm, F: DDF, G: DDF, horizon, star: bool) -> FiniteStep:
    horizon = q(horizon)
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    fs, gs = F.steps(horizon), G.steps(horizon)
    op = (T.dual if star else T).raw
    pick = min if star else max
    # plateau pairs repeat across abscissae; evaluate each once
    memo: dict = {}

    def value(pair):
        v = memo.get(pair)
        if v is None:
            v = memo[pair] = op(*pair)
        return v

    def at(x):
        return pick(map(value, plateau_pairs(F, G, x, fs, gs)))

    return _materialize(at, _candidates(F, G, horizon))


@lru_cache(maxsize=100_000)
def tau_apply(T: TNorm, F: DDF, G: DDF, horizon) -> FiniteStep:
    """tau_T(F, G) restricted to [0, horizon] as a FiniteStep."""
    return _convolve(T, F, G, horizon, False)


@lru_cache(maxsize=100_000)
def tau_star_apply(T: TNorm, F: DDF, G: DDF, horizon) -> FiniteStep:
    """tau_T*(F, G) restricted to [0, horizon] as a FiniteStep."""
    return _convolve(T, F, G, horizon, True)


def pointwise_max(F: DDF, G: DDF, horizon) -> FiniteStep:
    horizon = q(horizon)
    pts = sorted({ZERO, horizon, *F.jumps(horizon), *G.jumps(horizon)})
    return _materialize(lambda x: max(F.value(x), G.value(x)), pts)


@dataclass(frozen=True)
class TriangleFn:
    """tau_T (star=False) or tau_T* (star=True), evaluated on [0, horizon]."""

    tnorm: TNorm
    star: bool = False
    horizon: Fraction = Fraction(5)

    @property
    def name(self) -> str:
        return f"tau_{self.tnorm.name}{'*' if self.star else ''}"

    def eval(self, F: DDF, G: DDF, x) -> Fraction:
        fn = tau_star_eval if self.star else tau_eval
        return fn(self.tnorm, F, G, x)

    def apply(self, F: DDF, G: DDF, horizon=None) -> FiniteStep:
        fn = tau_star_apply if self.star else tau_apply
        return fn(self.tnorm, F, G, q(horizon) if horizon is not None else self.horizon)


def random_step(rng: random.Random, max_jumps: int = 8, horizon=4, denominator: int = 16) -> FiniteStep:
    """Seeded random FiniteStep: at most ``max_jumps`` jumps on [0, horizon]."""
    horizon = q(horizon)
    slots = int(horizon * denominator)
    count = rng.randint(1, max_jumps)
    xs = sorted(rng.sample(range(slots + 1), min(count, slots + 1)))
    vals = sorted(Fraction(rng.randint(1, denominator), denominator) for _ in xs)
    if rng.random() < 0.5:
        vals[-1] = Fraction(1)
    return FiniteStep(tuple((Fraction(x, denominator), v) for x, v in zip(xs, vals)))


def check_triangle_axioms(tau: TriangleFn, samples: Sequence, x_grid: Sequence) -> list:
    """Pointwise commutativity, associativity, monotonicity and eps_0 identity
    on sample triples (F, G, H). Monotonicity lifts G to max(G, H)."""
    h = tau.horizon
    xs = [q(x) for x in x_grid if q(x) <= h]
    if not samples:
        raise ValueError("need at least one sample triple")
    names = ("commutative", "associative", "monotone", "identity")
    tallies = {k: Tally(f"triangle.{tau.name}.{k}") for k in names}
    start = time.perf_counter()
    for idx, (F, G, H) in enumerate(samples):
        FG = tau.apply(F, G, h)
        GH = tau.apply(G, H, h)
        lifted = pointwise_max(G, H, h)
        for x in xs:
            where = {"sample": idx, "x": fmt(x)}
            a, b = tau.eval(F, G, x), tau.eval(G, F, x)
            if a == b:
                tallies["commutative"].ok()
            else:
                tallies["commutative"].bad({**where, "tau(F,G)": fmt(a), "tau(G,F)": fmt(b)})
            a, b = tau.eval(FG, H, x), tau.eval(F, GH, x)
            if a == b:
                tallies["associative"].ok()
            else:
                tallies["associative"].bad({**where, "tau(tau(F,G),H)": fmt(a), "tau(F,tau(G,H))": fmt(b)})
            a, b = tau.eval(F, G, x), tau.eval(F, lifted, x)
            if a <= b:
                tallies["monotone"].ok()
            else:
                tallies["monotone"].bad({**where, "tau(F,G)": fmt(a), "tau(F,G')": fmt(b)})
            a = tau.eval(F, EPS0, x)
            if a == F.value(x):
                tallies["identity"].ok()
            else:
                tallies["identity"].bad({**where, "tau(F,eps0)": fmt(a), "F": fmt(F.value(x))})
    elapsed = (time.perf_counter() - start) / len(names)
    return [tallies[k].record(elapsed) for k in names]
