"""Strong neighbourhoods, generalized uniformities and their sampled checks.

Neighbourhoods and vicinities are membership predicates. "Radial" means
U = -U here (often called symmetric).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ._rational import fmt, q
from .ddf import levy_to_eps0
from .report import FINDING, UNRESOLVED, CheckRecord, Tally
from .spaces import PNSpaceSpec, Vector, theta

Member = Callable[[int, Vector], bool]


@dataclass
class NeighborhoodBase:
    """Countable family B_1 ⊇ B_2 ⊇ ... at ``center``; ``depth`` is the materialized n range."""

    center: Vector
    member: Member
    depth: int
    name: str = "base"

    def contains(self, n: int, p: Vector) -> bool:
        return self.member(n, p)

    def translate(self, p: Vector) -> "NeighborhoodBase":
        inner = self.member
        return NeighborhoodBase(self.center + p, lambda n, x: inner(n, x - p), self.depth,
                                f"{self.name}+{p.show()}")


@dataclass
class GeneralizedUniformity:
    vicinity: Callable[[int, Vector, Vector], bool]
    depth: int
    name: str = "uniformity"

    def contains(self, n: int, p: Vector, r: Vector) -> bool:
        return self.vicinity(n, p, r)


def strong_neighborhood(spec: PNSpaceSpec, p: Vector, t) -> Callable[[Vector], bool]:
    """N_p(t) = {q : nu_{p-q}(t) > 1 - t}."""
    t = q(t)
    if t <= 0:
        raise ValueError("strong neighbourhood radius must be positive")
    nu = spec.nu
    return lambda r: nu(p - r).value(t) > 1 - t


def strong_base(spec: PNSpaceSpec, depth: int) -> NeighborhoodBase:
    """{N_theta(1/n)} as a base at theta."""
    nu = spec.nu

    def member(n: int, r: Vector) -> bool:
        t = Fraction(1, n)
        return nu(-r).value(t) > 1 - t

    return NeighborhoodBase(theta(spec.dim), member, depth, "strong")


def pn_uniformity(spec: PNSpaceSpec, depth: int) -> GeneralizedUniformity:
    """Vicinities {(p, q) : nu_{p-q}(1/n) >= 1 - 1/n}."""
    nu = spec.nu

    def vicinity(n: int, p: Vector, r: Vector) -> bool:
        t = Fraction(1, n)
        return nu(p - r).value(t) >= 1 - t

    return GeneralizedUniformity(vicinity, depth, "pn")


def derive_topology(U: GeneralizedUniformity, p: Vector) -> NeighborhoodBase:
    """Sections {q : (p, q) in V_n} of the base vicinities."""
    vic = U.vicinity
    return NeighborhoodBase(p, lambda n, r: vic(n, p, r), U.depth, f"{U.name}@{p.show()}")


class NotRadial(ValueError):
    pass


def uniformity_from_theta_base(B: NeighborhoodBase, samples: Sequence[Vector]) -> GeneralizedUniformity:
    """V_n = {(p, q) : p - q in B_n}; refuses a base that is not radial on the samples."""
    for n in range(1, B.depth + 1):
        for p in samples:
            if B.contains(n, p) != B.contains(n, -p):
                raise NotRadial(f"B_{n} is not radial: {p.show()} vs its negative")
    member = B.member
    return GeneralizedUniformity(lambda n, p, r: member(n, p - r), B.depth, f"U({B.name})")


def _done(t: Tally, start: float) -> CheckRecord:
    return t.record(time.perf_counter() - start)


def check_frechet_separable(B: NeighborhoodBase, samples: Sequence[Vector], check_id: str = "frechet") -> CheckRecord:
    """Every sampled q != center is excluded by some B_n, n <= depth."""
    t, start = Tally(check_id), time.perf_counter()
    for r in samples:
        if r == B.center:
            continue
        if any(not B.contains(n, r) for n in range(1, B.depth + 1)):
            t.ok()
        else:
            t.bad({"center": B.center.show(), "q": r.show(), "depth": B.depth,
                   "reason": "q lies in every materialized neighbourhood"})
    return _done(t, start)


def levy_index(spec: PNSpaceSpec) -> Callable[[Vector, Vector], Optional[int]]:
    """Index n with 1/n below the Levy distance of nu_{p-q} to eps_0.

    Below that distance nu_{p-q}(t) < 1 - t, so (p, q) leaves the n-th
    vicinity. Returns None when nu_{p-q} is eps_0.
    """
    def hint(p: Vector, r: Vector) -> Optional[int]:
        L = levy_to_eps0(spec.nu(p - r))
        if L == 0:
            return None
        return math.floor(1 / L) + 1

    return hint


def check_hausdorff(U: GeneralizedUniformity, samples: Sequence[Vector], check_id: str = "hausdorff",
                    hint: Optional[Callable[[Vector, Vector], Optional[int]]] = None) -> CheckRecord:
    """Distinct sampled points are separated by some base vicinity.

    Indices 1..depth are tried, then the index proposed by ``hint``; the
    proposal is confirmed with the vicinity predicate itself.
    """
    t, start = Tally(check_id), time.perf_counter()
    for i, p in enumerate(samples):
        for r in samples[i + 1:]:
            extra = hint(p, r) if hint else None
            if extra is not None and not U.contains(extra, p, r):
                t.ok()
            elif any(not U.contains(n, p, r) for n in range(1, U.depth + 1)):
                t.ok()
            else:
                t.bad({"p": p.show(), "q": r.show(), "depth": U.depth, "hint": extra,
                       "reason": "pair lies in every tried vicinity"})
    return _done(t, start)


def check_radial_circled(member: Callable[[Vector], bool], samples: Sequence[Vector], lambdas: Sequence,
                         check_id: str = "B") -> list:
    """radial: p in B iff -p in B; circled: p in B implies lam p in B for |lam| <= 1."""
    lambdas = sorted({q(l) for l in lambdas})
    if any(abs(l) > 1 for l in lambdas):
        raise ValueError("circledness lambdas must lie in [-1, 1]")
    rad, start = Tally(f"{check_id}.radial"), time.perf_counter()
    for p in samples:
        if member(p) == member(-p):
            rad.ok()
        else:
            rad.bad({"p": p.show(), "p_in": member(p), "-p_in": member(-p)})
    records = [_done(rad, start)]
    circ, start = Tally(f"{check_id}.circled"), time.perf_counter()
    for p in samples:
        if not member(p):
            continue
        for lam in lambdas:
            if member(p.scale(lam)):
                circ.ok()
            else:
                circ.bad({"p": p.show(), "lambda": fmt(lam), "lambda_p": p.scale(lam).show()})
    records.append(_done(circ, start))
    return records


def check_filter_nesting(B: NeighborhoodBase, samples: Sequence[Vector], check_id: str = "nesting") -> CheckRecord:
    t, start = Tally(check_id), time.perf_counter()
    for n in range(1, B.depth):
        for r in samples:
            if not B.contains(n + 1, r) or B.contains(n, r):
                t.ok()
            else:
                t.bad({"n": n, "q": r.show(), "reason": "in B_{n+1} but not in B_n"})
    return _done(t, start)


def check_translation(spec: PNSpaceSpec, samples: Sequence[Vector], t_grid: Sequence,
                      check_id: str = "translation") -> CheckRecord:
    """q in N_theta(t) iff p + q in N_p(t)."""
    zero = theta(spec.dim)
    t_grid = [q(t) for t in t_grid]
    nu = spec.nu
    tal, start = Tally(check_id), time.perf_counter()
    for p in samples:
        for r in samples:
            at_zero = nu(zero - r)
            at_p = nu(p - (p + r))
            for t in t_grid:
                a, b = at_zero.value(t) > 1 - t, at_p.value(t) > 1 - t
                if a == b:
                    tal.ok()
                else:
                    tal.bad({"p": p.show(), "q": r.show(), "t": fmt(t),
                             "q_in_N_theta": a, "p+q_in_N_p": b})
    return _done(tal, start)


def check_levy_characterization(spec: PNSpaceSpec, samples: Sequence[Vector], t_grid: Sequence,
                                check_id: str = "levy_characterization") -> list:
    """q in N_p(t) iff d_L(nu_{p-q}, eps_0) < t. A mismatch exactly at
    t = d_L is a boundary finding; anywhere else it is a failure."""
    t_grid = [q(t) for t in t_grid]
    main = Tally(check_id)
    edge = Tally(check_id + ".boundary", FINDING)
    hits = 0
    start = time.perf_counter()
    for p in samples:
        for r in samples:
            F = spec.nu(p - r)
            dist = levy_to_eps0(F)
            for t in t_grid:
                inside = F.value(t) > 1 - t
                if t == dist:
                    hits += 1
                    if inside == (dist < t):
                        edge.ok()
                    else:
                        edge.bad({"p": p.show(), "q": r.show(), "t": fmt(t), "d_L": fmt(dist)})
                    continue
                if inside == (dist < t):
                    main.ok()
                else:
                    main.bad({"p": p.show(), "q": r.show(), "t": fmt(t), "d_L": fmt(dist),
                              "in_N_p": inside})
    edge.values = {"boundary_instances": hits}
    elapsed = time.perf_counter() - start
    return [main.record(elapsed), edge.record()]


def _membership_masks(spec: PNSpaceSpec, samples: Sequence[Vector], t: Fraction) -> list:
    nu = spec.nu
    masks = []
    for p in samples:
        m = 0
        for j, r in enumerate(samples):
            if nu(p - r).value(t) > 1 - t:
                m |= 1 << j
        masks.append(m)
    return masks


def check_topology_axiom(spec: PNSpaceSpec, samples: Sequence[Vector], t_grid: Sequence,
                         check_id: str = "topology_axiom") -> CheckRecord:
    """For q in N_p(t), look for t' in the grid with N_q(t') ⊆ N_p(t) on the
    sample set. Unmatched instances are unresolved, never failures: a finite
    sample cannot refute the axiom."""
    t_grid = sorted({q(t) for t in t_grid})
    if not t_grid or t_grid[0] <= 0:
        raise ValueError("t-grid must be positive")
    masks = {t: _membership_masks(spec, samples, t) for t in t_grid}
    tal, start = Tally(check_id, UNRESOLVED), time.perf_counter()
    for i, p in enumerate(samples):
        for t in t_grid:
            big = masks[t][i]
            j, rest = 0, big
            while rest:
                if rest & 1:
                    if any(masks[s][j] & ~big == 0 for s in t_grid):
                        tal.ok()
                    else:
                        tal.bad({"p": p.show(), "t": fmt(t), "q": samples[j].show(),
                                 "reason": "no grid t' nests N_q(t') inside N_p(t)"})
                rest >>= 1
                j += 1
    tal.values = {"samples": len(samples), "t_grid": [fmt(t) for t in t_grid]}
    return _done(tal, start)
