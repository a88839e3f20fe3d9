"""Probabilistic norm from a countable radial and circled filter base.

Given V_1 ⊇ V_2 ⊇ ... (sublevel sets of a gauge) and a t-norm T with
sup_{x<1} T(x,x) < 1 that is sub-product (or Archimedean) near 0, assign to
each vector the family member indexed by the deepest V_n containing it:

    nu_p = F_0            if p not in V_1
           F_n            if p in V_n minus V_{n+1}
           eps_0          if p in every V_n

and verify by exact checks that (S, nu, tau_T, tau_T*) is a PN space whose
strong neighbourhoods reproduce the base.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ._rational import fmt, q
from .ddf import EPS0, ArchFamily, DDF, HohleFamily, pointwise_leq
from .report import FAIL, FINDING, CheckRecord, Tally, VerificationReport
from .spaces import (Gauge, PNSpaceSpec, ProbNorm, Vector, check_M1_M2_M3, check_N1, check_N2,
                     check_N3, check_N4, check_serstnev, sample_pairs, sample_triples, theta, unit)
from .tnorm import (TNorm, check_archimedean_near_origin, check_subproduct, check_tnorm_axioms,
                    hypothesis_records, iterate_table, sup_diagonal)
from .topology import (NeighborhoodBase, check_filter_nesting, check_frechet_separable, check_hausdorff,
                       check_levy_characterization, check_radial_circled, check_topology_axiom,
                       check_translation, levy_index, pn_uniformity, strong_base)
from .triangle import tau_apply, tau_eval

LEVEL_INF = math.inf
HOHLE = "hohle"
ARCHIMEDEAN = "archimedean"
VARIANTS = (HOHLE, ARCHIMEDEAN)


class HypothesisError(ValueError):
    """A t-norm hypothesis required by the construction is not certified."""

    def __init__(self, hypothesis: str, detail: str) -> None:
        super().__init__(f"{hypothesis}: {detail}")
        self.hypothesis = hypothesis
        self.detail = detail


class InsufficientDepth(ValueError):
    """A finite radii table ran out before the vector's level was determined."""


@dataclass(frozen=True)
class Radii:
    """Strictly decreasing radii r_1 > r_2 > ...

    ``one_over_n`` and ``geometric`` are closed forms and never run out;
    ``table`` lists r_1..r_k explicitly. ``n_max`` is the depth that sweeps
    and bases materialize.
    """

    kind: str = "one_over_n"
    ratio: Optional[Fraction] = None
    values: Optional[tuple] = None
    n_max: int = 64

    def __post_init__(self):
        if self.kind == "geometric":
            r = q(self.ratio)
            if not (0 < r < 1):
                raise ValueError("geometric ratio must lie in (0, 1)")
            object.__setattr__(self, "ratio", r)
        elif self.kind == "table":
            vals = tuple(q(v) for v in self.values or ())
            if not vals or any(b >= a for a, b in zip(vals, vals[1:])) or vals[-1] <= 0:
                raise ValueError("radii table must be positive and strictly decreasing")
            object.__setattr__(self, "values", vals)
            object.__setattr__(self, "n_max", min(self.n_max, len(vals)))
        elif self.kind != "one_over_n":
            raise ValueError(f"unknown radii kind {self.kind!r}")
        if self.n_max < 1:
            raise ValueError("n_max must be positive")

    @property
    def bounded(self) -> bool:
        return self.kind == "table"

    def __call__(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("radii are indexed from 1")
        if self.kind == "one_over_n":
            return Fraction(1, n)
        if self.kind == "geometric":
            return self.ratio ** (n - 1)
        if n > len(self.values):
            raise InsufficientDepth(f"radii table has only {len(self.values)} entries")
        return self.values[n - 1]


@dataclass(frozen=True)
class FilterBase:
    gauge: Gauge
    radii: Radii
    dim: int

    def contains(self, n: int, p: Vector) -> bool:
        return self.gauge.within(p, self.radii(n))

    def level(self, p: Vector):
        """Largest n with p in V_n; 0 outside V_1; LEVEL_INF on the intersection."""
        g = self.gauge
        if g.is_zero(p):
            return LEVEL_INF
        if not self.contains(1, p):
            return 0
        if self.radii.bounded:
            last = len(self.radii.values)
            if self.contains(last, p):
                raise InsufficientDepth(
                    f"{p.show()} lies in V_{last}, the deepest tabulated set, but is not in their intersection")
            hi = last
        else:
            hi = 2
            while self.contains(hi, p):
                hi *= 2
        lo = 1
        # invariant: p in V_lo, p not in V_hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.contains(mid, p):
                lo = mid
            else:
                hi = mid
        return lo

    def theta_base(self) -> NeighborhoodBase:
        return NeighborhoodBase(theta(self.dim), self.contains, self.radii.n_max, f"V[{self.gauge.name}]")

    def boundary_vectors(self, n_range: Sequence[int]) -> list:
        """Vectors on, just outside, and between the spheres of V_n along the
        first axis with nonzero gauge."""
        k = next((i for i in range(self.dim) if self.gauge.unit_value(self.dim, i) > 0), None)
        if k is None:
            return []
        g = self.gauge.unit_value(self.dim, k)
        out = []
        for n in n_range:
            r, r_next = self.radii(n), self.radii(n + 1)
            for length in (r, r + Fraction(1, 64), (r + r_next) / 2):
                v = unit(self.dim, k, length / g)
                out.extend((v, -v))
        return out


@dataclass
class MetrizationResult:
    N0: int
    nu: ProbNorm
    base: FilterBase
    tnorm: TNorm
    variant: str
    report: Optional[VerificationReport] = None

    def family(self, n: int) -> DDF:
        if self.variant == HOHLE:
            return HohleFamily(n, self.N0)
        return ArchFamily(n, self.N0, self.tnorm)


def compute_N0(T: TNorm, delta=1, variant: str = HOHLE) -> int:
    """Smallest N0 >= 2 with 1 - 1/N0 >= sup_{x<1} T(x,x) and 1/N0 < delta.

    Raises HypothesisError naming the hypothesis that is not certified.
    """
    delta = q(delta)
    if not (0 < delta <= 1):
        raise ValueError("delta must lie in (0, 1]")
    sup, exact = sup_diagonal(T)
    if not exact:
        raise HypothesisError("sup-diagonal", f"{T.name}: only a grid lower bound {fmt(sup)} is known")
    if sup >= 1:
        raise HypothesisError("sup-diagonal", f"{T.name}: sup T(x,x) over x<1 is {fmt(sup)}, not < 1")
    if variant == HOHLE:
        v = check_subproduct(T, delta)
        if not v:
            raise HypothesisError("sub-product", f"{T.name}: T(x,y) > xy at {v.witness}")
    elif variant == ARCHIMEDEAN:
        v = check_archimedean_near_origin(T, delta)
        if not v:
            raise HypothesisError("archimedean", f"{T.name}: 0 < T(x,x) < x fails at {v.witness}")
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return max(2, math.ceil(1 / (1 - sup)), math.floor(1 / delta) + 1)


def construct_nu(base: FilterBase, T: TNorm, variant: str = HOHLE, delta=1) -> MetrizationResult:
    N0 = compute_N0(T, delta, variant)
    make = (lambda n: HohleFamily(n, N0)) if variant == HOHLE else (lambda n: ArchFamily(n, N0, T))

    def rule(p: Vector) -> DDF:
        n = base.level(p)
        return EPS0 if n == LEVEL_INF else make(n)

    nu = ProbNorm(f"metrize[{variant},{T.name},N0={N0}]", rule)
    return MetrizationResult(N0, nu, base, T, variant)


def verify_filter_equivalence(result: MetrizationResult, samples: Sequence[Vector], n_range: Sequence[int],
                              check_id: str = "filter_equivalence") -> CheckRecord:
    """p in V_n iff nu_p(1/(n+1)) >= 1 - 1/(N0 (n+1)), exactly."""
    t, start = Tally(check_id), time.perf_counter()
    N0 = result.N0
    for n in n_range:
        x = Fraction(1, n + 1)
        threshold = 1 - Fraction(1, N0 * (n + 1))
        for p in samples:
            lhs = result.base.contains(n, p)
            val = result.nu(p).value(x)
            rhs = val >= threshold
            if lhs == rhs:
                t.ok()
            else:
                t.bad({"n": n, "p": p.show(), "in_V_n": lhs, "nu_p(1/(n+1))": fmt(val),
                       "threshold": fmt(threshold)})
    return t.record(time.perf_counter() - start)


def n4_case_audit(n: int, N0: int, r, s, T: TNorm, variant: str = HOHLE) -> bool:
    """T*(F_n(r), F_n(s)) >= F_n(r + s) with both parts held at level n.

    Deeper levels only enlarge the left side, so level n is the worst case.
    """
    r, s = q(r), q(s)
    if r <= 0 or s <= 0:
        raise ValueError("audit needs r, s > 0")
    F = HohleFamily(n, N0) if variant == HOHLE else ArchFamily(n, N0, T)
    return T.dual(F.value(r), F.value(s)) >= F.value(r + s)


def n4_audit_sweep(T: TNorm, N0: int, variant: str, n_range: Sequence[int], grid: Sequence,
                   check_id: str = "n4_case_audit", on_violation: str = FAIL) -> CheckRecord:
    """n4_case_audit over all (r, s) in grid^2; grid should straddle every branch boundary."""
    t, start = Tally(check_id, on_violation), time.perf_counter()
    for n in n_range:
        pts = sorted({q(g) for g in grid if q(g) > 0} | {Fraction(1, n + 1)})
        F = HohleFamily(n, N0) if variant == HOHLE else ArchFamily(n, N0, T)
        S = T.dual
        for r in pts:
            for s in pts:
                lhs, rhs = S(F.value(r), F.value(s)), F.value(r + s)
                if lhs >= rhs:
                    t.ok()
                else:
                    t.bad({"n": n, "N0": N0, "r": fmt(r), "s": fmt(s), "T*": fmt(lhs), "F_n(r+s)": fmt(rhs)})
    return t.record(time.perf_counter() - start)


def n4_arithmetic_core(N0: int = 2, n_max: int = 10, ab_max: int = 10,
                       check_id: str = "n4_arithmetic_core") -> CheckRecord:
    """(1/(2^{a+1}K)) (1/(2^{b+1}K)) <= 1/(2^{c+1}K) for c <= a+b+1, K = N0(n+1)."""
    t, start = Tally(check_id), time.perf_counter()
    for n in range(n_max + 1):
        K = N0 * (n + 1)
        for a in range(ab_max + 1):
            for b in range(ab_max + 1):
                lhs = Fraction(1, 2 ** (a + 1) * K) * Fraction(1, 2 ** (b + 1) * K)
                for c in range(a + b + 2):
                    rhs = Fraction(1, 2 ** (c + 1) * K)
                    if lhs <= rhs:
                        t.ok()
                    else:
                        t.bad({"n": n, "a": a, "b": b, "c": c, "K": K})
    return t.record(time.perf_counter() - start)


def n3_chain(result: MetrizationResult, pairs: Sequence, x_grid: Sequence, horizon=None,
             check_id: str = "n3_chain") -> CheckRecord:
    """tau_T(nu_p, nu_q)(x) <= 1 - 1/N0 <= nu_{p+q}(x) for x > 0, finite levels.

    Pairs with the same (nu_p, nu_q, nu_{p+q}) are the same instance; each
    distinct triple is evaluated once and counted with its multiplicity.
    Up to ``horizon`` the convolution is read off the materialized tau_apply.
    """
    T, N0 = result.tnorm, result.N0
    bound = 1 - Fraction(1, N0)
    xs = [q(x) for x in x_grid if q(x) > 0]
    t, start = Tally(check_id), time.perf_counter()
    groups: dict = {}
    for p, r in pairs:
        Fp, Fr = result.nu(p), result.nu(r)
        if Fp == EPS0 or Fr == EPS0:
            continue
        key = (Fp, Fr, result.nu(p + r))
        if key in groups:
            groups[key][1] += 1
        else:
            groups[key] = [(p, r), 1]
    h = q(horizon) if horizon is not None else max(xs, default=Fraction(0))
    for (Fp, Fr, Fs), ((p, r), mult) in groups.items():
        conv_fn = tau_apply(T, Fp, Fr, h) if h > 0 else None
        for x in xs:
            conv = conv_fn.value(x) if x <= h else tau_eval(T, Fp, Fr, x)
            tail = Fs.value(x)
            if conv <= bound <= tail:
                t.ok(mult)
            else:
                t.bad({"p": p.show(), "q": r.show(), "x": fmt(x), "tau": fmt(conv),
                       "bound": fmt(bound), "nu_p+q(x)": fmt(tail)})
                t.ok(mult - 1)
    t.values = {"distinct_triples": len(groups)}
    return t.record(time.perf_counter() - start)


def family_ordering(result: MetrizationResult, n_max: int, horizon, check_id: str = "family_ordering") -> CheckRecord:
    """m <= n implies F_m <= F_n pointwise."""
    t, start = Tally(check_id), time.perf_counter()
    fams = [result.family(n) for n in range(n_max + 1)]
    for m in range(n_max + 1):
        for n in range(m, n_max + 1):
            v = pointwise_leq(fams[m], fams[n], q(horizon))
            if v:
                t.ok()
            else:
                t.bad({"m": m, "n": n, **v.witness})
    return t.record(time.perf_counter() - start)


def circledness_transport(base: FilterBase, samples: Sequence[Vector], lambdas: Sequence,
                          check_id: str = "circledness_transport") -> CheckRecord:
    """level(lam p) >= level(p) for |lam| <= 1."""
    lams = sorted({q(l) for l in lambdas} | {-q(l) for l in lambdas})
    t, start = Tally(check_id), time.perf_counter()
    for p in samples:
        lp = base.level(p)
        for lam in lams:
            ll = base.level(p.scale(lam))
            if ll >= lp:
                t.ok()
            else:
                t.bad({"p": p.show(), "lambda": fmt(lam), "level_p": lp, "level_lam_p": ll})
    return t.record(time.perf_counter() - start)


def arch_value_table(T: TNorm, N0: int, n_values: Sequence[int], m_max: int = 20,
                     check_id: str = "arch_value_table") -> CheckRecord:
    """1 - T^{m+1}(z, z) nondecreasing in m and < 1 for m <= m_max.

    Compared through the deficits T^{m+1}(z, z): nonincreasing and > 0.
    """
    t, start = Tally(check_id), time.perf_counter()
    for n in n_values:
        z = Fraction(1, N0 * (n + 1))
        table = [z] + iterate_table(T, m_max + 1, z, z)
        for m in range(1, len(table)):
            if 0 < table[m] <= table[m - 1]:
                t.ok()
            else:
                t.bad({"n": n, "m": m - 1, "deficit_positive": table[m] > 0,
                       "nondecreasing": table[m] <= table[m - 1]})
    return t.record(time.perf_counter() - start)


@dataclass
class Grids:
    lambda_grid: tuple
    x_grid: tuple
    horizon: Fraction
    n_range: tuple
    t_grid: tuple
    tnorm_grid: tuple
    triple_count: int = 500
    seed: int = 0
    topology_samples: int = 60


def run_full_verification(result: MetrizationResult, samples: Sequence[Vector], grids: Grids,
                          config: Optional[dict] = None) -> VerificationReport:
    report = VerificationReport("metrize", dict(config or {}))
    T, base = result.tnorm, result.base
    spec = PNSpaceSpec.menger(result.nu, T, base.dim, grids.horizon,
                              lambda_grid=grids.lambda_grid, x_grid=grids.x_grid, name=result.nu.name)

    gate = Tally("gate.N0")
    gate.ok()
    gate.values = {"N0": result.N0, "variant": result.variant, "tnorm": T.name}
    report.add(gate.record())
    report.extend(check_tnorm_axioms(T, grids.tnorm_grid))
    report.extend(hypothesis_records(T, Fraction(1), result.variant))

    # the iterated family is not guaranteed to satisfy N4; its violations are findings
    n4_status = FINDING if result.variant == ARCHIMEDEAN else FAIL
    pairs = sample_pairs(samples)
    report.add(check_N1(spec, samples))
    report.add(check_N2(spec, samples))
    report.add(check_N3(spec, pairs))
    report.add(check_N4(spec, samples, on_violation=n4_status))
    report.extend(check_M1_M2_M3(spec.pm(), samples, sample_triples(samples, grids.triple_count, grids.seed)))
    report.extend(check_serstnev(spec, samples, expected=False))

    report.add(verify_filter_equivalence(result, samples, grids.n_range))
    report.add(n3_chain(result, pairs, grids.x_grid, grids.horizon))
    report.add(n4_audit_sweep(T, result.N0, result.variant, grids.n_range, grids.x_grid,
                              on_violation=n4_status))
    report.add(n4_arithmetic_core(result.N0))
    report.add(family_ordering(result, max(grids.n_range), grids.horizon))
    report.add(circledness_transport(base, samples, grids.lambda_grid))
    if result.variant == ARCHIMEDEAN:
        report.add(arch_value_table(T, result.N0, sorted({0, 1, max(grids.n_range)})))

    report.extend(topology_records(spec, base, samples, grids,
                                   strong_depth=result.N0 * (base.radii.n_max + 1) + 1))
    return report


def topology_records(spec: PNSpaceSpec, base: Optional[FilterBase], samples: Sequence[Vector],
                     grids: Grids, strong_depth: Optional[int] = None) -> list:
    """Neighbourhood-level checks. A point of level L is excluded from
    N_theta(1/n) only once n > N0 (L + 1), so separation checks on the strong
    base need ``strong_depth`` well beyond the base depth."""
    records = []
    lams = sorted({q(l) for l in grids.lambda_grid} | {-q(l) for l in grids.lambda_grid})
    depth = max(grids.n_range)
    sep_depth = strong_depth or depth
    if base is not None:
        for n in grids.n_range:
            records.extend(check_radial_circled(lambda p, n=n: base.contains(n, p), samples, lams,
                                                check_id=f"V_{n:02d}"))
        B = base.theta_base()
        records.append(check_filter_nesting(B, samples, "V.nesting"))
        records.append(check_frechet_separable(B, samples, "V.frechet"))
    strong = strong_base(spec, sep_depth)
    records.append(check_frechet_separable(strong, samples, "strong.frechet"))
    records.append(check_filter_nesting(strong, samples, "strong.nesting"))
    for n in (1, 2, 4, depth):
        if n <= sep_depth:
            records.extend(check_radial_circled(lambda p, n=n: strong.contains(n, p), samples, lams,
                                                check_id=f"strong.N_{n:02d}"))
    records.append(check_hausdorff(pn_uniformity(spec, depth), samples[: grids.topology_samples],
                                   "pn_uniformity.hausdorff", hint=levy_index(spec)))
    records.append(check_translation(spec, samples, grids.t_grid, "strong.translation"))
    records.extend(check_levy_characterization(spec, samples, grids.t_grid, "strong.levy_characterization"))
    nest_grid = sorted(set(grids.t_grid) | {Fraction(1, 2 ** k) for k in range(13)})
    records.append(check_topology_axiom(spec, samples[: grids.topology_samples], nest_grid, "strong.topology_axiom"))
    return records
