"""t-norms, their dual t-conorms, grid certification and the metrization hypotheses.

Values are exact Fractions. The five built-in kinds have analytically known
axioms and sup-diagonals; custom t-norms (a callable or a finite table) are
only ever certified on a grid.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ._rational import fmt, q, unit_grid
from .report import Tally, Verdict

ONE = Fraction(1)
ZERO = Fraction(0)

MIN = "min"
PRODUCT = "product"
LUKASIEWICZ = "lukasiewicz"
DRASTIC = "drastic"
HALF_PRODUCT_JUMP = "half_product_jump"
CUSTOM = "custom"
BUILTIN_KINDS = (MIN, PRODUCT, LUKASIEWICZ, DRASTIC, HALF_PRODUCT_JUMP)


class TNormDomainError(ValueError):
    """Argument outside [0, 1], or a pair missing from a custom table."""


class OutOfTable(TNormDomainError):
    pass


def _min(x, y):
    return min(x, y)


def _product(x, y):
    return x * y


def _lukasiewicz(x, y):
    return max(ZERO, x + y - 1)


def _drastic(x, y):
    if x == 1:
        return y
    if y == 1:
        return x
    return ZERO


def _half_product_jump(x, y):
    if x == 1:
        return y
    if y == 1:
        return x
    return x * y / 2


_BUILTIN_FUNCS = {
    MIN: _min,
    PRODUCT: _product,
    LUKASIEWICZ: _lukasiewicz,
    DRASTIC: _drastic,
    HALF_PRODUCT_JUMP: _half_product_jump,
}

# sup of T(x, x) over 0 <= x < 1, known in closed form
_SUP_DIAGONAL = {
    MIN: ONE,
    PRODUCT: ONE,
    LUKASIEWICZ: ONE,
    DRASTIC: ZERO,
    HALF_PRODUCT_JUMP: Fraction(1, 2),
}


@dataclass(frozen=True)
class TNorm:
    """A binary operation on [0, 1], evaluated exactly.

    Custom kinds carry either ``func`` (any exact callable) or ``table``
    (triples ``(x, y, value)``; lookups outside the table raise OutOfTable).
    """

    kind: str
    name: str
    func: Optional[Callable] = None
    table: Optional[tuple] = None
    _lookup: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.kind in _BUILTIN_FUNCS:
            object.__setattr__(self, "func", _BUILTIN_FUNCS[self.kind])
        elif self.kind == CUSTOM:
            if (self.func is None) == (self.table is None):
                raise ValueError("custom t-norm needs exactly one of func or table")
            if self.table is not None:
                lookup = {}
                for x, y, v in self.table:
                    lookup[(q(x), q(y))] = q(v)
                object.__setattr__(self, "_lookup", lookup)
        else:
            raise ValueError(f"unknown t-norm kind {self.kind!r}")

    @property
    def analytic(self) -> bool:
        return self.kind in BUILTIN_KINDS

    def __call__(self, x, y) -> Fraction:
        if not (0 <= x <= 1 and 0 <= y <= 1):
            raise TNormDomainError(f"{self.name}: arguments ({fmt(x)}, {fmt(y)}) outside [0,1]")
        return self.raw(x, y)

    def raw(self, x, y) -> Fraction:
        """Evaluate without the range check; callers guarantee x, y in [0, 1]."""
        if self._lookup is not None:
            try:
                return self._lookup[(x, y)]
            except KeyError:
                raise OutOfTable(f"{self.name}: pair ({fmt(x)}, {fmt(y)}) not in table") from None
        return self.func(x, y)

    @property
    def dual(self) -> "TConorm":
        return TConorm(self)

    def table_grid(self) -> tuple:
        if self._lookup is None:
            raise ValueError(f"{self.name} is not table-defined")
        return tuple(sorted({x for x, _ in self._lookup} | {y for _, y in self._lookup}))


@dataclass(frozen=True)
class TConorm:
    underlying: TNorm

    @property
    def name(self) -> str:
        return self.underlying.name + "*"

    def __call__(self, x, y) -> Fraction:
        if not (0 <= x <= 1 and 0 <= y <= 1):
            raise TNormDomainError(f"{self.name}: arguments ({fmt(x)}, {fmt(y)}) outside [0,1]")
        return 1 - self.underlying(1 - x, 1 - y)

    def raw(self, x, y) -> Fraction:
        return 1 - self.underlying.raw(1 - x, 1 - y)


Min = TNorm(MIN, "M")
Product = TNorm(PRODUCT, "Pi")
Lukasiewicz = TNorm(LUKASIEWICZ, "W")
Drastic = TNorm(DRASTIC, "Z")
HalfProductJump = TNorm(HALF_PRODUCT_JUMP, "HalfProductJump")

_ALIASES = {
    "min": Min, "m": Min, "minimum": Min,
    "product": Product, "prod": Product, "pi": Product, "p": Product,
    "lukasiewicz": Lukasiewicz, "w": Lukasiewicz,
    "drastic": Drastic, "z": Drastic,
    "half_product_jump": HalfProductJump, "halfproduct": HalfProductJump,
    "halfproductjump": HalfProductJump,
}


def by_name(name: str) -> TNorm:
    try:
        return _ALIASES[name.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown t-norm {name!r}; known: {sorted(set(_ALIASES))}") from None


def custom(name: str, func: Callable) -> TNorm:
    return TNorm(CUSTOM, name, func=func)


def from_table(name: str, triples: Sequence) -> TNorm:
    return TNorm(CUSTOM, name, table=tuple((q(x), q(y), q(v)) for x, y, v in triples))


def eval_tnorm(T: TNorm, x, y) -> Fraction:
    return T(q(x), q(y))


def eval_tconorm(S: TConorm, x, y) -> Fraction:
    return S(q(x), q(y))


def iterate(T: TNorm, r: int, x, y) -> Fraction:
    """T^1 = T and T^r(x, y) = T(T^{r-1}(x, y), T^{r-1}(x, y))."""
    if r < 1:
        raise ValueError("iterate needs r >= 1")
    value = T(q(x), q(y))
    for _ in range(r - 1):
        value = T(value, value)
    return value


def iterate_table(T: TNorm, r_max: int, x, y) -> list:
    """[T^1(x,y), ..., T^r_max(x,y)] sharing the recursion."""
    value = T(q(x), q(y))
    out = [value]
    for _ in range(r_max - 1):
        value = T(value, value)
        out.append(value)
    return out


def _check_grid(grid: Sequence) -> list:
    pts = sorted({q(g) for g in grid})
    if not pts or pts[0] != 0 or pts[-1] != 1:
        raise ValueError("certification grid must contain 0 and 1")
    if len(pts) - 2 < 9:
        raise ValueError("certification grid needs at least 9 interior points")
    return pts


def check_tnorm_axioms(T: TNorm, grid: Optional[Sequence] = None) -> list:
    """Exhaustive grid certification of range, commutativity, associativity,
    monotonicity and the identity 1. Returns one record per axiom."""
    if grid is None:
        grid = T.table_grid() if T.table is not None else unit_grid(64)
    pts = _check_grid(grid)
    prefix = f"tnorm.{T.name}"
    records = []
    note = "analytic" if T.analytic else "grid certification"

    def run(suffix, body):
        tally = Tally(f"{prefix}.{suffix}")
        tally.note = note
        start = time.perf_counter()
        try:
            body(tally)
        except TNormDomainError as exc:
            tally.bad({"error": str(exc)})
        records.append(tally.record(time.perf_counter() - start))

    values: dict = {}

    def val(x, y):
        key = (x, y)
        if key not in values:
            values[key] = T.raw(x, y) if 0 <= x <= 1 and 0 <= y <= 1 else T(x, y)
        return values[key]

    def rng(t):
        for x in pts:
            for y in pts:
                v = val(x, y)
                if 0 <= v <= 1:
                    t.ok()
                else:
                    t.bad({"x": fmt(x), "y": fmt(y), "T": fmt(v)})

    def commutative(t):
        for i, x in enumerate(pts):
            for y in pts[i + 1:]:
                a, b = val(x, y), val(y, x)
                if a == b:
                    t.ok()
                else:
                    t.bad({"x": fmt(x), "y": fmt(y), "T(x,y)": fmt(a), "T(y,x)": fmt(b)})

    def associative(t):
        for x in pts:
            for y in pts:
                xy = val(x, y)
                if not 0 <= xy <= 1:
                    xy = T(xy, ONE)  # raises with a readable message
                for z in pts:
                    left = T.raw(xy, z)
                    right = T(x, val(y, z))
                    if left == right:
                        t.ok()
                    else:
                        t.bad({"x": fmt(x), "y": fmt(y), "z": fmt(z),
                               "T(T(x,y),z)": fmt(left), "T(x,T(y,z))": fmt(right)})

    def monotone(t):
        for x in pts:
            for y0, y1 in zip(pts, pts[1:]):
                for a, b, where in ((val(x, y0), val(x, y1), "second"), (val(y0, x), val(y1, x), "first")):
                    if a <= b:
                        t.ok()
                    else:
                        t.bad({"fixed": fmt(x), "lo": fmt(y0), "hi": fmt(y1),
                               "argument": where, "T(lo)": fmt(a), "T(hi)": fmt(b)})

    def identity(t):
        for x in pts:
            a, b = val(x, ONE), val(ONE, x)
            if a == x and b == x:
                t.ok()
            else:
                t.bad({"x": fmt(x), "T(x,1)": fmt(a), "T(1,x)": fmt(b)})

    run("range", rng)
    run("commutative", commutative)
    run("associative", associative)
    run("monotone", monotone)
    run("identity", identity)
    return records


def sup_diagonal(T: TNorm, grid: Optional[Sequence] = None) -> tuple:
    """(sup_{0<=x<1} T(x,x), exact). Non-built-ins give a grid lower bound."""
    if T.kind in _SUP_DIAGONAL:
        return _SUP_DIAGONAL[T.kind], True
    if grid is None:
        grid = T.table_grid() if T.table is not None else unit_grid(64)
    pts = [q(g) for g in grid if q(g) < 1]
    if not pts:
        raise ValueError("sup_diagonal grid must contain points below 1")
    return max(T(x, x) for x in pts), False


def _default_below(delta, strict_zero: bool) -> list:
    pts = [g for g in unit_grid(64) if g < delta]
    return [g for g in pts if g > 0] if strict_zero else pts


def check_subproduct(T: TNorm, delta, grid: Optional[Sequence] = None) -> Verdict:
    """T(x, y) <= x*y for x, y < delta; closed form for Z and HalfProductJump."""
    delta = q(delta)
    if not (0 < delta <= 1):
        raise ValueError("delta must lie in (0, 1]")
    if T.kind in (DRASTIC, HALF_PRODUCT_JUMP):
        return Verdict(True, None)
    pts = sorted(q(g) for g in grid) if grid is not None else _default_below(delta, False)
    if any(not (0 <= g < delta) for g in pts):
        raise ValueError("subproduct grid must lie in [0, delta)")
    for x in pts:
        for y in pts:
            v = T(x, y)
            if v > x * y:
                return Verdict(False, {"x": fmt(x), "y": fmt(y), "T": fmt(v), "xy": fmt(x * y)})
    return Verdict(True, None)


def check_archimedean_near_origin(T: TNorm, delta, grid: Optional[Sequence] = None) -> Verdict:
    """0 < T(x, x) < x for 0 < x < delta."""
    delta = q(delta)
    if T.kind == HALF_PRODUCT_JUMP and delta <= 1:
        return Verdict(True, None)
    pts = sorted(q(g) for g in grid) if grid is not None else _default_below(delta, True)
    if any(not (0 < g < delta) for g in pts):
        raise ValueError("archimedean grid must lie in (0, delta)")
    for x in pts:
        v = T(x, x)
        if not (0 < v < x):
            return Verdict(False, {"x": fmt(x), "T(x,x)": fmt(v)})
    return Verdict(True, None)


def hypothesis_records(T: TNorm, delta, variant: str = "hohle") -> list:
    """Report records for the metrization hypotheses on T."""
    records = []
    sup, exact = sup_diagonal(T)
    t = Tally(f"hypothesis.{T.name}.sup_diagonal")
    t.values = {"sup_diagonal": fmt(sup), "exact": exact}
    if exact and sup < 1:
        t.ok()
    else:
        t.bad({"sup_diagonal": fmt(sup), "exact": exact,
               "reason": "sup T(x,x) over x<1 must be certified < 1"})
    records.append(t.record())
    if variant == "hohle":
        v = check_subproduct(T, delta)
        t = Tally(f"hypothesis.{T.name}.subproduct")
    else:
        v = check_archimedean_near_origin(T, delta)
        t = Tally(f"hypothesis.{T.name}.archimedean")
    t.values = {"delta": fmt(delta)}
    if v:
        t.ok()
    else:
        t.bad(v.witness)
    records.append(t.record())
    return records
