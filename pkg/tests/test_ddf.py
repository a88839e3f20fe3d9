import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from pnspace.ddf import (EPS0, ArchFamily, DDFDomainError, FiniteStep, HohleFamily, UnitStep, audit,
                         equal_everywhere, from_record, is_eps0, levy_distance, levy_to_eps0, pointwise_equal,
                         pointwise_leq, probe_points)
from pnspace.tnorm import Drastic, HalfProductJump

from conftest import finite_steps


def test_unit_step_is_left_continuous():
    e = UnitStep(F(1, 2))
    assert e(F(1, 2)) == 0
    assert e(F(1, 2) + F(1, 10 ** 9)) == 1
    assert e(0) == 0 and e(math.inf) == 1
    assert EPS0(0) == 0 and EPS0(F(1, 10 ** 12)) == 1


def test_negative_argument_rejected():
    with pytest.raises(DDFDomainError):
        EPS0(F(-1, 2))
    with pytest.raises(DDFDomainError):
        UnitStep(F(-1))


@pytest.mark.parametrize("points", [
    ((F(1), F(1, 2)), (F(1, 2), F(3, 4))),
    ((F(1), F(3, 4)), (F(2), F(1, 2))),
    ((F(1), F(3, 2)),),
    ((F(-1), F(1, 2)),),
])
def test_finite_step_validation(points):
    with pytest.raises(DDFDomainError):
        FiniteStep(points)


def test_finite_step_values():
    G = FiniteStep(((F(1), F(1, 4)), (F(2), F(1))))
    assert [G(x) for x in (F(1, 2), F(1), F(3, 2), F(2), F(5, 2))] == [0, 0, F(1, 4), F(1, 4), 1]


def test_hohle_family_branches():
    H = HohleFamily(1, 2)
    assert H(F(1, 2)) == F(3, 4)
    assert H(F(3, 4)) == F(7, 8)
    assert H(F(1)) == F(7, 8)
    assert H(F(3, 2)) == F(15, 16)
    assert HohleFamily(0, 2)(F(5, 2)) == F(15, 16)
    # n = 0: the (1/(n+1), 1] branch is empty
    assert HohleFamily(0, 2)(F(1)) == F(1, 2)


@given(st.integers(0, 12), st.integers(2, 6), st.integers(1, 400))
def test_hohle_matches_formula(n, N0, k):
    x = F(k, 37)
    K = N0 * (n + 1)
    if x <= F(1, n + 1):
        want = 1 - F(1, K)
    elif x <= 1:
        want = 1 - F(1, 2 * K)
    else:
        m = math.ceil(x) - 1
        want = 1 - F(1, 2 ** (m + 1) * K)
    assert HohleFamily(n, N0)(x) == want


def test_arch_family_values():
    A = ArchFamily(1, 2, HalfProductJump)
    z = F(1, 4)
    assert A(F(1, 2)) == 1 - z
    assert A(F(1)) == 1 - z * z / 2
    t1 = z * z / 2
    assert A(F(3, 2)) == 1 - t1 * t1 / 2
    # Z(z, z) = 0 so every later branch is 1
    assert ArchFamily(1, 2, Drastic)(F(2)) == 1


@pytest.mark.parametrize("Fn", [HohleFamily(3, 2), HohleFamily(0, 2), ArchFamily(2, 2, HalfProductJump),
                                UnitStep(F(3, 2)), FiniteStep(((F(0), F(1, 2)), (F(1), F(1))))])
def test_audit_and_record_round_trip(Fn):
    assert audit(Fn, 6)
    assert from_record(Fn.to_record()) == Fn


def test_is_eps0():
    assert is_eps0(EPS0)
    assert is_eps0(FiniteStep(((F(0), F(1)),)))
    assert not is_eps0(UnitStep(F(1, 100)))
    assert not is_eps0(HohleFamily(5, 2))


@given(finite_steps(), finite_steps())
def test_pointwise_leq_against_fine_grid(Fa, Gb):
    # oracle: all multiples of 1/64 on [0, 4] cover every plateau of both
    grid = [F(k, 64) for k in range(4 * 64 + 1)]
    expected = all(Fa(x) <= Gb(x) for x in grid)
    v = pointwise_leq(Fa, Gb, 4)
    assert bool(v) == expected
    if not v:
        x = F(v.witness["x"])
        assert Fa(x) > Gb(x)
    assert bool(pointwise_equal(Fa, Gb, 4)) == all(Fa(x) == Gb(x) for x in grid)


def test_probe_points_include_jumps_and_midpoints():
    pts = probe_points(2, UnitStep(1))
    assert pts == [F(0), F(1, 2), F(1), F(3, 2), F(2)]


def test_equal_everywhere():
    A = FiniteStep(((F(1), F(1, 2)), (F(2), F(1))))
    B = FiniteStep(((F(1), F(1, 2)), (F(2), F(1)), (F(3), F(1))))
    assert equal_everywhere(A, B)
    assert not equal_everywhere(A, UnitStep(1))
    assert not equal_everywhere(HohleFamily(1, 2), HohleFamily(2, 2))


@pytest.mark.parametrize("Fn, expected", [
    (EPS0, F(0)),
    (UnitStep(F(1, 2)), F(1, 2)),
    (UnitStep(F(3)), F(1)),
    # 1 - 1/(N0(n+1)) > 1 - t as soon as t > 1/10
    (HohleFamily(4, 2), F(1, 10)),
    (HohleFamily(0, 2), F(1, 2)),
])
def test_levy_to_eps0_values(Fn, expected):
    assert levy_to_eps0(Fn) == expected


@given(finite_steps(den=16))
def test_levy_to_eps0_against_grid(Fn):
    # oracle: scan t = k/1024; the qualifying set is open, (L, inf), and L is a
    # multiple of 1/16, so the first qualifying grid point is L + 1/1024
    L = levy_to_eps0(Fn)
    first = next(F(k, 1024) for k in range(1, 2049) if Fn(F(k, 1024)) > 1 - F(k, 1024))
    assert first == L + F(1, 1024)
    if L > 0:
        assert not Fn(L) > 1 - L


def test_levy_distance_examples():
    res = F(1, 1024)
    assert levy_distance(EPS0, EPS0, res) == 0
    d = levy_distance(EPS0, UnitStep(F(1, 2)), res)
    assert F(1, 2) <= d <= F(1, 2) + res


@given(finite_steps(max_jumps=3), finite_steps(max_jumps=3))
def test_levy_distance_symmetric_and_bounded(Fa, Gb):
    res = F(1, 256)
    d = levy_distance(Fa, Gb, res)
    assert d == levy_distance(Gb, Fa, res)
    assert 0 <= d <= 1
    assert levy_distance(Fa, Fa, res) == 0
