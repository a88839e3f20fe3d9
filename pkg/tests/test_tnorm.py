from fractions import Fraction as F

import pytest
from hypothesis import given

from pnspace._rational import unit_grid
from pnspace.metrize import HypothesisError, compute_N0
from pnspace.tnorm import (Drastic, HalfProductJump, Lukasiewicz, Min, OutOfTable, Product, TNormDomainError,
                           by_name, check_archimedean_near_origin, check_subproduct, check_tnorm_axioms, custom,
                           from_table, hypothesis_records, iterate, iterate_table, sup_diagonal)

from conftest import BUILTINS, unit_fractions


@pytest.mark.parametrize("T, x, y, expected", [
    (Min, F(2, 5), F(3, 5), F(2, 5)),
    (Product, F(1, 2), F(1, 3), F(1, 6)),
    (Lukasiewicz, F(1, 2), F(1, 2), F(0)),
    (Lukasiewicz, F(3, 4), F(1, 2), F(1, 4)),
    (Drastic, F(1, 2), F(1, 2), F(0)),
    (Drastic, F(1, 2), F(1), F(1, 2)),
    (HalfProductJump, F(1, 2), F(1, 2), F(1, 8)),
    (HalfProductJump, F(1), F(3, 7), F(3, 7)),
])
def test_values(T, x, y, expected):
    assert T(x, y) == expected


def test_dual_conorm():
    assert Min.dual(F(1, 4), F(1, 2)) == F(1, 2)
    assert Product.dual(F(1, 2), F(1, 2)) == F(3, 4)
    assert Drastic.dual(F(0), F(2, 3)) == F(2, 3)
    assert Drastic.dual(F(1, 3), F(2, 3)) == 1


def test_domain_errors():
    with pytest.raises(TNormDomainError):
        Min(F(3, 2), F(0))
    with pytest.raises(TNormDomainError):
        Min.dual(F(-1, 2), F(0))


def test_by_name_aliases():
    assert by_name("Z") is Drastic
    assert by_name("halfproduct") is HalfProductJump
    with pytest.raises(ValueError, match="unknown t-norm"):
        by_name("hamacher")


def test_iterate_examples():
    assert iterate(Min, 3, F(2, 5), F(3, 5)) == F(2, 5)
    assert iterate(HalfProductJump, 2, F(1, 2), F(1, 2)) == F(1, 128)
    assert iterate(Drastic, 1, F(1, 2), F(1)) == F(1, 2)
    assert iterate(Drastic, 2, F(1, 2), F(1)) == 0
    with pytest.raises(ValueError):
        iterate(Min, 0, F(1), F(1))


@given(unit_fractions(), unit_fractions())
def test_iterate_is_nonincreasing(x, y):
    for T in BUILTINS:
        vals = iterate_table(T, 5, x, y)
        assert all(b <= a for a, b in zip(vals, vals[1:]))
        assert vals == [iterate(T, r, x, y) for r in range(1, 6)]


@given(unit_fractions(), unit_fractions(), unit_fractions())
def test_axioms_hold_pointwise(x, y, z):
    for T in BUILTINS:
        assert T(x, y) == T(y, x)
        assert T(T(x, y), z) == T(x, T(y, z))
        assert T(x, 1) == x
        lo, hi = min(y, z), max(y, z)
        assert T(x, lo) <= T(x, hi)


@given(unit_fractions(), unit_fractions())
def test_bounded_by_drastic_and_min(x, y):
    for T in BUILTINS:
        assert Drastic(x, y) <= T(x, y) <= Min(x, y)


@given(unit_fractions(), unit_fractions())
def test_conorm_has_identity_zero(x, y):
    for T in BUILTINS:
        S = T.dual
        assert S(x, 0) == x
        assert S(x, y) == S(y, x)
        assert S(x, y) >= max(x, y)


def test_builtin_grid_certification(builtin):
    records = check_tnorm_axioms(builtin, unit_grid(16))
    assert [r.check_id.split(".")[-1] for r in records] == [
        "range", "commutative", "associative", "monotone", "identity"]
    assert all(r.status == "pass" for r in records)
    assert all(r.note == "analytic" for r in records)


def test_grid_must_contain_endpoints():
    with pytest.raises(ValueError):
        check_tnorm_axioms(Min, [F(0), F(1, 2)])


def test_squared_lukasiewicz_candidate_fails_identity():
    # max(0, x + y - 1)^2 is not a t-norm: T(x, 1) = x^2
    T = custom("LukSq", lambda x, y: max(F(0), x + y - 1) ** 2)
    records = {r.check_id.split(".")[-1]: r for r in check_tnorm_axioms(T, unit_grid(16))}
    assert records["identity"].status == "fail"
    w = records["identity"].witness
    x = F(w["x"])
    assert F(w["T(x,1)"]) == x * x != x
    assert records["commutative"].status == "pass"
    assert records["identity"].note == "grid certification"


def test_broken_table_is_caught():
    pts = [F(k, 10) for k in range(11)]
    triples = [(x, y, min(x, y)) for x in pts for y in pts]
    triples = [(x, y, F(1, 5) if (x, y) == (F(3, 10), F(7, 10)) else v) for x, y, v in triples]
    T = from_table("Broken", triples)
    records = {r.check_id.split(".")[-1]: r for r in check_tnorm_axioms(T)}
    assert records["commutative"].status == "fail"
    assert records["commutative"].witness == {"x": "3/10", "y": "7/10", "T(x,y)": "1/5", "T(y,x)": "3/10"}
    assert records["identity"].status == "pass"


def test_table_lookup_outside_grid():
    T = from_table("tiny", [(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 1)])
    with pytest.raises(OutOfTable):
        T(F(1, 2), F(1))


def test_sup_diagonal_closed_forms_against_grid():
    # oracle: max of T(x, x) over the grid k/1024, k < 1024
    xs = [F(k, 1024) for k in range(1024)]
    expected = {"M": 1, "Pi": 1, "W": 1, "Z": 0, "HalfProductJump": F(1, 2)}
    for T in BUILTINS:
        value, exact = sup_diagonal(T)
        assert exact and value == expected[T.name]
        grid_max = max(T(x, x) for x in xs)
        assert grid_max <= value
        assert value - grid_max <= F(1, 100)


def test_sup_diagonal_of_custom_is_a_grid_bound():
    T = custom("P2", lambda x, y: x * y)
    value, exact = sup_diagonal(T, unit_grid(8))
    assert not exact and value == F(49, 64)


def test_subproduct_and_archimedean():
    assert check_subproduct(Drastic, 1)
    assert check_subproduct(HalfProductJump, 1)
    assert not check_subproduct(Min, 1)
    assert check_archimedean_near_origin(HalfProductJump, 1)
    assert check_archimedean_near_origin(Product, F(1, 2))
    # Z(x, x) = 0 is not > 0
    assert not check_archimedean_near_origin(Drastic, 1)


def test_subproduct_on_custom_grid():
    T = custom("halfmin", lambda x, y: x if y == 1 else (y if x == 1 else min(x, y) / 2))
    v = check_subproduct(T, F(1, 2), [F(k, 8) for k in range(1, 4)])
    assert not v
    assert set(v.witness) >= {"x", "y"}


def test_gate_values():
    assert compute_N0(Drastic) == 2
    assert compute_N0(HalfProductJump) == 2
    assert compute_N0(HalfProductJump, variant="archimedean") == 2
    assert compute_N0(Drastic, delta=F(1, 3)) == 4
    for T in (Min, Product, Lukasiewicz):
        with pytest.raises(HypothesisError) as err:
            compute_N0(T)
        assert err.value.hypothesis == "sup-diagonal"


def test_hypothesis_records_for_min():
    recs = {r.check_id: r for r in hypothesis_records(Min, 1)}
    assert recs["hypothesis.M.sup_diagonal"].status == "fail"
    assert recs["hypothesis.M.subproduct"].status == "fail"
