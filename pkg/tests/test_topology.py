from fractions import Fraction as F

import pytest

from pnspace.spaces import Gauge, Vector, embed_normed, l1, linf, sample_vectors, theta
from pnspace.topology import (NeighborhoodBase, NotRadial, check_filter_nesting, check_frechet_separable,
                              check_hausdorff, check_levy_characterization, check_radial_circled,
                              check_topology_axiom, check_translation, derive_topology, levy_index,
                              pn_uniformity, strong_base, strong_neighborhood, uniformity_from_theta_base)

TS = [F(1, 16), F(1, 8), F(1, 4), F(1, 3), F(1, 2), F(3, 4), F(1), F(3, 2)]
LAMS = [F(k, 4) for k in range(-4, 5)]


@pytest.fixture(scope="module")
def linf_space():
    return embed_normed(linf, 2)


@pytest.fixture(scope="module")
def samples():
    return sample_vectors(2, 40, 5)


def test_strong_neighbourhood_of_embedding(linf_space, samples):
    # eps_d(t) > 1 - t  <=>  d < t, for 0 < t <= 1
    for p in samples[:10]:
        for t in [t for t in TS if t <= 1]:
            member = strong_neighborhood(linf_space, p, t)
            for r in samples:
                assert member(r) == (linf(p - r) < t)
    with pytest.raises(ValueError):
        strong_neighborhood(linf_space, theta(2), 0)


def test_strong_base_separates(linf_space, samples):
    B = strong_base(linf_space, 64)
    assert check_frechet_separable(B, samples).status == "pass"
    assert check_filter_nesting(B, samples).status == "pass"
    for rec in check_radial_circled(lambda r: B.contains(4, r), samples, LAMS, "N4"):
        assert rec.status == "pass"


def test_shallow_base_fails_to_separate(linf_space):
    B = strong_base(linf_space, 2)
    rec = check_frechet_separable(B, [theta(2), Vector.of(F(1, 10), 0)])
    assert rec.status == "fail"
    assert rec.witness["q"] == ["1/10", "0"]


def test_uniformity(linf_space, samples):
    U = pn_uniformity(linf_space, 4)
    assert check_hausdorff(U, samples, hint=levy_index(linf_space)).status == "pass"
    # without the index hint a depth-4 uniformity cannot split close points
    close = [Vector.of(0, 0), Vector.of(F(1, 100), 0)]
    assert check_hausdorff(U, close).status == "fail"
    assert check_hausdorff(U, close, hint=levy_index(linf_space)).status == "pass"


def test_derived_topology_matches_sections(linf_space, samples):
    U = pn_uniformity(linf_space, 8)
    p = samples[7]
    B = derive_topology(U, p)
    for r in samples:
        for n in range(1, 9):
            assert B.contains(n, r) == U.contains(n, p, r)


def test_non_radial_base_rejected():
    g = Gauge("halfspace")
    B = NeighborhoodBase(theta(2), lambda n, r: g.value(r) <= F(1, n), 5, "half")
    pts = [Vector.of(F(1, 2), 0), Vector.of(F(-1, 2), 0)]
    with pytest.raises(NotRadial):
        uniformity_from_theta_base(B, pts)
    recs = check_radial_circled(lambda r: B.contains(2, r), pts, LAMS, "half")
    assert recs[0].status == "fail"
    assert recs[0].witness == {"p": ["1/2", "0"], "p_in": False, "-p_in": True}


def test_translate_shifts_center():
    B = NeighborhoodBase(theta(2), lambda n, r: l1(r) <= F(1, n), 3)
    p = Vector.of(1, 1)
    Bp = B.translate(p)
    assert Bp.center == p
    assert Bp.contains(2, Vector.of(F(3, 2), 1)) and not Bp.contains(3, Vector.of(F(3, 2), 1))


def test_translation_and_levy(linf_space, samples):
    assert check_translation(linf_space, samples, TS).status == "pass"
    main, boundary = check_levy_characterization(linf_space, samples, TS)
    assert main.status == "pass"
    # the qualifying set {t : F(t) > 1 - t} is open, so t = d_L is never inside
    assert boundary.status == "pass"
    assert boundary.values["boundary_instances"] > 0


def test_topology_axiom(linf_space, samples):
    grid = TS + [F(1, 2 ** k) for k in range(5, 10)]
    rec = check_topology_axiom(linf_space, samples, grid)
    assert rec.status == "pass"
    with pytest.raises(ValueError):
        check_topology_axiom(linf_space, samples, [F(0)])


def test_circled_lambda_range():
    with pytest.raises(ValueError):
        check_radial_circled(lambda r: True, [theta(1)], [F(2)])
