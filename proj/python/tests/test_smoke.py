import cmath
import math

import pytest

import hypzeta


@pytest.fixture(scope="module")
def funnel():
    return hypzeta.three_funnel(6.0, 6.0)


@pytest.fixture(scope="module")
def delta(funnel):
    return hypzeta.hausdorff_dimension(funnel)


def test_group_shape(funnel):
    assert funnel.rank == 2
    assert len(funnel.discs) == 4
    assert len(funnel.generators) == 2
    assert hypzeta.validate(funnel) == []


def test_json_round_trip(funnel):
    back = hypzeta.parse_group(funnel.to_json())
    assert back.generators == funnel.generators
    assert back.discs == funnel.discs


def test_delta_two_ways(funnel, delta):
    assert 0.0 < delta < 1.0
    assert abs(hypzeta.pressure(funnel, delta)) < 1e-10
    assert abs(hypzeta.largest_real_zero(funnel) - delta) < 1e-8


def test_zeta_symmetry(funnel):
    s = complex(0.4, 1.3)
    z, err = hypzeta.zeta(funnel, s, [0.2, 0.1])
    assert err < 1e-8
    zc, _ = hypzeta.zeta(funnel, s.conjugate(), [0.2, 0.1])
    assert abs(z.conjugate() - zc) < 1e-10


def test_leading_zero(funnel, delta):
    res = hypzeta.find_zeros(funnel, [delta - 0.05, delta + 0.05, -1.0, 1.0])
    assert res["complete"]
    assert len(res["zeros"]) == 1
    assert abs(res["zeros"][0]["s"] - delta) < 1e-10
    assert hypzeta.count_zeros(funnel, [delta + 0.1, 2.0, -3.0, 3.0]) == 0


def test_phi_decreases(funnel, delta):
    assert hypzeta.phi(funnel, [0.04, 0.0], delta) < delta


def test_cylinder_lattice():
    cyl = hypzeta.cylinder(2.0)
    assert cyl.rank == 1
    with pytest.raises(hypzeta.HypzetaError) as info:
        hypzeta.hausdorff_dimension(cyl)
    assert info.value.code == "NonElementaryRequired"


def test_classes_and_counts(funnel):
    classes = hypzeta.primitive_classes(funnel, 12.5)
    assert all(length <= 12.5 for _, length, _ in classes)
    gen = [c for c in classes if c[0] == [1]]
    assert len(gen) == 1 and math.isclose(gen[0][1], 6.0, rel_tol=1e-10)
    n = sum(1 for _, _, hom in classes if hom == [1, 0])
    assert hypzeta.count_homology(funnel, [1, 0], 12.5) == n


def test_errors_carry_codes(funnel):
    with pytest.raises(hypzeta.HypzetaError) as info:
        hypzeta.parse_group("{")
    assert info.value.code == "ParseError"
    with pytest.raises(hypzeta.HypzetaError):
        hypzeta.find_zeros(funnel, [1.0, 0.0, 0.0, 1.0])
