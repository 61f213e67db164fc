import dataclasses

import pytest

from hfcalc.errors import CrossCheckFailed, DSquaredNonzero, NotCoprime, NTooSmall
from hfcalc.knot import genus
from hfcalc.random_complexes import random_complexes
from hfcalc.surgery import (
    cross_validate,
    dual_knot_advisory,
    dual_knot_hfk,
    large_surgery_table,
    os_cone_diagram,
    os_cone_rank,
    rational_surgery_rank,
    transposition_neutral,
)

FIXTURES = ["unknot", "trefoil_r", "trefoil_l", "figure8"]


def test_lens_space_ranks(packages):
    for p, q in ((1, 1), (2, 1), (3, 2), (5, 3)):
        assert rational_surgery_rank(packages["unknot"], p, q) == p
    assert rational_surgery_rank(packages["unknot"], 0, 1) == 2


def test_plus_one_surgeries(packages, knots):
    assert rational_surgery_rank(packages["trefoil_r"], 1, 1) == 1
    assert rational_surgery_rank(packages["trefoil_l"], 1, 1) == 3
    assert os_cone_rank(knots["unknot"]) == 1
    assert os_cone_rank(knots["figure8"]) == 3


def test_cone_map_ranks(knots):
    assert os_cone_diagram(knots["trefoil_r"]).map_ranks() == {"h-1": 1, "h0": 0, "v0": 0, "v1": 1}
    assert set(os_cone_diagram(knots["trefoil_l"]).map_ranks().values()) == {1}
    assert set(os_cone_diagram(knots["figure8"]).map_ranks().values()) == {1}
    assert sum(os_cone_diagram(knots["figure8"]).a_ranks.values()) == 5


def test_slope_checks(packages):
    for p, q in ((2, 4), (-1, 1), (1, 0)):
        with pytest.raises(NotCoprime):
            rational_surgery_rank(packages["unknot"], p, q)


def test_large_surgery(knots):
    tr = large_surgery_table(knots["trefoil_r"], 3)
    assert list(tr.ranks.values()) == [1, 1, 1] and tr.total == 3
    assert large_surgery_table(knots["trefoil_l"], 3).total == 5
    assert large_surgery_table(knots["unknot"], 1).total == 1
    with pytest.raises(NTooSmall):
        large_surgery_table(knots["trefoil_r"], 2)


def test_dual_knot(knots):
    assert {s: r for s, r in dual_knot_hfk(knots["unknot"], 1).items() if r} == {0: 1}
    tl = dual_knot_hfk(knots["trefoil_l"], 1)
    assert [tl[s] for s in (-1, 0, 1)] == [1, 3, 1]
    tr = dual_knot_hfk(knots["trefoil_r"], 0)
    assert [tr[s] for s in (-1, 0, 1)] == [2, 2, 0]
    assert dual_knot_advisory(0) and dual_knot_advisory(1) is None


@pytest.mark.parametrize("name", FIXTURES)
def test_cross_validation(knots, packages, name):
    report = cross_validate(knots[name], packages[name])
    assert report["rational_1_1"] == report["os_cone"]
    assert os_cone_rank(knots[name]) % 2 == 1
    assert report["growth_steps"] == [1, 1, 1]


@pytest.mark.parametrize("name", FIXTURES)
def test_transposition_neutral(packages, name):
    for p, q in ((1, 1), (2, 1), (3, 2), (0, 1)):
        assert transposition_neutral(packages[name], p, q)


@pytest.mark.parametrize("swap", [("psi", "psibar"), ("phi", "phibar")])
def test_swapped_maps_are_caught(knots, packages, swap):
    p = packages["trefoil_l"]
    first, second = swap
    broken = dataclasses.replace(p, **{first: getattr(p, second), second: getattr(p, first)})
    with pytest.raises((CrossCheckFailed, DSquaredNonzero)):
        cross_validate(knots["trefoil_l"], broken)


def test_swapping_every_map_is_a_symmetry(packages):
    p = packages["trefoil_l"]
    mirrored = dataclasses.replace(p, phi=p.phibar, phibar=p.phi, psi=p.psibar, psibar=p.psi)
    for slope in ((1, 1), (2, 1), (3, 2)):
        assert rational_surgery_rank(mirrored, *slope) == rational_surgery_rank(p, *slope)


@pytest.mark.parametrize("k", random_complexes(seed=31, count=8), ids=lambda k: k.name)
def test_random_cross_validation(k):
    report = cross_validate(k)
    assert report["growth_steps"] == [1] * 3
    assert genus(k) >= 0
