import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfcalc.complexes import homology
from hfcalc.gf2 import inverse
from hfcalc.knot import hat_complex
from hfcalc.package import build_package
from hfcalc.random_complexes import random_complexes
from hfcalc.surgery import rational_surgery_rank
from hfcalc.verifier import (
    block_normal_form,
    formula_consistency,
    graded_cokernel,
    hypothesis_suite,
    inclusion_surjectivity,
    tau_of_cycle,
    tau_table,
    verify_report,
)

RANDOM = random_complexes(seed=5, count=10)


def test_tau_values(knots):
    assert tau_table(knots["unknot"]).value == 0
    assert tau_table(knots["trefoil_r"]).value == -1
    assert tau_table(knots["trefoil_l"]).value == 1
    assert tau_of_cycle(knots["trefoil_r"], [1, 0, 1]) == -1
    assert tau_of_cycle(knots["trefoil_r"], [0, 0, 1]) == -1


@given(st.integers(0, 7))
def test_tau_independent_of_representative(bits):
    k = random_complexes(3, 1)[0]
    hat = homology(hat_complex(k).complex)
    rep = hat.cycle_reps.column(0)
    b = hat.boundary_basis
    extra = np.zeros(k.size, dtype=np.uint8)
    for c in range(min(b.ncols, 3)):
        if bits >> c & 1:
            extra ^= b.column(c)
    assert tau_of_cycle(k, rep ^ extra) == tau_table(k).value


def _check_stage_one(p, form):
    one = form.stage_one
    assert inverse(one.basis_inf) @ p.phi @ one.basis_one == one.phi
    assert inverse(one.basis_inf) @ p.phibar @ one.basis_one == one.phibar
    assert inverse(one.basis_one) @ p.psi @ one.basis_zero == one.psi
    assert inverse(one.basis_one) @ p.psibar @ one.basis_zero == one.psibar
    assert one.pattern_ok()


@pytest.mark.parametrize("name", ["unknot", "trefoil_r", "trefoil_l", "figure8"])
def test_stage_one_on_fixtures(packages, name):
    p = packages[name]
    _check_stage_one(p, block_normal_form(p))


def test_stage_two_outcomes(packages):
    assert block_normal_form(packages["unknot"]).stage_two_ok
    tr = block_normal_form(packages["trefoil_r"])
    assert not tr.stage_two_ok and tr.obstruction.condition.startswith("D is not surjective")
    tl = block_normal_form(packages["trefoil_l"])
    assert not tl.stage_two_ok and "meets im(phibar)" in tl.obstruction.condition


def test_empty_zero_blocks(packages):
    blocks = block_normal_form(packages["unknot"]).stage_one.blocks
    for name in "MNPQ":
        assert 0 in blocks[name].shape


def test_formula_examples(packages):
    un = formula_consistency(packages["unknot"], samples=((5, 3),))
    assert un["samples"][0]["predicted"] == un["samples"][0]["computed"] == 5
    tr = formula_consistency(packages["trefoil_r"], samples=((1, 1),))
    assert (tr["samples"][0]["predicted"], tr["samples"][0]["computed"]) == (-1, 1)
    assert tr["obstruction"] and not tr["critical"]
    tl = formula_consistency(packages["trefoil_l"], samples=((1, 1),))
    assert tl["samples"][0]["status"] == "match"


def test_zero_slope_is_outside_the_range(packages):
    report = formula_consistency(packages["unknot"], samples=((0, 1),))
    assert report["samples"][0]["status"].startswith("mismatch outside") and not report["critical"]


def test_inclusion_surjectivity(knots):
    assert inclusion_surjectivity(knots["unknot"])["per_s"] == {0: True}
    assert all(inclusion_surjectivity(knots["trefoil_l"])["per_s"].values())
    assert inclusion_surjectivity(knots["trefoil_r"])["per_s"][0] is False


def test_graded_cokernel(knots):
    tr = graded_cokernel(knots["trefoil_r"])["per_s"][0]
    assert tr["target"] == 1 and tr["cokernel"] == 0
    tl = graded_cokernel(knots["trefoil_l"])
    assert tl["per_s"][0]["cokernel"] == 1 and not tl["dichotomy_holds"]


def test_hypothesis_suites(knots, packages):
    un = hypothesis_suite(knots["unknot"], packages["unknot"])
    assert un["passes"] and not un["counterexample_candidate"]
    tr = hypothesis_suite(knots["trefoil_r"], packages["trefoil_r"])
    assert "inclusion_surjective_for_nonpositive_s" in tr["failed"]
    tl = hypothesis_suite(knots["trefoil_l"], packages["trefoil_l"])
    assert "all_A_rank_one" in tl["failed"]


def test_report_is_json_friendly(knots, packages):
    import json

    json.dumps(verify_report(knots["figure8"], packages["figure8"]))


@pytest.mark.parametrize("k", RANDOM, ids=lambda k: k.name)
def test_random_normal_forms(k):
    p = build_package(k)
    form = block_normal_form(p)
    _check_stage_one(p, form)
    if form.stage_two_ok:
        two = form.stage_two
        assert two.forced_relations
        assert (two.Phi @ two.Upsilon).is_zero() and (two.Gamma @ two.Psi).is_zero()
        for num, den in ((1, 1), (2, 1), (1, 2)):
            predicted = num * (p.h_one - p.h_zero) + den * (p.h_one - p.h_inf)
            assert predicted == rational_surgery_rank(p, num, den)
