import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfcalc import fixtures
from hfcalc.complexes import homology
from hfcalc.corpus import CORPUS, diagnose
from hfcalc.errors import DualityRequired, InvariantViolation, ParseError
from hfcalc.knot import (
    a_complex,
    connected_sum,
    find_isomorphism,
    genus,
    graded_piece,
    graded_ranks,
    hat_complex,
    mirror,
    parse,
    parse_validate,
    parts_of_a,
    sub_at_least,
    to_text,
)
from hfcalc.random_complexes import box, random_complexes, staircase

RANDOM = random_complexes(seed=11, count=15)


def test_fixtures_validate(knots):
    assert genus(knots["unknot"]) == 0
    assert genus(knots["trefoil_r"]) == 1
    assert genus(knots["trefoil_l"]) == 1
    assert genus(knots["figure8"]) == 1


@pytest.mark.parametrize("case", CORPUS, ids=[c.label for c in CORPUS])
def test_corruption_corpus(case):
    assert diagnose(case.text()) == case.expected


def test_deleted_dual_arrow_names_duality():
    text = fixtures.text("trefoil_r").replace("arrow b c 0 1\n", "")
    with pytest.raises(InvariantViolation) as info:
        parse_validate(text)
    assert info.value.which == "duality-arrows"


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as info:
        parse("knot k\ngen a 0\nbogus\n")
    assert info.value.line == 3


def test_round_trip(knots):
    for k in knots.values():
        assert parse_validate(to_text(k)) == k


def test_hat_and_filtration(knots):
    tr = knots["trefoil_r"]
    hat = hat_complex(tr).complex
    assert hat.differential.to_lists() == [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    assert homology(hat).rank == 1
    top = sub_at_least(tr, 1)
    assert top.indices == (0,) and top.complex.differential.is_zero()
    for k in knots.values():
        assert sub_at_least(k, -genus(k) - 1).dim == k.size


def test_a_complex_examples(knots):
    assert homology(a_complex(knots["unknot"], 5)).rank == 1
    a0 = a_complex(knots["trefoil_r"], 0)
    assert a0.differential.to_lists() == [[0, 1, 0], [0, 0, 0], [0, 1, 0]]
    assert homology(a0).rank == 1
    f0 = a_complex(knots["figure8"], 0)
    assert f0.differential.to_lists()[0][1] == 1 and f0.differential.to_lists()[2][1] == 1
    assert f0.differential.rank() == 1
    assert homology(f0).rank == 3


def test_parts_of_a_examples(knots):
    j_part, i_part = parts_of_a(knots["trefoil_r"], 1)
    assert j_part.target.names == ("a",)
    assert i_part.target.dim == 3
    j_part, i_part = parts_of_a(knots["unknot"], 0)
    assert j_part.matrix.to_lists() == [[1]] and i_part.matrix.to_lists() == [[1]]
    j_part, i_part = parts_of_a(knots["figure8"], 0)
    c, a = knots["figure8"].index("c"), knots["figure8"].index("a")
    assert j_part.matrix.column(c).sum() == 0 and all(
        j_part.matrix.column(x).sum() == 1 for x in range(5) if x != c
    )
    assert i_part.matrix.column(a).sum() == 0 and all(
        i_part.matrix.column(x).sum() == 1 for x in range(5) if x != a
    )


def test_parts_need_duality(knots):
    k = knots["trefoil_r"]
    bare = type(k)(k.name, k.gens, k.sigma, k.arrows, None)
    with pytest.raises(DualityRequired):
        parts_of_a(bare, 0)


def test_mirror(knots):
    assert find_isomorphism(mirror(knots["unknot"]), knots["unknot"]) is not None
    assert find_isomorphism(mirror(knots["trefoil_r"]), knots["trefoil_l"]) is not None
    assert find_isomorphism(knots["trefoil_r"], knots["trefoil_l"]) is None
    iso = find_isomorphism(mirror(knots["figure8"]), knots["figure8"])
    assert iso is not None and iso["a"] == "c"


def test_connected_sum(knots):
    tr, un = knots["trefoil_r"], knots["unknot"]
    assert find_isomorphism(connected_sum(tr, un), tr) is not None
    assert list(graded_ranks(connected_sum(tr, tr)).values()) == [1, 2, 3, 2, 1]
    assert genus(connected_sum(tr, knots["figure8"])) == 2


def test_staircase_and_box_shapes():
    st2 = staircase([1, 2])
    assert genus(st2) == 3
    assert homology(hat_complex(st2).complex).rank == 1
    b = box(2, center=1)
    assert homology(hat_complex(b).complex).rank == 0


@pytest.mark.parametrize("k", RANDOM, ids=lambda k: k.name)
def test_random_structure(k):
    g = genus(k)
    assert homology(hat_complex(k).complex).rank == 1
    assert sum(graded_piece(k, s).dim for s in range(-g, g + 1)) == k.size
    for s in range(-g - 1, g + 2):
        assert graded_piece(k, s).dim == graded_piece(k, -s).dim
        a = a_complex(k, s)
        assert a.dim == k.size
        parts_of_a(k, s)  # raises if a projection kernel is not a subcomplex
    assert mirror(mirror(k)) == k


@given(st.integers(0, 10_000))
def test_generated_complexes_are_valid(seed):
    for k in random_complexes(seed, 2):
        assert parse_validate(to_text(k)) == k
