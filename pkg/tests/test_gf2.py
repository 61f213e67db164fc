import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from hfcalc import _kernels
from hfcalc.gf2 import (
    BitMatrix,
    DimensionMismatch,
    Subspace,
    extend_to_basis,
    inverse,
    kernel_basis,
    kronecker,
    preimage,
    reduce,
    solve_in_image,
)

BACKENDS = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    previous = _kernels.BACKEND
    _kernels.use_backend(request.param)
    yield request.param
    _kernels.use_backend(previous)


@st.composite
def matrices(draw, max_rows=12, max_cols=12, rows=None, cols=None):
    r = rows if rows is not None else draw(st.integers(0, max_rows))
    c = cols if cols is not None else draw(st.integers(0, max_cols))
    bits = draw(st.lists(st.integers(0, 1), min_size=r * c, max_size=r * c))
    return BitMatrix.from_dense(np.array(bits, dtype=np.uint8).reshape(r, c))


def reference_rank(m: BitMatrix) -> int:
    return oracle.rank_of(int("".join(map(str, row[::-1])) or "0", 2) for row in m.to_lists())


# -- worked examples -------------------------------------------------------

def test_rank_examples(backend):
    assert BitMatrix.identity(2).rank() == 2
    assert BitMatrix.from_rows([[1, 1], [1, 1]]).rank() == 1


def test_kernel_examples():
    assert kernel_basis(BitMatrix.identity(3)).dim == 0
    assert kernel_basis(BitMatrix.zeros(2, 3)).dim == 3
    k = kernel_basis(BitMatrix.from_rows([[1, 1, 0], [0, 0, 0]]))
    assert k.dim == 2
    assert k.contains([1, 1, 0])


def test_solve_examples():
    assert list(solve_in_image(BitMatrix.identity(3), [1, 0, 0])) == [1, 0, 0]
    assert solve_in_image(BitMatrix.zeros(2, 2), [1, 0]) is None
    assert solve_in_image(BitMatrix.from_rows([[1], [1]]), [1, 0]) is None


def test_kronecker_examples():
    assert kronecker(BitMatrix.identity(2), BitMatrix.identity(3)) == BitMatrix.identity(6)
    empty = kronecker(BitMatrix.identity(2), BitMatrix(0, 0))
    assert empty.shape == (0, 0)


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        BitMatrix.identity(2) @ BitMatrix.identity(3)
    with pytest.raises(DimensionMismatch):
        BitMatrix.identity(2) + BitMatrix.identity(3)
    with pytest.raises(ValueError):
        inverse(BitMatrix.zeros(2, 2))


def test_wide_matrix_crosses_word_boundary(backend):
    dense = np.zeros((3, 130), dtype=np.uint8)
    dense[0, 0] = dense[1, 64] = dense[2, 129] = 1
    dense[2, 0] = 1
    m = BitMatrix.from_dense(dense)
    assert m.rank() == 3
    assert m[2, 129] == 1 and m[1, 63] == 0
    assert np.array_equal(m.to_dense(), dense)


# -- properties ------------------------------------------------------------

@given(matrices())
def test_rank_matches_reference(m):
    assert m.rank() == reference_rank(m)


@given(matrices())
def test_rank_of_transpose(m):
    assert m.T.rank() == m.rank()


@given(matrices())
def test_rank_nullity(m):
    assert kernel_basis(m).dim + m.rank() == m.ncols
    for v in kernel_basis(m).vectors():
        assert not (m @ v).any()


@given(matrices(max_rows=4, max_cols=4), matrices(max_rows=4, max_cols=4))
def test_kronecker_rank_multiplies(a, b):
    assert kronecker(a, b).rank() == a.rank() * b.rank()


@given(matrices(), st.data())
def test_solutions_are_exact(m, data):
    v = np.array(data.draw(st.lists(st.integers(0, 1), min_size=m.nrows, max_size=m.nrows)), dtype=np.uint8)
    x = solve_in_image(m, v)
    in_image = Subspace.column_space(m).contains(v) if m.nrows else True
    assert (x is not None) == in_image
    if x is not None:
        assert np.array_equal(m @ x, v)


@given(matrices(rows=6, cols=6))
def test_reduction_transform(m):
    red = reduce(m)
    assert red.transform @ m == red.rref
    assert red.transform.rank() == m.nrows
    if red.rank == m.nrows:
        assert inverse(m) @ m == BitMatrix.identity(m.nrows)


@given(matrices(max_rows=6, cols=8), matrices(max_rows=6, cols=8))
def test_intersection_dimension(a, b):
    sa, sb = Subspace(8, a), Subspace(8, b)
    assert sa.intersect(sb).dim == sa.dim + sb.dim - (sa + sb).dim
    for v in sa.intersect(sb).vectors():
        assert sa.contains(v) and sb.contains(v)


@given(matrices(max_rows=6, cols=7))
def test_extend_to_basis(a):
    s = Subspace(7, a)
    full = extend_to_basis(s.vectors(), 7)
    assert Subspace.span(7, full).dim == 7
    assert len(s.complement_basis()) == 7 - s.dim


@given(matrices(rows=5, cols=6), matrices(max_rows=5, cols=5))
def test_preimage(m, t):
    target = Subspace(5, t)
    pre = preimage(m, target)
    for v in pre.vectors():
        assert target.contains(m @ v)
    assert pre.dim == kernel_basis(m).dim + (Subspace.column_space(m).intersect(target)).dim


@given(matrices(rows=9, cols=11), matrices(rows=11, cols=7))
def test_backends_agree(a, b):
    results = []
    for name in BACKENDS:
        _kernels.use_backend(name)
        red = reduce(a)
        results.append((a.rank(), red.rref, red.transform, a @ b))
    _kernels.use_backend(BACKENDS[-1])
    assert all(r == results[0] for r in results)


def test_environment_flag_selects_numpy():
    env = dict(os.environ, HFCALC_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "import hfcalc._kernels as k; print(k.BACKEND, k.HAVE_NUMBA)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.split() == ["numpy", "False"]
