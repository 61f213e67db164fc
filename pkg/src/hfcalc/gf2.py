"""Dense linear algebra over the two-element field.

Matrices are :class:`BitMatrix` objects holding word-packed rows; vectors are
plain ``uint8`` numpy arrays of zeros and ones.  Everything treats matrices as
acting on column vectors, so ``m @ v`` is the image of ``v``.  Empty (0 x n and
n x 0) matrices are ordinary values and behave as zero maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels


def _nwords(ncols: int) -> int:
    return (ncols + 63) >> 6


def pack_rows(dense: np.ndarray) -> np.ndarray:
    """Pack a (rows x cols) 0/1 array into (rows x words) ``uint64``."""
    dense = np.asarray(dense, dtype=np.uint8) & 1
    nrows, ncols = dense.shape
    nw = _nwords(ncols)
    if nrows == 0 or nw == 0:
        return np.zeros((nrows, nw), dtype=np.uint64)
    packed = np.packbits(dense, axis=1, bitorder="little")
    padded = np.zeros((nrows, nw * 8), dtype=np.uint8)
    padded[:, : packed.shape[1]] = packed
    return padded.view("<u8").astype(np.uint64)


def unpack_rows(words: np.ndarray, ncols: int) -> np.ndarray:
    nrows = words.shape[0]
    if nrows == 0 or ncols == 0:
        return np.zeros((nrows, ncols), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :ncols]


def as_vector(v, length: int | None = None) -> np.ndarray:
    arr = np.asarray(v, dtype=np.uint8).reshape(-1) & 1
    if length is not None and arr.shape[0] != length:
        raise DimensionMismatch(f"vector of length {arr.shape[0]}, expected {length}")
    return arr


class DimensionMismatch(ValueError):
    pass


class BitMatrix:
    """A ``nrows x ncols`` matrix over GF(2) stored as packed rows."""

    __slots__ = ("nrows", "ncols", "words")

    def __init__(self, nrows: int, ncols: int, words: np.ndarray | None = None):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        if words is None:
            words = np.zeros((self.nrows, _nwords(self.ncols)), dtype=np.uint64)
        elif words.shape != (self.nrows, _nwords(self.ncols)):
            raise DimensionMismatch(f"word array {words.shape} does not fit {nrows}x{ncols}")
        self.words = words

    # -- construction ------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        dense = np.asarray(dense, dtype=np.uint8)
        if dense.ndim != 2:
            raise DimensionMismatch("expected a 2-d array")
        return cls(dense.shape[0], dense.shape[1], pack_rows(dense))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "BitMatrix":
        if len(rows) == 0:
            return cls(0, ncols or 0)
        return cls.from_dense(np.array(rows, dtype=np.uint8).reshape(len(rows), -1))

    @classmethod
    def from_columns(cls, cols: Sequence[np.ndarray], nrows: int) -> "BitMatrix":
        if len(cols) == 0:
            return cls(nrows, 0)
        return cls.from_dense(np.stack([as_vector(c, nrows) for c in cols], axis=1))

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int]]) -> "BitMatrix":
        """Matrix whose (i, j) entry is the parity of the number of times it is listed."""
        dense = np.zeros((nrows, ncols), dtype=np.uint8)
        for i, j in entries:
            dense[i, j] ^= 1
        return cls.from_dense(dense)

    # -- basic protocol ----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.nrows, self.ncols, self.words.copy())

    def to_dense(self) -> np.ndarray:
        return unpack_rows(self.words, self.ncols)

    def to_lists(self) -> list[list[int]]:
        return self.to_dense().astype(int).tolist()

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return int((self.words[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.words, other.words))

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.words.tobytes()))

    def __repr__(self) -> str:
        if self.nrows * self.ncols <= 64:
            body = "; ".join("".join(str(b) for b in row) for row in self.to_lists())
            return f"BitMatrix({self.nrows}x{self.ncols}: {body})"
        return f"BitMatrix({self.nrows}x{self.ncols})"

    def is_zero(self) -> bool:
        return not self.words.any()

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return BitMatrix(self.nrows, self.ncols, self.words ^ other.words)

    __sub__ = __add__

    def __matmul__(self, other):
        if isinstance(other, BitMatrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            if self.nrows == 0 or other.ncols == 0 or self.ncols == 0:
                return BitMatrix(self.nrows, other.ncols)
            out = _kernels.matmul(self.words, self.ncols, other.words)
            return BitMatrix(self.nrows, other.ncols, out)
        v = as_vector(other, self.ncols)
        return (self.to_dense().astype(np.int64) @ v.astype(np.int64) % 2).astype(np.uint8)

    @property
    def T(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def column(self, j: int) -> np.ndarray:
        return self.to_dense()[:, j].copy()

    def row(self, i: int) -> np.ndarray:
        return unpack_rows(self.words[i : i + 1], self.ncols)[0]

    def columns(self) -> list[np.ndarray]:
        dense = self.to_dense()
        return [dense[:, j].copy() for j in range(self.ncols)]

    def take(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "BitMatrix":
        dense = self.to_dense()
        if rows is not None:
            dense = dense[np.asarray(rows, dtype=np.int64)] if len(rows) else dense[:0]
        if cols is not None:
            dense = dense[:, np.asarray(cols, dtype=np.int64)] if len(cols) else dense[:, :0]
        return BitMatrix.from_dense(dense)

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        # eliminate along the shorter side
        if self.ncols > self.nrows:
            src = self.T
        else:
            src = self
        return int(_kernels.rank_destructive(src.words.copy(), src.ncols))


def hstack(blocks: Sequence[BitMatrix]) -> BitMatrix:
    if not blocks:
        raise ValueError("hstack of nothing")
    nrows = blocks[0].nrows
    if any(b.nrows != nrows for b in blocks):
        raise DimensionMismatch("hstack row counts differ")
    return BitMatrix.from_dense(np.concatenate([b.to_dense() for b in blocks], axis=1))


def vstack(blocks: Sequence[BitMatrix]) -> BitMatrix:
    if not blocks:
        raise ValueError("vstack of nothing")
    ncols = blocks[0].ncols
    if any(b.ncols != ncols for b in blocks):
        raise DimensionMismatch("vstack column counts differ")
    nrows = sum(b.nrows for b in blocks)
    words = np.concatenate([b.words for b in blocks], axis=0) if nrows else np.zeros((0, _nwords(ncols)), np.uint64)
    return BitMatrix(nrows, ncols, words)


def block(grid: Sequence[Sequence[BitMatrix | None]], row_dims: Sequence[int], col_dims: Sequence[int]) -> BitMatrix:
    """Assemble a block matrix; ``None`` entries are zero blocks."""
    r_off = np.concatenate([[0], np.cumsum(row_dims)]).astype(int)
    c_off = np.concatenate([[0], np.cumsum(col_dims)]).astype(int)
    dense = np.zeros((int(r_off[-1]), int(c_off[-1])), dtype=np.uint8)
    for bi, row in enumerate(grid):
        for bj, b in enumerate(row):
            if b is None:
                continue
            if b.shape != (row_dims[bi], col_dims[bj]):
                raise DimensionMismatch(
                    f"block ({bi},{bj}) has shape {b.shape}, expected {(row_dims[bi], col_dims[bj])}"
                )
            dense[r_off[bi] : r_off[bi + 1], c_off[bj] : c_off[bj + 1]] ^= b.to_dense()
    return BitMatrix.from_dense(dense)


def block_diag(blocks: Sequence[BitMatrix]) -> BitMatrix:
    grid = [[b if i == j else None for j, b in enumerate(blocks)] for i in range(len(blocks))]
    return block(grid, [b.nrows for b in blocks], [b.ncols for b in blocks])


# --------------------------------------------------------------------------
# elimination
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    """Cached row reduction ``transform @ matrix == rref``."""

    matrix: BitMatrix
    rank: int
    rref: BitMatrix
    transform: BitMatrix
    pivots: np.ndarray

    def solve(self, rhs) -> BitMatrix | np.ndarray | None:
        """Solve ``matrix @ x == rhs`` for a vector or a matrix of right-hand sides.

        For a vector returns the solution or ``None``; for a matrix returns the
        solution matrix, raising :class:`NotInImage` if any column fails.
        """
        if isinstance(rhs, BitMatrix):
            sol, ok = self._solve_dense(rhs.to_dense())
            if not ok.all():
                raise NotInImage(int(np.flatnonzero(~ok)[0]))
            return BitMatrix.from_dense(sol)
        v = as_vector(rhs, self.matrix.nrows)
        sol, ok = self._solve_dense(v.reshape(-1, 1))
        return sol[:, 0] if ok[0] else None

    def _solve_dense(self, rhs: np.ndarray):
        if rhs.shape[0] != self.matrix.nrows:
            raise DimensionMismatch(f"rhs has {rhs.shape[0]} rows, matrix has {self.matrix.nrows}")
        k = rhs.shape[1]
        w = (self.transform @ BitMatrix.from_dense(rhs)).to_dense()
        ok = ~w[self.rank :].any(axis=0) if k else np.zeros(0, dtype=bool)
        sol = np.zeros((self.matrix.ncols, k), dtype=np.uint8)
        if self.rank:
            sol[self.pivots] = w[: self.rank]
        return sol, ok


class NotInImage(ValueError):
    pass


def reduce(m: BitMatrix) -> Reduction:
    r, c = m.shape
    aug = np.zeros((r, c + r), dtype=np.uint8)
    aug[:, :c] = m.to_dense()
    aug[:, c:] = np.eye(r, dtype=np.uint8)
    words = pack_rows(aug)
    rank, pivots = _kernels.rref(words, c)
    dense = unpack_rows(words, c + r)
    return Reduction(
        matrix=m,
        rank=int(rank),
        rref=BitMatrix.from_dense(dense[:, :c]),
        transform=BitMatrix.from_dense(dense[:, c:]),
        pivots=np.asarray(pivots, dtype=np.int64),
    )


def rank_and_rref(m: BitMatrix) -> tuple[int, BitMatrix, BitMatrix]:
    """Return ``(rank, rref, transform)`` with ``transform @ m == rref``."""
    red = reduce(m)
    return red.rank, red.rref, red.transform


def rank(m: BitMatrix) -> int:
    return m.rank()


def inverse(m: BitMatrix) -> BitMatrix:
    if m.nrows != m.ncols:
        raise DimensionMismatch("inverse of a non-square matrix")
    red = reduce(m)
    if red.rank != m.nrows:
        raise ValueError("matrix is singular")
    return red.transform


def solve_in_image(m: BitMatrix, v) -> np.ndarray | None:
    """Some ``x`` with ``m @ x == v``, or ``None`` when ``v`` is not in the image."""
    v = as_vector(v)
    if v.shape[0] != m.nrows:
        raise DimensionMismatch(f"vector of length {v.shape[0]} for a matrix with {m.nrows} rows")
    return reduce(m).solve(v)


def kronecker(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Kronecker product; entry ((i,k),(j,l)) is a[i,j] * b[k,l]."""
    if 0 in a.shape or 0 in b.shape:
        return BitMatrix(a.nrows * b.nrows, a.ncols * b.ncols)
    return BitMatrix.from_dense(np.kron(a.to_dense(), b.to_dense()))


# --------------------------------------------------------------------------
# subspaces
# --------------------------------------------------------------------------

class Subspace:
    """Subspace of GF(2)^n kept as a reduced row-echelon basis."""

    __slots__ = ("ambient_dim", "_basis", "_red")

    def __init__(self, ambient_dim: int, basis: BitMatrix):
        if basis.ncols != ambient_dim:
            raise DimensionMismatch("basis vectors have the wrong length")
        red = reduce(basis)
        self.ambient_dim = ambient_dim
        self._basis = red.rref.take(rows=range(red.rank))
        self._red = None

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable) -> "Subspace":
        vecs = [as_vector(v, ambient_dim) for v in vectors]
        if not vecs:
            return cls(ambient_dim, BitMatrix(0, ambient_dim))
        return cls(ambient_dim, BitMatrix.from_dense(np.stack(vecs)))

    @classmethod
    def column_space(cls, m: BitMatrix) -> "Subspace":
        return cls(m.nrows, m.T)

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(n, BitMatrix.identity(n))

    @property
    def basis(self) -> BitMatrix:
        """Basis vectors as the rows of a matrix."""
        return self._basis

    @property
    def dim(self) -> int:
        return self._basis.nrows

    def vectors(self) -> list[np.ndarray]:
        dense = self._basis.to_dense()
        return [dense[i].copy() for i in range(dense.shape[0])]

    def as_columns(self) -> BitMatrix:
        return self._basis.T

    def _reduction(self) -> Reduction:
        if self._red is None:
            self._red = reduce(self.as_columns())
        return self._red

    def coordinates(self, v) -> np.ndarray | None:
        """Coefficients of ``v`` in the stored basis, or ``None`` if ``v`` is outside."""
        return self._reduction().solve(as_vector(v, self.ambient_dim))

    def contains(self, v) -> bool:
        return self.coordinates(v) is not None

    __contains__ = contains

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, vstack([self._basis, other._basis]))

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim and self._basis == other._basis

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def annihilator(self) -> BitMatrix:
        """A matrix whose kernel is exactly this subspace."""
        return kernel_basis(self._basis).basis

    def intersect(self, other: "Subspace") -> "Subspace":
        return kernel_basis(vstack([self.annihilator(), other.annihilator()]))

    def complement_basis(self) -> list[np.ndarray]:
        """Standard basis vectors completing this subspace to the whole space."""
        return extend_to_basis(self.vectors(), self.ambient_dim)[len(self.vectors()):]


def kernel_basis(m: BitMatrix) -> Subspace:
    """Subspace ``{v : m @ v == 0}``."""
    red = reduce(m.T)
    return Subspace(m.ncols, red.transform.take(rows=range(red.rank, m.ncols)))


def image(m: BitMatrix) -> Subspace:
    return Subspace.column_space(m)


def preimage(m: BitMatrix, target: Subspace) -> Subspace:
    """``{v : m @ v in target}``."""
    return kernel_basis(target.annihilator() @ m)


def extend_to_basis(vectors: Sequence[np.ndarray], n: int) -> list[np.ndarray]:
    """Extend independent ``vectors`` by standard basis vectors to a basis of GF(2)^n."""
    out = [as_vector(v, n) for v in vectors]
    current = Subspace.span(n, out)
    if current.dim != len(out):
        raise ValueError("vectors are not independent")
    if current.dim == n:
        return out
    # pivot-free columns of the rref are exactly the missing standard vectors
    pivots = set()
    dense = current.basis.to_dense()
    for row in dense:
        pivots.add(int(np.flatnonzero(row)[0]))
    for j in range(n):
        if j not in pivots:
            e = np.zeros(n, dtype=np.uint8)
            e[j] = 1
            out.append(e)
    return out
