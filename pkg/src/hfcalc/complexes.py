"""Chain complexes with chosen bases, their homology, and diagrams of maps."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DifferentialNotSquareZero, DSquaredNonzero, NotAChainMap
from .gf2 import BitMatrix, DimensionMismatch, NotInImage, Subspace, block, hstack, kernel_basis, reduce


@dataclass(frozen=True, eq=False)
class BasedComplex:
    """Finite complex over GF(2) with a named generator basis.

    ``differential[i, j] == 1`` when generator ``i`` appears in the boundary of
    generator ``j``.  ``labels`` carries an optional integer per generator.
    """

    names: tuple[str, ...]
    differential: BitMatrix
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        n = len(self.names)
        if self.differential.shape != (n, n):
            raise DimensionMismatch(f"differential is {self.differential.shape} for {n} generators")
        if self.labels is not None and len(self.labels) != n:
            raise DimensionMismatch("one label per generator required")
        sq = self.differential @ self.differential
        if not sq.is_zero():
            i, j = map(int, np.argwhere(sq.to_dense())[0])
            raise DifferentialNotSquareZero(
                f"d^2 != 0: {self.names[i]} appears in d^2({self.names[j]})",
                witness=(self.names[j], self.names[i]),
            )

    @classmethod
    def zero(cls, names: Sequence[str] = (), labels: Sequence[int] | None = None) -> "BasedComplex":
        n = len(names)
        return cls(tuple(names), BitMatrix(n, n), None if labels is None else tuple(labels))

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def restrict(self, keep: Sequence[int]) -> "BasedComplex":
        """Subcomplex or quotient spanned by generators ``keep`` (closure not checked)."""
        keep = list(keep)
        return BasedComplex(
            tuple(self.names[i] for i in keep),
            self.differential.take(rows=keep, cols=keep),
            None if self.labels is None else tuple(self.labels[i] for i in keep),
        )

    def homology(self) -> "HomologyResult":
        return homology(self)


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: BasedComplex
    target: BasedComplex
    matrix: BitMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatch(
                f"chain map matrix {self.matrix.shape} vs {(self.target.dim, self.source.dim)}"
            )
        lhs = self.matrix @ self.source.differential
        rhs = self.target.differential @ self.matrix
        if lhs != rhs:
            j = int(np.argwhere((lhs + rhs).to_dense())[0][1])
            raise NotAChainMap(f"f d != d f on generator {self.source.names[j]}")

    def then(self, other: "ChainMap") -> "ChainMap":
        """Composite ``other . self``."""
        return ChainMap(self.source, other.target, other.matrix @ self.matrix)

    @classmethod
    def identity(cls, c: BasedComplex) -> "ChainMap":
        return cls(c, c, BitMatrix.identity(c.dim))

    @classmethod
    def by_names(cls, source: BasedComplex, target: BasedComplex, assignment: dict[str, str]) -> "ChainMap":
        """Map sending generator ``s`` to ``assignment[s]`` (missing keys go to zero)."""
        entries = [(target.index(t), source.index(s)) for s, t in assignment.items()]
        return cls(source, target, BitMatrix.from_entries(target.dim, source.dim, entries))


class HomologyResult:
    """Homology of a complex with explicit representative cycles.

    The rank is computed eagerly; representatives and the class-reduction data
    are built on first use.
    """

    def __init__(self, differential: BitMatrix, rank: int | None = None):
        self.differential = differential
        self.dim_total = differential.nrows
        if rank is None:
            rank = self.dim_total - 2 * differential.rank()
        self.rank = rank

    @cached_property
    def _bases(self):
        d = self.differential
        n = self.dim_total
        boundaries = Subspace.column_space(d).as_columns()
        cycles = kernel_basis(d).as_columns()
        joint = reduce(hstack([boundaries, cycles]))
        b = boundaries.ncols
        rep_idx = [int(p) - b for p in joint.pivots if p >= b]
        reps = cycles.take(cols=rep_idx) if rep_idx else BitMatrix(n, 0)
        if reps.ncols != self.rank:
            raise AssertionError("representative count disagrees with rank")
        return boundaries, reps, reduce(hstack([boundaries, reps]))

    @property
    def cycle_reps(self) -> BitMatrix:
        """Representative cycles as the columns of a matrix."""
        return self._bases[1]

    @property
    def boundary_basis(self) -> BitMatrix:
        return self._bases[0]

    def class_of(self, v) -> np.ndarray:
        """Coordinates of the class of cycle ``v`` in the representative basis."""
        boundaries, _, red = self._bases
        sol = red.solve(v)
        if sol is None:
            raise NotInImage("vector is not a cycle")
        return sol[boundaries.ncols :]

    def classes_of(self, cycles: BitMatrix) -> BitMatrix:
        boundaries, _, red = self._bases
        if cycles.ncols == 0:
            return BitMatrix(self.rank, 0)
        sol = red.solve(cycles)
        return sol.take(rows=range(boundaries.ncols, sol.nrows))

    def is_boundary(self, v) -> bool:
        return not self.class_of(v).any()

    def __repr__(self) -> str:
        return f"HomologyResult(rank={self.rank}, dim={self.dim_total})"


def homology(c: BasedComplex) -> HomologyResult:
    return HomologyResult(c.differential)


def induced_map(f: ChainMap, hs: HomologyResult | None = None, ht: HomologyResult | None = None) -> BitMatrix:
    """Matrix of ``H(f)`` in the representative bases of ``hs`` and ``ht``."""
    hs = hs or homology(f.source)
    ht = ht or homology(f.target)
    return ht.classes_of(f.matrix @ hs.cycle_reps)


def cone_of_sum(x: BasedComplex, y: BasedComplex, z: BasedComplex, fx: ChainMap, fy: ChainMap) -> BasedComplex:
    """Cone of ``fx + fy : x (+) y -> z`` on the space ``x (+) y (+) z``."""
    if fy.matrix.shape != (z.dim, y.dim) or fx.matrix.shape != (z.dim, x.dim):
        raise DimensionMismatch("cone maps have the wrong shape")
    d = block(
        [[x.differential, None, None], [None, y.differential, None], [fx.matrix, fy.matrix, z.differential]],
        [x.dim, y.dim, z.dim],
        [x.dim, y.dim, z.dim],
    )
    names = tuple(f"x:{n}" for n in x.names) + tuple(f"y:{n}" for n in y.names) + tuple(f"z:{n}" for n in z.names)
    labels = None
    if x.labels is not None and y.labels is not None and z.labels is not None:
        labels = x.labels + y.labels + z.labels
    return BasedComplex(names, d, labels)


# --------------------------------------------------------------------------
# diagrams
# --------------------------------------------------------------------------

@dataclass
class Diagram:
    """Directed graph of GF(2) vector spaces; the edge maps sum to a differential.

    Vertices are ``name -> dimension``; edges are ``(source, target, matrix)``
    with ``matrix`` of shape ``(dim target, dim source)``.
    """

    vertices: dict[str, int] = field(default_factory=dict)
    edges: list[tuple[str, str, BitMatrix]] = field(default_factory=list)

    def add_vertex(self, name: str, dim: int) -> None:
        if name in self.vertices:
            raise ValueError(f"duplicate vertex {name!r}")
        self.vertices[name] = int(dim)

    def add_edge(self, source: str, target: str, matrix: BitMatrix) -> None:
        expected = (self.vertices[target], self.vertices[source])
        if matrix.shape != expected:
            raise DimensionMismatch(f"edge {source}->{target} has shape {matrix.shape}, expected {expected}")
        self.edges.append((source, target, matrix))

    @property
    def dim(self) -> int:
        return sum(self.vertices.values())

    def offsets(self) -> dict[str, int]:
        out, pos = {}, 0
        for name, d in self.vertices.items():
            out[name] = pos
            pos += d
        return out

    def block_map(self, rows: Sequence[str], cols: Sequence[str]) -> BitMatrix:
        """Sum of the edge maps from the ``cols`` vertices into the ``rows`` vertices."""
        grid: list[list[BitMatrix | None]] = [[None] * len(cols) for _ in rows]
        r_index = {v: i for i, v in enumerate(rows)}
        c_index = {v: j for j, v in enumerate(cols)}
        for s, t, m in self.edges:
            if t in r_index and s in c_index:
                i, j = r_index[t], c_index[s]
                grid[i][j] = m if grid[i][j] is None else grid[i][j] + m
        return block(grid, [self.vertices[v] for v in rows], [self.vertices[v] for v in cols])

    def total_differential(self) -> BitMatrix:
        names = list(self.vertices)
        return self.block_map(names, names)

    def check_square_zero(self) -> None:
        """Raise :class:`DSquaredNonzero` naming an offending vertex pair and witness."""
        composite: dict[tuple[str, str], BitMatrix] = {}
        for s1, t1, m1 in self.edges:
            for s2, t2, m2 in self.edges:
                if s2 != t1:
                    continue
                key = (s1, t2)
                prod = m2 @ m1
                composite[key] = prod if key not in composite else composite[key] + prod
        for (s, t), m in sorted(composite.items()):
            if not m.is_zero():
                j = int(np.argwhere(m.to_dense())[0][1])
                witness = np.zeros(self.vertices[s], dtype=np.uint8)
                witness[j] = 1
                raise DSquaredNonzero(f"d^2 != 0 along paths {s} -> . -> {t}", pair=(s, t), witness=witness)


def diagram_homology(g: Diagram) -> HomologyResult:
    """Homology of the total complex ``(sum W_v, sum of edge maps)``."""
    g.check_square_zero()
    return HomologyResult(g.total_differential())


def bipartite_rank(g: Diagram, part_a: Sequence[str], part_b: Sequence[str]) -> int:
    """Homology rank of a diagram whose edges all run between two vertex groups.

    The differential is block off-diagonal, so its rank is the sum of the ranks
    of the two off-diagonal blocks.
    """
    a_to_b = g.block_map(part_b, part_a)
    b_to_a = g.block_map(part_a, part_b)
    return g.dim - 2 * (a_to_b.rank() + b_to_a.rank())
