"""Per-knot package: the dual-knot groups after infinity-, 1- and 0-surgery and
the homology-level maps between them.

Directions follow the cone picture: ``phi, phibar : H_one -> H_inf`` and
``psi, psibar : H_zero -> H_one``.  ``psibar`` is the inclusion
``C_0(s) -> C_1(s)`` and ``psi`` the inclusion ``C_0(s) -> C_1(s+1)``; with
that assignment ``phi . psibar`` and ``phibar . psi`` already vanish on chains.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complexes import BasedComplex, ChainMap, HomologyResult, cone_of_sum, homology, induced_map
from .errors import DualityRequired, RelationViolated, WindowTooSmall
from .gf2 import BitMatrix, block, block_diag, kernel_basis
from .knot import KnotComplex, Slice, dual_iso, genus, graded_piece, hat_complex, inclusion, quotient, sub_at_least


def c_n_complex(k: KnotComplex, n: int, s: int) -> BasedComplex:
    """Cone of ``B{> s-n} (+) B{>= -s} -> B`` (both maps inclusions)."""
    return _cone_parts(k, n, s)[0]


def _cone_parts(k: KnotComplex, n: int, s: int):
    hat = hat_complex(k)
    left = sub_at_least(k, s - n + 1)
    right = sub_at_least(k, -s)
    cone = cone_of_sum(left.complex, right.complex, hat.complex, inclusion(left, hat), inclusion(right, hat))
    return cone, left, right, hat


@dataclass
class LevelData:
    """Everything computed at one relative Spin^c level ``s``."""

    s: int
    inf: Slice
    one: BasedComplex
    zero: BasedComplex
    h_one: HomologyResult
    h_zero: HomologyResult
    phi: BitMatrix = None
    phibar: BitMatrix = None
    psibar: BitMatrix = None
    psi: BitMatrix = None  # into level s + 1


@dataclass
class InvariantPackage:
    knot: KnotComplex
    window: tuple[int, ...]
    levels: dict[int, LevelData]
    phi: BitMatrix
    phibar: BitMatrix
    psi: BitMatrix
    psibar: BitMatrix
    eta: BitMatrix
    etabar: BitMatrix
    offsets: dict[str, dict[int, int]] = field(default_factory=dict)

    @property
    def h_inf(self) -> int:
        return self.phi.nrows

    @property
    def h_one(self) -> int:
        return self.phi.ncols

    @property
    def h_zero(self) -> int:
        return self.psi.ncols

    def h_numbers(self) -> dict[str, int]:
        return {"h_inf": self.h_inf, "h_one": self.h_one, "h_zero": self.h_zero}

    def per_level(self, which: str) -> dict[int, int]:
        if which == "inf":
            return {s: lv.inf.dim for s, lv in self.levels.items()}
        if which == "one":
            return {s: lv.h_one.rank for s, lv in self.levels.items()}
        if which == "zero":
            return {s: lv.h_zero.rank for s, lv in self.levels.items()}
        raise KeyError(which)

    def maps(self) -> dict[str, BitMatrix]:
        return {
            "phi": self.phi,
            "phibar": self.phibar,
            "psi": self.psi,
            "psibar": self.psibar,
            "eta": self.eta,
            "etabar": self.etabar,
        }


def build_package(k: KnotComplex, window: range | None = None) -> InvariantPackage:
    if k.duality is None:
        raise DualityRequired(f"{k.name}: the package needs a duality involution")
    g = genus(k)
    if window is None:
        window = range(-g - 2, g + 3)
    window = tuple(window)
    hat = hat_complex(k)
    levels: dict[int, LevelData] = {}
    for s in window:
        one, l1, r1, _ = _cone_parts(k, 1, s)
        zero, l0, r0, _ = _cone_parts(k, 0, s)
        levels[s] = LevelData(s, graded_piece(k, s), one, zero, homology(one), homology(zero))
        levels[s]._parts = (l1, r1, l0, r0)

    for s in window:
        lv = levels[s]
        l1, r1, l0, r0 = lv._parts
        inf = lv.inf
        # phi: project the B{>=s} summand onto B{s}
        q = quotient(l1, inf).matrix
        phi_chain = block([[q, None, None]], [inf.dim], [l1.dim, r1.dim, hat.dim])
        # phibar: project the B{>=-s} summand onto B{-s}, then apply duality
        opp = graded_piece(k, -s)
        qbar = dual_iso(k, opp, inf) @ quotient(r1, opp).matrix
        phibar_chain = block([[None, qbar, None]], [inf.dim], [l1.dim, r1.dim, hat.dim])
        h_inf = homology(inf.complex)
        lv.phi = induced_map(ChainMap(lv.one, inf.complex, phi_chain), lv.h_one, h_inf)
        lv.phibar = induced_map(ChainMap(lv.one, inf.complex, phibar_chain), lv.h_one, h_inf)

        # psibar: C_0(s) -> C_1(s), B{>s} sits inside B{>=s}
        inc_l = inclusion(l0, l1).matrix
        psibar_chain = block_diag([inc_l, BitMatrix.identity(r0.dim), BitMatrix.identity(hat.dim)])
        psibar_map = ChainMap(lv.zero, lv.one, psibar_chain)
        lv.psibar = induced_map(psibar_map, lv.h_zero, lv.h_one)
        if not (phi_chain @ psibar_chain).is_zero():
            raise RelationViolated(f"phi . psibar != 0 on chains at s={s}")

        nxt = levels.get(s + 1)
        if nxt is None:
            if lv.h_zero.rank:
                raise WindowTooSmall(f"H_zero({s}) is nonzero at the edge of the window; widen it")
            lv.psi = BitMatrix(0, lv.h_zero.rank)
            continue
        nl1, nr1, _, _ = nxt._parts
        # psi: C_0(s) -> C_1(s+1); B{>s} = B{>=s+1}, B{>=-s} inside B{>=-s-1}
        psi_chain = block_diag([inclusion(l0, nl1).matrix, inclusion(r0, nr1).matrix, BitMatrix.identity(hat.dim)])
        psi_map = ChainMap(lv.zero, nxt.one, psi_chain)
        lv.psi = induced_map(psi_map, lv.h_zero, nxt.h_one)

    for s in window:
        lv = levels[s]
        if lv.psi is not None and s + 1 in levels:
            nl1, nr1, _, _ = levels[s + 1]._parts
            nxt_inf = levels[s + 1].inf
            opp = graded_piece(k, -(s + 1))
            qbar = dual_iso(k, opp, nxt_inf) @ quotient(nr1, opp).matrix
            phibar_next = block([[None, qbar, None]], [nxt_inf.dim], [nl1.dim, nr1.dim, hat.dim])
            l0 = lv._parts[2]
            r0 = lv._parts[3]
            psi_chain = block_diag(
                [inclusion(l0, nl1).matrix, inclusion(r0, nr1).matrix, BitMatrix.identity(hat.dim)]
            )
            if not (phibar_next @ psi_chain).is_zero():
                raise RelationViolated(f"phibar . psi != 0 on chains at s={s}")

    for edge in (window[0], window[-1]):
        lv = levels[edge]
        if lv.h_one.rank or lv.h_zero.rank:
            raise WindowTooSmall(f"package does not vanish at the window edge s={edge}; widen the window")

    return _assemble(k, window, levels)


def _assemble(k: KnotComplex, window: tuple[int, ...], levels: dict[int, LevelData]) -> InvariantPackage:
    d_inf = [levels[s].inf.dim for s in window]
    d_one = [levels[s].h_one.rank for s in window]
    d_zero = [levels[s].h_zero.rank for s in window]
    n = len(window)

    def diag(attr, rows, cols):
        grid = [[getattr(levels[s], attr) if i == j else None for j in range(n)] for i, s in enumerate(window)]
        return block(grid, rows, cols)

    phi = diag("phi", d_inf, d_one)
    phibar = diag("phibar", d_inf, d_one)
    psibar = diag("psibar", d_one, d_zero)
    grid = [[None] * n for _ in range(n)]
    for j, s in enumerate(window[:-1]):
        grid[j + 1][j] = levels[s].psi
    psi = block(grid, d_one, d_zero)
    offsets = {
        "inf": dict(zip(window, np.cumsum([0] + d_inf[:-1]).tolist())),
        "one": dict(zip(window, np.cumsum([0] + d_one[:-1]).tolist())),
        "zero": dict(zip(window, np.cumsum([0] + d_zero[:-1]).tolist())),
    }
    for lv in levels.values():
        lv.__dict__.pop("_parts", None)
    pkg = InvariantPackage(
        knot=k,
        window=window,
        levels=levels,
        phi=phi,
        phibar=phibar,
        psi=psi,
        psibar=psibar,
        eta=phi @ psi,
        etabar=phibar @ psibar,
        offsets=offsets,
    )
    if not (pkg.phi @ pkg.psibar).is_zero() or not (pkg.phibar @ pkg.psi).is_zero():
        raise RelationViolated("homology-level relations fail")
    return pkg


def relations_report(p: InvariantPackage) -> dict:
    hat_rank = homology(hat_complex(p.knot).complex).rank
    rel1 = (p.phi @ p.psibar).is_zero()
    rel2 = (p.phibar @ p.psi).is_zero()
    y_inf = p.h_one - p.h_zero
    return {
        "phi_psibar_zero": rel1,
        "phibar_psi_zero": rel2,
        "relations_hold": rel1 and rel2,
        "ranks": {name: m.rank() for name, m in p.maps().items()},
        "kernel_dims": {
            "psi": kernel_basis(p.psi).dim,
            "psibar": kernel_basis(p.psibar).dim,
        },
        "h_one_minus_h_zero": y_inf,
        "hat_rank": hat_rank,
        "stable_slope_matches_hat_rank": y_inf == hat_rank,
        "note": None if y_inf == hat_rank else "h1 - h0 differs from rank H(B); that equality needs extra hypotheses",
    }


def package_to_json(p: InvariantPackage) -> dict:
    return {
        "knot": p.knot.name,
        "window": list(p.window),
        "h_numbers": p.h_numbers(),
        "per_level": {
            "inf": {str(s): v for s, v in p.per_level("inf").items()},
            "one": {str(s): v for s, v in p.per_level("one").items()},
            "zero": {str(s): v for s, v in p.per_level("zero").items()},
        },
        "maps": {name: m.to_lists() for name, m in p.maps().items()},
        "relations": relations_report(p),
    }
