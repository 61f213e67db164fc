"""Three routes to surgery ranks and the checks that tie them together.

* ``rational_surgery_rank``: the complex built from ``q`` copies of H_inf,
  ``p + q`` copies of H_one and ``p`` copies of H_zero.
* ``os_cone_rank``: the truncated mapping-cone diagram on the level
  subquotients ``A_s`` and ``2g`` copies of ``H(B)``.
* ``dual_knot_hfk``: ranks of the cones ``C_n(s)`` level by level.

The package maps point from H_one to H_inf and from H_zero to H_one; the
rational complex has its arrows the other way, so it uses transposes.  Rank is
unchanged by transposition, which ``transposition_neutral`` confirms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .complexes import Diagram, HomologyResult, homology, induced_map
from .errors import CrossCheckFailed, DualityRequired, NotCoprime, NTooSmall
from .gf2 import BitMatrix
from .knot import KnotComplex, a_complex, genus, hat_complex, inclusion, parts_of_a, sub_at_least
from .package import InvariantPackage, build_package, c_n_complex


@dataclass
class SurgeryComplex:
    p: int
    q: int
    diagram: Diagram

    @property
    def dim(self) -> int:
        return self.diagram.dim

    def rank(self) -> int:
        g = self.diagram
        infs = [v for v in g.vertices if v.startswith("inf")]
        ones = [v for v in g.vertices if v.startswith("one")]
        zeros = [v for v in g.vertices if v.startswith("zero")]
        # the nonzero blocks sit in disjoint rows and columns, so ranks add
        blocks = [(ones, infs), (infs, ones), (zeros, ones), (ones, zeros)]
        return g.dim - 2 * sum(g.block_map(r, c).rank() for r, c in blocks)


def _check_slope(p: int, q: int) -> None:
    if q < 1 or p < 0:
        raise NotCoprime(f"need p >= 0 and q >= 1, got {p}/{q}")
    if gcd(p, q) != 1:
        raise NotCoprime(f"{p}/{q} is not in lowest terms")


def surgery_complex(pkg: InvariantPackage, p: int, q: int, transpose: bool = True) -> SurgeryComplex:
    """Assemble the rational-surgery complex for slope ``p/q``.

    With ``transpose=False`` every arrow is reversed and the package maps are
    used untransposed; the homology rank is the same.
    """
    _check_slope(p, q)
    g = Diagram()
    for i in range(1, q + 1):
        g.add_vertex(f"inf{i}", pkg.h_inf)
    for i in range(1, p + q + 1):
        g.add_vertex(f"one{i}", pkg.h_one)
    for j in range(1, p + 1):
        g.add_vertex(f"zero{j}", pkg.h_zero)

    def edge(src, dst, m):
        if transpose:
            g.add_edge(src, dst, m.T)
        else:
            g.add_edge(dst, src, m)

    for i in range(1, q + 1):
        edge(f"inf{i}", f"one{i}", pkg.phi)
        edge(f"inf{i}", f"one{i + p}", pkg.phibar)
    for j in range(1, p + 1):
        edge(f"one{j + q}", f"zero{j}", pkg.psi)
        edge(f"one{j}", f"zero{j}", pkg.psibar)
    g.check_square_zero()
    return SurgeryComplex(p, q, g)


def rational_surgery_rank(pkg: InvariantPackage, p: int, q: int) -> int:
    return surgery_complex(pkg, p, q).rank()


def transposition_neutral(pkg: InvariantPackage, p: int, q: int) -> bool:
    return surgery_complex(pkg, p, q).rank() == surgery_complex(pkg, p, q, transpose=False).rank()


# --------------------------------------------------------------------------
# the truncated mapping cone
# --------------------------------------------------------------------------

@dataclass
class OsConeDiagram:
    genus: int
    hat_rank: int
    a_ranks: dict[int, int]
    h_maps: dict[int, BitMatrix]
    v_maps: dict[int, BitMatrix]
    diagram: Diagram

    def rank(self) -> int:
        g = self.diagram
        tops = [v for v in g.vertices if v.startswith("A")]
        bottoms = [v for v in g.vertices if v.startswith("H")]
        return g.dim - 2 * g.block_map(bottoms, tops).rank()

    def map_ranks(self) -> dict[str, int]:
        out = {f"h{s}": m.rank() for s, m in self.h_maps.items()}
        out.update({f"v{s}": m.rank() for s, m in self.v_maps.items()})
        return out


def level_maps(k: KnotComplex, s: int, h_hat: HomologyResult | None = None):
    """``(H(A_s), h_s, v_s)``: the two quotients of ``A_s`` followed by inclusion into ``B``."""
    hat = hat_complex(k)
    h_hat = h_hat or homology(hat.complex)
    j_part, i_part = parts_of_a(k, s)
    h_a = homology(j_part.source)
    up = sub_at_least(k, s)
    down = sub_at_least(k, -s)
    h_map = induced_map(j_part.then(inclusion(up, hat)), h_a, h_hat)
    v_map = induced_map(i_part.then(inclusion(down, hat)), h_a, h_hat)
    return h_a, h_map, v_map


def os_cone_diagram(k: KnotComplex) -> OsConeDiagram:
    if k.duality is None:
        raise DualityRequired(f"{k.name}: the cone diagram needs a duality involution")
    g = genus(k)
    h_hat = homology(hat_complex(k).complex)
    diagram = Diagram()
    a_ranks, h_maps, v_maps = {}, {}, {}
    per_level = {}
    for s in range(-g, g + 1):
        h_a, h_map, v_map = level_maps(k, s, h_hat)
        a_ranks[s] = h_a.rank
        per_level[s] = (h_map, v_map)
        diagram.add_vertex(f"A{s}", h_a.rank)
    for c in range(2 * g):
        diagram.add_vertex(f"H{c}", h_hat.rank)
    for s in range(-g, g + 1):
        h_map, v_map = per_level[s]
        if s <= g - 1:
            h_maps[s] = h_map
            diagram.add_edge(f"A{s}", f"H{s + g}", h_map)
        if s >= 1 - g:
            v_maps[s] = v_map
            diagram.add_edge(f"A{s}", f"H{s + g - 1}", v_map)
    return OsConeDiagram(g, h_hat.rank, a_ranks, h_maps, v_maps, diagram)


def os_cone_rank(k: KnotComplex) -> int:
    return os_cone_diagram(k).rank()


# --------------------------------------------------------------------------
# large integral surgery and the dual knot
# --------------------------------------------------------------------------

@dataclass
class LargeSurgeryTable:
    n: int
    ranks: dict[int, int]
    total: int
    formula_total: int


def large_surgery_table(k: KnotComplex, n: int) -> LargeSurgeryTable:
    g = genus(k)
    if n <= 2 * g:
        raise NTooSmall(f"large surgery needs n > 2g = {2 * g}, got {n}")
    hat_rank = homology(hat_complex(k).complex).rank
    ranks = {}
    for s in range(-(n // 2), (n + 1) // 2):
        ranks[s] = homology(a_complex(k, s)).rank
    total = sum(ranks.values())
    formula = sum(ranks[s] for s in range(-g, g + 1)) + (n - 2 * g - 1) * hat_rank
    if total != formula:
        raise CrossCheckFailed("large-surgery total", total, formula)
    return LargeSurgeryTable(n, ranks, total, formula)


def dual_knot_hfk(k: KnotComplex, n: int) -> dict[int, int]:
    """Rank of ``H(C_n(s))`` for every ``s`` where it can be nonzero."""
    g = genus(k)
    reach = g + abs(n) + 1
    return {s: homology(c_n_complex(k, n, s)).rank for s in range(-reach, reach + 1)}


def dual_knot_advisory(n: int) -> str | None:
    if n == 0:
        return "n = 0: these groups are the H_zero summands by definition, not a claim about the 0-surgery core"
    return None


# --------------------------------------------------------------------------
# cross-validation
# --------------------------------------------------------------------------

def cross_validate(k: KnotComplex, pkg: InvariantPackage | None = None) -> dict:
    pkg = pkg or build_package(k)
    g = genus(k)
    hat_rank = homology(hat_complex(k).complex).rank
    rational = rational_surgery_rank(pkg, 1, 1)
    cone = os_cone_rank(k)
    if rational != cone:
        raise CrossCheckFailed("rational 1/1 vs cone diagram", rational, cone)
    dual_total = sum(dual_knot_hfk(k, 1).values())
    large = {}
    for n in (2 * g + 1, 2 * g + 2):
        table = large_surgery_table(k, n)
        via_package = rational_surgery_rank(pkg, n, 1)
        if table.total != via_package:
            raise CrossCheckFailed(f"large surgery n={n}", table.total, via_package)
        large[n] = table.total
    slopes = []
    for n in range(2 * g + 1, 2 * g + 4):
        step = rational_surgery_rank(pkg, n + 1, 1) - rational_surgery_rank(pkg, n, 1)
        slopes.append(step)
    if any(step != hat_rank for step in slopes):
        raise CrossCheckFailed("stable growth of large surgeries", slopes, hat_rank)
    for p, q in ((1, 1), (2, 1), (3, 2)):
        if not transposition_neutral(pkg, p, q):
            raise CrossCheckFailed(f"transposition neutrality {p}/{q}", "transposed", "direct")
    return {
        "knot": k.name,
        "rational_1_1": rational,
        "os_cone": cone,
        "dual_knot_total_n1": dual_total,
        "dual_knot_bounds_both": dual_total >= rational and dual_total >= cone,
        "large": {str(n): v for n, v in large.items()},
        "growth_steps": slopes,
        "hat_rank": hat_rank,
    }
