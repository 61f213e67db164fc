"""Independent reference computations for the small worked examples.

Nothing here imports the package under test.  Complexes are parsed from
``.kc`` text by a separate reader, chain groups are built directly from the
lattice description (generators ``[x, i, j]``), vectors are Python ints used as
bit sets, and ranks come from a plain elimination.  Run as a script to print
the table recorded in EXAMPLES.md.
"""

from __future__ import annotations

import itertools
from pathlib import Path

FIXTURE_DIR = Path(__file__).resolve().parents[1] / "src" / "hfcalc" / "fixtures"


# --------------------------------------------------------------------------
# linear algebra on int bit sets
# --------------------------------------------------------------------------

def rank_of(vectors) -> int:
    pivots: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                break
            v ^= pivots[top]
    return len(pivots)


def in_span(vectors, target: int) -> bool:
    return rank_of(list(vectors) + [target]) == rank_of(vectors)


class Chain:
    """Finite complex: ``boundary[g]`` is the set of generators in d(g)."""

    def __init__(self, gens, boundary):
        self.gens = list(gens)
        self.pos = {g: n for n, g in enumerate(self.gens)}
        self.boundary = {g: set(boundary.get(g, ())) for g in self.gens}
        for g in self.gens:
            twice = 0
            for h in self.boundary[g]:
                twice ^= self.vec(self.boundary[h])
            assert twice == 0, f"d^2 != 0 at {g}"

    def vec(self, names) -> int:
        out = 0
        for n in names:
            out ^= 1 << self.pos[n]
        return out

    def d(self, v: int) -> int:
        out = 0
        for n, g in enumerate(self.gens):
            if v >> n & 1:
                out ^= self.vec(self.boundary[g])
        return out

    def boundary_vectors(self):
        return [self.vec(self.boundary[g]) for g in self.gens]

    def homology_rank(self) -> int:
        return len(self.gens) - 2 * rank_of(self.boundary_vectors())


# --------------------------------------------------------------------------
# knot complexes
# --------------------------------------------------------------------------

class Knot:
    def __init__(self, text: str):
        self.sigma: dict[str, int] = {}
        self.arrows: list[tuple[str, str, int, int]] = []
        self.dual: dict[str, str] = {}
        for raw in text.splitlines():
            parts = raw.split("#")[0].split()
            if not parts:
                continue
            if parts[0] == "gen":
                self.sigma[parts[1]] = int(parts[2])
            elif parts[0] == "arrow":
                self.arrows.append((parts[1], parts[2], int(parts[3]), int(parts[4])))
            elif parts[0] == "dual":
                self.dual[parts[1]] = parts[2]
                self.dual[parts[2]] = parts[1]
        self.gens = list(self.sigma)

    @classmethod
    def fixture(cls, name: str) -> "Knot":
        return cls((FIXTURE_DIR / f"{name}.kc").read_text())

    @property
    def genus(self) -> int:
        return max(abs(s) for s in self.sigma.values())

    # lattice points [x, i, j] with sigma(x) + i - j fixed; arrows lower (i, j) by (u, v)
    def lattice_subquotient(self, level: int, keep) -> Chain:
        """Points with ``keep(i, j)`` among those on the line ``sigma + i - j = level``.

        ``keep`` must describe a subquotient; the boundary drops targets outside it.
        """
        span = self.genus + abs(level) + 2
        points = []
        for x in self.gens:
            for i in range(-span, span + 1):
                j = self.sigma[x] + i - level
                if keep(i, j):
                    points.append((x, i, j))
        present = set(points)
        boundary = {}
        for p in points:
            x, i, j = p
            boundary[p] = {
                (y, i - u, j - v) for (src, y, u, v) in self.arrows if src == x and (y, i - u, j - v) in present
            }
        return Chain(points, boundary)

    def hat(self) -> Chain:
        """The slice ``j = 0``: arrows with no vertical drop."""
        boundary = {x: {y for (s, y, u, v) in self.arrows if s == x and v == 0} for x in self.gens}
        return Chain(self.gens, boundary)

    def hat_filtered(self, pred) -> Chain:
        keep = [x for x in self.gens if pred(self.sigma[x])]
        boundary = {x: {y for (s, y, u, v) in self.arrows if s == x and v == 0 and y in keep} for x in keep}
        return Chain(keep, boundary)

    def a_rank(self, s: int) -> int:
        return self.lattice_subquotient(s, lambda i, j: max(i, j) == 0).homology_rank()


# --------------------------------------------------------------------------
# derived quantities
# --------------------------------------------------------------------------

def graded_ranks(k: Knot) -> dict[int, int]:
    out: dict[int, int] = {}
    for s in k.sigma.values():
        out[s] = out.get(s, 0) + 1
    return dict(sorted(out.items()))


def cone_chain(k: Knot, n: int, s: int) -> Chain:
    """The cone ``B{> s-n} (+) B{>= -s} -> B`` built generator by generator."""
    hat = k.hat()
    left = [x for x in k.gens if k.sigma[x] > s - n]
    right = [x for x in k.gens if k.sigma[x] >= -s]
    gens = [("x", g) for g in left] + [("y", g) for g in right] + [("z", g) for g in k.gens]
    boundary = {}
    for tag, members in (("x", left), ("y", right)):
        for g in members:
            boundary[(tag, g)] = {(tag, h) for h in hat.boundary[g] if h in members} | {("z", g)}
    for g in k.gens:
        boundary[("z", g)] = {("z", h) for h in hat.boundary[g]}
    return Chain(gens, boundary)


def cone_rank(k: Knot, n: int, s: int) -> int:
    return cone_chain(k, n, s).homology_rank()


def h_numbers(k: Knot) -> tuple[int, int, int]:
    g = k.genus
    levels = range(-g - 3, g + 4)
    return (
        len(k.gens),
        sum(cone_rank(k, 1, s) for s in levels),
        sum(cone_rank(k, 0, s) for s in levels),
    )


def per_level(k: Knot, n: int) -> dict[int, int]:
    g = k.genus
    return {s: cone_rank(k, n, s) for s in range(-g - abs(n) - 1, g + abs(n) + 2)}


def plus_one_surgery(k: Knot) -> int:
    """Chain-level mapping cone of the truncated +1 surgery diagram."""
    g = k.genus
    gens, boundary = [], {}
    hat = k.hat()
    for s in range(-g, g + 1):
        a = k.lattice_subquotient(s, lambda i, j: max(i, j) == 0)
        for p in a.gens:
            x, i, j = p
            node = ("A", s, x)
            gens.append(node)
            targets = {("A", s, y) for (y, _, _) in a.boundary[p]}
            if s <= g - 1 and j == 0:
                targets ^= {("B", s + g, x)}
            if s >= 1 - g and i == 0:
                targets ^= {("B", s + g - 1, k.dual[x])}
            boundary[node] = targets
    for c in range(2 * g):
        for x in k.gens:
            gens.append(("B", c, x))
            boundary[("B", c, x)] = {("B", c, y) for y in hat.boundary[x]}
    return Chain(gens, boundary).homology_rank()


def cone_map_ranks(k: Knot) -> dict[str, int]:
    """Ranks of ``h_s`` and ``v_s`` on homology, cycles found by enumerating every chain of A_s."""
    g = k.genus
    hat = k.hat()
    hat_bounds = hat.boundary_vectors()
    out = {}
    for s in range(-g, g + 1):
        a = k.lattice_subquotient(s, lambda i, j: max(i, j) == 0)
        n = len(a.gens)
        cycles = [v for v in range(1, 1 << n) if a.d(v) == 0]
        routes = {
            f"h{s}": (s <= g - 1, lambda p: p[2] == 0, lambda x: x),
            f"v{s}": (s >= 1 - g, lambda p: p[1] == 0, lambda x: k.dual[x]),
        }
        for label, (present, survives, relabel) in routes.items():
            if not present:
                continue
            images = []
            for c in cycles:
                names = [relabel(a.gens[m][0]) for m in range(n) if c >> m & 1 and survives(a.gens[m])]
                images.append(hat.vec(names))
            out[label] = rank_of(hat_bounds + images) - rank_of(hat_bounds)
    return out


def large_total(k: Knot, n: int) -> int:
    return sum(k.a_rank(s) for s in range(-(n // 2), (n + 1) // 2))


def unknot_lens_rank(p: int, q: int) -> int:
    """Rational surgery complex of the unknot: every summand one-dimensional, maps identities."""
    gens = [("inf", i) for i in range(1, q + 1)] + [("one", i) for i in range(1, p + q + 1)]
    boundary = {g: set() for g in gens}
    for i in range(1, q + 1):
        boundary[("inf", i)] ^= {("one", i)}
        boundary[("inf", i)] ^= {("one", i + p)}
    return Chain(gens, boundary).homology_rank()


def tau(k: Knot) -> int:
    """Largest ``s`` with ``x + dy`` inside ``B{>= s}``, searched over every ``y``."""
    hat = k.hat()
    n = len(hat.gens)
    cycles = [v for v in range(1, 1 << n) if hat.d(v) == 0]
    boundaries = {hat.d(v) for v in range(1 << n)}
    generator = next(c for c in cycles if c not in boundaries)
    best = None
    for b in boundaries:
        v = generator ^ b
        low = min(k.sigma[hat.gens[m]] for m in range(n) if v >> m & 1)
        best = low if best is None else max(best, low)
    return best


def inclusion_onto(k: Knot, s: int) -> bool:
    hat = k.hat()
    sub = [x for x in hat.gens if k.sigma[x] >= s]
    n = len(hat.gens)
    bvecs = hat.boundary_vectors()
    reached = [v for v in range(1 << n) if hat.d(v) == 0 and all(hat.gens[m] in sub for m in range(n) if v >> m & 1)]
    total = rank_of(bvecs + [v for v in range(1 << n) if hat.d(v) == 0]) - rank_of(bvecs)
    got = rank_of(bvecs + reached) - rank_of(bvecs)
    return got == total


def graded_cokernel(k: Knot, s: int) -> int:
    upper = k.hat_filtered(lambda t: t > s)
    hat = k.hat()
    images = []
    for x in k.gens:
        if k.sigma[x] == s:
            images.append(upper.vec(hat.boundary[x]))
    b = upper.boundary_vectors()
    return upper.homology_rank() - (rank_of(b + images) - rank_of(b))


def connected_sum_ranks(k1: Knot, k2: Knot) -> dict[int, int]:
    out: dict[int, int] = {}
    for a, b in itertools.product(k1.sigma.values(), k2.sigma.values()):
        out[a + b] = out.get(a + b, 0) + 1
    return dict(sorted(out.items()))


def unknot_cube_rank() -> int:
    """The five-dimensional cube of two unknots, edges all identities."""
    gens = ["inf,inf", "1,1a", "inf,1", "1,inf", "1,1b"]
    boundary = {
        "1,1a": {"inf,1", "1,inf", "1,1b"},
        "inf,1": {"inf,inf"},
        "1,inf": {"inf,inf"},
    }
    return Chain(gens, boundary).homology_rank()


def cube_dims(h1: tuple[int, int, int], h2: tuple[int, int, int]) -> dict[str, int]:
    (i1, o1, z1), (i2, o2, z2) = h1, h2
    return {
        "inf,inf": i1 * i2,
        "1,1a": o1 * o2,
        "1,0": o1 * z2,
        "0,1": z1 * o2,
        "inf,1": i1 * o2,
        "1,inf": o1 * i2,
        "1,1b": o1 * o2,
        "0,0": z1 * z2,
    }


def cube_euler(h1, h2) -> int:
    d = cube_dims(h1, h2)
    return d["inf,inf"] + d["0,1"] + d["1,0"] - d["inf,1"] - d["1,inf"] - d["0,0"]


FIXTURES = ("unknot", "trefoil_r", "trefoil_l", "figure8")


def table() -> dict:
    ks = {name: Knot.fixture(name) for name in FIXTURES}
    out = {}
    for name, k in ks.items():
        g = k.genus
        row = {
            "graded_ranks": graded_ranks(k),
            "hat_rank": k.hat().homology_rank(),
            "A_ranks": {s: k.a_rank(s) for s in range(-g, g + 1)},
            "h_numbers": h_numbers(k),
            "C1": {s: r for s, r in per_level(k, 1).items() if r},
            "C0": {s: r for s, r in per_level(k, 0).items() if r},
            "plus_one": plus_one_surgery(k),
            "map_ranks": cone_map_ranks(k),
            "large": {n: large_total(k, n) for n in (2 * g + 1, 2 * g + 2, 3, 4) if n > 2 * g},
            "tau": tau(k),
            "onto": {s: inclusion_onto(k, s) for s in range(-g, g + 1)},
            "cokernel": {s: graded_cokernel(k, s) for s in range(-g, g + 1)},
        }
        out[name] = row
    out["lens"] = {(p, q): unknot_lens_rank(p, q) for p, q in ((1, 1), (2, 1), (3, 1), (3, 2), (5, 3), (0, 1))}
    out["unknot_cube"] = unknot_cube_rank()
    hn = {name: out[name]["h_numbers"] for name in FIXTURES}
    out["cube_dims"] = {
        (a, b): sum(cube_dims(hn[a], hn[b]).values())
        for a, b in (("unknot", "unknot"), ("unknot", "trefoil_l"), ("trefoil_l", "trefoil_l"))
    }
    out["cube_euler"] = {
        (a, b): cube_euler(hn[a], hn[b])
        for a, b in (("unknot", "unknot"), ("unknot", "trefoil_l"), ("trefoil_l", "trefoil_l"), ("trefoil_r", "trefoil_r"))
    }
    tr = ks["trefoil_r"]
    out["sum_ranks"] = connected_sum_ranks(tr, tr)
    return out


if __name__ == "__main__":
    for key, value in table().items():
        if isinstance(value, dict) and key in FIXTURES:
            print(key)
            for field, v in value.items():
                print(f"  {field}: {v}")
        else:
            print(f"{key}: {value}")
