"""Reduced bifiltered knot complexes and the complexes cut out of them.

A :class:`KnotComplex` lists generators ``x`` with an integer grading
``sigma(x)`` and arrows ``x -> y`` labelled by drops ``(u, v)`` in the two
filtrations, with ``sigma(y) = sigma(x) + u - v``.  The lattice generator
``[x, i, j]`` maps along an arrow to ``[y, i - u, j - v]``.

The hat complex keeps the arrows with ``v == 0``; they strictly raise sigma, so
the spans ``{sigma >= s}`` are subcomplexes.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complexes import BasedComplex, ChainMap
from .errors import DualityRequired, InvariantViolation, ParseError
from .gf2 import BitMatrix


@dataclass(frozen=True)
class Arrow:
    src: int
    dst: int
    u: int
    v: int


@dataclass(frozen=True)
class KnotComplex:
    name: str
    gens: tuple[str, ...]
    sigma: tuple[int, ...]
    arrows: tuple[Arrow, ...]
    duality: tuple[int, ...] | None = None
    maslov: tuple[int | None, ...] | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.gens)

    def index(self, name: str) -> int:
        return self.gens.index(name)

    @property
    def genus(self) -> int:
        return genus(self)

    def arrows_named(self) -> list[tuple[str, str, int, int]]:
        return [(self.gens[a.src], self.gens[a.dst], a.u, a.v) for a in self.arrows]


def genus(k: KnotComplex) -> int:
    return max((abs(s) for s in k.sigma), default=0)


# --------------------------------------------------------------------------
# .kc text format
# --------------------------------------------------------------------------

def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} {tok!r} is not an integer", lineno) from None


def parse(text: str) -> KnotComplex:
    """Parse ``.kc`` text without checking complex invariants."""
    name = None
    gens: list[str] = []
    sigma: list[int] = []
    maslov: list[int | None] = []
    arrows: list[tuple[int, int, int, int, int]] = []
    duals: list[tuple[str, str, int]] = []
    index: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0]
        if kind == "knot":
            if len(tok) != 2:
                raise ParseError("expected 'knot <name>'", lineno)
            if name is not None:
                raise ParseError("second 'knot' line", lineno)
            name = tok[1]
        elif kind == "gen":
            if len(tok) not in (3, 4):
                raise ParseError("expected 'gen <id> <sigma> [maslov]'", lineno)
            if tok[1] in index:
                raise ParseError(f"duplicate generator {tok[1]!r}", lineno)
            index[tok[1]] = len(gens)
            gens.append(tok[1])
            sigma.append(_int(tok[2], lineno, "sigma"))
            maslov.append(_int(tok[3], lineno, "maslov") if len(tok) == 4 else None)
        elif kind == "arrow":
            if len(tok) != 5:
                raise ParseError("expected 'arrow <src> <dst> <u> <v>'", lineno)
            u = _int(tok[3], lineno, "u")
            v = _int(tok[4], lineno, "v")
            if u < 0 or v < 0:
                raise ParseError("arrow drops must be nonnegative", lineno)
            for g in tok[1:3]:
                if g not in index:
                    raise ParseError(f"unknown generator {g!r}", lineno)
            arrows.append((index[tok[1]], index[tok[2]], u, v, lineno))
        elif kind == "dual":
            if len(tok) != 3:
                raise ParseError("expected 'dual <id> <id>'", lineno)
            for g in tok[1:3]:
                if g not in index:
                    raise ParseError(f"unknown generator {g!r}", lineno)
            duals.append((tok[1], tok[2], lineno))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    if name is None:
        raise ParseError("missing 'knot <name>' line")
    if not gens:
        raise ParseError("complex has no generators")

    duality = None
    if duals:
        iota: dict[int, int] = {}
        for a, b, lineno in duals:
            ia, ib = index[a], index[b]
            for x, y in ((ia, ib), (ib, ia)):
                if iota.get(x, y) != y:
                    raise InvariantViolation(
                        "duality-involution", f"{gens[x]} paired with both {gens[iota[x]]} and {gens[y]}", gens[x]
                    )
                iota[x] = y
        missing = [gens[i] for i in range(len(gens)) if i not in iota]
        if missing:
            raise InvariantViolation("duality-incomplete", f"no dual partner for {missing[0]}", missing[0])
        duality = tuple(iota[i] for i in range(len(gens)))

    seen: dict[tuple[int, int, int, int], int] = {}
    for s, d, u, v, lineno in arrows:
        key = (s, d, u, v)
        if key in seen:
            raise InvariantViolation(
                "duplicate-arrow", f"arrow {gens[s]} -> {gens[d]} ({u},{v}) listed twice (lines {seen[key]}, {lineno})",
                (gens[s], gens[d], u, v),
            )
        seen[key] = lineno

    has_maslov = any(m is not None for m in maslov)
    return KnotComplex(
        name=name,
        gens=tuple(gens),
        sigma=tuple(sigma),
        arrows=tuple(Arrow(s, d, u, v) for s, d, u, v, _ in arrows),
        duality=duality,
        maslov=tuple(maslov) if has_maslov else None,
    )


def validate(k: KnotComplex) -> KnotComplex:
    """Check every structural invariant; raise on the first violation."""
    g = k.gens
    for a in k.arrows:
        if k.sigma[a.dst] != k.sigma[a.src] + a.u - a.v:
            raise InvariantViolation(
                "arrow-grading",
                f"arrow {g[a.src]} -> {g[a.dst]} ({a.u},{a.v}) needs sigma({g[a.dst]}) = "
                f"{k.sigma[a.src] + a.u - a.v}, found {k.sigma[a.dst]}",
                (g[a.src], g[a.dst], a.u, a.v),
            )
        if a.u == 0 and a.v == 0:
            raise InvariantViolation("reduced", f"arrow {g[a.src]} -> {g[a.dst]} has zero drop", (g[a.src], g[a.dst]))

    odd = _odd_two_paths(k)
    if odd is not None:
        (x, z, uu, vv), mids = odd
        raise InvariantViolation(
            "d-squared",
            f"{len(mids)} two-step path(s) {g[x]} -> {{{', '.join(g[m] for m in mids)}}} -> {g[z]} "
            f"with total drop ({uu},{vv})",
            (g[x], g[z], uu, vv, [g[m] for m in mids]),
        )

    counts = Counter(k.sigma)
    for s, c in sorted(counts.items()):
        if counts.get(-s, 0) != c:
            raise InvariantViolation(
                "grading-symmetry", f"{c} generator(s) at sigma={s} but {counts.get(-s, 0)} at sigma={-s}", s
            )

    if k.duality is not None:
        iota = k.duality
        for i in range(k.size):
            if iota[iota[i]] != i:
                raise InvariantViolation("duality-involution", f"iota^2({g[i]}) != {g[i]}", g[i])
            if k.sigma[iota[i]] != -k.sigma[i]:
                raise InvariantViolation(
                    "duality-grading", f"sigma({g[iota[i]]}) = {k.sigma[iota[i]]} != -sigma({g[i]})", g[i]
                )
        arrow_set = {(a.src, a.dst, a.u, a.v) for a in k.arrows}
        for a in k.arrows:
            partner = (iota[a.src], iota[a.dst], a.v, a.u)
            if partner not in arrow_set:
                raise InvariantViolation(
                    "duality-arrows",
                    f"arrow {g[a.src]} -> {g[a.dst]} ({a.u},{a.v}) has no dual arrow "
                    f"{g[partner[0]]} -> {g[partner[1]]} ({a.v},{a.u})",
                    (g[a.src], g[a.dst], a.u, a.v),
                )
    return k


def _odd_two_paths(k: KnotComplex):
    out_arrows = defaultdict(list)
    for a in k.arrows:
        out_arrows[a.src].append(a)
    paths: dict[tuple[int, int, int, int], list[int]] = defaultdict(list)
    for a in k.arrows:
        for b in out_arrows[a.dst]:
            paths[(a.src, b.dst, a.u + b.u, a.v + b.v)].append(a.dst)
    for key in sorted(paths):
        if len(paths[key]) % 2:
            return key, paths[key]
    return None


def parse_validate(text: str) -> KnotComplex:
    return validate(parse(text))


def load(path) -> KnotComplex:
    with open(path, encoding="utf-8") as fh:
        return parse_validate(fh.read())


def to_text(k: KnotComplex) -> str:
    for token in (k.name, *k.gens):
        if not token or "#" in token or any(ch.isspace() for ch in token):
            raise ValueError(f"{token!r} cannot be written as a single .kc token")
    lines = [f"knot {k.name}"]
    for i, name in enumerate(k.gens):
        m = k.maslov[i] if k.maslov is not None else None
        lines.append(f"gen {name} {k.sigma[i]}" + (f" {m}" if m is not None else ""))
    for a in k.arrows:
        lines.append(f"arrow {k.gens[a.src]} {k.gens[a.dst]} {a.u} {a.v}")
    if k.duality is not None:
        for i, j in enumerate(k.duality):
            if i <= j:
                lines.append(f"dual {k.gens[i]} {k.gens[j]}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# slices of the hat complex
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Slice:
    """A piece of the hat complex; ``indices`` are generator positions in the parent."""

    parent: KnotComplex
    kind: str
    level: int | None
    indices: tuple[int, ...]
    complex: BasedComplex

    @property
    def dim(self) -> int:
        return len(self.indices)


def _arrow_matrix(k: KnotComplex, keep) -> BitMatrix:
    n = k.size
    return BitMatrix.from_entries(n, n, ((a.dst, a.src) for a in k.arrows if keep(a)))


def hat_complex(k: KnotComplex) -> Slice:
    c = BasedComplex(k.gens, _arrow_matrix(k, lambda a: a.v == 0), k.sigma)
    return Slice(k, "hat-vertical", None, tuple(range(k.size)), c)


def hat_horizontal(k: KnotComplex) -> Slice:
    """The ``i = 0`` slice: arrows with ``u == 0``; they lower sigma."""
    c = BasedComplex(k.gens, _arrow_matrix(k, lambda a: a.u == 0), k.sigma)
    return Slice(k, "hat-horizontal", None, tuple(range(k.size)), c)


def _sub(k: KnotComplex, kind: str, level: int, pred) -> Slice:
    hat = hat_complex(k).complex
    idx = tuple(i for i in range(k.size) if pred(k.sigma[i]))
    return Slice(k, kind, level, idx, hat.restrict(idx))


def sub_at_least(k: KnotComplex, s: int) -> Slice:
    return _sub(k, "sub>=", s, lambda t: t >= s)


def sub_greater(k: KnotComplex, s: int) -> Slice:
    return _sub(k, "sub>", s, lambda t: t > s)


def graded_piece(k: KnotComplex, s: int) -> Slice:
    piece = _sub(k, "graded", s, lambda t: t == s)
    if not piece.complex.differential.is_zero():
        raise InvariantViolation("reduced", f"graded piece at {s} carries a differential")
    return piece


def inclusion(sub: Slice, big: Slice) -> ChainMap:
    """Inclusion of one slice into a larger one (positions matched in the parent)."""
    pos = {g: r for r, g in enumerate(big.indices)}
    entries = [(pos[g], c) for c, g in enumerate(sub.indices)]
    return ChainMap(sub.complex, big.complex, BitMatrix.from_entries(big.dim, sub.dim, entries))


def quotient(big: Slice, small: Slice) -> ChainMap:
    """Projection of ``big`` onto the generators of ``small`` (a quotient complex)."""
    pos = {g: r for r, g in enumerate(small.indices)}
    entries = [(pos[g], c) for c, g in enumerate(big.indices) if g in pos]
    return ChainMap(big.complex, small.complex, BitMatrix.from_entries(small.dim, big.dim, entries))


def dual_iso(k: KnotComplex, src: Slice, dst: Slice) -> BitMatrix:
    """Matrix of the duality involution from ``src`` generators to ``dst`` generators."""
    if k.duality is None:
        raise DualityRequired(f"{k.name}: operation needs a duality involution")
    pos = {g: r for r, g in enumerate(dst.indices)}
    entries = [(pos[k.duality[g]], c) for c, g in enumerate(src.indices)]
    return BitMatrix.from_entries(dst.dim, src.dim, entries)


# --------------------------------------------------------------------------
# the large-surgery complexes
# --------------------------------------------------------------------------

def canonical_lift(k: KnotComplex, s: int, x: int) -> tuple[int, int]:
    sx = k.sigma[x]
    return (s - sx, 0) if sx >= s else (0, sx - s)


def a_complex(k: KnotComplex, s: int) -> BasedComplex:
    """Subquotient at level ``s`` on the lattice points with ``max(i, j) == 0``."""
    lifts = [canonical_lift(k, s, x) for x in range(k.size)]
    entries = []
    for a in k.arrows:
        i, j = lifts[a.src]
        if (i - a.u, j - a.v) == lifts[a.dst]:
            entries.append((a.dst, a.src))
    return BasedComplex(k.gens, BitMatrix.from_entries(k.size, k.size, entries), k.sigma)


def _check_kernel_closed(c: BasedComplex, killed: Sequence[int]) -> None:
    killed_set = set(killed)
    dense = c.differential.to_dense()
    for x in killed:
        for y in dense[:, x].nonzero()[0]:
            if int(y) not in killed_set:
                raise InvariantViolation(
                    "quotient", f"kernel of the projection is not a subcomplex ({c.names[x]} -> {c.names[y]})"
                )


def parts_of_a(k: KnotComplex, s: int, need_i: bool = True) -> tuple[ChainMap, ChainMap | None]:
    """The two quotients of the level-``s`` subquotient.

    ``j_part`` lands in ``B{>= s}``; ``i_part`` lands in ``B{>= -s}`` after the
    duality involution.  Generators at ``sigma == s`` survive in both.
    """
    a = a_complex(k, s)
    up = sub_at_least(k, s)
    killed_j = [x for x in range(k.size) if k.sigma[x] < s]
    _check_kernel_closed(a, killed_j)
    pos = {g: r for r, g in enumerate(up.indices)}
    j_part = ChainMap(a, up.complex, BitMatrix.from_entries(up.dim, k.size, ((pos[x], x) for x in pos)))
    if not need_i:
        return j_part, None
    if k.duality is None:
        raise DualityRequired(f"{k.name}: the i-part quotient needs a duality involution")
    down = sub_at_least(k, -s)
    killed_i = [x for x in range(k.size) if k.sigma[x] > s]
    _check_kernel_closed(a, killed_i)
    pos = {g: r for r, g in enumerate(down.indices)}
    entries = [(pos[k.duality[x]], x) for x in range(k.size) if k.sigma[x] <= s]
    i_part = ChainMap(a, down.complex, BitMatrix.from_entries(down.dim, k.size, entries))
    return j_part, i_part


# --------------------------------------------------------------------------
# constructions
# --------------------------------------------------------------------------

def mirror(k: KnotComplex) -> KnotComplex:
    """Dual complex: every arrow reversed with its drops kept, gradings negated."""
    return KnotComplex(
        name=_mirror_name(k.name),
        gens=k.gens,
        sigma=tuple(-s for s in k.sigma),
        arrows=tuple(Arrow(a.dst, a.src, a.u, a.v) for a in k.arrows),
        duality=k.duality,
        maslov=None if k.maslov is None else tuple(None if m is None else -m for m in k.maslov),
    )


def _mirror_name(name: str) -> str:
    return name[len("mirror(") : -1] if name.startswith("mirror(") and name.endswith(")") else f"mirror({name})"


def connected_sum(k1: KnotComplex, k2: KnotComplex, name: str | None = None) -> KnotComplex:
    """Tensor product complex with the Leibniz differential."""
    if (k1.duality is None) != (k2.duality is None):
        raise DualityRequired("connected sum needs duality on both summands or neither")
    n2 = k2.size

    def idx(x, y):
        return x * n2 + y

    gens = tuple(f"{x}*{y}" for x in k1.gens for y in k2.gens)
    sigma = tuple(s1 + s2 for s1 in k1.sigma for s2 in k2.sigma)
    arrows = []
    for a in k1.arrows:
        for y in range(n2):
            arrows.append(Arrow(idx(a.src, y), idx(a.dst, y), a.u, a.v))
    for x in range(k1.size):
        for b in k2.arrows:
            arrows.append(Arrow(idx(x, b.src), idx(x, b.dst), b.u, b.v))
    duality = None
    if k1.duality is not None:
        duality = tuple(idx(k1.duality[x], k2.duality[y]) for x in range(k1.size) for y in range(n2))
    return KnotComplex(name or f"{k1.name}*{k2.name}", gens, sigma, tuple(arrows), duality)


def direct_sum(parts: Sequence[KnotComplex], name: str) -> KnotComplex:
    gens, sigma, arrows, duality = [], [], [], []
    have_dual = all(p.duality is not None for p in parts)
    for n, p in enumerate(parts):
        off = len(gens)
        gens.extend(f"{g}_{n}" for g in p.gens)
        sigma.extend(p.sigma)
        arrows.extend(Arrow(a.src + off, a.dst + off, a.u, a.v) for a in p.arrows)
        if have_dual:
            duality.extend(d + off for d in p.duality)
    return KnotComplex(name, tuple(gens), tuple(sigma), tuple(arrows), tuple(duality) if have_dual else None)


def relabel(k: KnotComplex, perm: Sequence[int], name: str | None = None) -> KnotComplex:
    """Reorder generators: new generator ``i`` is old generator ``perm[i]``."""
    inv = {old: new for new, old in enumerate(perm)}
    return KnotComplex(
        name or k.name,
        tuple(k.gens[p] for p in perm),
        tuple(k.sigma[p] for p in perm),
        tuple(Arrow(inv[a.src], inv[a.dst], a.u, a.v) for a in k.arrows),
        None if k.duality is None else tuple(inv[k.duality[p]] for p in perm),
    )


def find_isomorphism(k1: KnotComplex, k2: KnotComplex) -> dict[str, str] | None:
    """Brute-force grading-preserving bijection carrying arrows to arrows.

    Only meant for small complexes (tests and fixture checks).
    """
    if sorted(k1.sigma) != sorted(k2.sigma) or len(k1.arrows) != len(k2.arrows):
        return None
    target_arrows = Counter((a.src, a.dst, a.u, a.v) for a in k2.arrows)
    by_level: dict[int, list[int]] = defaultdict(list)
    for i, s in enumerate(k2.sigma):
        by_level[s].append(i)
    levels = sorted(by_level)
    sources = [[i for i, s in enumerate(k1.sigma) if s == lev] for lev in levels]
    for choice in itertools.product(*(itertools.permutations(by_level[lev]) for lev in levels)):
        m = {}
        for src_block, img in zip(sources, choice):
            m.update(zip(src_block, img))
        mapped = Counter((m[a.src], m[a.dst], a.u, a.v) for a in k1.arrows)
        if mapped == target_arrows:
            return {k1.gens[i]: k2.gens[j] for i, j in m.items()}
    return None


def arrow_multiset(k: KnotComplex) -> Counter:
    return Counter(k.arrows_named())


def graded_ranks(k: KnotComplex) -> dict[int, int]:
    """Dimension of each graded piece (the knot Floer ranks of a reduced complex)."""
    c = Counter(k.sigma)
    return {s: c[s] for s in sorted(c)}


def window(k: KnotComplex, pad: int = 2) -> range:
    g = genus(k)
    return range(-g - pad, g + pad + 1)


def generator_names(k: KnotComplex, idx: Iterable[int]) -> list[str]:
    return [k.gens[i] for i in idx]
