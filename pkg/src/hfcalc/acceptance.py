"""The eleven acceptance criteria as plain functions.

Each returns a :class:`CriterionResult`; the pytest suite and ``hfcalc
selftest`` both call :func:`run_all`.  Expensive objects (packages, cubes) are
cached on a shared :class:`Context`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable

from . import fixtures
from .complexes import homology
from .corpus import run_corpus
from .errors import HFCalcError
from .knot import (
    KnotComplex,
    a_complex,
    connected_sum,
    genus,
    graded_ranks,
    hat_complex,
    mirror,
    validate,
)
from .package import InvariantPackage, build_package, c_n_complex
from .random_complexes import random_complexes
from .splice import SpliceCube, build_cube, cube_euler, cube_rank, rank_bounds
from .surgery import large_surgery_table, os_cone_rank, rational_surgery_rank, surgery_complex
from .verifier import block_normal_form, formula_consistency, tau_table

RANDOM_SEED = 1729
RANDOM_COUNT = 100
PAIR_SEED = 4104
PAIR_COUNT = 20
NONTRIVIAL = ("trefoil_r", "trefoil_l", "figure8")


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number:2d}: {self.title} -- {self.detail}"


@dataclass
class Context:
    seed: int = RANDOM_SEED
    count: int = RANDOM_COUNT
    pair_seed: int = PAIR_SEED
    pair_count: int = PAIR_COUNT
    _packages: dict[str, InvariantPackage] = field(default_factory=dict)
    _cubes: dict[tuple[str, str], SpliceCube] = field(default_factory=dict)

    @cached_property
    def fixtures(self) -> dict[str, KnotComplex]:
        return {name: fixtures.load(name) for name in fixtures.NAMES}

    @cached_property
    def randoms(self) -> list[KnotComplex]:
        return random_complexes(self.seed, self.count)

    @cached_property
    def random_pairs(self) -> list[tuple[KnotComplex, KnotComplex]]:
        ks = random_complexes(self.pair_seed, 2 * self.pair_count, nontrivial=True, max_boxes=1)
        return list(zip(ks[::2], ks[1::2]))

    def all_complexes(self) -> list[KnotComplex]:
        return list(self.fixtures.values()) + self.randoms

    def package(self, k: KnotComplex) -> InvariantPackage:
        if k.name not in self._packages:
            self._packages[k.name] = build_package(k)
        return self._packages[k.name]

    def cube(self, k1: KnotComplex, k2: KnotComplex) -> SpliceCube:
        key = (k1.name, k2.name)
        if key not in self._cubes:
            self._cubes[key] = build_cube(self.package(k1), self.package(k2))
        return self._cubes[key]


def _result(number, title, failures: list[str], ok_detail: str) -> CriterionResult:
    if failures:
        shown = "; ".join(failures[:4]) + (f"; ... ({len(failures)} total)" if len(failures) > 4 else "")
        return CriterionResult(number, title, False, shown)
    return CriterionResult(number, title, True, ok_detail)


def criterion_validation(ctx: Context) -> CriterionResult:
    failures = []
    for name, k in ctx.fixtures.items():
        try:
            validate(k)
        except HFCalcError as exc:
            failures.append(f"{name}: {exc}")
    corpus = run_corpus()
    for c, got in corpus:
        if got != c.expected:
            failures.append(f"{c.label}: expected {c.expected}, got {got}")
    return _result(1, "validation", failures, f"4 fixtures valid; {len(corpus)} corruptions rejected correctly")


def criterion_hfk(ctx: Context) -> CriterionResult:
    want = {
        "unknot": {0: 1},
        "trefoil_r": {-1: 1, 0: 1, 1: 1},
        "trefoil_l": {-1: 1, 0: 1, 1: 1},
        "figure8": {-1: 1, 0: 3, 1: 1},
    }
    failures = []
    for name, k in ctx.fixtures.items():
        got = graded_ranks(k)
        if got != want[name]:
            failures.append(f"{name}: ranks {got}")
        hat = homology(hat_complex(k).complex).rank
        if hat != 1:
            failures.append(f"{name}: hat rank {hat}")
    return _result(2, "knot Floer ranks", failures, "graded ranks and hat rank 1 as expected")


def criterion_lens(ctx: Context) -> CriterionResult:
    pkg = ctx.package(ctx.fixtures["unknot"])
    cases = {(1, 1): 1, (2, 1): 2, (3, 1): 3, (3, 2): 3, (5, 3): 5, (0, 1): 2}
    failures = []
    for (p, q), want in cases.items():
        got = rational_surgery_rank(pkg, p, q)
        if got != want:
            failures.append(f"{p}/{q}: {got} != {want}")
    return _result(3, "lens-space ladder", failures, "unknot p/q surgeries give p, and 0/1 gives 2")


def criterion_surgery(ctx: Context) -> CriterionResult:
    cone_want = {"trefoil_r": 1, "trefoil_l": 3, "figure8": 3}
    offset = {"trefoil_r": 0, "trefoil_l": 2, "figure8": 2}
    failures = []
    for name, want in cone_want.items():
        got = os_cone_rank(ctx.fixtures[name])
        if got != want:
            failures.append(f"cone {name}: {got} != {want}")
        for n in (3, 4):
            total = large_surgery_table(ctx.fixtures[name], n).total
            if total != n + offset[name]:
                failures.append(f"large {name} n={n}: {total} != {n + offset[name]}")
    return _result(4, "surgery oracles", failures, "cone ranks 1/3/3; large totals n, n+2, n+2")


def criterion_cross_formula(ctx: Context) -> CriterionResult:
    failures = []
    for k in ctx.all_complexes():
        lhs = rational_surgery_rank(ctx.package(k), 1, 1)
        rhs = os_cone_rank(k)
        if lhs != rhs:
            failures.append(f"{k.name}: {lhs} != {rhs}")
    n = len(ctx.all_complexes())
    return _result(5, "cross-formula equivalence", failures, f"rational 1/1 = cone rank on {n} complexes")


def criterion_splice_oracles(ctx: Context) -> CriterionResult:
    failures = []
    fx = ctx.fixtures
    base = cube_rank(ctx.cube(fx["unknot"], fx["unknot"]))
    if base != 1:
        failures.append(f"(unknot, unknot): {base}")
    for name in NONTRIVIAL:
        for pair in ((fx["unknot"], fx[name]), (fx[name], fx["unknot"])):
            r = cube_rank(ctx.cube(*pair))
            if r != 1:
                failures.append(f"({pair[0].name}, {pair[1].name}): {r}")
    for a, b in product(fx.values(), repeat=2):
        if cube_rank(ctx.cube(a, b)) != cube_rank(ctx.cube(b, a)):
            failures.append(f"asymmetric on ({a.name}, {b.name})")
    return _result(6, "splice oracles", failures, "unknot splices have rank 1; rank symmetric on all fixture pairs")


def _nontrivial_pairs(ctx: Context):
    fx = ctx.fixtures
    pairs = [(fx[a], fx[b]) for a, b in product(NONTRIVIAL, repeat=2)]
    return pairs + ctx.random_pairs


def criterion_bigger_than_one(ctx: Context) -> CriterionResult:
    failures = []
    ranks = []
    for a, b in _nontrivial_pairs(ctx):
        r = cube_rank(ctx.cube(a, b))
        ranks.append(r)
        if r < 3 or r % 2 == 0:
            failures.append(f"({a.name}, {b.name}): {r}")
    return _result(
        7, "splice rank bigger than one", failures, f"{len(ranks)} pairs, smallest rank {min(ranks)}, all odd"
    )


def criterion_inequalities(ctx: Context) -> CriterionResult:
    failures = []
    fx = ctx.fixtures
    pairs = list(product(fx.values(), repeat=2)) + _nontrivial_pairs(ctx)
    for a, b in pairs:
        cube = ctx.cube(a, b)
        try:
            report = rank_bounds(cube)
        except HFCalcError as exc:
            failures.append(f"({a.name}, {b.name}): {exc}")
            continue
        chi = cube_euler(cube)
        if report["rank_h"] < abs(chi):
            failures.append(f"({a.name}, {b.name}): rank {report['rank_h']} < |{chi}|")
        hats = [homology(hat_complex(k).complex).rank for k in (a, b)]
        if hats == [1, 1] and chi % 2 == 0:
            failures.append(f"({a.name}, {b.name}): even Euler characteristic {chi}")
    return _result(8, "rank inequalities", failures, f"all bounds and witness checks hold on {len(pairs)} cubes")


def criterion_relations(ctx: Context) -> CriterionResult:
    failures = []
    checked = 0
    for k in ctx.all_complexes():
        pkg = ctx.package(k)
        if not (pkg.phi @ pkg.psibar).is_zero() or not (pkg.phibar @ pkg.psi).is_zero():
            failures.append(f"{k.name}: relation fails")
        for p, q in ((1, 1), (2, 1), (1, 2), (0, 1)):
            try:
                surgery_complex(pkg, p, q)  # checks d^2 = 0
            except HFCalcError as exc:
                failures.append(f"{k.name} {p}/{q}: {exc}")
        checked += 1
    return _result(
        9, "relations and d^2 = 0", failures, f"phi.psibar = phibar.psi = 0 and d^2 = 0 on {checked} complexes"
    )


def criterion_verifier(ctx: Context) -> CriterionResult:
    failures = []
    stage_two_hits = 0
    for k in ctx.all_complexes():
        pkg = ctx.package(k)
        form = block_normal_form(pkg)  # raises if the stage-one patterns are wrong
        if not form.stage_one.pattern_ok():
            failures.append(f"{k.name}: stage-one pattern")
        if form.stage_two_ok:
            stage_two_hits += 1
            report = formula_consistency(pkg, form=form)
            if report["critical"]:
                failures.append(f"CRITICAL {k.name}: {report['samples']}")
    unknot_form = block_normal_form(ctx.package(ctx.fixtures["unknot"]))
    if unknot_form.obstruction is None:
        failures.append("unknot: stage two succeeds, no obstruction found")
    want_tau = {"unknot": 0, "trefoil_r": -1, "trefoil_l": 1}
    for name, want in want_tau.items():
        got = tau_table(ctx.fixtures[name]).value
        if got != want:
            failures.append(f"tau {name}: {got} != {want}")
    return _result(
        10,
        "normal form verifier",
        failures,
        f"stage one exact everywhere; stage two on {stage_two_hits} inputs with no CRITICAL; tau as expected",
    )


def criterion_parity(ctx: Context) -> CriterionResult:
    failures = []
    touched = 0

    def check(label, c):
        nonlocal touched
        touched += 1
        h = homology(c)
        if (h.rank - c.dim) % 2:
            failures.append(f"{label}: rank {h.rank}, dim {c.dim}")

    for k in ctx.all_complexes():
        g = genus(k)
        check(f"{k.name} hat", hat_complex(k).complex)
        for s in range(-g, g + 1):
            check(f"{k.name} A_{s}", a_complex(k, s))
        for n in (0, 1):
            for s in range(-g - 1, g + 2):
                check(f"{k.name} C_{n}({s})", c_n_complex(k, n, s))
        twice = mirror(mirror(k))
        if (twice.name, twice.gens, twice.sigma, twice.arrows, twice.duality) != (
            k.name,
            k.gens,
            k.sigma,
            k.arrows,
            k.duality,
        ):
            failures.append(f"{k.name}: mirror twice differs")
    for cube in list(ctx._cubes.values()):
        touched += 1
        if (cube_rank(cube) - cube.dim) % 2:
            failures.append(f"cube {cube.first.knot.name}, {cube.second.knot.name}")
    tr = ctx.fixtures["trefoil_r"]
    ranks = graded_ranks(connected_sum(tr, tr))
    if list(ranks.values()) != [1, 2, 3, 2, 1] or list(ranks) != [-2, -1, 0, 1, 2]:
        failures.append(f"trefoil_r # trefoil_r ranks {ranks}")
    return _result(
        11, "parity and structure", failures, f"parity on {touched} complexes; mirror involutive; sum ranks 1,2,3,2,1"
    )


CRITERIA: tuple[Callable[[Context], CriterionResult], ...] = (
    criterion_validation,
    criterion_hfk,
    criterion_lens,
    criterion_surgery,
    criterion_cross_formula,
    criterion_splice_oracles,
    criterion_bigger_than_one,
    criterion_inequalities,
    criterion_relations,
    criterion_verifier,
    criterion_parity,
)


def run_all(ctx: Context | None = None) -> list[CriterionResult]:
    ctx = ctx or Context()
    out = []
    for fn in CRITERIA:
        try:
            out.append(fn(ctx))
        except HFCalcError as exc:
            number = CRITERIA.index(fn) + 1
            out.append(CriterionResult(number, fn.__name__, False, f"{type(exc).__name__}: {exc}"))
    return out
