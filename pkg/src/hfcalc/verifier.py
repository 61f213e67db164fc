"""Checks that turn the rank analysis of the splice cube into executable predicates.

Everything here reports; nothing raises on a predicate that fails, because the
fixtures are not expected to satisfy the hypotheses these predicates come from.
Package maps keep their construction directions: ``phi, phibar`` go from H_one
to H_inf and ``psi, psibar`` from H_zero to H_one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complexes import homology, induced_map
from .gf2 import BitMatrix, Subspace, hstack, inverse, kernel_basis, preimage
from .knot import KnotComplex, a_complex, genus, hat_complex, inclusion, sub_at_least, sub_greater
from .package import InvariantPackage, build_package

# --------------------------------------------------------------------------
# tau
# --------------------------------------------------------------------------


@dataclass
class TauTable:
    knot: str
    values: list[int]
    representatives: list[list[str]]

    @property
    def value(self) -> int:
        if len(self.values) != 1:
            raise ValueError("tau is a single number only when H(B) has rank one")
        return self.values[0]


def _tau_of_class(k: KnotComplex, class_vec: np.ndarray, maps: dict[int, BitMatrix]) -> int:
    g = genus(k)
    for s in range(g, -g - 1, -1):
        if Subspace.column_space(maps[s]).contains(class_vec):
            return s
    raise AssertionError("every class comes from B{>= -g}")


def _inclusion_maps(k: KnotComplex) -> tuple[dict[int, BitMatrix], object]:
    hat = hat_complex(k)
    h_hat = homology(hat.complex)
    g = genus(k)
    maps = {}
    for s in range(-g, g + 1):
        sub = sub_at_least(k, s)
        maps[s] = induced_map(inclusion(sub, hat), homology(sub.complex), h_hat)
    return maps, h_hat


def tau_table(k: KnotComplex) -> TauTable:
    maps, h_hat = _inclusion_maps(k)
    values, reps = [], []
    for c in range(h_hat.rank):
        e = np.zeros(h_hat.rank, dtype=np.uint8)
        e[c] = 1
        values.append(_tau_of_class(k, e, maps))
        col = h_hat.cycle_reps.column(c)
        reps.append([k.gens[i] for i in np.flatnonzero(col)])
    return TauTable(k.name, values, reps)


def tau_of_cycle(k: KnotComplex, cycle) -> int:
    """tau of the class of a cycle of B; the same for every representative."""
    maps, h_hat = _inclusion_maps(k)
    vec = h_hat.class_of(np.asarray(cycle, dtype=np.uint8))
    if not vec.any():
        raise ValueError("tau is not defined on the zero class")
    return _tau_of_class(k, vec, maps)


# --------------------------------------------------------------------------
# normal forms
# --------------------------------------------------------------------------


@dataclass
class Obstruction:
    condition: str
    witness: list[list[int]] = field(default_factory=list)


@dataclass
class StageOne:
    basis_inf: BitMatrix
    basis_one: BitMatrix
    basis_zero: BitMatrix
    phi: BitMatrix
    phibar: BitMatrix
    psi: BitMatrix
    psibar: BitMatrix
    sizes: dict[str, int]
    blocks: dict[str, BitMatrix]

    def pattern_ok(self) -> bool:
        """``phi = (I 0; 0 0)`` and ``psibar = (0 0; 0 I)`` in the new bases."""
        r, y, w = self.sizes["rank_phi"], self.sizes["ker_phi_rest"], self.sizes["im_psibar"]
        n_inf, n_one = self.phi.shape
        want_phi = np.zeros((n_inf, n_one), dtype=np.uint8)
        want_phi[:r, :r] = np.eye(r, dtype=np.uint8)
        want_psibar = np.zeros(self.psibar.shape, dtype=np.uint8)
        k = self.psibar.ncols - w
        want_psibar[r + y :, k:] = np.eye(w, dtype=np.uint8)
        return self.phi == BitMatrix.from_dense(want_phi) and self.psibar == BitMatrix.from_dense(want_psibar)


@dataclass
class StageTwo:
    basis_inf: BitMatrix
    basis_one: BitMatrix
    basis_zero: BitMatrix
    sizes: dict[str, int]
    Phi: BitMatrix
    Gamma: BitMatrix
    Psi: BitMatrix
    Upsilon: BitMatrix
    forced_relations: bool
    literal_relations: bool


@dataclass
class BlockForm:
    stage: int
    stage_one: StageOne
    stage_two: StageTwo | None
    obstruction: Obstruction | None

    @property
    def stage_two_ok(self) -> bool:
        return self.stage_two is not None


def _columns(vectors, n: int) -> BitMatrix:
    if not vectors:
        return BitMatrix(n, 0)
    return BitMatrix.from_dense(np.stack([np.asarray(v, dtype=np.uint8) for v in vectors], axis=1))


def _complement_within(sub: Subspace, candidates) -> list[np.ndarray]:
    """Vectors from ``candidates`` that extend ``sub`` without repetition."""
    current = sub
    out = []
    for v in candidates:
        if not current.contains(v):
            out.append(np.asarray(v, dtype=np.uint8))
            current = current + Subspace.span(sub.ambient_dim, [v])
    return out


def _standard(n: int) -> list[np.ndarray]:
    return [np.eye(n, dtype=np.uint8)[i] for i in range(n)]


def _image(m: BitMatrix, s: Subspace) -> Subspace:
    return Subspace.column_space(m @ s.as_columns())


def _conj(target_basis: BitMatrix, m: BitMatrix, source_basis: BitMatrix) -> BitMatrix:
    return inverse(target_basis) @ m @ source_basis


def _stage_one(p: InvariantPackage) -> StageOne:
    phi, phibar, psi, psibar = p.phi, p.phibar, p.psi, p.psibar
    n_inf, n_one, n_zero = p.h_inf, p.h_one, p.h_zero
    ker_phi = kernel_basis(phi)
    x_part = _complement_within(ker_phi, _standard(n_one))
    ker_psibar = kernel_basis(psibar)
    w_part = _complement_within(ker_psibar, _standard(n_zero))
    im_psibar = [psibar @ w for w in w_part]
    y_part = _complement_within(Subspace.span(n_one, im_psibar), ker_phi.vectors())
    basis_one = _columns(x_part + y_part + im_psibar, n_one)
    phi_x = [phi @ x for x in x_part]
    basis_inf = _columns(phi_x + _complement_within(Subspace.span(n_inf, phi_x), _standard(n_inf)), n_inf)
    basis_zero = _columns(ker_psibar.vectors() + w_part, n_zero)

    new_phibar = _conj(basis_inf, phibar, basis_one)
    new_psi = _conj(basis_one, psi, basis_zero)
    r, kz = len(x_part), ker_psibar.dim
    sizes = {
        "rank_phi": r,
        "ker_phi_rest": len(y_part),
        "im_psibar": len(im_psibar),
        "ker_phi": ker_phi.dim,
        "ker_psibar": kz,
    }
    top, rest = range(r), range(r, n_inf)
    left, right = range(r), range(r, n_one)
    upper, lower = range(r + len(y_part)), range(r + len(y_part), n_one)
    first, second = range(kz), range(kz, n_zero)
    blocks = {
        "A": new_phibar.take(top, left),
        "B": new_phibar.take(top, right),
        "C": new_phibar.take(rest, left),
        "D": new_phibar.take(rest, right),
        "M": new_psi.take(upper, first),
        "N": new_psi.take(upper, second),
        "P": new_psi.take(lower, first),
        "Q": new_psi.take(lower, second),
    }
    return StageOne(
        basis_inf,
        basis_one,
        basis_zero,
        _conj(basis_inf, phi, basis_one),
        new_phibar,
        new_psi,
        _conj(basis_one, psibar, basis_zero),
        sizes,
        blocks,
    )


def _vec_list(vs) -> list[list[int]]:
    return [np.asarray(v, dtype=np.uint8).astype(int).tolist() for v in vs]


def _extend_avoiding(base: Subspace, avoid: Subspace, candidates) -> Subspace:
    """Grow ``base`` by candidates until it complements ``avoid`` (``base`` meets ``avoid`` trivially)."""
    current = base
    for v in candidates:
        if not (current + avoid).contains(v):
            current = current + Subspace.span(base.ambient_dim, [v])
    return current


def _stage_two(p: InvariantPackage, one: StageOne) -> tuple[StageTwo | None, Obstruction | None]:
    phi, phibar, psi, psibar = p.phi, p.phibar, p.psi, p.psibar
    n_inf, n_one, n_zero = p.h_inf, p.h_one, p.h_zero

    d_block, m_block = one.blocks["D"], one.blocks["M"]
    if d_block.rank() != d_block.nrows:
        return None, Obstruction("D is not surjective: phibar on ker(phi) misses part of H_inf / im(phi)")
    if m_block.rank() != m_block.ncols:
        return None, Obstruction("M is not injective: psi on ker(psibar) meets im(psibar)")

    a0 = kernel_basis(psibar)
    b0 = kernel_basis(psi)
    both = a0.intersect(b0)
    if both.dim:
        return None, Obstruction("ker(psi) and ker(psibar) intersect", _vec_list(both.vectors()))
    eta, etabar = phi @ psi, phibar @ psibar
    a_vecs, b_vecs = a0.vectors(), b0.vectors()
    a_inf = [eta @ v for v in a_vecs]
    b_inf = [etabar @ v for v in b_vecs]
    lost = kernel_basis(eta @ a0.as_columns()) if a_vecs else None
    if lost is not None and lost.dim:
        return None, Obstruction("phi.psi is not injective on ker(psibar)")
    lost = kernel_basis(etabar @ b0.as_columns()) if b_vecs else None
    if lost is not None and lost.dim:
        return None, Obstruction("phibar.psibar is not injective on ker(psi)")
    a_space = Subspace.span(n_inf, a_inf)
    b_space = Subspace.span(n_inf, b_inf)
    im_phi = Subspace.column_space(phi)
    im_phibar = Subspace.column_space(phibar)
    clash = a_space.intersect(im_phibar)
    if clash.dim:
        return None, Obstruction("phi(psi(ker psibar)) meets im(phibar)", _vec_list(clash.vectors()))
    clash = b_space.intersect(im_phi)
    if clash.dim:
        return None, Obstruction("phibar(psibar(ker psi)) meets im(phi)", _vec_list(clash.vectors()))

    c_a = _extend_avoiding(im_phibar, a_space, im_phi.vectors() + _standard(n_inf))
    c_b = _extend_avoiding(im_phi, b_space, im_phibar.vectors() + _standard(n_inf))
    m_space = c_a.intersect(c_b)
    h_space = preimage(phi, c_a).intersect(preimage(phibar, c_b))
    l_space = preimage(eta, c_a).intersect(preimage(etabar, c_b))

    a1 = [psi @ v for v in a_vecs]
    b1 = [psibar @ v for v in b_vecs]
    basis_inf = _columns(a_inf + m_space.vectors() + b_inf, n_inf)
    basis_one = _columns(a1 + h_space.vectors() + b1, n_one)
    basis_zero = _columns(a_vecs + l_space.vectors() + b_vecs, n_zero)
    for name, basis, n in (("H_inf", basis_inf, n_inf), ("H_one", basis_one, n_one), ("H_zero", basis_zero, n_zero)):
        if basis.ncols != n or basis.rank() != n:
            return None, Obstruction(f"the three pieces do not split {name}")

    na, nb = len(a_vecs), len(b_vecs)
    nm, nh, nl = m_space.dim, h_space.dim, l_space.dim
    sizes = {"A": na, "M": nm, "H": nh, "L": nl, "B": nb}
    phi2 = _conj(basis_inf, phi, basis_one)
    phibar2 = _conj(basis_inf, phibar, basis_one)
    psi2 = _conj(basis_one, psi, basis_zero)
    psibar2 = _conj(basis_one, psibar, basis_zero)
    mid_inf, mid_one, mid_zero = range(na, na + nm), range(na, na + nh), range(na, na + nl)
    Phi = phi2.take(mid_inf, mid_one)
    Gamma = phibar2.take(mid_inf, mid_one)
    Psi = psi2.take(mid_one, mid_zero)
    Upsilon = psibar2.take(mid_one, mid_zero)

    def expected(shape_rows, shape_cols, first, middle, last):
        grid = np.zeros((sum(shape_rows), sum(shape_cols)), dtype=np.uint8)
        r0, c0 = 0, 0
        for i, blk in enumerate((first, middle, last)):
            if blk is not None:
                grid[r0 : r0 + shape_rows[i], c0 : c0 + shape_cols[i]] = blk
            r0 += shape_rows[i]
            c0 += shape_cols[i]
        return BitMatrix.from_dense(grid)

    eye = lambda n: np.eye(n, dtype=np.uint8)  # noqa: E731
    checks = [
        ("phi", phi2, expected((na, nm, nb), (na, nh, nb), eye(na), Phi.to_dense(), None)),
        ("phibar", phibar2, expected((na, nm, nb), (na, nh, nb), None, Gamma.to_dense(), eye(nb))),
        ("psi", psi2, expected((na, nh, nb), (na, nl, nb), eye(na), Psi.to_dense(), None)),
        ("psibar", psibar2, expected((na, nh, nb), (na, nl, nb), None, Upsilon.to_dense(), eye(nb))),
    ]
    for name, got, want in checks:
        if got != want:
            return None, Obstruction(f"{name} is not block diagonal in the constructed bases")
    if Phi.rank() != nm:
        return None, Obstruction("Phi does not reach all of the middle of H_inf")
    if Gamma.rank() != nm:
        return None, Obstruction("Gamma does not reach all of the middle of H_inf")
    if Psi.rank() != nl:
        return None, Obstruction("Psi is not injective")
    if Upsilon.rank() != nl:
        return None, Obstruction("Upsilon is not injective")
    forced = (Phi @ Upsilon).is_zero() and (Gamma @ Psi).is_zero()
    if not forced:
        raise AssertionError("relations of the package fail inside the normal form")
    literal = (Phi @ Psi).is_zero() and (Gamma @ Upsilon).is_zero()
    return StageTwo(basis_inf, basis_one, basis_zero, sizes, Phi, Gamma, Psi, Upsilon, forced, literal), None


def block_normal_form(p: InvariantPackage) -> BlockForm:
    one = _stage_one(p)
    if not one.pattern_ok():
        raise AssertionError("stage-one basis change does not produce the identity blocks")
    two, obstruction = _stage_two(p, one)
    return BlockForm(2 if two else 1, one, two, obstruction)


# --------------------------------------------------------------------------
# the rank formula for rational surgeries
# --------------------------------------------------------------------------


def predicted_rank(p: InvariantPackage, num: int, den: int) -> int:
    return num * (p.h_one - p.h_zero) + den * (p.h_one - p.h_inf)


def formula_consistency(p: InvariantPackage, samples=((1, 1), (2, 1), (1, 2)), form: BlockForm | None = None) -> dict:
    from .surgery import rational_surgery_rank

    form = form or block_normal_form(p)
    rows = []
    critical = False
    for num, den in samples:
        predicted = predicted_rank(p, num, den)
        computed = rational_surgery_rank(p, num, den)
        match = predicted == computed
        status = "match" if match else "mismatch"
        if not match and form.stage_two_ok:
            if num >= 1:
                status = "CRITICAL"
                critical = True
            else:
                status = "mismatch outside the range p >= 1"
        rows.append({"p": num, "q": den, "predicted": predicted, "computed": computed, "status": status})
    return {
        "knot": p.knot.name,
        "stage_two": form.stage_two_ok,
        "obstruction": None if form.obstruction is None else form.obstruction.condition,
        "samples": rows,
        "critical": critical,
    }


# --------------------------------------------------------------------------
# predicates
# --------------------------------------------------------------------------


def inclusion_surjectivity(k: KnotComplex) -> dict:
    maps, h_hat = _inclusion_maps(k)
    per_s = {s: m.rank() == h_hat.rank for s, m in maps.items()}
    return {
        "per_s": per_s,
        "holds_for_nonpositive": all(v for s, v in per_s.items() if s <= 0),
    }


def graded_cokernel(k: KnotComplex) -> dict:
    """For each level, the map ``x -> [dx]`` from ``B{s}`` to ``H(B{>s})`` and its cokernel."""
    g = genus(k)
    d = hat_complex(k).complex.differential
    per_s = {}
    for s in range(-g, g + 1):
        upper = sub_greater(k, s)
        h_up = homology(upper.complex)
        level = [i for i in range(k.size) if k.sigma[i] == s]
        if level:
            images = d.take(rows=list(upper.indices), cols=level)
            induced = h_up.classes_of(images)
            rank = induced.rank()
        else:
            rank = 0
        coker = h_up.rank - rank
        expected = 0 if s >= 0 else 1
        per_s[s] = {"source": len(level), "target": h_up.rank, "cokernel": coker, "as_predicted": coker == expected}
    return {"per_s": per_s, "dichotomy_holds": all(v["as_predicted"] for v in per_s.values())}


def hypothesis_suite(k: KnotComplex, pkg: InvariantPackage | None = None) -> dict:
    pkg = pkg or build_package(k)
    g = genus(k)
    a_ranks = {s: homology(a_complex(k, s)).rank for s in range(-g, g + 1)}
    hat_rank = homology(hat_complex(k).complex).rank
    form = block_normal_form(pkg)
    formula = formula_consistency(pkg, form=form)
    surj = inclusion_surjectivity(k)
    coker = graded_cokernel(k)
    predicates = {
        "all_A_rank_one": all(r == 1 for r in a_ranks.values()),
        "inclusion_surjective_for_nonpositive_s": surj["holds_for_nonpositive"],
        "graded_cokernel_dichotomy": coker["dichotomy_holds"],
        "stable_slope_equals_hat_rank": pkg.h_one - pkg.h_zero == hat_rank,
        "stage_two_normal_form": form.stage_two_ok,
        "rank_formula_matches": all(r["status"] == "match" for r in formula["samples"]),
    }
    passes = all(predicates.values())
    return {
        "knot": k.name,
        "genus": g,
        "A_ranks": {str(s): r for s, r in a_ranks.items()},
        "predicates": predicates,
        "failed": sorted(name for name, ok in predicates.items() if not ok),
        "passes": passes,
        "counterexample_candidate": passes and g > 0,
    }


def verify_report(k: KnotComplex, pkg: InvariantPackage | None = None) -> dict:
    pkg = pkg or build_package(k)
    form = block_normal_form(pkg)
    tau = tau_table(k)
    return {
        "knot": k.name,
        "tau": tau.values,
        "normal_form": {
            "stage": form.stage,
            "stage_one_sizes": form.stage_one.sizes,
            "stage_one_blocks": {n: list(b.shape) for n, b in form.stage_one.blocks.items()},
            "stage_two_sizes": None if form.stage_two is None else form.stage_two.sizes,
            "literal_relations": None if form.stage_two is None else form.stage_two.literal_relations,
            "obstruction": None if form.obstruction is None else form.obstruction.condition,
        },
        "formula": formula_consistency(pkg, form=form),
        "inclusion_surjectivity": {str(s): v for s, v in inclusion_surjectivity(k)["per_s"].items()},
        "graded_cokernel": {str(s): v for s, v in graded_cokernel(k)["per_s"].items()},
        "hypotheses": hypothesis_suite(k, pkg),
    }
