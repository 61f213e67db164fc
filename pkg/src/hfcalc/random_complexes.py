"""Seeded random knot complexes: one spine summand plus box summands.

The spine is the unknot, a staircase, or a mirrored staircase, so the hat
homology always has rank one.  Boxes are acyclic in every direction.  Every
complex is validated before it is returned.
"""

from __future__ import annotations

import numpy as np

from .knot import Arrow, KnotComplex, direct_sum, mirror, validate


def unknot() -> KnotComplex:
    return KnotComplex("unknot", ("u",), (0,), (), (0,))


def staircase(steps, name: str = "staircase") -> KnotComplex:
    """Staircase with horizontal lengths ``steps``; vertical lengths are the reverse.

    Emitters ``o1..ok`` send ``o_i -> e_{i-1}`` with drops ``(a_i, 0)`` and
    ``o_i -> e_i`` with drops ``(0, a_{k+1-i})``.
    """
    steps = list(steps)
    k = len(steps)
    vertical = steps[::-1]
    top = sum(steps)  # the vertical lengths repeat the horizontal ones, so this is the genus
    receivers = [top]
    for a, b in zip(steps, vertical):
        receivers.append(receivers[-1] - a - b)
    gens = [f"e{i}" for i in range(k + 1)] + [f"o{i}" for i in range(1, k + 1)]
    sigma = receivers + [receivers[i - 1] - steps[i - 1] for i in range(1, k + 1)]
    arrows = []
    for i in range(1, k + 1):
        src = k + i
        arrows.append(Arrow(src, i - 1, steps[i - 1], 0))
        arrows.append(Arrow(src, i, 0, vertical[i - 1]))
    duality = [k - i for i in range(k + 1)] + [k + (k + 1 - i) for i in range(1, k + 1)]
    return KnotComplex(name, tuple(gens), tuple(sigma), tuple(arrows), tuple(duality))


def _box_arrows(x, y, z, w, n):
    return [Arrow(x, y, n, 0), Arrow(x, z, 0, n), Arrow(y, w, 0, n), Arrow(z, w, n, 0)]


def box(side: int, center: int = 0, name: str = "box") -> KnotComplex:
    """Square of side ``side``; self-dual when centred at zero, else paired with its reflection."""
    if center == 0:
        gens = ("x", "y", "z", "w")
        sigma = (0, side, -side, 0)
        return KnotComplex(name, gens, sigma, tuple(_box_arrows(0, 1, 2, 3, side)), (0, 2, 1, 3))
    c = abs(center)
    gens = ("x", "y", "z", "w", "xd", "yd", "zd", "wd")
    sigma = (c, c + side, c - side, c, -c, -c + side, -c - side, -c)
    arrows = _box_arrows(0, 1, 2, 3, side) + _box_arrows(4, 5, 6, 7, side)
    duality = (4, 6, 5, 7, 0, 2, 1, 3)
    return KnotComplex(name, gens, sigma, tuple(arrows), duality)


def random_complex(rng: np.random.Generator, nontrivial: bool = False, max_boxes: int = 2) -> KnotComplex:
    kind = rng.choice(["unknot", "staircase", "mirror"], p=[0.3, 0.4, 0.3])
    if kind == "unknot":
        spine = unknot()
    else:
        half = [int(v) for v in rng.integers(1, 3, size=int(rng.integers(1, 3)))]
        spine = staircase(half)
        if kind == "mirror":
            spine = mirror(spine)
    low = 1 if nontrivial and kind == "unknot" else 0
    parts = [spine]
    for _ in range(int(rng.integers(low, max_boxes + 1))):
        side = int(rng.integers(1, 3))
        center = int(rng.choice([0, 0, 1]))
        parts.append(box(side, center))
    k = direct_sum(parts, f"random[{kind}+{len(parts) - 1}]")
    return validate(k)


def random_complexes(seed: int, count: int, nontrivial: bool = False, max_boxes: int = 2) -> list[KnotComplex]:
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        k = random_complex(rng, nontrivial=nontrivial, max_boxes=max_boxes)
        out.append(KnotComplex(f"{k.name}@{seed}.{i}", k.gens, k.sigma, k.arrows, k.duality))
    return out
