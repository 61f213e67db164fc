"""Bundled knot complexes in the ``.kc`` text format."""

from __future__ import annotations

from importlib import resources

from ..knot import KnotComplex, parse_validate

NAMES = ("unknot", "trefoil_r", "trefoil_l", "figure8")


def text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.kc").read_text(encoding="utf-8")


def load(name: str) -> KnotComplex:
    return parse_validate(text(name))


def all_fixtures() -> dict[str, KnotComplex]:
    return {n: load(n) for n in NAMES}
