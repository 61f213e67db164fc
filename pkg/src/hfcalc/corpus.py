"""Single-line corruptions of the bundled fixtures, each with the diagnostic it must trigger.

``expected`` is the ``which`` of the :class:`InvariantViolation` raised, or
``"parse"`` for a :class:`ParseError`.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fixtures
from .errors import InvariantViolation, ParseError
from .knot import parse_validate


@dataclass(frozen=True)
class Corruption:
    label: str
    fixture: str
    line: str
    replacement: str | None  # None deletes the line
    expected: str

    def text(self) -> str:
        lines = fixtures.text(self.fixture).splitlines()
        idx = lines.index(self.line)
        if self.replacement is None:
            del lines[idx]
        else:
            lines[idx] = self.replacement
        return "\n".join(lines) + "\n"


CORPUS: tuple[Corruption, ...] = (
    Corruption("dual arrow deleted", "trefoil_r", "arrow b c 0 1", None, "duality-arrows"),
    Corruption("drop changed", "trefoil_r", "arrow b a 1 0", "arrow b a 2 0", "arrow-grading"),
    Corruption("lone generator regraded", "unknot", "gen u 0", "gen u 1", "grading-symmetry"),
    Corruption("square edge deleted", "figure8", "arrow c d 1 0", None, "d-squared"),
    Corruption("non-integer drop", "trefoil_r", "arrow b a 1 0", "arrow b a 1 x", "parse"),
    Corruption("negative drop", "trefoil_r", "arrow b a 1 0", "arrow b a -1 0", "parse"),
    Corruption("unknown target", "trefoil_r", "arrow b a 1 0", "arrow b q 1 0", "parse"),
    Corruption("dual pair clash", "trefoil_r", "dual a c", "dual a b", "duality-involution"),
    Corruption("fixed point dropped", "trefoil_r", "dual b b", None, "duality-incomplete"),
    Corruption("isolated generator regraded", "figure8", "gen e 0", "gen e 1", "grading-symmetry"),
    Corruption("arrow repeated", "trefoil_r", "arrow b c 0 1", "arrow b a 1 0", "duplicate-arrow"),
    Corruption("zero-drop loop", "unknot", "dual u u", "arrow u u 0 0", "reduced"),
)


def diagnose(text: str) -> str | None:
    """The diagnostic ``text`` triggers, or ``None`` if it is a valid complex."""
    try:
        parse_validate(text)
    except ParseError:
        return "parse"
    except InvariantViolation as exc:
        return exc.which
    return None


def run_corpus() -> list[tuple[Corruption, str | None]]:
    return [(c, diagnose(c.text())) for c in CORPUS]
