"""Exception types shared across the package."""

from __future__ import annotations


class HFCalcError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 2


class InputError(HFCalcError):
    exit_code = 1


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InvariantViolation(InputError):
    """A knot complex breaks one of its structural invariants."""

    def __init__(self, which: str, message: str, witness=None):
        self.which = which
        self.witness = witness
        super().__init__(f"{which}: {message}")


class DualityRequired(InputError):
    pass


class NotCoprime(InputError):
    pass


class NTooSmall(InputError):
    pass


class DifferentialNotSquareZero(HFCalcError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class DSquaredNonzero(HFCalcError):
    def __init__(self, message: str, pair=None, witness=None):
        self.pair = pair
        self.witness = witness
        super().__init__(message)


class NotAChainMap(HFCalcError):
    pass


class RelationViolated(HFCalcError):
    pass


class CrossCheckFailed(HFCalcError):
    def __init__(self, which: str, lhs, rhs):
        self.which, self.lhs, self.rhs = which, lhs, rhs
        super().__init__(f"{which}: {lhs} != {rhs}")


class BoundViolated(HFCalcError):
    def __init__(self, which: str, detail: str = ""):
        self.which = which
        super().__init__(f"{which} {detail}".strip())


class WindowTooSmall(InputError):
    pass
