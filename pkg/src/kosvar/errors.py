"""Exception hierarchy with machine-readable codes and CLI exit codes."""

from __future__ import annotations


class KosvarError(Exception):
    """Base error. `code` is the machine-readable identifier used in reports."""

    code = "Error"
    exit_code = 1

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.message = message


class NonPrimeModulus(KosvarError):
    code = "NonPrimeModulus"


class InhomogeneousRelation(KosvarError):
    code = "InhomogeneousRelation"


class InhomogeneousInput(KosvarError):
    code = "InhomogeneousInput"


class InhomogeneousElement(KosvarError):
    code = "InhomogeneousElement"


class InhomogeneousEntry(KosvarError):
    code = "InhomogeneousEntry"


class UnknownVariable(KosvarError):
    code = "UnknownVariable"


class ParseError(KosvarError):
    code = "ParseError"
    exit_code = 2

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NotAChainMap(KosvarError):
    code = "NotAChainMap"


class NotInIdeal(KosvarError):
    code = "NotInIdeal"


class NotKoszulResolution(KosvarError):
    code = "NotKoszulResolution"


class NotSemiprojective(KosvarError):
    code = "NotSemiprojective"


class HypothesisViolated(KosvarError):
    code = "HypothesisViolated"
    exit_code = 3


class NotCertifiedCI(KosvarError):
    code = "NotCertifiedCI"


class WindowTooSmall(KosvarError):
    code = "WindowTooSmall"


class NotPerfectAtBound(KosvarError):
    code = "NotPerfectAtBound"
    exit_code = 4


class ComplexInvariantError(KosvarError):
    """d^2 != 0 or a DG identity failed on a constructed object. Always fatal."""

    code = "ComplexInvariantError"
