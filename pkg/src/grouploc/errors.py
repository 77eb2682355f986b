"""Exception hierarchy for grouploc.

Every error raised on purpose by the library derives from GroupLocError,
which is itself a ValueError so that callers treating bad input generically
keep working.
"""


class GroupLocError(ValueError):
    pass


class NonPrimeElement(GroupLocError):
    def __init__(self, n):
        super().__init__(f"not a prime: {n}")
        self.n = n


class NonPositive(GroupLocError):
    def __init__(self, n):
        super().__init__(f"expected a positive integer, got {n}")
        self.n = n


class UnknownSymbol(GroupLocError):
    def __init__(self, symbol):
        super().__init__(f"unknown symbol: {symbol}")
        self.symbol = symbol


class ParseError(GroupLocError):
    def __init__(self, line, col, expected, found=None):
        msg = f"line {line}, col {col}: expected {expected}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg)
        self.line = line
        self.col = col
        self.expected = expected


class UnassignedIndeterminate(GroupLocError):
    def __init__(self, symbol):
        super().__init__(f"indeterminate {symbol} has no assigned value")
        self.symbol = symbol


class ArityMismatch(GroupLocError):
    pass


class InvalidSystem(GroupLocError):
    pass


class AmbientMismatch(GroupLocError):
    pass


class UnverifiedCertificate(GroupLocError):
    pass


class CapExceeded(GroupLocError):
    pass


class NotInCommutatorSubgroup(GroupLocError):
    pass


class PrerequisiteNotMet(GroupLocError):
    pass


class NotRankTwoFree(GroupLocError):
    pass


class ZeroDivisor(GroupLocError):
    pass


class LevelOutOfRange(GroupLocError):
    pass
