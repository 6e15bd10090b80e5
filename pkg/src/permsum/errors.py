"""Exception hierarchy.

Errors that describe bad user input subclass ``ValueError``; the CLI maps
them to exit code 2. ``SizeCapError`` is a runtime limit (exit code 1).
"""


class PermSumError(Exception):
    pass


class NotAPermutation(PermSumError, ValueError):
    pass


class InvalidBlockSize(PermSumError, ValueError):
    pass


class TooManySwaps(PermSumError, ValueError):
    pass


class OutOfRange(PermSumError, ValueError):
    pass


class SizeCapError(PermSumError, RuntimeError):
    pass


class OddGrid(PermSumError, ValueError):
    pass


class GridMismatch(PermSumError, ValueError):
    pass


class OutOfDomain(PermSumError, ValueError):
    pass


class TooCloseToKappa(PermSumError, ValueError):
    pass


class SupportViolation(PermSumError, ValueError):
    pass


class RangeViolation(PermSumError, ValueError):
    pass


class MalformedFunctionFile(PermSumError, ValueError):
    pass
