"""Exception hierarchy shared by every module."""


class TernaryError(ValueError):
    """Base class for all library errors."""


class LimitError(TernaryError):
    """A configured resource bound was exceeded (CLI exit code 3)."""


class NotInvertible(TernaryError):
    pass


class InvalidModulus(TernaryError):
    pass


class NonResidue(TernaryError):
    pass


class ModuliNotCoprime(TernaryError):
    pass


class FactorLimitExceeded(LimitError):
    pass


class ModulusTooLarge(LimitError):
    pass


class DegenerateForm(TernaryError):
    pass


class NotLiftable(TernaryError):
    pass


class PreconditionViolated(TernaryError):
    pass


class NoSolution(TernaryError):
    pass
