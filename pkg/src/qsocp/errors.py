"""Exception types raised by the solver and its support modules."""


class QsocpError(Exception):
    """Base class for all solver errors."""


class DimensionMismatch(QsocpError, ValueError):
    """Array or matrix dimensions are inconsistent with the problem sizes."""


class ConeMismatch(QsocpError, ValueError):
    """Cone dimensions do not add up to the conic constraint dimension m."""


class BadSparseStructure(QsocpError, ValueError):
    """A compressed-sparse-column invariant is violated."""


class EmptyCone(QsocpError, ValueError):
    """The problem has no conic constraints (m = 0)."""


class IndexOutOfRange(QsocpError, IndexError):
    """A triplet index lies outside the declared matrix shape."""


class BadPermutation(QsocpError, ValueError):
    """A permutation array is not a bijection on 0..n-1."""


class NotInterior(QsocpError, ValueError):
    """A point that must be strictly inside the cone is on or past its boundary."""


class NumericalError(QsocpError, ArithmeticError):
    """A non-finite value or an unrecoverable numerical failure occurred."""


class NotSetUp(QsocpError, RuntimeError):
    """solve() was called before setup()."""


class EmptyInput(QsocpError, ValueError):
    """An aggregate metric was requested over an empty collection."""
