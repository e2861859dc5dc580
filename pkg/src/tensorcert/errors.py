"""Exception types shared across the package."""


class TensorCertError(Exception):
    """Base class for all tensorcert errors."""


class NonPrimeModulus(TensorCertError):
    """The characteristic p of a requested field is composite."""


class ReducibleModulus(TensorCertError):
    """The modulus polynomial of an extension field factors over GF(p)."""


class DegreeTooSmall(TensorCertError):
    """An extension field was requested with modulus degree < 2."""


class FieldMismatch(TensorCertError):
    """Operands live in different fields."""


class DivisionByZero(TensorCertError, ZeroDivisionError):
    """Division by the zero element of a field."""


class InfiniteField(TensorCertError):
    """An enumeration-based operation was asked to run over the rationals."""


class CapExceeded(TensorCertError):
    """A configured enumeration or search budget would be exceeded."""


class LengthMismatch(TensorCertError):
    """A coefficient vector does not match the number of triads."""


class DimensionMismatch(TensorCertError):
    """Vector or tensor dimensions are inconsistent."""


class RankNotOne(TensorCertError):
    """A coefficient combination was expected to yield a rank-1 matrix."""


class WeightTooSmall(TensorCertError):
    """A coefficient vector has fewer than two nonzero entries."""


class UnsupportedField(TensorCertError):
    """The built-in example is not defined over the requested field."""


class HypothesesViolated(TensorCertError):
    """The input triads violate the nonzero / pairwise-nonparallel hypotheses."""
