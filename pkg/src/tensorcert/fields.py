"""Exact field arithmetic: rationals, prime fields GF(p), extensions GF(p^k).

Finite-field elements travel as integer codes in [0, q).  The code of the
element c0 + c1*x + ... + c_{k-1}*x^{k-1} (polynomial basis, modulus supplied
at construction) is c0 + c1*p + ... + c_{k-1}*p^{k-1}; for prime fields the
code is simply the residue.  Enumerating codes 0..q-1 therefore starts at 0
and is lexicographic on coefficient lists read from the highest power down.

Rational elements are `fractions.Fraction` values (always reduced, positive
denominator).  No floating point is used anywhere.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DegreeTooSmall,
    DivisionByZero,
    FieldMismatch,
    InfiniteField,
    NonPrimeModulus,
    ReducibleModulus,
)

RATIONAL = "rational"
PRIME = "prime"
EXTENSION = "extension"

# Largest field order for which dense q x q operation tables are built.
TABLE_ORDER_LIMIT = 1024


def _is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# Polynomial helpers over GF(p) (coefficient tuples, constant term first)
# ---------------------------------------------------------------------------


def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m, coefficients mod p."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        a = _poly_trim(a)
        a = list(a)
        if len(a) - 1 < dm:
            break
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * mi) % p
        a = list(_poly_trim(a))
    return _poly_trim(x % p for x in a)


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _modulus_is_irreducible(modulus, p) -> bool:
    """Trial division by every monic polynomial of degree 1 .. k//2."""
    k = len(modulus) - 1
    for deg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            divisor = tuple(tail) + (1,)
            if not _poly_mod(modulus, divisor, p):
                return False
    return True


# ---------------------------------------------------------------------------
# Field
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldTables:
    """Dense operation tables for one finite field, indexed by element code."""

    q: int
    add: np.ndarray
    sub: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is a 0 sentinel, never a valid inverse


class Field:
    """An exact field: rationals, GF(p), or GF(p^k) with a chosen modulus.

    Instances are immutable and hashable; two fields compare equal iff they
    have the same kind and parameters.  Use :meth:`rationals`,
    :meth:`prime` and :meth:`extension` to construct.
    """

    __slots__ = ("kind", "p", "modulus", "degree", "order", "_tables")

    def __init__(self, kind, p=None, modulus=None):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "degree", len(modulus) - 1 if modulus else 1)
        if kind == RATIONAL:
            object.__setattr__(self, "order", None)
        else:
            object.__setattr__(self, "order", p ** self.degree)
        object.__setattr__(self, "_tables", None)

    def __setattr__(self, name, value):
        raise AttributeError("Field instances are immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def rationals(cls) -> "Field":
        return cls(RATIONAL)

    @classmethod
    def prime(cls, p: int) -> "Field":
        if not _is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        return cls(PRIME, p=p)

    @classmethod
    def extension(cls, p: int, modulus) -> "Field":
        """GF(p^k) with the given monic modulus, constant coefficient first."""
        if not _is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) < 3:
            raise DegreeTooSmall(
                f"extension modulus must have degree >= 2, got {len(modulus) - 1}"
            )
        if modulus[-1] != 1:
            raise ReducibleModulus("modulus must be monic with nonzero leading coefficient")
        if not _modulus_is_irreducible(modulus, p):
            raise ReducibleModulus(
                f"modulus {list(modulus)} factors over GF({p})"
            )
        return cls(EXTENSION, p=p, modulus=modulus)

    @classmethod
    def from_json(cls, desc: dict) -> "Field":
        kind = desc.get("kind")
        if kind == RATIONAL:
            return cls.rationals()
        if kind == PRIME:
            return cls.prime(int(desc["p"]))
        if kind == EXTENSION:
            return cls.extension(int(desc["p"]), desc["modulus"])
        raise ValueError(f"unknown field kind {kind!r}")

    def to_json(self) -> dict:
        if self.kind == RATIONAL:
            return {"kind": RATIONAL}
        if self.kind == PRIME:
            return {"kind": PRIME, "p": self.p}
        return {"kind": EXTENSION, "p": self.p, "modulus": list(self.modulus)}

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Field):
            return NotImplemented
        return (self.kind, self.p, self.modulus) == (other.kind, other.p, other.modulus)

    def __hash__(self):
        return hash((self.kind, self.p, self.modulus))

    def __repr__(self):
        if self.kind == RATIONAL:
            return "Field(Q)"
        if self.kind == PRIME:
            return f"Field(GF({self.p}))"
        return f"Field(GF({self.p}^{self.degree}), modulus={list(self.modulus)})"

    @property
    def is_finite(self) -> bool:
        return self.kind != RATIONAL

    @property
    def char(self) -> int:
        return 0 if self.kind == RATIONAL else self.p

    # -- element payloads ---------------------------------------------------
    #
    # Payloads are Fraction (rational) or int codes (finite).  The Scalar
    # wrapper pairs a payload with its field for user-facing arithmetic.

    @property
    def zero(self):
        return Fraction(0) if self.kind == RATIONAL else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == RATIONAL else 1

    def _decode(self, code: int):
        """Code -> coefficient tuple (extension fields)."""
        c, out = code, []
        for _ in range(self.degree):
            out.append(c % self.p)
            c //= self.p
        return tuple(out)

    def _encode(self, coeffs) -> int:
        code = 0
        for c in reversed(tuple(coeffs)):
            code = code * self.p + (c % self.p)
        return code

    def coerce(self, value):
        """Turn an int, Fraction, string, or Scalar into a payload."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"scalar from {value.field} used in {self}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if self.kind == RATIONAL:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise TypeError(f"cannot coerce {value!r} into {self}")
        if isinstance(value, (int, np.integer)):
            v = int(value)
            if self.kind == PRIME:
                return v % self.p
            if 0 <= v < self.order:
                return v
            # negative or oversized integers reduce through the prime subfield
            return (v % self.p) if not 0 <= v < self.order else v
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def scalar(self, value) -> "Scalar":
        return Scalar(self, self.coerce(value))

    def add(self, a, b):
        if self.kind == RATIONAL:
            return a + b
        if self.kind == PRIME:
            return (a + b) % self.p
        return int(self.tables().add[a, b])

    def sub(self, a, b):
        if self.kind == RATIONAL:
            return a - b
        if self.kind == PRIME:
            return (a - b) % self.p
        return int(self.tables().sub[a, b])

    def neg(self, a):
        if self.kind == RATIONAL:
            return -a
        if self.kind == PRIME:
            return (-a) % self.p
        return int(self.tables().neg[a])

    def mul(self, a, b):
        if self.kind == RATIONAL:
            return a * b
        if self.kind == PRIME:
            return (a * b) % self.p
        return int(self.tables().mul[a, b])

    def inv(self, a):
        if not a:
            raise DivisionByZero(f"zero has no inverse in {self}")
        if self.kind == RATIONAL:
            return 1 / a
        if self.kind == PRIME:
            return pow(a, self.p - 2, self.p)
        return int(self.tables().inv[a])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- enumeration --------------------------------------------------------

    def enumerate_payloads(self):
        """All payloads, 0 first, then by ascending code."""
        if not self.is_finite:
            raise InfiniteField("cannot enumerate the rationals")
        return range(self.order)

    def elements(self):
        return [Scalar(self, c) for c in self.enumerate_payloads()]

    # -- operation tables ---------------------------------------------------

    def tables(self) -> FieldTables:
        """Dense add/sub/mul/neg/inv tables (finite fields only, cached)."""
        if not self.is_finite:
            raise InfiniteField("no operation tables over the rationals")
        if self._tables is not None:
            return self._tables
        q = self.order
        if q > TABLE_ORDER_LIMIT:
            raise CapExceededForTables(q)
        if self.kind == PRIME:
            grid_a, grid_b = np.meshgrid(
                np.arange(q, dtype=np.int64), np.arange(q, dtype=np.int64), indexing="ij"
            )
            add = (grid_a + grid_b) % q
            sub = (grid_a - grid_b) % q
            mul = (grid_a * grid_b) % q
        else:
            p, k = self.p, self.degree
            digits = np.zeros((q, k), dtype=np.int64)
            codes = np.arange(q)
            for i in range(k):
                digits[:, i] = (codes // p**i) % p
            # coefficientwise addition
            dsum = (digits[:, None, :] + digits[None, :, :]) % p
            ddiff = (digits[:, None, :] - digits[None, :, :]) % p
            powers = p ** np.arange(k, dtype=np.int64)
            add = (dsum * powers).sum(axis=2)
            sub = (ddiff * powers).sum(axis=2)
            # multiplication: convolve then reduce with precomputed x^t mod m
            xt = {t: np.array(self._x_power_mod(t), dtype=np.int64) for t in range(2 * k - 1)}
            prod = np.zeros((q, q, k), dtype=np.int64)
            for i in range(k):
                for j in range(k):
                    coef = digits[:, None, i] * digits[None, :, j]
                    prod = (prod + coef[:, :, None] * xt[i + j][None, None, :]) % p
            mul = (prod * powers).sum(axis=2)
        neg = sub[0]
        inv = np.zeros(q, dtype=np.int64)
        nz = np.argwhere(mul[1:, :] == 1)
        inv[nz[:, 0] + 1] = nz[:, 1]
        tables = FieldTables(
            q=q,
            add=np.ascontiguousarray(add, dtype=np.int64),
            sub=np.ascontiguousarray(sub, dtype=np.int64),
            mul=np.ascontiguousarray(mul, dtype=np.int64),
            neg=np.ascontiguousarray(neg, dtype=np.int64),
            inv=inv,
        )
        object.__setattr__(self, "_tables", tables)
        return tables

    def _x_power_mod(self, t):
        """Coefficients of x^t mod modulus, padded to length k."""
        k = self.degree
        poly = _poly_mod((0,) * t + (1,), self.modulus, self.p)
        return tuple(poly) + (0,) * (k - len(poly))

    # -- string form --------------------------------------------------------

    _TERM_RE = re.compile(r"^([+-]?\d+)?\s*\*?\s*(x(?:\^(\d+))?)?$")

    def parse(self, s: str):
        """Parse one scalar string: "5", "-2/3", "x+1", "2x^2+x+2"."""
        s = s.strip()
        if not s:
            raise ValueError("empty scalar string")
        if self.kind == RATIONAL:
            return Fraction(s)
        if self.kind == PRIME:
            return int(s, 10) % self.p
        coeffs = [0] * self.degree
        chunks = re.findall(r"[+-]?[^+-]+", s.replace(" ", ""))
        if not chunks:
            raise ValueError(f"malformed scalar {s!r}")
        for chunk in chunks:
            m = self._TERM_RE.match(chunk)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"malformed term {chunk!r} in scalar {s!r}")
            coef = m.group(1)
            if coef in (None, "+", "-"):
                coef = -1 if coef == "-" else 1
            else:
                coef = int(coef)
            power = 0
            if m.group(2):
                power = int(m.group(3)) if m.group(3) else 1
            if power >= self.degree:
                raise ValueError(
                    f"term {chunk!r} has degree {power} >= field degree {self.degree}"
                )
            coeffs[power] = (coeffs[power] + coef) % self.p
        return self._encode(coeffs)

    def format(self, payload) -> str:
        """Canonical string form; inverse of :meth:`parse`."""
        if self.kind == RATIONAL:
            return str(payload)
        if self.kind == PRIME:
            return str(payload)
        coeffs = self._decode(payload)
        terms = []
        for power in range(self.degree - 1, -1, -1):
            c = coeffs[power]
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else str(c)
                terms.append(f"{head}x" if power == 1 else f"{head}x^{power}")
        return "+".join(terms) if terms else "0"


class CapExceededForTables(TensorCertErrorProxy := Exception):
    pass


# Rebind: table-size overflow is a CapExceeded condition.
from .errors import CapExceeded as _CapExceeded  # noqa: E402


class _TableCapExceeded(_CapExceeded):
    def __init__(self, q):
        super().__init__(f"field order {q} exceeds table limit {TABLE_ORDER_LIMIT}")


CapExceededForTables = _TableCapExceeded


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------


class Scalar:
    """One field element: a payload bound to its field.

    Arithmetic requires both operands to come from the identical field;
    mixing fields raises FieldMismatch rather than coercing silently.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _peer(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction, str)):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(self.value, o.value))

    def __rsub__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(o.value, self.value))

    def __mul__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.div(self.value, o.value))

    def __rtruediv__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.div(o.value, self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    @property
    def is_zero(self) -> bool:
        return not self.value

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self}, {self.field!r})"


# ---------------------------------------------------------------------------
# Module-level operation surface
# ---------------------------------------------------------------------------


def field_make(desc: dict) -> Field:
    """Build and validate a field from its JSON-style description."""
    return Field.from_json(desc)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply one of add / sub / mul / div to two scalars of one field."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def field_enumerate(field: Field):
    """All elements of a finite field, 0 first, then ascending code order."""
    return field.elements()


GF2 = Field.prime(2)
GF4 = Field.extension(2, (1, 1, 1))
QQ = Field.rationals()
