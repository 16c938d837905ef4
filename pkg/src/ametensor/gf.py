"""Finite fields GF(p^n) with integer-coded elements.

An element is stored as an integer ``code`` in ``[0, q)``.  The base-p digits
of the code are the coefficients of the representing polynomial, least
significant digit first, so for GF(8) with modulus x^3+x+1 the code 6 is
x^2+x.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 1 << 16
TABLE_LIMIT = 256


class FieldMismatchError(ValueError):
    """Raised when elements of different fields are combined."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# polynomials over GF(p) are coefficient lists, constant term first


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        _poly_trim(a)
    return a


def _monic_polys(p: int, degree: int) -> Iterable[list[int]]:
    for low in itertools.product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    coeffs = _poly_trim([c % p for c in coeffs])
    n = len(coeffs) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for cand in _monic_polys(p, d):
            if not _poly_mod(coeffs, cand, p):
                return False
    return True


def default_modulus(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree n, ordered by its integer value at p.

    Comparing the value at p means the leading coefficients are the most
    significant, so for GF(8) this picks x^3+x+1 over x^3+x^2+1.
    """
    if n == 1:
        return (0, 1)
    for value in range(p**n, 2 * p**n):
        coeffs = [(value // p**i) % p for i in range(n + 1)]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    """Description of GF(p^n).

    Build instances with :func:`field_new` (or :func:`GF`), which validates
    the parameters and caches the result.
    """

    p: int
    n: int
    modulus: tuple[int, ...]
    _exp: list = field(default=None, init=False, repr=False, compare=False)
    _log: list = field(default=None, init=False, repr=False, compare=False)
    _addt: list = field(default=None, init=False, repr=False, compare=False)
    _tables: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.n < 1:
            raise ValueError("extension degree must be at least 1")
        if self.p**self.n > MAX_ORDER:
            raise ValueError(f"field order {self.p}^{self.n} exceeds {MAX_ORDER}")
        mod = tuple(int(c) for c in self.modulus)
        if len(mod) != self.n + 1 or any(not 0 <= c < self.p for c in mod):
            raise ValueError(f"modulus needs {self.n + 1} coefficients in [0, {self.p})")
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        if self.n == 1:
            if mod != (0, 1):
                raise ValueError("prime fields use the modulus x")
        elif not is_irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)
        if self.n > 1:
            self._build_extension()

    def __reduce__(self):
        return (field_new, (self.p, self.n, self.modulus))

    # -- construction helpers -------------------------------------------

    def _digits(self, code: int) -> list[int]:
        return [(code // self.p**i) % self.p for i in range(self.n)]

    def _undigits(self, digits: Sequence[int]) -> int:
        return sum(int(d) * self.p**i for i, d in enumerate(digits))

    def _slow_mul(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        rem = _poly_mod(prod, self.modulus, self.p)
        return self._undigits(rem)

    def _build_extension(self):
        q = self.order
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._slow_mul(x, g)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover
            raise AssertionError("multiplicative group is not cyclic?")
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        object.__setattr__(self, "_exp", exp + exp)
        object.__setattr__(self, "_log", log)
        if q <= TABLE_LIMIT:
            digits = np.array([self._digits(c) for c in range(q)])
            weights = self.p ** np.arange(self.n)
            addt = ((digits[:, None, :] + digits[None, :, :]) % self.p) @ weights
            object.__setattr__(self, "_addt", addt.tolist())

    # -- basic properties ------------------------------------------------

    @property
    def order(self) -> int:
        return self.p**self.n

    q = order

    @property
    def is_prime_field(self) -> bool:
        return self.n == 1

    def __str__(self) -> str:
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n})"

    # -- element coding --------------------------------------------------

    def code(self, value) -> int:
        """Normalize an int or FieldElement into a code of this field.

        Negative integers are accepted for prime fields only (-k means p-k).
        """
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"element of {value.field} used in {self}")
            return value.code
        v = int(value)
        if self.n == 1:
            return v % self.p
        if not 0 <= v < self.order:
            raise ValueError(f"code {v} out of range for {self}")
        return v

    def __call__(self, value) -> FieldElement:
        return FieldElement(self, self.code(value))

    element = __call__

    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, c) for c in range(self.order)]

    def from_poly(self, coeffs: Sequence[int]) -> int:
        """Code of the element with the given coefficients (constant first)."""
        coeffs = [c % self.p for c in coeffs]
        rem = _poly_mod(coeffs, self.modulus, self.p) if len(coeffs) > self.n else coeffs
        return self._undigits(rem)

    def to_poly(self, code: int) -> list[int]:
        return self._digits(code)

    def format(self, code: int, var: str = "x") -> str:
        """Human readable form, e.g. ``x^2+x+1`` for code 7 in GF(8)."""
        if self.n == 1:
            return str(code)
        terms = []
        for i, c in reversed(list(enumerate(self._digits(code)))):
            if not c:
                continue
            mono = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if c != 1:
                mono = str(c) if i == 0 else f"{c}{mono}"
            terms.append(mono)
        return "+".join(terms) if terms else "0"

    # -- arithmetic on codes ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        if self._addt is not None:
            return self._addt[a][b]
        if self.p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.n == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self._undigits([-x % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.n == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.n == 1:
            return pow(a, e, self.p)
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def sum(self, values: Iterable[int]) -> int:
        total = 0
        for v in values:
            total = self.add(total, v)
        return total

    # -- dense tables for vectorized work ---------------------------------

    def tables(self) -> dict[str, np.ndarray]:
        """Dense ``add``/``sub``/``mul`` tables plus ``neg``/``inv`` vectors.

        Only available for q <= 256; computed once per field.
        """
        if self._tables is not None:
            return self._tables
        q = self.order
        if q > TABLE_LIMIT:
            raise ValueError(f"dense tables are limited to q <= {TABLE_LIMIT}")
        codes = range(q)
        add = np.array([[self.add(a, b) for b in codes] for a in codes], dtype=np.int64)
        mul = np.array([[self.mul(a, b) for b in codes] for a in codes], dtype=np.int64)
        neg = np.array([self.neg(a) for a in codes], dtype=np.int64)
        inv = np.array([0] + [self.inv(a) for a in range(1, q)], dtype=np.int64)
        sub = add[:, neg]
        tabs = {"add": add, "sub": sub, "mul": mul, "neg": neg, "inv": inv}
        for t in tabs.values():
            t.setflags(write=False)
        object.__setattr__(self, "_tables", tabs)
        return tabs


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, n: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    if modulus is None:
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be at least 1")
        if p**n > MAX_ORDER:
            raise ValueError(f"field order {p}^{n} exceeds {MAX_ORDER}")
        modulus = default_modulus(p, n)
    return FieldSpec(p, n, modulus)


def field_new(p: int, n: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build (or fetch the cached) GF(p^n).

    >>> field_new(2, 3).modulus
    (1, 1, 0, 1)
    """
    mod = None if modulus is None else tuple(int(c) for c in modulus)
    return _cached_field(int(p), int(n), mod)


GF = field_new


def enumerate_elements(f: FieldSpec) -> list[FieldElement]:
    return f.elements()


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    code: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field} and {other.field}")
            return other.code
        return self.field.code(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.code, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.code))

    def __pow__(self, e):
        exp = e.code if isinstance(e, FieldElement) else int(e)
        return FieldElement(self.field, self.field.pow(self.code, exp))

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.code))

    def __int__(self) -> int:
        return self.code

    __index__ = __int__

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        return f"{self.field}({self.field.format(self.code)})"


# module-level spellings of the element operations


def add(a: FieldElement, b) -> FieldElement:
    return a + b


def sub(a: FieldElement, b) -> FieldElement:
    return a - b


def neg(a: FieldElement) -> FieldElement:
    return -a


def mul(a: FieldElement, b) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def power(a: FieldElement, e) -> FieldElement:
    return a**e
