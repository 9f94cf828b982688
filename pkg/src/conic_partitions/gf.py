"""Exact arithmetic in GF(p^h), p an odd prime.

Elements are stored as integers ``c0 + c1*p + ... + c_{h-1}*p^(h-1)`` where
``c0 + c1*t + ...`` is the reduced residue modulo the defining polynomial.
All arithmetic goes through precomputed ``q x q`` tables, so a field of
order q costs O(q^2) memory; the cap ``Q_CAP`` keeps this bounded.

>>> F = make_field(3, 2)
>>> t = F.from_coeffs([0, 1])
>>> t * t == F(-1)
True
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    NotOddPrime,
    ReducibleModulus,
    UnsupportedField,
)

Q_CAP = 128


def is_prime(n):
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


def prime_power(q):
    """Return ``(p, h)`` with ``q == p**h`` or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            h = 0
            while q % p == 0:
                q //= p
                h += 1
            return (p, h) if q == 1 else None
    return None


# -- polynomials over GF(p), coefficient lists low-to-high --------------------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _poly_trim(a)
    return a


def _monic_polys(p, d):
    for tail in itertools.product(range(p), repeat=d):
        yield list(tail) + [1]


def is_irreducible(poly, p):
    """Exhaustive trial division by monic polynomials of degree <= deg/2."""
    poly = [c % p for c in poly]
    poly = _poly_trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


def default_modulus(p, h):
    # scan monic polynomials with coefficients compared from t^(h-1) down to t^0
    for high_to_low in itertools.product(range(p), repeat=h):
        poly = list(reversed(high_to_low)) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise ReducibleModulus(f"no irreducible polynomial of degree {h} over GF({p})")


# -- the field -----------------------------------------------------------------

class FieldSpec:
    """The finite field GF(p^h) together with its operation tables.

    Instances are shared through :func:`make_field`; two specs compare equal
    iff they have the same ``(p, h, modulus)``.
    """

    def __init__(self, p, h, modulus):
        self.p = p
        self.h = h
        self.q = p ** h
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self):
        p, h, q = self.p, self.h, self.q
        digits = np.array([[(x // p ** i) % p for i in range(h)] for x in range(q)],
                          dtype=np.int64)
        weights = p ** np.arange(h, dtype=np.int64)
        self._digits = digits
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights
        if h == 1:
            r = np.arange(q, dtype=np.int64)
            mul = np.outer(r, r) % p
        else:
            # powers t^k mod modulus for k < 2h-1, as digit vectors
            red = []
            for k in range(2 * h - 1):
                mono = [0] * k + [1]
                v = _poly_mod(mono, self.modulus, p)
                red.append(v + [0] * (h - len(v)))
            red = np.array(red, dtype=np.int64)
            conv = np.zeros((q, q, 2 * h - 1), dtype=np.int64)
            for i in range(h):
                for j in range(h):
                    conv[:, :, i + j] += np.outer(digits[:, i], digits[:, j])
            mul = ((conv @ red) % p) @ weights
        self.add = add.astype(np.int64)
        self.neg = neg.astype(np.int64)
        self.sub = self.add[:, self.neg]
        self.mul = mul.astype(np.int64)
        inv = np.zeros(q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul == 1)
        inv[rows] = cols
        self.inv = inv
        half = (q - 1) // 2
        chi = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            chi[a] = 1 if self.power(a, half) == 1 else -1
        self.chi = chi

    # integer-level helpers used by the geometry modules
    def power(self, a, n):
        result, base = 1, a
        while n:
            if n & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            n >>= 1
        return result

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in GF(%d)" % self.q)
        return int(self.mul[a, self.inv[b]])

    def coeffs(self, a):
        return tuple(int(c) for c in self._digits[a])

    def from_int(self, n):
        """Embed an integer via the prime subfield."""
        return n % self.p

    def subfield(self, d):
        """Sorted element indices of the subfield GF(p^d); requires d | h."""
        if self.h % d:
            raise DegreeMismatch(f"GF({self.p}^{d}) is not a subfield of GF({self.q})")
        e = self.p ** d
        return [a for a in range(self.q) if self.power(a, e) == a]

    def format(self, a):
        if self.h == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.coeffs(a)):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "t" if i == 1 else f"t^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    # element-level API
    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to another field")
            return value
        return FieldElement(self, self.from_int(int(value)))

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.h:
            raise DegreeMismatch(f"expected at most {self.h} coefficients")
        return FieldElement(self, sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs)))

    def element(self, index):
        return FieldElement(self, int(index))

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    def _key(self):
        return (self.p, self.h, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def describe(self):
        return {"p": self.p, "h": self.h, "q": self.q,
                "modulus": list(self.modulus) if self.modulus else None}

    def __repr__(self):
        if self.h == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.h}, modulus={list(self.modulus)})"


@functools.lru_cache(maxsize=None)
def _make_field(p, h, modulus):
    return FieldSpec(p, h, modulus)


def make_field(p, h=1, modulus=None, q_cap=Q_CAP):
    """Build (or fetch the cached) field GF(p^h).

    ``modulus`` is a monic coefficient list, low-to-high. When omitted and
    ``h > 1`` the smallest irreducible monic polynomial is used, comparing
    coefficients from the highest non-leading degree down.
    """
    if not is_prime(p) or p == 2:
        raise NotOddPrime(f"p={p} is not an odd prime")
    if h < 1:
        raise DegreeMismatch("extension degree must be positive")
    if p ** h > q_cap:
        raise UnsupportedField(f"q={p ** h} exceeds the supported cap {q_cap}")
    if h == 1:
        return _make_field(p, 1, None)
    if modulus is None:
        modulus = default_modulus(p, h)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != h + 1:
            raise DegreeMismatch(f"modulus must have degree {h}")
        if modulus[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{list(modulus)} is reducible over GF({p})")
    return _make_field(p, h, modulus)


def field_of_order(q, q_cap=Q_CAP):
    pp = prime_power(q)
    if pp is None or pp[0] == 2:
        raise UnsupportedField(f"q={q} is not an odd prime power")
    return make_field(pp[0], pp[1], q_cap=q_cap)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    @property
    def coeffs(self):
        """Canonical coefficient vector ``(c0, ..., c_{h-1})``."""
        return self.field.coeffs(self.value)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch("operands belong to different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, int(self.field.add[self.value, b]))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, int(self.field.sub[self.value, b]))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, int(self.field.sub[b, self.value]))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, int(self.field.mul[self.value, b]))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg[self.value]))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElement(self.field, self.field.power(self.value, n))

    def inverse(self):
        if self.value == 0:
            raise DivisionByZero("zero has no inverse")
        return FieldElement(self.field, int(self.field.inv[self.value]))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __lt__(self, other):
        return self.value < self._other(other)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.field.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"{self.field!r}({self})"


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
    "neg": lambda a, b: -a,
    "inv": lambda a, b: a.inverse(),
}


def element_arithmetic(a, b, op):
    """Apply ``op`` in {add, sub, mul, div, neg, inv}; ``b`` is ignored by the unary ops."""
    if b is not None and a.field != b.field:
        raise FieldMismatch("operands belong to different fields")
    return _OPS[op](a, b)


def quadratic_character(a):
    return int(a.field.chi[a.value])


def enumerate_elements(spec):
    return [FieldElement(spec, x) for x in range(spec.q)]


def parse_modulus(text):
    """Parse ``"c0,c1,...,1"`` from the command line."""
    if text is None or text == "":
        return None
    return [int(c) for c in text.split(",")]
