"""Exact arithmetic in GF(q), q = p^e.

Elements are encoded as integers ``0 <= a < q``: the integer whose base-p
digits (least significant first) are the coefficients of the element as a
polynomial in the generator of the extension.  For prime fields this is the
usual residue.  All heavy code in the package works on these integer codes
through the bound methods of :class:`GF`; :class:`FieldElement` is the thin
value type used at the public surface.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZero, InvalidParams, MixedFields, ParseError

Q_MAX = 1 << 16
LOG_TABLE_MAX = 1 << 12
FULL_TABLE_MAX = 1 << 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``(p, e)``; raise if ``q`` is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            n = q
            while n % p == 0:
                n //= p
                e += 1
            if n != 1 or not is_prime(p):
                break
            return p, e
    raise InvalidParams(f"{q} is not a prime power")


# -- dense polynomials over GF(p), coefficient lists low-to-high -------------

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(_ptrim(a)) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
    return a


def is_irreducible_mod_p(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    m = list(modulus)
    d = len(m) - 1
    if d < 1 or m[-1] % p == 0:
        return False
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            div = list(low) + [1]
            if not _pmod(m, div, p):
                return False
    return True


def find_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``e``, ordered by the integer
    encoding of its non-leading coefficients."""
    for n in range(p ** e):
        low = [(n // p ** i) % p for i in range(e)]
        cand = tuple(low + [1])
        if is_irreducible_mod_p(cand, p):
            return cand
    raise InvalidParams(f"no irreducible polynomial of degree {e} over GF({p})")


class GF:
    """The finite field GF(p^e).

    The instance exposes ``add``, ``sub``, ``mul``, ``div``, ``neg``, ``inv``
    and ``pow`` as fast functions on integer codes.  Fields are compared by
    ``(p, e, modulus)``.
    """

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not is_prime(p):
            raise InvalidParams(f"characteristic {p} is not prime")
        if e < 1:
            raise InvalidParams("extension degree must be >= 1")
        if p ** e > Q_MAX:
            raise InvalidParams(f"q = {p}^{e} exceeds the cap {Q_MAX}")
        self.p = p
        self.e = e
        self.q = p ** e
        if e == 1:
            if modulus is not None and len(modulus) != 2:
                raise InvalidParams("prime field takes no modulus")
            self.modulus = None
        else:
            if modulus is None:
                modulus = find_modulus(p, e)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise InvalidParams("modulus must be monic of degree e")
            if not is_irreducible_mod_p(modulus, p):
                raise InvalidParams(f"modulus {modulus} is reducible over GF({p})")
            self.modulus = modulus
        self._build()

    # -- construction ------------------------------------------------------

    def _slow_mul(self, a, b):
        p, e = self.p, self.e
        da = self.to_coeffs(a)
        db = self.to_coeffs(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self.from_coeffs(_pmod(prod, self.modulus, p))

    def _slow_add(self, a, b):
        p = self.p
        out = 0
        base = 1
        while a or b:
            out += ((a % p + b % p) % p) * base
            a //= p
            b //= p
            base *= p
        return out

    def _slow_neg(self, a):
        p = self.p
        out = 0
        base = 1
        while a:
            out += ((-(a % p)) % p) * base
            a //= p
            base *= p
        return out

    def _build(self):
        p, q = self.p, self.q
        if self.e == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: (-a) % p
            self.mul = lambda a, b: a * b % p
        else:
            if q <= FULL_TABLE_MAX:
                add_t = [[self._slow_add(a, b) for b in range(q)] for a in range(q)]
                neg_t = [self._slow_neg(a) for a in range(q)]
                self.add = lambda a, b: add_t[a][b]
                self.neg = lambda a: neg_t[a]
                self.sub = lambda a, b: add_t[a][neg_t[b]]
                self._add_table = np.array(add_t, dtype=np.int64)
                self._neg_table = np.array(neg_t, dtype=np.int64)
            else:
                self.add = self._slow_add
                self.neg = self._slow_neg
                self.sub = lambda a, b: self._slow_add(a, self._slow_neg(b))
            self.mul = self._slow_mul
        self.generator = self._find_generator()
        if q <= LOG_TABLE_MAX:
            exp = [1] * (2 * (q - 1))
            x = 1
            for i in range(1, 2 * (q - 1)):
                x = self.mul(x, self.generator)
                exp[i] = x
            log = [0] * q
            for i in range(q - 1):
                log[exp[i]] = i
            self._exp = exp
            self._log = log
            self._np_exp = np.array(exp, dtype=np.int64)
            self._np_log = np.array(log, dtype=np.int64)
            if self.e > 1:
                def mul(a, b):
                    if a == 0 or b == 0:
                        return 0
                    return exp[log[a] + log[b]]
                self.mul = mul
            inv_t = [0] + [exp[(q - 1 - log[a]) % (q - 1)] for a in range(1, q)]
            self._inv_table = inv_t
        else:
            self._exp = None
            self._inv_table = None

    def _find_generator(self):
        q = self.q
        if q == 2:
            return 1
        factors = prime_factors(q - 1)
        for g in range(2, q):
            if all(self._pow_slow(g, (q - 1) // r) != 1 for r in factors):
                return g
        raise AssertionError("no primitive element found")

    def _pow_slow(self, a, n):
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    # -- encoding ----------------------------------------------------------

    def to_coeffs(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(a % p)
            a //= p
        return out

    def from_coeffs(self, coeffs) -> int:
        p = self.p
        out = 0
        for c in reversed(list(coeffs)[: self.e] + [0] * (self.e - len(coeffs))):
            out = out * p + (c % p)
        return out

    def format(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        return ":".join(str(c) for c in self.to_coeffs(a))

    def parse(self, text: str) -> int:
        text = text.strip()
        try:
            parts = [int(t) for t in text.split(":")]
        except ValueError as exc:
            raise ParseError(f"bad field element {text!r}") from exc
        if self.e == 1:
            if len(parts) != 1:
                raise ParseError(f"bad prime-field element {text!r}")
            return parts[0] % self.p
        if len(parts) > self.e or any(not 0 <= c < self.p for c in parts):
            raise ParseError(f"bad extension-field element {text!r}")
        return self.from_coeffs(parts)

    def format_modulus(self) -> str | None:
        if self.modulus is None:
            return None
        return ":".join(str(c) for c in self.modulus)

    # -- arithmetic --------------------------------------------------------

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self._pow_slow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a = self.inv(a)
            n = -n
        if a == 0:
            return 1 if n == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * n) % (self.q - 1)]
        return self._pow_slow(a, n)

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under Z -> GF(q)."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    # -- vectorised helpers (numpy int64 arrays of codes) --------------------

    def vadd(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        return self._add_table[a, b]

    def vmul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        la = self._np_log[a]
        lb = self._np_log[b]
        out = self._np_exp[la + lb]
        return np.where((a == 0) | (b == 0), 0, out)

    def vscale(self, c: int, a):
        return self.vmul(np.full_like(a, c), a)

    @property
    def vectorised(self) -> bool:
        return self.e == 1 or (self.q <= FULL_TABLE_MAX)

    # -- identity ----------------------------------------------------------

    def _key(self):
        return (self.p, self.e, self.modulus)

    def __eq__(self, other):
        return isinstance(other, GF) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={self.format_modulus()})"

    def element(self, a) -> "FieldElement":
        if isinstance(a, str):
            a = self.parse(a)
        return FieldElement(self, a)


FieldSpec = GF


@functools.lru_cache(maxsize=None)
def field(q: int, modulus: tuple[int, ...] | None = None) -> GF:
    """Cached constructor: ``field(9)`` is GF(9) with the default modulus."""
    p, e = prime_power(q)
    return GF(p, e, modulus)


@dataclass(frozen=True)
class FieldElement:
    """Element of GF(q) with operator overloading; equality is by code."""

    field: GF
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"code {self.value} out of range for {self.field}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field.to_coeffs(self.value))

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.field, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.field.pow(self.value, n))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"FieldElement({self.field.format(self.value)} in {self.field!r})"


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.field != b.field:
        raise MixedFields(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def inverse(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.inv(a.value))


def is_square(a: FieldElement) -> bool:
    return a.field.is_square(a.value)
