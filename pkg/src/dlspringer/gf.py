"""Finite-field towers GF(p) <= GF(q) <= GF(q^k) with the relative Frobenius.

Elements are stored as integer codes: the polynomial c_0 + c_1 x + ... is
encoded as sum(c_i * p**i), so the constant term is the least significant
base-p digit.  All hot-path arithmetic goes through per-field lookup tables
(discrete log / antilog, Frobenius); :class:`Scalar` is a thin immutable
wrapper for callers that prefer operator syntax.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

DEFAULT_MAX_ORDER = 2**20

# full add/mul tables are built below this size; larger fields use logs
_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
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


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p**m, raising FieldError if q is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1 or not is_prime(p):
        raise FieldError(f"{q} is not a prime power")
    return p, m


# -- polynomials over GF(p) as coefficient lists, constant term first --------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    a = _poly_trim(a)
    b = _poly_trim(b)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a = _poly_trim(a)
    return a


def _is_irreducible(f, p) -> bool:
    deg = len(f) - 1
    # trial division by every monic polynomial of degree 1..deg//2
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(f, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of the given degree.

    Coefficient tuples are compared constant term first.
    """
    for low in itertools.product(range(p), repeat=degree):
        f = list(low) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {degree} over GF({p})")


def _factor(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class FieldSpec:
    """The field GF(p^(m*k)) together with its subfield GF(q), q = p^m.

    Use :func:`make_field` rather than the constructor; fields are cached so
    that each (p, m, k) maps to exactly one instance.
    """

    def __init__(self, p: int, m: int, k: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if m < 1 or k < 1:
            raise FieldError("extension degrees must be >= 1")
        self.p, self.m, self.k = p, m, k
        self.degree = m * k
        self.q = p**m
        self.order = p**self.degree
        self.modulus = smallest_irreducible(p, self.degree)
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _from_digits(self, ds) -> int:
        a = 0
        for c in reversed(ds):
            a = a * self.p + c
        return a

    def _add_slow(self, a: int, b: int) -> int:
        p = self.p
        out, place = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * place
            place *= p
        return out

    def _neg_slow(self, a: int) -> int:
        return self._from_digits([(-c) % self.p for c in self._digits(a)])

    def _polymul(self, a: int, b: int) -> int:
        p, D = self.p, self.degree
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * D)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self._from_digits((_poly_mod(prod, self.modulus, p) + [0] * D)[:D])

    def _build_tables(self):
        Q, p = self.order, self.p
        if p == 2:
            self._neg = None
        else:
            self._neg = [self._neg_slow(a) for a in range(Q)]
        # primitive element: smallest code whose order is Q - 1
        primes = _factor(Q - 1)
        gen = 1
        if Q > 2:
            for cand in range(2, Q):
                if all(self._slow_pow(cand, (Q - 1) // f) != 1 for f in primes):
                    gen = cand
                    break
        self.generator = gen
        # multiplication by gen is GF(p)-linear; tabulate it per digit
        D = self.degree
        cols = [[self._polymul(c * p**i, gen) for c in range(p)] for i in range(D)]
        add = self._add_slow if p != 2 else int.__xor__
        exp = [0] * (2 * Q)
        log = [0] * Q
        a = 1
        for e in range(Q - 1):
            exp[e] = a
            log[a] = e
            nxt, rest = 0, a
            for i in range(D):
                rest, c = divmod(rest, p)
                if c:
                    nxt = add(nxt, cols[i][c])
            a = nxt
        for e in range(Q - 1, 2 * Q):
            exp[e] = exp[e - (Q - 1)]
        self._exp, self._log = exp, log
        self._frob = [0] + [exp[(log[a] * self.q) % (Q - 1)] for a in range(1, Q)]
        self._inv = [0] + [exp[(Q - 1 - log[a]) % (Q - 1)] for a in range(1, Q)]
        if Q <= _TABLE_LIMIT:
            self._mul_table = [
                [0] * Q if x == 0 else [0] + [exp[log[x] + log[y]] for y in range(1, Q)]
                for x in range(Q)
            ]
            if p != 2:
                self._add_table = [[self._add_slow(x, y) for y in range(Q)] for x in range(Q)]
            else:
                self._add_table = None
        else:
            self._mul_table = None
            self._add_table = None

    def _slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._polymul(result, base)
            base = self._polymul(base, base)
            e >>= 1
        return result

    # -- code-level arithmetic ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        return a if self.p == 2 else self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[a]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def frob(self, a: int) -> int:
        """a -> a^q."""
        return self._frob[a]

    def frob_table(self) -> list[int]:
        return self._frob

    def is_base(self, a: int) -> bool:
        return self._frob[a] == a

    def base_elements(self) -> list[int]:
        return [a for a in range(self.order) if self._frob[a] == a]

    def elements(self) -> range:
        return range(self.order)

    # -- conversions -------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(self._digits(a))

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            raise FieldError(f"too many coefficients for GF({self.p}^{self.degree})")
        if any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"coefficients must lie in [0, {self.p})")
        return self._from_digits(coeffs + [0] * (self.degree - len(coeffs)))

    def parse(self, text: str) -> int:
        """Parse the scalar text format ("1,1" is 1+x; "2" is a prime-field element)."""
        parts = [s for s in text.strip().split(",") if s.strip() != ""]
        if not parts:
            raise FieldError(f"empty scalar {text!r}")
        return self.from_coeffs([int(s) for s in parts])

    def format(self, a: int) -> str:
        if a < self.p:
            return str(a)
        return ",".join(str(c) for c in self._digits(a))

    def base_field(self) -> "FieldSpec":
        return make_field(self.p, self.m, 1)

    def with_k(self, k: int) -> "FieldSpec":
        return make_field(self.p, self.m, k)

    def __repr__(self):
        return f"FieldSpec(p={self.p}, m={self.m}, k={self.k})"

    def __reduce__(self):
        return make_field, (self.p, self.m, self.k)


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, m: int, k: int) -> FieldSpec:
    return FieldSpec(p, m, k)


def make_field(p: int, m: int = 1, k: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    """Return the (cached) tower GF(p) <= GF(p^m) <= GF(p^(m*k)).

    Raises FieldError for a non-prime p or when p^(m*k) exceeds max_order.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1 or k < 1:
        raise FieldError("extension degrees must be >= 1")
    if p ** (m * k) > max_order:
        raise FieldError(f"GF({p}^{m * k}) exceeds the field-size cap {max_order}")
    return _cached_field(p, m, k)


@functools.lru_cache(maxsize=None)
def field_embedding(src: FieldSpec, dst: FieldSpec) -> tuple[int, ...]:
    """Code-level embedding GF(src) -> GF(dst) as a lookup tuple.

    The image of x is the smallest root of src.modulus in dst, so the map is
    deterministic.  Requires src.degree to divide dst.degree.
    """
    if src.p != dst.p or dst.degree % src.degree:
        raise FieldError(f"cannot embed {src} into {dst}")
    if src is dst:
        return tuple(range(src.order))
    mod = src.modulus

    def evaluate(poly, x):
        acc = 0
        for c in reversed(poly):
            acc = dst.add(dst.mul(acc, x), c)
        return acc

    # prime-field constants have the same code in every field of characteristic p
    if src.degree == 1:
        return tuple(range(src.order))
    root = next(x for x in range(dst.order) if evaluate(mod, x) == 0)
    return tuple(evaluate(src.coeffs(a), root) for a in range(src.order))


@dataclass(frozen=True)
class Scalar:
    """An element of ``spec``'s top field GF(q^k)."""

    value: int
    spec: FieldSpec

    def __post_init__(self):
        if not 0 <= self.value < self.spec.order:
            raise FieldError(f"code {self.value} out of range for {self.spec}")

    @classmethod
    def from_coeffs(cls, coeffs, spec: FieldSpec) -> "Scalar":
        return cls(spec.from_coeffs(coeffs), spec)

    @classmethod
    def parse(cls, text: str, spec: FieldSpec) -> "Scalar":
        return cls(spec.parse(text), spec)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs(self.value)

    def _other(self, b) -> int:
        if isinstance(b, Scalar):
            if b.spec is not self.spec:
                raise FieldError("operands live in different fields")
            return b.value
        if isinstance(b, int):
            return self.spec.from_coeffs([b % self.spec.p])
        return NotImplemented

    def __add__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else Scalar(self.spec.add(self.value, v), self.spec)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.spec.neg(self.value), self.spec)

    def __sub__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else Scalar(self.spec.sub(self.value, v), self.spec)

    def __rsub__(self, b):
        return (-self) + b

    def __mul__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else Scalar(self.spec.mul(self.value, v), self.spec)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        return Scalar(self.spec.inv(self.value), self.spec)

    def __truediv__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.spec.mul(self.value, self.spec.inv(v)), self.spec)

    def __pow__(self, e: int):
        return Scalar(self.spec.pow(self.value, e), self.spec)

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.spec.format(self.value)


def scalar_arith(op: str, a: Scalar, b=None) -> Scalar:
    """Dispatch ``op`` in {add, mul, inv, pow} on scalars."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown operation {op!r}")


def frobenius_q(a: Scalar) -> Scalar:
    return Scalar(a.spec.frob(a.value), a.spec)


def in_base_field(a: Scalar) -> bool:
    return a.spec.is_base(a.value)
