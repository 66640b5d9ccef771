"""Exact arithmetic in finite fields GF(p^k).

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_0, ..., c_{k-1}``
are the coefficients (constant term first) of the representing polynomial
modulo a fixed monic irreducible. Integer order is the canonical element
order: 0 first, then 1, then the remaining elements.

Hot loops elsewhere in the package work on these integer codes directly and
use the lookup tables exposed by :class:`FieldSpec`; :class:`FieldElement` is
the operator-overloading wrapper for interactive use and tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

MAX_ORDER = 1 << 20
TABLE_ORDER = 1 << 10  # full q x q add/mul tables only up to this size
LOG_ORDER = 1 << 14


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over Z_p as coefficient lists, constant term first ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over Z_p (constant term first)."""
    f = _trim([c % p for c in poly])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**n, f, p), x, p):
        return False
    for r in _prime_factors(n):
        h = _psub(_ppowmod(x, p ** (n // r), f, p), x, p)
        if len(_pgcd(f, h, p)) > 1:
            return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree k over Z_p in the canonical order.

    Candidates are ordered by their integer code, so the leading
    coefficients are the most significant (x^3+x+1 precedes x^3+x^2+1).
    """
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        cand = low + [1]
        if k == 1 or low[0] != 0:
            if is_irreducible(cand, p):
                return tuple(cand)
    raise ValueError(f"no irreducible polynomial of degree {k} over Z_{p}")


class FieldSpec:
    """The field GF(p^k) with a fixed modulus; elements are integer codes."""

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if p**k > MAX_ORDER:
            raise ValueError(f"field of order {p}^{k} is beyond the supported range")
        if modulus is None:
            modulus = default_modulus(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k (constant term first)")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over Z_{p}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self._powers = [p**i for i in range(k)]

    # -- identity -----------------------------------------------------------
    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (gf, (self.p, self.k, self.modulus))

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @staticmethod
    def from_json(d: dict) -> "FieldSpec":
        mod = d.get("modulus")
        return gf(int(d["p"]), int(d.get("k", 1)), tuple(mod) if mod is not None else None)

    # -- encoding -----------------------------------------------------------
    def coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        return tuple((a // pw) % p for pw in self._powers)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(coeffs)}")
        return sum((int(c) % self.p) * pw for c, pw in zip(coeffs, self._powers))

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def element(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.spec != self:
                raise FieldMismatchError(f"{x!r} is not in {self!r}")
            return x
        if isinstance(x, int):
            return FieldElement(self, self.from_int(x))
        return FieldElement(self, self.from_coeffs(x))

    @property
    def char(self) -> int:
        return self.p

    # -- slow-path polynomial arithmetic ------------------------------------
    def _mul_direct(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        prod = _pmul(self.coeffs(a), self.coeffs(b), self.p)
        red = _pmod(prod, list(self.modulus), self.p)
        red += [0] * (self.k - len(red))
        return self.from_coeffs(red)

    def _add_direct(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.from_coeffs([x + y for x, y in zip(ca, cb)])

    def _neg_direct(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_coeffs([-c for c in self.coeffs(a)])

    def _inv_euclid(self, a: int) -> int:
        """Inverse by the extended Euclidean algorithm on polynomials."""
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        if self.k == 1:
            return pow(a, p - 2, p)
        r0, r1 = list(self.modulus), _trim(list(self.coeffs(a)))
        s0, s1 = [], [1]
        while len(r1) > 1:
            # one long-division step sequence: r0 = quo*r1 + rem
            quo = [0] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            inv_lead = pow(r1[-1], p - 2, p)
            while len(rem) >= len(r1) and rem:
                c = rem[-1] * inv_lead % p
                sh = len(rem) - len(r1)
                quo[sh] = c
                for i, v in enumerate(r1):
                    rem[sh + i] = (rem[sh + i] - c * v) % p
                _trim(rem)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(s0, _pmul(quo, s1, p), p)
        c = pow(r1[0], p - 2, p)
        out = [(v * c) % p for v in s1]
        out += [0] * (self.k - len(out))
        return self.from_coeffs(out[: self.k])

    # -- tables -------------------------------------------------------------
    @cached_property
    def _log_exp(self) -> tuple[list[int], list[int]]:
        q = self.q
        if q > LOG_ORDER:
            raise ValueError("log tables unavailable for this field size")
        factors = _prime_factors(q - 1)
        for g in range(2 if q > 2 else 1, q):
            if all(self._pow_direct(g, (q - 1) // r) != 1 for r in factors):
                break
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_direct(x, g)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        return log, exp

    def _pow_direct(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_direct(result, base)
            base = self._mul_direct(base, base)
            e >>= 1
        return result

    @cached_property
    def mul_table(self) -> list[list[int]]:
        if self.q > TABLE_ORDER:
            raise ValueError("multiplication table unavailable for this field size")
        q = self.q
        if self.k == 1:
            return [[a * b % q for b in range(q)] for a in range(q)]
        log, exp = self._log_exp
        rows = [[0] * q]
        for a in range(1, q):
            la = log[a]
            rows.append([0] + [exp[la + log[b]] for b in range(1, q)])
        return rows

    @cached_property
    def add_table(self) -> list[list[int]]:
        if self.q > TABLE_ORDER:
            raise ValueError("addition table unavailable for this field size")
        q = self.q
        if self.p == 2:
            return [[a ^ b for b in range(q)] for a in range(q)]
        return [[self._add_direct(a, b) for b in range(q)] for a in range(q)]

    @cached_property
    def neg_table(self) -> list[int]:
        return [self._neg_direct(a) for a in range(self.q)]

    @cached_property
    def inv_table(self) -> list[int]:
        return [0] + [self._inv_euclid(a) for a in range(1, self.q)]

    @cached_property
    def _small(self) -> bool:
        return self.q <= TABLE_ORDER

    # -- arithmetic on codes -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self._small:
            return self.add_table[a][b]
        return self._add_direct(a, b)

    def neg(self, a: int) -> int:
        if self._small:
            return self.neg_table[a]
        return self._neg_direct(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._small:
            return self.mul_table[a][b]
        return self._mul_direct(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._small:
            return self.inv_table[a]
        return self._inv_euclid(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        s = 0
        for x, y in zip(u, v):
            s = self.add(s, self.mul(x, y))
        return s

    def trace(self, a: int) -> int:
        """Absolute trace to the prime field, as an integer in [0, p)."""
        t, x = 0, a
        for _ in range(self.k):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        return t

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    @cached_property
    def _sqrt_table(self) -> dict[int, int]:
        roots: dict[int, int] = {}
        for y in range(self.q):
            roots.setdefault(self.mul(y, y), y)
        return roots

    def sqrt(self, a: int) -> int | None:
        if self.p == 2:
            return self.pow(a, self.q // 2)
        if not self.is_square(a):
            return None
        return self._sqrt_table[a]

    @cached_property
    def _artin_schreier(self) -> dict[int, int]:
        roots: dict[int, int] = {}
        for y in range(self.q):
            roots.setdefault(self.add(self.mul(y, y), y), y)
        return roots

    def solve_quadratic(self, b: int, c: int) -> list[int]:
        """Roots in K of x^2 + b x + c, with multiplicity, sorted."""
        if self.p == 2:
            if b == 0:
                r = self.sqrt(c)
                return [r, r]
            # x = b*y turns the equation into y^2 + y = c / b^2
            a = self.div(c, self.mul(b, b))
            if self.trace(a) != 0:
                return []
            y = self._artin_schreier[a]
            r1 = self.mul(b, y)
            r2 = self.add(r1, b)
            return sorted([r1, r2])
        two_inv = self.inv(self.from_int(2))
        disc = self.sub(self.mul(b, b), self.mul(self.from_int(4), c))
        if not self.is_square(disc):
            return []
        s = self.sqrt(disc)
        mb = self.neg(b)
        r1 = self.mul(self.add(mb, s), two_inv)
        r2 = self.mul(self.sub(mb, s), two_inv)
        return sorted([r1, r2])

    # -- vectorised arithmetic ------------------------------------------------
    @cached_property
    def _np_tables(self):
        add = np.array(self.add_table, dtype=np.int64)
        mul = np.array(self.mul_table, dtype=np.int64)
        neg = np.array(self.neg_table, dtype=np.int64)
        inv = np.array(self.inv_table, dtype=np.int64)
        return add, mul, neg, inv

    def np_add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.k == 1:
            return (a + b) % self.p
        return self._np_tables[0][a, b]

    def np_mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        return self._np_tables[1][a, b]

    def np_neg(self, a):
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        return self._np_tables[2][a]

    def np_inv(self, a):
        return self._np_tables[3][a]

    def np_sub(self, a, b):
        return self.np_add(a, self.np_neg(b))

    # -- extensions ---------------------------------------------------------
    def extension(self, m: int) -> "FieldSpec":
        """The default-modulus field of degree k*m over the same prime."""
        return gf(self.p, self.k * m)

    def embedding(self, target: "FieldSpec") -> list[int]:
        """Table of the embedding self -> target, indexed by element code."""
        return _embedding_table(self, target)


@lru_cache(maxsize=None)
def gf(p: int, k: int = 1, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """Cached FieldSpec constructor; tables are shared between callers."""
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return FieldSpec(p, k, modulus)


@lru_cache(maxsize=None)
def _embedding_table(source: FieldSpec, target: FieldSpec) -> list[int]:
    if source.p != target.p or target.k % source.k:
        raise ValueError(f"{source!r} does not embed in {target!r}")
    # generator x of the source goes to the least root of its modulus in the target
    root = None
    for r in target.elements():
        acc = 0
        for c in reversed(source.modulus):
            acc = target.add(target.mul(acc, r), target.from_int(c))
        if acc == 0:
            root = r
            break
    if root is None:
        raise ValueError("source modulus has no root in the target field")
    powers = [1]
    for _ in range(source.k - 1):
        powers.append(target.mul(powers[-1], root))
    table = []
    for a in source.elements():
        img = 0
        for c, pw in zip(source.coeffs(a), powers):
            img = target.add(img, target.mul(target.from_int(c), pw))
        table.append(img)
    return table


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.spec.q:
            raise ValueError(f"code {self.value} out of range for {self.spec!r}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatchError(f"{self.spec!r} vs {other.spec!r}")
            return other.value
        if isinstance(other, int):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.sub(self.value, b))

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.div(self.value, b))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.value, e))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        if self.spec.k == 1:
            return f"{self.value}"
        return f"{list(self.coeffs)}"


def _check_same(a: FieldElement, b: FieldElement):
    if a.spec != b.spec:
        raise FieldMismatchError(f"{a.spec!r} vs {b.spec!r}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.spec, a.spec.inv(a.value))


def solve_quadratic(b: FieldElement, c: FieldElement) -> list[FieldElement]:
    _check_same(b, c)
    return [FieldElement(b.spec, r) for r in b.spec.solve_quadratic(b.value, c.value)]


def embed(a: FieldElement, target: FieldSpec) -> FieldElement:
    return FieldElement(target, _embedding_table(a.spec, target)[a.value])


def enumerate_elements(spec: FieldSpec) -> Iterator[FieldElement]:
    for a in spec.elements():
        yield FieldElement(spec, a)
