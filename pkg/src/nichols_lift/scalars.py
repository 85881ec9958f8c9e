"""Exact arithmetic in cyclotomic fields Q(zeta_L).

Elements are stored as an integer coordinate vector over a common positive
denominator, in the power basis 1, z, ..., z^(phi(L)-1).  Everything is
exact; zero-testing is a tuple comparison.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

from .errors import DivisionByZero, FieldMismatch, NotASubfieldChain

__all__ = [
    "CycloField",
    "FieldElem",
    "make_field",
    "root",
    "embed",
    "multiplicative_order",
    "cyclotomic_polynomial",
    "euler_phi",
]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divmod(num: list[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials (low degree first) by a monic divisor."""
    num = list(num)
    dn = len(den) - 1
    assert den[-1] == 1
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            quot[k - dn] = c
            for i, d in enumerate(den):
                num[k - dn + i] -= c * d
    rem = num[:dn] or [0]
    return quot, rem


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n (low degree first), via (x^n - 1) / prod_{d|n, d<n} Phi_d."""
    if n < 1:
        raise ValueError("cyclotomic order must be >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    prod = [1]
    for d in _divisors(n)[:-1]:
        prod = _poly_mul(prod, cyclotomic_polynomial(d))
    quot, rem = _poly_divmod(num, prod)
    assert not any(rem), "Phi_d product must divide x^n - 1"
    while len(quot) > 1 and quot[-1] == 0:
        quot.pop()
    return tuple(quot)


class CycloField:
    """The cyclotomic field Q(zeta_L); use :func:`make_field` to obtain instances."""

    __slots__ = ("order", "modulus", "degree", "_fold", "_roots", "_sparse_roots", "_zero", "_one", "__weakref__")

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("field order must be >= 1")
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        self.degree = len(self.modulus) - 1
        d = self.degree
        # _fold[k] = nonzero (index, coordinate) pairs of z^(d+k) reduced mod Phi_L, k < d - 1
        fold = []
        cur = [-c for c in self.modulus[:d]]
        for _ in range(max(d - 1, 0)):
            fold.append(tuple((i, c) for i, c in enumerate(cur) if c))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(d):
                    cur[i] -= top * self.modulus[i]
        self._fold = tuple(fold)
        self._roots: list[FieldElem] = []
        self._zero = FieldElem._raw(self, (0,) * d, 1)
        self._one = FieldElem._raw(self, (1,) + (0,) * (d - 1), 1)
        powers = []
        for k in range(order):
            vec = [0] * (k + 1)
            vec[k] = 1
            _, rem = _poly_divmod(vec, self.modulus)
            rem = (rem + [0] * d)[:d]
            powers.append(FieldElem._raw(self, tuple(rem), 1))
        self._roots = powers
        self._sparse_roots = tuple(tuple((i, c) for i, c in enumerate(r.num) if c) for r in powers)

    @property
    def roots_of_unity_order(self) -> int:
        """Order of the full group of roots of unity inside Q(zeta_L)."""
        return self.order if self.order % 2 == 0 else 2 * self.order

    def zero(self) -> FieldElem:
        return self._zero

    def one(self) -> FieldElem:
        return self._one

    def __call__(self, value) -> FieldElem:
        """Coerce an int, Fraction or same-field element into this field."""
        if isinstance(value, FieldElem):
            if value.field is not self:
                raise FieldMismatch(
                    f"element of Q(zeta_{value.field.order}) used in Q(zeta_{self.order})"
                )
            return value
        if isinstance(value, Rational):
            num, den = int(value.numerator), int(value.denominator)
            return FieldElem._make(self, (num,) + (0,) * (self.degree - 1), den)
        raise TypeError(f"cannot coerce {type(value).__name__} into a cyclotomic field")

    def from_coords(self, coords: Iterable) -> FieldElem:
        nums, dens = [], []
        for c in coords:
            if type(c) is not int:
                c = Fraction(c)
                nums.append(c.numerator)
                dens.append(c.denominator)
            else:
                nums.append(c)
                dens.append(1)
        if len(nums) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(nums)}")
        den = lcm(*dens)
        return FieldElem._make(self, tuple(n * (den // m) for n, m in zip(nums, dens)), den)

    def __repr__(self) -> str:
        return f"CycloField({self.order})"

    def __reduce__(self):
        return (make_field, (self.order,))


def _kronecker_mul(a: Sequence[int], b: Sequence[int], d: int) -> list[int]:
    """Coefficients of a(x) b(x) via one big-integer product (Kronecker substitution)."""
    bound = d * max(map(abs, a)) * max(map(abs, b))
    nb = (bound.bit_length() + 9) // 8  # bytes per slot, with a sign bit to spare
    k = 8 * nb
    x = 0
    for c in reversed(a):
        x = (x << k) + c
    y = 0
    for c in reversed(b):
        y = (y << k) + c
    n = 2 * d - 1
    half = 1 << (k - 1)
    # shifting every slot by half makes all digits nonnegative, so bytes can be sliced
    p = x * y + half * (((1 << (k * n)) - 1) // ((1 << k) - 1))
    raw = p.to_bytes(n * nb, "little")
    return [int.from_bytes(raw[i:i + nb], "little") - half for i in range(0, n * nb, nb)]


@lru_cache(maxsize=None)
def _unit_chain(L: int) -> tuple[tuple[int, int], ...]:
    """Pairs (g, m) with 1 = H_0 < H_1 < ... = (Z/L)^x, H_i = <H_{i-1}, g>,
    and m the least exponent with g^m in H_{i-1}."""
    units = {k for k in range(1, L) if gcd(k, L) == 1}
    seen = {1 % L}
    chain = []
    while len(seen) < len(units):
        # the element of largest relative order keeps the chain short
        best = None
        for g in sorted(units - seen):
            m, x = 1, g
            while x not in seen:
                x, m = x * g % L, m + 1
            if best is None or m > best[1]:
                best = (g, m)
        g, m = best
        seen = {h * pow(g, j, L) % L for h in seen for j in range(m)}
        chain.append(best)
    return tuple(chain)


@lru_cache(maxsize=None)
def make_field(L: int) -> CycloField:
    """Return the (cached, shared) field Q(zeta_L)."""
    return CycloField(L)


class FieldElem:
    """Immutable element of a :class:`CycloField`."""

    __slots__ = ("field", "num", "den", "_hash")

    @classmethod
    def _raw(cls, field: CycloField, num: tuple, den: int) -> FieldElem:
        self = object.__new__(cls)
        self.field = field
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def _make(cls, field: CycloField, num, den: int) -> FieldElem:
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = gcd(den, *num) if den != 1 else 1
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
        elif not isinstance(num, tuple):
            num = tuple(num)
        if not any(num):
            den = 1
        return cls._raw(field, num, den)

    # -- inspection ---------------------------------------------------------
    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __bool__(self) -> bool:
        return any(self.num)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> FieldElem:
        if type(other) is FieldElem and other.field is self.field:
            return other
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise FieldMismatch(
                    f"cannot combine Q(zeta_{self.field.order}) with "
                    f"Q(zeta_{other.field.order}); embed explicitly"
                )
            return other
        if isinstance(other, Rational):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return FieldElem._make(self.field, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        d1, d2 = self.den, o.den
        return FieldElem._make(
            self.field, tuple(a * d2 + b * d1 for a, b in zip(self.num, o.num)), d1 * d2
        )

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        return FieldElem._raw(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if type(other) is FieldElem and other.field is self.field:
            o = other
        elif isinstance(other, Rational):
            n, m = int(other.numerator), int(other.denominator)
            return FieldElem._make(self.field, tuple(c * n for c in self.num), self.den * m)
        else:
            o = self._coerce(other)
            if o is NotImplemented:
                return o
        field = self.field
        d = field.degree
        a, b = self.num, o.num
        if d == 1:
            return FieldElem._make(field, (a[0] * b[0],), self.den * o.den)
        if d < 10:
            prod = [0] * (2 * d - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b, i):
                        prod[j] += x * y
        else:
            prod = _kronecker_mul(a, b, d)
        L = field.order
        if len(prod) > L:
            # z^L = 1: wrap first, leaving fewer high powers to fold
            for i in range(L, len(prod)):
                prod[i - L] += prod[i]
            del prod[L:]
        out = prod[:d]
        for k in range(len(prod) - d):
            row = field._fold[k]
            c = prod[d + k]
            if c:
                for i, r in row:
                    out[i] += c * r
        return FieldElem._make(field, tuple(out), self.den * o.den)

    __rmul__ = __mul__

    def _conjugate(self, k: int) -> FieldElem:
        """Image of the integer numerator under z -> z^k (k a unit mod L)."""
        field = self.field
        out = [0] * field.degree
        L, rows = field.order, field._sparse_roots
        for i, c in enumerate(self.num):
            if c:
                for j, r in rows[i * k % L]:
                    out[j] += c * r
        return FieldElem._raw(field, tuple(out), 1)

    def inv(self) -> FieldElem:
        """Multiplicative inverse: the product of the nontrivial Galois
        conjugates divided by the (rational) norm."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        field = self.field
        d = field.degree
        if d == 1:
            return FieldElem._make(field, (self.den,), self.num[0])
        L = field.order
        a = FieldElem._raw(field, self.num, 1)
        # c = product of sigma_h(a) over h != 1 in the current subgroup H; with
        # A = a c, extending H by g multiplies c by prod_{1 <= j < m} sigma_g^j(A)
        cofactor = field._one
        for g, m in _unit_chain(L):
            big = a * cofactor
            q, r = field._one, 0
            for bit in bin(m - 1)[2:]:
                if r:
                    q = q * q._conjugate(pow(g, r, L))
                    r *= 2
                if bit == "1":
                    q = q * big._conjugate(pow(g, r, L))
                    r += 1
            cofactor = cofactor * q._conjugate(g)
        norm = (a * cofactor).coords[0]
        return cofactor * (self.den / norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, n: int) -> FieldElem:
        if n < 0:
            return self.inv() ** (-n)
        result = self.field._one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.field is other.field and self.den == other.den and self.num == other.num
        if isinstance(other, Rational):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            if self.is_rational():
                h = hash(Fraction(self.num[0], self.den))
            else:
                h = hash((self.field.order, self.num, self.den))
            self._hash = h
        return h

    # -- display ------------------------------------------------------------
    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            coef = Fraction(c, self.den)
            mag = abs(coef)
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            terms.append(("-" if coef < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"FieldElem(L={self.field.order}, {self})"


def root(field: CycloField, k: int) -> FieldElem:
    """zeta_L^k in canonical form (k is taken mod L)."""
    return field._roots[k % field.order]


def embed(e: FieldElem, target: CycloField) -> FieldElem:
    """Image of ``e`` under zeta_N -> zeta_L^(L/N); requires N | L."""
    src = e.field
    if src is target:
        return e
    if target.order % src.order:
        raise NotASubfieldChain(f"Q(zeta_{src.order}) is not a subfield of Q(zeta_{target.order})")
    step = target.order // src.order
    acc = [0] * target.degree
    for k, c in enumerate(e.num):
        if c:
            img = target._roots[(k * step) % target.order]
            for i, v in enumerate(img.num):
                acc[i] += c * v
    return FieldElem._make(target, tuple(acc), e.den)


def multiplicative_order(e: FieldElem) -> int | None:
    """Least n >= 1 with e^n = 1, or None when e is not a root of unity.

    The roots of unity of Q(zeta_L) form a cyclic group of order L (L even)
    or 2L (L odd), so only divisors of that number need checking.
    """
    if e.is_zero():
        raise DivisionByZero("multiplicative order of zero")
    w = e.field.roots_of_unity_order
    for n in _divisors(w):
        if (e**n).is_one():
            return n
    return None


def root_exponent(e: FieldElem) -> tuple[int, int] | None:
    """Return (k, W) with e = omega^k for omega = a fixed generator of the
    roots of unity of order W in the field, or None if e is not one."""
    field = e.field
    w = field.roots_of_unity_order
    gen = root(field, 1) if w == field.order else -root(field, (field.order + 1) // 2)
    cur = field.one()
    for k in range(w):
        if cur == e:
            return k, w
        cur = cur * gen
    return None


def format_scalar(e: FieldElem) -> str:
    """Compact DSL-parseable text: ``z^k`` or ``-z^k`` for roots of unity,
    the power-basis expansion otherwise."""
    field = e.field
    if e.is_rational():
        return str(e)
    for sign, x in (("", e), ("-", -e)):
        for k in range(1, field.order):
            if field._roots[k] == x:
                return sign + ("z" if k == 1 else f"z^{k}")
    return str(e)
