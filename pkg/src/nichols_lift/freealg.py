"""Words and polynomials in the free algebra k<y_1, ..., y_theta>.

A word is a tuple of 0-based generator indices; the empty tuple is 1.
"""

from __future__ import annotations

from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .braiding import BraidingMatrix, MultiDegree, bichar
from .errors import FieldMismatch, NotHomogeneous
from .scalars import CycloField, FieldElem

Word = tuple[int, ...]


def word_key(w: Word, rank: Sequence[int] | None = None) -> tuple:
    """Sort key realizing deglex: length first, then letters by rank."""
    if rank is None:
        return (len(w), w)
    return (len(w), tuple(rank[a] for a in w))


def order_rank(order: Sequence[int] | None, theta: int) -> tuple[int, ...] | None:
    """Turn an ascending generator listing (smallest first) into a rank table."""
    if order is None:
        return None
    order = list(order)
    if sorted(order) != list(range(theta)):
        raise ValueError(f"generator order {order} is not a permutation of 0..{theta - 1}")
    rank = [0] * theta
    for r, g in enumerate(order):
        rank[g] = r
    if rank == list(range(theta)):
        return None
    return tuple(rank)


def deglex_compare(u: Word, v: Word, order: Sequence[int] | None = None) -> int:
    """-1, 0 or 1 as u <, =, > v in deglex; ``order`` lists generators ascending."""
    theta = max([*u, *v, -1]) + 1
    if order is not None:
        theta = max(theta, len(order))
    rank = order_rank(order, theta)
    ku, kv = word_key(u, rank), word_key(v, rank)
    return (ku > kv) - (ku < kv)


def multidegree(w: Word, theta: int) -> MultiDegree:
    deg = [0] * theta
    for a in w:
        deg[a] += 1
    return tuple(deg)


class Poly:
    """Finitely supported combination of words with cyclotomic coefficients."""

    __slots__ = ("field", "theta", "terms")

    def __init__(self, field: CycloField, theta: int, terms: Mapping[Word, object] | None = None):
        self.field = field
        self.theta = theta
        clean: dict[Word, FieldElem] = {}
        if terms:
            for w, c in terms.items():
                w = tuple(w)
                if any(not 0 <= a < theta for a in w):
                    raise ValueError(f"word {w} uses a generator outside 0..{theta - 1}")
                c = field(c)
                if not c.is_zero():
                    clean[w] = c
        self.terms = clean

    @classmethod
    def _wrap(cls, field: CycloField, theta: int, terms: dict) -> Poly:
        self = object.__new__(cls)
        self.field = field
        self.theta = theta
        self.terms = terms
        return self

    @classmethod
    def gen(cls, field: CycloField, theta: int, i: int) -> Poly:
        return cls(field, theta, {(i,): 1})

    @classmethod
    def const(cls, field: CycloField, theta: int, c=1) -> Poly:
        return cls(field, theta, {(): c})

    @classmethod
    def word(cls, field: CycloField, theta: int, w: Iterable[int], c=1) -> Poly:
        return cls(field, theta, {tuple(w): c})

    def zero(self) -> Poly:
        return Poly._wrap(self.field, self.theta, {})

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not w for w in self.terms)

    def constant_term(self) -> FieldElem:
        return self.terms.get((), self.field.zero())

    def degree(self) -> MultiDegree | None:
        """Common multidegree when homogeneous; None for the zero poly or mixed degrees."""
        deg = None
        for w in self.terms:
            d = multidegree(w, self.theta)
            if deg is None:
                deg = d
            elif d != deg:
                return None
        return deg

    def total_degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def sorted_terms(self, order: Sequence[int] | None = None, reverse: bool = True):
        rank = order_rank(order, self.theta)
        return sorted(self.terms.items(), key=lambda t: word_key(t[0], rank), reverse=reverse)

    def leading(self, order: Sequence[int] | None = None) -> tuple[Word, FieldElem]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        rank = order_rank(order, self.theta)
        w = max(self.terms, key=lambda t: word_key(t, rank))
        return w, self.terms[w]

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: Poly) -> None:
        if other.field is not self.field:
            raise FieldMismatch("polynomials live over different cyclotomic fields")
        if other.theta != self.theta:
            raise ValueError("polynomials have different numbers of generators")

    def _lift(self, other) -> Poly | None:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (FieldElem, Rational)):
            return Poly.const(self.field, self.theta, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in o.terms.items():
            v = out.get(w)
            if v is None:
                out[w] = c
            else:
                v = v + c
                if v.is_zero():
                    del out[w]
                else:
                    out[w] = v
        return Poly._wrap(self.field, self.theta, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._wrap(self.field, self.theta, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> Poly:
        c = self.field(c)
        if c.is_zero():
            return self.zero()
        return Poly._wrap(self.field, self.theta, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (FieldElem, Rational)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out: dict[Word, FieldElem] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                c = a * b
                prev = out.get(w)
                out[w] = c if prev is None else prev + c
        return Poly._wrap(self.field, self.theta, {w: c for w, c in out.items() if not c.is_zero()})

    def __rmul__(self, other):
        if isinstance(other, (FieldElem, Rational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative powers are undefined in the free algebra")
        out = Poly.const(self.field, self.theta, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.field is other.field and self.theta == other.theta and self.terms == other.terms
        if isinstance(other, (FieldElem, Rational)):
            return self == Poly.const(self.field, self.theta, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.theta, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        return format_poly(self)


def format_word(w: Word, letter: str = "y") -> str:
    if not w:
        return "1"
    return "*".join(f"{letter}{a + 1}" for a in w)


def format_poly(p: Poly, order: Sequence[int] | None = None, letter: str = "y") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for w, c in p.sorted_terms(order):
        s = str(c)
        neg = False
        if c.is_rational():
            neg = s.startswith("-")
            mag = s[1:] if neg else s
            if w:
                body = format_word(w, letter) if mag == "1" else f"{mag}*{format_word(w, letter)}"
            else:
                body = mag
        else:
            body = f"({s})" + (f"*{format_word(w, letter)}" if w else "")
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def multiply(p: Poly, q: Poly) -> Poly:
    return p * q


def degree_of(p: Poly) -> MultiDegree | None:
    return p.degree()


def bicharacter(q: BraidingMatrix, alpha: Sequence[int], beta: Sequence[int]) -> FieldElem:
    """chi(alpha, beta) = prod_{i,j} q_ij^(alpha_i beta_j)."""
    if len(alpha) != q.theta or len(beta) != q.theta:
        raise ValueError("degree vectors must have length theta")
    return bichar(q, alpha, beta)


def braided_commutator(u: Poly, v: Poly, q: BraidingMatrix) -> Poly:
    """[u, v]_c = u v - chi(deg u, deg v) v u for homogeneous u, v."""
    if u.is_zero() or v.is_zero():
        return u.zero()
    du, dv = u.degree(), v.degree()
    if du is None or dv is None:
        raise NotHomogeneous("braided commutator needs Z^theta-homogeneous arguments")
    return u * v - (v * u).scale(bicharacter(q, du, dv))
