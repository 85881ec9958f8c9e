"""Line-oriented text format for presentations, and the bundled catalog.

A presentation file looks like::

    presentation cartan-A2-N3
    field 3
    theta 2
    matrix [z, z; z, z]
    roots deg(1,0) deg(0,1) deg(1,1)
    rel r112 s0 ad(1,1,2) deform
    rel p1 s1 y1^3 deform

Header keywords: ``presentation``, ``field``, ``theta``, ``matrix``, ``order``,
``roots``, ``source``, ``note``, ``exclude A B`` (lambda_A lambda_B = 0) and
``flag NAME TEXT`` (a per-relation caveat).  Relation lines read
``rel NAME sK EXPR [deform] [primitive] [tail EXPR]``; with ``deform`` the
right-hand side is ``lam(NAME)`` unless a ``tail`` replaces it.  A ``tail``
without ``deform`` is a fixed right-hand side and may not mention ``lam``.

Expressions: ``y3``, ``ad(1,1,2)`` (left-nested iterated braided
commutator), ``chain(i,j)`` (= ad(i,i+1,...,j)), ``[E, F]c``, ``z`` (the
ambient root of unity), integers, ``q(i,j)`` (matrix entries), ``lam(name)``,
with ``+ - * / ^`` and parentheses.  Division is by scalars only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from importlib import resources
from typing import Callable, Mapping, Sequence

from .braiding import BraidingMatrix, MultiDegree
from .errors import (
    DSLError,
    DuplicateRelationName,
    NicholsError,
    NonHomogeneousBracket,
    PresentationSyntaxError,
    UnknownCatalogEntry,
    UnknownGenerator,
)
from .freealg import Poly, braided_commutator, order_rank
from .scalars import CycloField, FieldElem, format_scalar, make_field, root

# -- expression tree ---------------------------------------------------------
# Positions are carried for diagnostics but excluded from equality.


@dataclass(frozen=True)
class Node:
    pass


def _pos():
    return dc_field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Gen(Node):
    index: int  # 1-based
    pos: tuple = _pos()


@dataclass(frozen=True)
class IteratedAd(Node):
    indices: tuple[int, ...]
    pos: tuple = _pos()


@dataclass(frozen=True)
class Chain(Node):
    start: int
    end: int
    pos: tuple = _pos()


@dataclass(frozen=True)
class Bracket(Node):
    left: Node
    right: Node
    pos: tuple = _pos()


@dataclass(frozen=True)
class Zeta(Node):
    pos: tuple = _pos()


@dataclass(frozen=True)
class Num(Node):
    value: int
    pos: tuple = _pos()


@dataclass(frozen=True)
class QEntry(Node):
    i: int
    j: int
    pos: tuple = _pos()


@dataclass(frozen=True)
class Lam(Node):
    name: str
    pos: tuple = _pos()


@dataclass(frozen=True)
class BinOp(Node):
    op: str  # + - * /
    left: Node
    right: Node
    pos: tuple = _pos()


@dataclass(frozen=True)
class Neg(Node):
    operand: Node
    pos: tuple = _pos()


@dataclass(frozen=True)
class Power(Node):
    base: Node
    exponent: int
    pos: tuple = _pos()


def lam_names(node: Node) -> set[str]:
    if isinstance(node, Lam):
        return {node.name}
    out: set[str] = set()
    for child in _children(node):
        out |= lam_names(child)
    return out


def _children(node: Node) -> tuple[Node, ...]:
    if isinstance(node, Bracket):
        return (node.left, node.right)
    if isinstance(node, BinOp):
        return (node.left, node.right)
    if isinstance(node, Neg):
        return (node.operand,)
    if isinstance(node, Power):
        return (node.base,)
    return ()


def generators_used(node: Node) -> set[int]:
    """1-based generator indices occurring in ``node``."""
    if isinstance(node, Gen):
        return {node.index}
    if isinstance(node, IteratedAd):
        return set(node.indices)
    if isinstance(node, Chain):
        lo, hi = sorted((node.start, node.end))
        return set(range(lo, hi + 1))
    out: set[int] = set()
    for child in _children(node):
        out |= generators_used(child)
    return out


# -- printing -----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Power):
        return 4
    return 5


def format_expr(node: Node, ctx: int = 0) -> str:
    if isinstance(node, Gen):
        s = f"y{node.index}"
    elif isinstance(node, IteratedAd):
        s = "ad(" + ",".join(map(str, node.indices)) + ")"
    elif isinstance(node, Chain):
        s = f"chain({node.start},{node.end})"
    elif isinstance(node, Bracket):
        s = f"[{format_expr(node.left)}, {format_expr(node.right)}]c"
    elif isinstance(node, Zeta):
        s = "z"
    elif isinstance(node, Num):
        s = str(node.value)
    elif isinstance(node, QEntry):
        s = f"q({node.i},{node.j})"
    elif isinstance(node, Lam):
        s = f"lam({node.name})"
    elif isinstance(node, BinOp):
        p = _PREC[node.op]
        sep = f" {node.op} " if p == 1 else node.op
        s = format_expr(node.left, p) + sep + format_expr(node.right, p + 1)
    elif isinstance(node, Neg):
        s = "-" + format_expr(node.operand, 3)
    elif isinstance(node, Power):
        s = f"{format_expr(node.base, 5)}^{node.exponent}"
    else:  # pragma: no cover
        raise TypeError(node)
    return f"({s})" if _prec(node) < ctx else s


# -- tokenizer ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[()\[\],;+\-*/^<]))")


@dataclass
class Token:
    kind: str  # int | ident | op | end
    value: str
    col: int  # 1-based


def tokenize(text: str, line: int, col0: int = 1) -> list[Token]:
    out = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if m is None or m.end() == i:
            raise PresentationSyntaxError(f"unexpected character {text[i]!r}", line, col0 + i)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), col0 + m.start(kind)))
        i = m.end()
    out.append(Token("end", "", col0 + n))
    return out


class _Parser:
    """Recursive-descent expression parser over one line's tokens."""

    def __init__(self, tokens: list[Token], line: int, theta: int, allow_gens: bool = True,
                 allow_lam: bool = True, stop_words: Sequence[str] = ()):
        self.toks = tokens
        self.k = 0
        self.line = line
        self.theta = theta
        self.allow_gens = allow_gens
        self.allow_lam = allow_lam
        self.stop = set(stop_words)

    # helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def pos(self, tok: Token | None = None) -> tuple[int, int]:
        return (self.line, (tok or self.tok).col)

    def error(self, msg: str, tok: Token | None = None, cls=PresentationSyntaxError):
        return cls(msg, *self.pos(tok))

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.value in ops

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            got = self.tok.value or "end of line"
            raise self.error(f"expected {op!r}, found {got!r}")
        t = self.tok
        self.k += 1
        return t

    def expect_int(self, signed: bool = False) -> int:
        neg = False
        if signed and self.at_op("-"):
            self.k += 1
            neg = True
        if self.tok.kind != "int":
            raise self.error(f"expected an integer, found {self.tok.value or 'end of line'!r}")
        v = int(self.tok.value)
        self.k += 1
        return -v if neg else v

    def gen_index(self, tok: Token, v: int) -> int:
        if not 1 <= v <= self.theta:
            raise self.error(f"generator index {v} outside 1..{self.theta}", tok, UnknownGenerator)
        return v

    def int_list(self) -> list[int]:
        self.expect_op("(")
        out = []
        while True:
            t = self.tok
            out.append(self.gen_index(t, self.expect_int()))
            if self.at_op(","):
                self.k += 1
                continue
            self.expect_op(")")
            return out

    # grammar
    def at_stop(self) -> bool:
        return self.tok.kind == "end" or (self.tok.kind == "ident" and self.tok.value in self.stop)

    def expr(self) -> Node:
        node = self.term()
        while self.at_op("+", "-"):
            t = self.tok
            self.k += 1
            node = BinOp(t.value, node, self.term(), self.pos(t))
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.at_op("*", "/"):
            t = self.tok
            self.k += 1
            node = BinOp(t.value, node, self.factor(), self.pos(t))
        return node

    def factor(self) -> Node:
        if self.at_op("-"):
            t = self.tok
            self.k += 1
            return Neg(self.factor(), self.pos(t))
        node = self.atom()
        if self.at_op("^"):
            t = self.tok
            self.k += 1
            node = Power(node, self.expect_int(signed=True), self.pos(t))
            if self.at_op("^"):
                raise self.error("chained '^' needs parentheses")
        return node

    def atom(self) -> Node:
        t = self.tok
        p = self.pos(t)
        if t.kind == "int":
            self.k += 1
            return Num(int(t.value), p)
        if self.at_op("("):
            self.k += 1
            node = self.expr()
            self.expect_op(")")
            return node
        if self.at_op("["):
            if not self.allow_gens:
                raise self.error("brackets are not allowed in a scalar")
            self.k += 1
            left = self.expr()
            self.expect_op(",")
            right = self.expr()
            self.expect_op("]")
            if not (self.tok.kind == "ident" and self.tok.value == "c"):
                raise self.error("expected 'c' after ']' of a braided commutator")
            self.k += 1
            return Bracket(left, right, p)
        if t.kind == "ident" and t.value not in self.stop:
            name = t.value
            m = re.fullmatch(r"y(\d+)", name)
            if m:
                if not self.allow_gens:
                    raise self.error("generators are not allowed in a scalar", t, UnknownGenerator)
                self.k += 1
                return Gen(self.gen_index(t, int(m.group(1))), p)
            if name == "z":
                self.k += 1
                return Zeta(p)
            if name in ("ad", "chain"):
                if not self.allow_gens:
                    raise self.error(f"{name}() is not allowed in a scalar")
                self.k += 1
                idx = self.int_list()
                if name == "ad":
                    return IteratedAd(tuple(idx), p)
                if len(idx) != 2:
                    raise self.error("chain() takes exactly two indices", t)
                return Chain(idx[0], idx[1], p)
            if name == "q":
                if self.theta == 0:
                    raise self.error("q(i,j) needs a braiding matrix", t)
                self.k += 1
                idx = self.int_list()
                if len(idx) != 2:
                    raise self.error("q() takes exactly two indices", t)
                return QEntry(idx[0], idx[1], p)
            if name == "lam":
                if not self.allow_lam:
                    raise self.error("lam() is only allowed in deformation tails", t)
                self.k += 1
                self.expect_op("(")
                if self.tok.kind != "ident":
                    raise self.error("expected a relation name inside lam()")
                nm = self.tok.value
                self.k += 1
                self.expect_op(")")
                return Lam(nm, p)
            raise self.error(f"unknown identifier {name!r}", t)
        raise self.error(f"unexpected {t.value or 'end of line'!r}", t)


# -- evaluation -----------------------------------------------------------------


class _Env:
    def __init__(self, field: CycloField, q: BraidingMatrix | None, theta: int,
                 lam: Mapping[str, FieldElem] | Callable[[str], FieldElem] | None):
        self.field = field
        self.q = q
        self.theta = theta
        self.lam = lam

    def lam_value(self, name: str) -> FieldElem:
        if self.lam is None:
            return self.field.zero()
        if callable(self.lam):
            return self.field(self.lam(name))
        return self.field(self.lam.get(name, 0))


def _err(node: Node, msg: str, cls=PresentationSyntaxError) -> DSLError:
    line, col = getattr(node, "pos", (0, 0))
    return cls(msg, line, col)


def evaluate(node: Node, field: CycloField, theta: int, q: BraidingMatrix | None = None,
             lam=None) -> Poly:
    """Evaluate an expression tree to a Poly (scalars become constants)."""
    return _eval(node, _Env(field, q, theta, lam))


def _bracket(env: _Env, node: Node, u: Poly, v: Poly) -> Poly:
    if env.q is None:
        raise _err(node, "braided commutators need a braiding matrix")
    for side in (u, v):
        if not side.is_zero() and side.degree() is None:
            raise _err(node, "bracket argument is not Z^theta-homogeneous", NonHomogeneousBracket)
    return braided_commutator(u, v, env.q)


def _ad(env: _Env, node: Node, idx: Sequence[int]) -> Poly:
    acc = Poly.gen(env.field, env.theta, idx[-1] - 1)
    for i in reversed(idx[:-1]):
        acc = _bracket(env, node, Poly.gen(env.field, env.theta, i - 1), acc)
    return acc


def _eval(node: Node, env: _Env) -> Poly:
    f, th = env.field, env.theta
    if isinstance(node, Gen):
        return Poly.gen(f, th, node.index - 1)
    if isinstance(node, IteratedAd):
        return _ad(env, node, node.indices)
    if isinstance(node, Chain):
        step = 1 if node.end >= node.start else -1
        return _ad(env, node, list(range(node.start, node.end + step, step)))
    if isinstance(node, Bracket):
        return _bracket(env, node, _eval(node.left, env), _eval(node.right, env))
    if isinstance(node, Zeta):
        return Poly.const(f, th, root(f, 1))
    if isinstance(node, Num):
        return Poly.const(f, th, node.value)
    if isinstance(node, QEntry):
        if env.q is None:
            raise _err(node, "q(i,j) needs a braiding matrix")
        return Poly.const(f, th, env.q[node.i - 1, node.j - 1])
    if isinstance(node, Lam):
        return Poly.const(f, th, env.lam_value(node.name))
    if isinstance(node, Neg):
        return -_eval(node.operand, env)
    if isinstance(node, Power):
        base = _eval(node.base, env)
        if node.exponent < 0:
            if not base.is_constant():
                raise _err(node, "negative powers are only defined for scalars")
            c = base.constant_term()
            if c.is_zero():
                raise _err(node, "zero raised to a negative power")
            return Poly.const(f, th, c**node.exponent)
        return base**node.exponent
    if isinstance(node, BinOp):
        a = _eval(node.left, env)
        b = _eval(node.right, env)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if not b.is_constant():
            raise _err(node, "division by a non-scalar")
        c = b.constant_term()
        if c.is_zero():
            raise _err(node, "division by zero")
        return a.scale(c.inv())
    raise TypeError(node)  # pragma: no cover


# -- presentations ----------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    name: str
    stratum: int
    lhs: Node
    deformable: bool = False
    tail: Node | None = None
    primitive_flag: bool = False

    @property
    def rhs(self) -> Node | None:
        """Deformation right-hand side as an expression tree (None = 0)."""
        if self.tail is not None:
            return self.tail
        return Lam(self.name) if self.deformable else None

    @property
    def primitive(self) -> bool:
        """Primitive in its stratum: stratum 0 or explicitly declared."""
        return self.stratum == 0 or self.primitive_flag


@dataclass(frozen=True)
class Presentation:
    name: str
    field: CycloField
    matrix: BraidingMatrix
    relations: tuple[Relation, ...] = ()
    order: tuple[int, ...] | None = None  # ascending, 0-based
    roots: tuple[MultiDegree, ...] | None = None
    exclusions: tuple[tuple[str, str], ...] = ()
    flags: tuple[tuple[str, str], ...] = ()
    notes: tuple[str, ...] = ()
    source: str = ""

    @property
    def theta(self) -> int:
        return self.matrix.theta

    @property
    def L(self) -> int:
        return self.field.order

    def relation(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(name)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.relations)

    @property
    def deformable_names(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.relations if r.deformable)

    def lhs(self, r: Relation | str) -> Poly:
        if isinstance(r, str):
            r = self.relation(r)
        return evaluate(r.lhs, self.field, self.theta, self.matrix)

    def degree(self, r: Relation | str) -> MultiDegree:
        return self.lhs(r).degree()

    def flagged(self, name: str) -> bool:
        return any(n == name for n, _ in self.flags)

    def excluded_pairs(self) -> set[frozenset]:
        return {frozenset(p) for p in self.exclusions}

    def replace(self, **kw) -> Presentation:
        data = {k: getattr(self, k) for k in self.__dataclass_fields__}
        data.update(kw)
        return Presentation(**data)


def expand_relation(r: Relation, q: BraidingMatrix) -> tuple[Poly, Callable[[Mapping], Poly]]:
    """Expanded lhs and a function lambda-assignment -> rhs Poly."""
    lhs = evaluate(r.lhs, q.field, q.theta, q)

    def rhs(lam: Mapping | None = None) -> Poly:
        node = r.rhs
        if node is None:
            return lhs.zero()
        return evaluate(node, q.field, q.theta, q, lam or {})

    return lhs, rhs


# -- parsing -----------------------------------------------------------------

_HEADERS = ("presentation", "field", "theta", "matrix", "order", "roots", "source", "note",
            "exclude", "flag", "rel")


def _strip_comment(s: str) -> str:
    i = s.find("#")
    return s if i < 0 else s[:i]


def parse_scalar(text: str, field: CycloField, q: BraidingMatrix | None = None,
                 line: int = 1, col: int = 1) -> FieldElem:
    """Parse a scalar expression (z, integers, q(i,j), + - * / ^)."""
    toks = tokenize(text, line, col)
    p = _Parser(toks, line, q.theta if q is not None else 0, allow_gens=False, allow_lam=False)
    if p.tok.kind == "end":
        raise p.error("empty scalar")
    node = p.expr()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.value!r} after scalar")
    try:
        val = evaluate(node, field, q.theta if q is not None else 0, q)
    except NicholsError as e:
        if isinstance(e, DSLError):
            raise
        raise PresentationSyntaxError(str(e), line, col) from e
    return val.constant_term()


def parse(text: str) -> Presentation:
    """Parse presentation text; errors carry 1-based (line, col)."""
    name = None
    L = None
    theta = None
    matrix = None
    order = None
    roots = None
    source = ""
    notes: list[str] = []
    exclusions: list[tuple[str, str]] = []
    flags: list[tuple[str, str]] = []
    rels: list[Relation] = []
    rel_pos: list[tuple[int, int]] = []
    lam_refs: list[tuple[str, int, int]] = []
    later: list[tuple[str, int, int]] = []  # names referenced by exclude/flag
    seen_headers: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        stripped = body.strip()
        if not stripped:
            continue
        indent = len(body) - len(body.lstrip())
        kw, _, rest = stripped.partition(" ")
        rest_col = indent + len(kw) + 2
        rest_raw = rest
        rest = rest.strip()
        rest_col += len(rest_raw) - len(rest_raw.lstrip())
        kcol = indent + 1
        if kw not in _HEADERS:
            raise PresentationSyntaxError(f"unknown keyword {kw!r}", lineno, kcol)
        single = ("presentation", "field", "theta", "matrix", "order", "roots", "source")
        if kw in single:
            if kw in seen_headers:
                raise PresentationSyntaxError(f"duplicate {kw!r} line", lineno, kcol)
            seen_headers.add(kw)
        if kw != "presentation" and name is None:
            raise PresentationSyntaxError("file must start with a 'presentation NAME' line", lineno, kcol)
        if kw == "presentation":
            if not re.fullmatch(r"[A-Za-z0-9_.()+\-]+", rest):
                raise PresentationSyntaxError("bad or missing presentation name", lineno, rest_col)
            name = rest
        elif kw in ("field", "theta"):
            if not re.fullmatch(r"\d+", rest) or int(rest) < 1:
                raise PresentationSyntaxError(f"{kw} needs a positive integer", lineno, rest_col)
            if kw == "field":
                if int(rest) > 240:
                    raise PresentationSyntaxError("field order too large", lineno, rest_col)
                L = int(rest)
            else:
                if L is None:
                    raise PresentationSyntaxError("'theta' must follow 'field'", lineno, kcol)
                theta = int(rest)
        elif kw == "matrix":
            if theta is None:
                raise PresentationSyntaxError("'matrix' must follow 'theta'", lineno, kcol)
            matrix = _parse_matrix(rest, lineno, rest_col, make_field(L), theta)
        elif kw == "order":
            if matrix is None:
                raise PresentationSyntaxError("'order' must follow 'matrix'", lineno, kcol)
            order = _parse_order(rest, lineno, rest_col, theta)
        elif kw == "roots":
            if matrix is None:
                raise PresentationSyntaxError("'roots' must follow 'matrix'", lineno, kcol)
            roots = _parse_roots(rest, lineno, rest_col, theta)
        elif kw == "source":
            source = rest
        elif kw == "note":
            notes.append(rest)
        elif kw == "exclude":
            parts = rest.split()
            if len(parts) != 2 or not all(re.fullmatch(r"[A-Za-z_]\w*", x) for x in parts):
                raise PresentationSyntaxError("exclude needs two relation names", lineno, rest_col)
            exclusions.append((parts[0], parts[1]))
            later.extend((x, lineno, rest_col) for x in parts)
        elif kw == "flag":
            nm, _, txt = rest.partition(" ")
            if not re.fullmatch(r"[A-Za-z_]\w*", nm) or not txt.strip():
                raise PresentationSyntaxError("flag needs a relation name and a text", lineno, rest_col)
            flags.append((nm, txt.strip()))
            later.append((nm, lineno, rest_col))
        else:  # rel
            if matrix is None:
                raise PresentationSyntaxError("relations must follow the 'matrix' line", lineno, kcol)
            rel = _parse_rel(rest, lineno, rest_col, matrix, lam_refs)
            if any(r.name == rel.name for r in rels):
                raise DuplicateRelationName(f"relation {rel.name!r} defined twice", lineno, rest_col)
            rels.append(rel)
            rel_pos.append((lineno, rest_col))

    if name is None:
        raise PresentationSyntaxError("missing 'presentation NAME' line", 1, 1)
    if matrix is None:
        raise PresentationSyntaxError("missing 'field'/'theta'/'matrix' lines", 1, 1)
    deformable = {r.name for r in rels if r.deformable}
    for nm, ln, col in lam_refs:
        if nm not in deformable:
            raise PresentationSyntaxError(f"lam({nm}) does not name a deformable relation", ln, col)
    known = {r.name for r in rels}
    for nm, ln, col in later:
        if nm not in known:
            raise PresentationSyntaxError(f"{nm!r} does not name a relation", ln, col)
    strata = sorted({r.stratum for r in rels})
    if strata and strata != list(range(len(strata))):
        gap = next(k for k, s in enumerate(strata) if s != k)
        at = next(pos for r, pos in zip(rels, rel_pos) if r.stratum == strata[gap])
        raise PresentationSyntaxError(f"strata {strata} are not contiguous from 0", *at)
    return Presentation(
        name=name,
        field=make_field(L),
        matrix=matrix,
        relations=tuple(rels),
        order=order,
        roots=roots,
        exclusions=tuple(exclusions),
        flags=tuple(flags),
        notes=tuple(notes),
        source=source,
    )


def _parse_matrix(text: str, line: int, col: int, field: CycloField, theta: int) -> BraidingMatrix:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise PresentationSyntaxError("matrix must be written [a, b; c, d]", line, col)
    inner = s[1:-1]
    rows = inner.split(";")
    if len(rows) != theta:
        raise PresentationSyntaxError(f"matrix has {len(rows)} rows, theta is {theta}", line, col)
    entries = []
    offset = col + 1
    for r in rows:
        cells = r.split(",")
        if len(cells) != theta:
            raise PresentationSyntaxError(f"matrix row has {len(cells)} entries, theta is {theta}", line, offset)
        row = []
        for c in cells:
            if not c.strip():
                raise PresentationSyntaxError("empty matrix entry", line, offset)
            row.append(parse_scalar(c, field, None, line, offset))
            offset += len(c) + 1
        entries.append(row)
    try:
        return BraidingMatrix(entries, field)
    except (ValueError, ArithmeticError) as e:
        raise PresentationSyntaxError(str(e), line, col) from e


def _parse_order(text: str, line: int, col: int, theta: int) -> tuple[int, ...]:
    toks = tokenize(text, line, col)
    p = _Parser(toks, line, theta)
    out = []
    while True:
        t = p.tok
        m = re.fullmatch(r"y(\d+)", t.value) if t.kind == "ident" else None
        if not m:
            raise p.error("expected a generator name like y1")
        out.append(p.gen_index(t, int(m.group(1))) - 1)
        p.k += 1
        if p.tok.kind == "end":
            break
        p.expect_op("<")
    if sorted(out) != list(range(theta)):
        raise PresentationSyntaxError("order must list every generator once", line, col)
    return tuple(out) if order_rank(out, theta) is not None else None


def _parse_roots(text: str, line: int, col: int, theta: int) -> tuple[MultiDegree, ...]:
    toks = tokenize(text, line, col)
    p = _Parser(toks, line, theta)
    out = []
    while p.tok.kind != "end":
        if not (p.tok.kind == "ident" and p.tok.value == "deg"):
            raise p.error("expected deg(...)")
        start = p.tok
        p.k += 1
        p.expect_op("(")
        vec = []
        while True:
            vec.append(p.expect_int())
            if p.at_op(","):
                p.k += 1
                continue
            p.expect_op(")")
            break
        if len(vec) != theta or not any(vec):
            raise p.error(f"root degree needs {theta} entries, not all zero", start)
        out.append(tuple(vec))
    if not out:
        raise PresentationSyntaxError("roots line is empty", line, col)
    return tuple(out)


def _parse_rel(text: str, line: int, col: int, q: BraidingMatrix, lam_refs: list) -> Relation:
    toks = tokenize(text, line, col)
    p = _Parser(toks, line, q.theta, allow_lam=False, stop_words=("deform", "primitive", "tail"))
    t = p.tok
    if t.kind != "ident" or t.value in p.stop:
        raise p.error("expected a relation name")
    name = t.value
    p.k += 1
    t = p.tok
    m = re.fullmatch(r"s(\d+)", t.value) if t.kind == "ident" else None
    if not m:
        raise p.error("expected a stratum like s0")
    stratum = int(m.group(1))
    p.k += 1
    if p.at_stop():
        raise p.error("missing relation expression")
    lhs = p.expr()
    deformable = primitive = False
    tail = None
    while p.tok.kind != "end":
        t = p.tok
        if t.kind == "ident" and t.value == "deform" and not deformable:
            deformable = True
            p.k += 1
        elif t.kind == "ident" and t.value == "primitive" and not primitive:
            primitive = True
            p.k += 1
        elif t.kind == "ident" and t.value == "tail":
            p.k += 1
            p.allow_lam = deformable
            p.stop = set()
            if p.tok.kind == "end":
                raise p.error("missing tail expression")
            tail = p.expr()
            if p.tok.kind != "end":
                raise p.error(f"unexpected {p.tok.value!r} after tail")
        else:
            raise p.error(f"unexpected {t.value!r}")
    if lam_names(lhs):
        raise PresentationSyntaxError("lam() may only appear in a tail", line, col)
    # expand now: catches non-homogeneous brackets and other semantic errors early
    field = q.field
    try:
        lhs_poly = evaluate(lhs, field, q.theta, q)
    except DSLError:
        raise
    except NicholsError as e:
        raise PresentationSyntaxError(str(e), line, col) from e
    if lhs_poly.is_zero():
        raise PresentationSyntaxError(f"relation {name!r} expands to zero", line, col)
    deg = lhs_poly.degree()
    if deg is None or not any(deg):
        raise PresentationSyntaxError(f"relation {name!r} is not homogeneous of positive degree", line, col)
    if tail is not None:
        for nm in sorted(lam_names(tail)):
            lam_refs.append((nm, line, col))
        try:
            evaluate(tail, field, q.theta, q, lambda _n: field.one())
        except DSLError:
            raise
        except NicholsError as e:
            raise PresentationSyntaxError(str(e), line, col) from e
    return Relation(name, stratum, lhs, deformable, tail, primitive)


# -- printing presentations ---------------------------------------------------------


def format_presentation(p: Presentation) -> str:
    lines = [f"presentation {p.name}", f"field {p.L}", f"theta {p.theta}"]
    rows = "; ".join(", ".join(format_scalar(x) for x in row) for row in p.matrix.entries)
    lines.append(f"matrix [{rows}]")
    if p.order is not None:
        lines.append("order " + " < ".join(f"y{i + 1}" for i in p.order))
    if p.roots:
        lines.append("roots " + " ".join("deg(" + ",".join(map(str, r)) + ")" for r in p.roots))
    if p.source:
        lines.append(f"source {p.source}")
    lines.extend(f"note {n}" for n in p.notes)
    lines.extend(f"exclude {a} {b}" for a, b in p.exclusions)
    lines.extend(f"flag {n} {t}" for n, t in p.flags)
    for r in p.relations:
        s = f"rel {r.name} s{r.stratum} {format_expr(r.lhs)}"
        if r.deformable:
            s += " deform"
        if r.primitive_flag:
            s += " primitive"
        if r.tail is not None:
            s += f" tail {format_expr(r.tail)}"
        lines.append(s)
    return "\n".join(lines) + "\n"


# -- catalog ---------------------------------------------------------------------

_SUFFIX = ".pres"
_ALIASES = {"cartan-A1": "cartan-A1-N3", "cartan-A2-N5-skew": "cartan-A2-N5"}


def _catalog_dir():
    return resources.files(__package__).joinpath("catalog")


def catalog_names(aliases: bool = True) -> list[str]:
    names = [e.name[: -len(_SUFFIX)] for e in _catalog_dir().iterdir() if e.name.endswith(_SUFFIX)]
    return sorted(names + (list(_ALIASES) if aliases else []))


def catalog_source(name: str) -> str:
    real = _ALIASES.get(name, name)
    entry = _catalog_dir().joinpath(real + _SUFFIX)
    if not re.fullmatch(r"[A-Za-z0-9_.()+\-]+", real) or not entry.is_file():
        raise UnknownCatalogEntry(name)
    return entry.read_text(encoding="utf-8")


def catalog(name: str) -> Presentation:
    return parse(catalog_source(name))


def load(name_or_path: str) -> Presentation:
    """Catalog entry by name, or a presentation file by path."""
    import os

    if os.path.exists(name_or_path):
        with open(name_or_path, encoding="utf-8") as fh:
            return parse(fh.read())
    return catalog(name_or_path)
