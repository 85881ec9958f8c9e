"""Deformed presentations, the verification workflow and the moves used to
reduce a verification to smaller cases.

Indices are 0-based in the Python API.  A lambda assignment maps deformable
relation names to scalars; absent names mean 0.
"""

from __future__ import annotations

import json
import math
import time
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .braiding import (
    BraidingMatrix,
    chi_eval,
    diagram,
    is_admissible,
    linkable_pairs,
)
from .errors import (
    IllegalCut,
    IllegalProjection,
    InadmissibleParameter,
    InadmissibleParameterWarning,
    NeedsRealization,
    NonPrimitiveStratumDeformed,
    NotLinkable,
    UnknownParameter,
)
from .freealg import Poly
from .groebner import GBReport, complete, default_degree_bound, dimension
from .presdsl import (
    BinOp,
    Chain,
    Gen,
    IteratedAd,
    Lam,
    Node,
    Num,
    Power,
    Presentation,
    QEntry,
    Relation,
    Zeta,
    _children,
    expand_relation,
    format_presentation,
    generators_used,
    parse,
)
from .scalars import CycloField, FieldElem, embed, format_scalar, make_field

SCHEMA_VERSION = 1


class ParamAssignment(dict):
    """Relation name -> lambda value; zero values are dropped."""

    def __init__(self, field: CycloField, values: Mapping[str, object] | None = None):
        super().__init__()
        self.field = field
        for k, v in (values or {}).items():
            x = field(v)
            if not x.is_zero():
                self[k] = x

    def value(self, name: str) -> FieldElem:
        return self.get(name, self.field.zero())

    def to_json(self) -> dict[str, str]:
        return {k: format_scalar(self[k]) for k in sorted(self)}


def assignment(p: Presentation, values: Mapping[str, object] | None = None) -> ParamAssignment:
    """Validated assignment: every key must name a deformable relation."""
    values = dict(values or {})
    allowed = set(p.deformable_names)
    for k in values:
        if k not in allowed:
            raise UnknownParameter(k)
    return ParamAssignment(p.field, values)


@dataclass(frozen=True)
class Realization:
    """Gamma = Z_{M_1} x ... x Z_{M_theta} with chi_i(g_j) = q_{ji}."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(m < 1 for m in self.exponents):
            raise ValueError("realization exponents must be positive")

    def check(self, q: BraidingMatrix) -> None:
        if len(self.exponents) != q.theta:
            raise ValueError(f"realization has {len(self.exponents)} exponents, rank is {q.theta}")
        for j, m in enumerate(self.exponents):
            for i in range(q.theta):
                if not (q[j, i] ** m).is_one():
                    raise ValueError(
                        f"q[{j + 1},{i + 1}] is not an M_{j + 1} = {m}-th root of unity; "
                        "the realization chi_i(g_j) = q_ji is impossible")

    def g_power(self, deg: Sequence[int]) -> tuple[int, ...]:
        return tuple(d % m for d, m in zip(deg, self.exponents))

    def trivial(self, deg: Sequence[int]) -> bool:
        return not any(self.g_power(deg))

    @property
    def order(self) -> int:
        return math.prod(self.exponents)


@dataclass
class LiftingDatum:
    presentation: Presentation
    lam: ParamAssignment
    realization: Realization | None = None

    def __post_init__(self):
        if not isinstance(self.lam, ParamAssignment):
            self.lam = assignment(self.presentation, self.lam)
        if self.realization is not None:
            self.realization.check(self.presentation.matrix)


@dataclass
class Admissibility:
    names: frozenset[str]
    verdicts: dict[str, tuple[bool, str]]
    exclusions: tuple[tuple[str, str], ...]
    flags: tuple[tuple[str, str], ...]


def admissible_set(p: Presentation, realization: Realization | None = None) -> Admissibility:
    """Deformable relations whose lambda may be nonzero (degree test + g_r != 1)."""
    if realization is not None:
        realization.check(p.matrix)
    verdicts = {}
    for r in p.relations:
        if not r.deformable:
            continue
        deg = p.degree(r)
        if not is_admissible(p.matrix, deg):
            bad = next(j for j in range(p.theta) if not chi_eval(p.matrix, deg, j).is_one())
            verdicts[r.name] = (False, f"chi_r(g_{bad + 1}) = {format_scalar(chi_eval(p.matrix, deg, bad))} != 1")
        elif realization is not None and realization.trivial(deg):
            verdicts[r.name] = (False, "g_r = 1 in the realization")
        else:
            verdicts[r.name] = (True, "chi_r trivial" + ("" if realization is None else ", g_r != 1"))
    names = frozenset(n for n, (ok, _) in verdicts.items() if ok)
    return Admissibility(names, verdicts, p.exclusions, p.flags)


def inadmissible_support(p: Presentation, lam: ParamAssignment,
                         realization: Realization | None = None) -> list[str]:
    """Names in the support of lam that break admissibility or an exclusion pair."""
    adm = admissible_set(p, realization).names
    bad = [n for n in sorted(lam) if n not in adm]
    for a, b in p.exclusions:
        if a in lam and b in lam:
            bad.append(f"{a}*{b}")
    return bad


def build_ideal(p: Presentation, lam: Mapping[str, object] | None = None, strict: bool = False,
                realization: Realization | None = None) -> list[Poly]:
    """Generators r - rhs_r(lambda) of the deformed ideal, in relation order."""
    lam = lam if isinstance(lam, ParamAssignment) else assignment(p, lam)
    bad = inadmissible_support(p, lam, realization)
    if bad:
        msg = f"{p.name}: inadmissible deformation parameters {bad}"
        if strict:
            raise InadmissibleParameter(msg)
        warnings.warn(msg, InadmissibleParameterWarning, stacklevel=2)
    out = []
    for r in p.relations:
        lhs, rhs = expand_relation(r, p.matrix)
        out.append(lhs - rhs(lam))
    # no relations: the zero ideal, still carrying field and rank
    return out or [Poly(p.field, p.theta)]


# -- verification -----------------------------------------------------------------


@dataclass
class VerifyReport:
    entry: str
    lam: ParamAssignment
    gb: GBReport
    undeformed: GBReport | None
    degree_bound: int
    flat: bool | None
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)
    system: object = field(default=None, repr=False)

    @property
    def status(self) -> str:
        return self.gb.status

    @property
    def nonzero(self) -> bool:
        return self.gb.nonzero

    @property
    def dim(self) -> int | None:
        return self.gb.dim

    @property
    def dim_undeformed(self) -> int | None:
        return self.undeformed.dim if self.undeformed is not None else None

    def exit_code(self) -> int:
        if self.status == "zero":
            return 3
        if self.status == "inconclusive" or not self.flat:
            return 4
        return 0

    def to_dict(self, timing: bool = False) -> dict:
        gb = self.gb
        d = {
            "schema_version": SCHEMA_VERSION,
            "entry": self.entry,
            "lambda": self.lam.to_json(),
            "status": gb.status,
            "dim": gb.dim,
            "dim_undeformed": self.dim_undeformed,
            "flat": self.flat,
            "hilbert": list(gb.counts),
            "gb_rules": gb.rule_count,
            "degree_bound": self.degree_bound,
            "elapsed_ms": round(self.elapsed * 1000, 3) if timing else None,
            "trace_digest": gb.trace.digest() if gb.trace is not None else None,
        }
        d.update(self.extra)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False, ensure_ascii=False)


def _max_degree(p: Presentation) -> int:
    return max((sum(p.degree(r)) for r in p.relations), default=1)


def run_ideal(gens: Sequence[Poly], D: int, order=None, max_steps: int | None = 5_000_000):
    system = complete(gens, D, order, max_steps=max_steps)
    return system, dimension(system, D)


def _same_growth(a: GBReport, b: GBReport, D: int) -> bool | None:
    if not (a.nonzero and b.nonzero):
        return None
    if a.status == "finite" and b.status == "finite":
        return a.dim == b.dim
    if a.status != b.status:
        return False
    return a.counts[: D + 1] == b.counts[: D + 1]


def verify(p: Presentation, lam: Mapping[str, object] | None = None, D: int | None = None,
           order: Sequence[int] | None = None, max_steps: int | None = 5_000_000,
           compare: bool = True) -> VerifyReport:
    """Complete the deformed ideal, read off zero / dimension, and compare with
    the undeformed algebra (dimension, or Hilbert coefficients up to D)."""
    t0 = time.perf_counter()
    lam = lam if isinstance(lam, ParamAssignment) else assignment(p, lam)
    D = D if D is not None else default_degree_bound(_max_degree(p))
    order = order if order is not None else p.order
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InadmissibleParameterWarning)
        gens = build_ideal(p, lam)
    system, rep = run_ideal(gens, D, order, max_steps)
    undeformed = None
    flat = None
    if not lam:
        undeformed = rep
        flat = True if rep.nonzero else None
    elif compare and rep.nonzero:
        _, undeformed = run_ideal(build_ideal(p, {}), D, order, max_steps)
        flat = _same_growth(rep, undeformed, D)
    out = VerifyReport(p.name, lam, rep, undeformed, D, flat, system=system)
    out.elapsed = time.perf_counter() - t0
    rep.elapsed = out.elapsed
    return out


def one_at_a_time(p: Presentation, lam: Mapping[str, object], D: int | None = None,
                  order: Sequence[int] | None = None) -> list[VerifyReport]:
    """One report per nonzero lambda_r, deforming r alone."""
    lam = lam if isinstance(lam, ParamAssignment) else assignment(p, lam)
    return [verify(p, {n: lam[n]}, D, order) for n in p.deformable_names if n in lam]


# -- expression rewriting (renumbering, field change) -------------------------------


def _rewrite(node: Node, gmap: Mapping[int, int] | None = None, zpow: int = 1) -> Node:
    """Renumber generators (1-based map) and replace z by z^zpow."""
    g = (lambda i: gmap[i]) if gmap is not None else (lambda i: i)
    pos = getattr(node, "pos", (0, 0))
    if isinstance(node, Gen):
        return Gen(g(node.index), pos)
    if isinstance(node, IteratedAd):
        return IteratedAd(tuple(g(i) for i in node.indices), pos)
    if isinstance(node, Chain):
        step = 1 if node.end >= node.start else -1
        idx = [g(i) for i in range(node.start, node.end + step, step)]
        if all(b - a == step for a, b in zip(idx, idx[1:])):
            return Chain(idx[0], idx[-1], pos)
        return IteratedAd(tuple(idx), pos)
    if isinstance(node, QEntry):
        return QEntry(g(node.i), g(node.j), pos)
    if isinstance(node, Zeta):
        return node if zpow == 1 else Power(Zeta(pos), zpow, pos)
    if isinstance(node, (Num, Lam)):
        return node
    kids = [_rewrite(c, gmap, zpow) for c in _children(node)]
    return type(node)(*_rebuild_args(node, kids), pos)


def _rebuild_args(node: Node, kids: list[Node]) -> tuple:
    if isinstance(node, BinOp):
        return (node.op, kids[0], kids[1])
    if isinstance(node, Power):
        return (kids[0], node.exponent)
    return tuple(kids)


def _uses(r: Relation, i: int) -> bool:
    nodes = [r.lhs] + ([r.tail] if r.tail is not None else [])
    return any(i + 1 in generators_used(n) or _mentions_q(n, i) for n in nodes)


def _mentions_q(node: Node, i: int) -> bool:
    if isinstance(node, QEntry):
        return i + 1 in (node.i, node.j)
    return any(_mentions_q(c, i) for c in _children(node))


def _renormalize_strata(rels: list[Relation]) -> list[Relation]:
    levels = sorted({r.stratum for r in rels})
    remap = {s: k for k, s in enumerate(levels)}
    return [Relation(r.name, remap[r.stratum], r.lhs, r.deformable, r.tail, r.primitive_flag) for r in rels]


def _prune(p: Presentation, keep: set[str]) -> dict:
    return dict(
        exclusions=tuple(e for e in p.exclusions if set(e) <= keep),
        flags=tuple(f for f in p.flags if f[0] in keep),
    )


def cut(p: Presentation, i: int, j: int, lam: Mapping[str, object] | None = None) -> Presentation:
    """Disconnect the edge i -- j: q_ji := q_ij^-1, drop the relations in the
    letters {i, j} alone, add ad(y_i)(y_j) = 0."""
    if i == j or not (0 <= i < p.theta and 0 <= j < p.theta):
        raise IllegalCut(f"bad vertex pair ({i}, {j})")
    if p.matrix.qtilde(i, j).is_one():
        raise IllegalCut(f"y{i + 1} and y{j + 1} are not adjacent")
    lam = lam if isinstance(lam, ParamAssignment) else assignment(p, lam)
    pair = {i + 1, j + 1}
    serre = [r for r in p.relations if generators_used(r.lhs) == pair]
    deformed = [r.name for r in serre if r.name in lam]
    if deformed:
        raise IllegalCut(f"relations {deformed} between y{i + 1} and y{j + 1} are deformed")
    entries = [list(row) for row in p.matrix.entries]
    entries[j][i] = entries[i][j].inv()
    q = BraidingMatrix(entries, p.field)
    a, b = sorted((i, j))
    rels = [r for r in p.relations if r not in serre]
    name = f"cut{a + 1}_{b + 1}"
    while name in {r.name for r in rels}:
        name += "x"
    rels.append(Relation(name, 0, IteratedAd((a + 1, b + 1)), False, None, False))
    keep = {r.name for r in rels}
    return p.replace(name=f"{p.name}/cut({a + 1},{b + 1})", matrix=q,
                     notes=p.notes + (f"cut between y{a + 1} and y{b + 1}",),
                     relations=tuple(_renormalize_strata(rels)), roots=None, **_prune(p, keep))


def project(p: Presentation, i: int, lam: Mapping[str, object] | None = None) -> Presentation:
    """Quotient by y_i: drop row/column i and every relation mentioning y_i."""
    if not 0 <= i < p.theta:
        raise IllegalProjection(f"no generator y{i + 1}")
    if p.theta == 1:
        raise IllegalProjection("cannot project a rank-one presentation")
    lam = lam if isinstance(lam, ParamAssignment) else assignment(p, lam)
    touching = [r for r in p.relations if _uses(r, i)]
    deformed = [r.name for r in touching if r.name in lam]
    if deformed:
        raise IllegalProjection(f"relations {deformed} involve y{i + 1} and are deformed")
    gmap = {k: (k if k < i + 1 else k - 1) for k in range(1, p.theta + 1) if k != i + 1}
    rels = []
    for r in p.relations:
        if r in touching:
            continue
        tail = _rewrite(r.tail, gmap) if r.tail is not None else None
        rels.append(Relation(r.name, r.stratum, _rewrite(r.lhs, gmap), r.deformable, tail, r.primitive_flag))
    roots = None
    if p.roots:
        roots = tuple(b[:i] + b[i + 1:] for b in p.roots if b[i] == 0) or None
    keep = {r.name for r in rels}
    return p.replace(name=f"{p.name}/y{i + 1}", matrix=p.matrix.minor(i),
                     notes=p.notes + (f"y{i + 1} projected away; later generators renumbered",),
                     relations=tuple(_renormalize_strata(rels)), roots=roots,
                     order=_minor_order(p.order, i), **_prune(p, keep))


def _minor_order(order, i):
    if order is None:
        return None
    out = tuple(k if k < i else k - 1 for k in order if k != i)
    return None if list(out) == sorted(out) else out


# -- non-connected assembly ------------------------------------------------------


def linking_name(i: int, j: int) -> str:
    """Relation name of the linking relation between 0-based vertices i < j."""
    return f"l{i + 1}_{j + 1}"


def assemble(components: Sequence[Presentation], links: Mapping[tuple[int, int], object] | None = None,
             cross: Mapping[tuple[int, int], object] | None = None, name: str | None = None) -> Presentation:
    """Block-diagonal presentation of several components plus linking relations.

    ``links`` maps global 0-based pairs (i, j), i < j in different blocks, to
    the intended lambda_ij (only its support matters here); ``cross`` fixes
    q_ij for cross-block pairs, with q_ji = q_ij^-1.  Unspecified cross entries
    default to -1 on linked pairs and 1 elsewhere.
    """
    if not components:
        raise ValueError("need at least one component")
    L = math.lcm(*(c.L for c in components))
    F = make_field(L)
    offsets = []
    theta = 0
    for c in components:
        offsets.append(theta)
        theta += c.theta
    block = [k for k, c in enumerate(components) for _ in range(c.theta)]
    entries = [[F.one()] * theta for _ in range(theta)]
    for k, c in enumerate(components):
        o = offsets[k]
        for a in range(c.theta):
            for b in range(c.theta):
                entries[o + a][o + b] = embed(c.matrix[a, b], F)
    links = {tuple(sorted(k)): v for k, v in (links or {}).items()}
    cross = {tuple(k): v for k, v in (cross or {}).items()}
    for (i, j) in links:
        if not (0 <= i < theta and 0 <= j < theta) or block[i] == block[j]:
            raise NotLinkable(f"({i + 1},{j + 1}) is not a cross-component pair")
    for i, j in combinations(range(theta), 2):
        if block[i] == block[j]:
            continue
        if (i, j) in cross:
            v = F(_as_scalar(cross[(i, j)], F))
        elif (j, i) in cross:
            v = F(_as_scalar(cross[(j, i)], F)).inv()
        else:
            v = F(-1) if (i, j) in links else F.one()
        entries[i][j] = v
        entries[j][i] = v.inv()
    q = BraidingMatrix(entries, F)
    linkable = linkable_pairs(q)
    bad = [(i + 1, j + 1) for (i, j), v in links.items() if not F(_as_scalar(v, F)).is_zero() and (i, j) not in linkable]
    if bad:
        raise NotLinkable(f"pairs {bad} do not satisfy chi_i chi_j = epsilon")

    counts: dict[str, int] = {}
    for c in components:
        for r in c.relations:
            counts[r.name] = counts.get(r.name, 0) + 1
    rels: list[Relation] = []
    exclusions, flags, notes = [], [], []
    stratum0 = 0
    for k, c in enumerate(components):
        o = offsets[k]
        gmap = {a: a + o for a in range(1, c.theta + 1)}
        zpow = L // c.L
        rename = {r.name: (f"{r.name}_{k + 1}" if counts[r.name] > 1 else r.name) for r in c.relations}
        for r in c.relations:
            tail = _rename_lams(_rewrite(r.tail, gmap, zpow), rename) if r.tail is not None else None
            rels.append(Relation(rename[r.name], stratum0 + r.stratum, _rewrite(r.lhs, gmap, zpow),
                                 r.deformable, tail, r.primitive_flag or r.stratum == 0))
        exclusions.extend((rename[a], rename[b]) for a, b in c.exclusions)
        flags.extend((rename[n], t) for n, t in c.flags)
        notes.append(f"block {k + 1}: {c.name}")
        stratum0 += 1 + max((r.stratum for r in c.relations), default=-1)
    for i, j in combinations(range(theta), 2):
        if block[i] != block[j]:
            rels.append(Relation(linking_name(i, j), stratum0, IteratedAd((i + 1, j + 1)),
                                 (i, j) in linkable, None, True))
    rels = _renormalize_strata(rels)
    nm = name or " x ".join(c.name for c in components)
    nm = nm.replace(" ", "")
    return Presentation(name=nm, field=F, matrix=q, relations=tuple(rels), order=None,
                        roots=None, exclusions=tuple(exclusions), flags=tuple(flags),
                        notes=tuple(notes), source="assembled from connected components")


def _rename_lams(node: Node, rename: Mapping[str, str]) -> Node:
    if isinstance(node, Lam):
        return Lam(rename.get(node.name, node.name), node.pos)
    kids = _children(node)
    if not kids:
        return node
    new = [_rename_lams(c, rename) for c in kids]
    return type(node)(*_rebuild_args(node, new), node.pos)


def _as_scalar(v, F: CycloField) -> FieldElem:
    if isinstance(v, FieldElem) and v.field is not F:
        return embed(v, F)
    return F(v)


# -- lifting presentations ----------------------------------------------------------


def lifting_presentation(d: LiftingDatum) -> Presentation:
    """Presentation of u(lambda) on y_1..y_theta, g_1..g_theta (g_k is written
    y_{theta+k}; group letters sort below the y's)."""
    if d.realization is None:
        raise NeedsRealization("lifting presentations need a finite realization")
    p, lam, R = d.presentation, d.lam, d.realization
    for n in lam:
        r = p.relation(n)
        if not r.primitive:
            raise NonPrimitiveStratumDeformed(
                f"{n} lies in stratum {r.stratum} and is not declared primitive")
    th = p.theta
    F = p.field
    entries = [[F.one()] * (2 * th) for _ in range(2 * th)]
    for a in range(th):
        for b in range(th):
            entries[a][b] = p.matrix[a, b]
    q = BraidingMatrix(entries, F)

    def g(k: int) -> Node:
        return Gen(th + k + 1)

    rels: list[Relation] = []
    for r in p.relations:
        if r.name in lam:
            deg = p.degree(r)
            gr: Node | None = None
            for k, e in enumerate(R.g_power(deg)):
                if e:
                    f = g(k) if e == 1 else Power(g(k), e)
                    gr = f if gr is None else BinOp("*", gr, f)
            tail = BinOp("*", Lam(r.name), BinOp("-", Num(1), gr if gr is not None else Num(1)))
            rels.append(Relation(r.name, 0, r.lhs, True, tail, True))
        else:
            rels.append(Relation(r.name, 0, r.lhs, False, None, False))
    for a in range(th):
        for b in range(a + 1, th):
            rels.append(Relation(f"gc{a + 1}_{b + 1}", 0,
                                 BinOp("-", BinOp("*", g(a), g(b)), BinOp("*", g(b), g(a))), False, None, False))
    for a, m in enumerate(R.exponents):
        rels.append(Relation(f"gord{a + 1}", 0, Power(g(a), m) if m > 1 else g(a), False, Num(1), False))
    for j in range(th):
        for i in range(th):
            lhs = BinOp("-", BinOp("*", g(j), Gen(i + 1)),
                        BinOp("*", BinOp("*", QEntry(j + 1, i + 1), Gen(i + 1)), g(j)))
            rels.append(Relation(f"gy{j + 1}_{i + 1}", 0, lhs, False, None, False))
    order = tuple(range(th, 2 * th)) + tuple(range(th))
    return Presentation(name=f"{p.name}/u", field=F, matrix=q, relations=tuple(rels), order=order,
                        roots=None, notes=(f"group letters y{th + 1}..y{2 * th} stand for g1..g{th}",
                                           "exponents " + ",".join(map(str, R.exponents))),
                        source=p.source)


def verify_lifting(d: LiftingDatum, D: int | None = None) -> VerifyReport:
    """verify() on the lifting presentation, with the datum's lambda."""
    up = lifting_presentation(d)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InadmissibleParameterWarning)
        gens = build_ideal(up, ParamAssignment(up.field, d.lam))
    D = D if D is not None else default_degree_bound(_max_degree(d.presentation) + 2 * max(d.realization.exponents))
    t0 = time.perf_counter()
    system, rep = run_ideal(gens, D, up.order)
    out = VerifyReport(up.name, ParamAssignment(up.field, d.lam), rep, None, D, None, system=system)
    out.elapsed = time.perf_counter() - t0
    return out


# -- datum files ---------------------------------------------------------------------


def parse_datum(text: str, resolve=None) -> LiftingDatum:
    """Lifting datum text: a presentation (inline, or ``base NAME``) plus
    ``realization M1 M2 ...`` and ``lambda NAME = SCALAR`` lines."""
    from .errors import PresentationSyntaxError
    from .presdsl import catalog, parse_scalar

    resolve = resolve or catalog
    base = None
    real = None
    lam_lines = []
    kept = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        kw, _, rest = s.partition(" ")
        col = raw.find(rest) + 1 if rest else len(raw) + 1
        if kw == "datum":
            kept.append("")
        elif kw == "base":
            base = resolve(rest.strip())
            kept.append("")
        elif kw == "realization":
            try:
                real = Realization(tuple(int(x) for x in rest.split()))
            except ValueError as e:
                raise PresentationSyntaxError(f"bad realization: {e}", lineno, col) from e
            kept.append("")
        elif kw == "lambda":
            name, eq, val = rest.partition("=")
            if not eq or not name.strip():
                raise PresentationSyntaxError("expected 'lambda NAME = SCALAR'", lineno, col)
            lam_lines.append((name.strip(), val, lineno, raw.find("=") + 2))
            kept.append("")
        else:
            kept.append(raw)
    if base is None:
        base = parse("\n".join(kept))
    elif any(line.strip() for line in kept):
        first = next(k for k, line in enumerate(kept, 1) if line.strip())
        raise PresentationSyntaxError("a datum with 'base' cannot also define a presentation", first, 1)
    lam = {}
    for name, val, ln, col in lam_lines:
        lam[name] = parse_scalar(val, base.field, base.matrix, ln, col)
    return LiftingDatum(base, assignment(base, lam), real)


def format_datum(d: LiftingDatum) -> str:
    out = [format_presentation(d.presentation).rstrip("\n")]
    if d.realization is not None:
        out.append("realization " + " ".join(map(str, d.realization.exponents)))
    out.extend(f"lambda {k} = {format_scalar(v)}" for k, v in sorted(d.lam.items()))
    return "\n".join(out) + "\n"


def component_pairs(p: Presentation) -> dict[str, tuple[int, int]]:
    """Linking relations: names of relations ad(y_i)(y_j) with i, j in different components."""
    dg = diagram(p.matrix)
    out = {}
    for r in p.relations:
        if isinstance(r.lhs, IteratedAd) and len(r.lhs.indices) == 2:
            i, j = (k - 1 for k in r.lhs.indices)
            if i != j and not dg.connected(i, j):
                out[r.name] = (min(i, j), max(i, j))
    return out


__all__ = [
    "Admissibility",
    "LiftingDatum",
    "ParamAssignment",
    "Realization",
    "VerifyReport",
    "admissible_set",
    "assemble",
    "assignment",
    "build_ideal",
    "component_pairs",
    "cut",
    "format_datum",
    "inadmissible_support",
    "lifting_presentation",
    "linking_name",
    "one_at_a_time",
    "parse_datum",
    "project",
    "verify",
    "verify_lifting",
]
