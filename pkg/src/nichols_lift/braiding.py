"""Braiding matrices of diagonal type and their generalized Dynkin diagrams.

Indices are 0-based throughout the Python API; text output (diagram
printing, DSL, reports) uses the 1-based labels y1, y2, ...
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import MissingRootData, ZeroDegree
from .scalars import CycloField, FieldElem, format_scalar, multiplicative_order

MultiDegree = tuple[int, ...]


class BraidingMatrix:
    """A theta x theta matrix of nonzero roots of unity in one cyclotomic field."""

    __slots__ = ("field", "theta", "entries")

    def __init__(self, entries: Sequence[Sequence[FieldElem]], field: CycloField | None = None):
        rows = [list(r) for r in entries]
        theta = len(rows)
        if any(len(r) != theta for r in rows):
            raise ValueError("braiding matrix must be square")
        if field is None:
            if not theta:
                raise ValueError("empty braiding matrix needs an explicit field")
            field = rows[0][0].field
        self.field = field
        self.theta = theta
        self.entries = tuple(tuple(field(x) for x in r) for r in rows)
        for i, r in enumerate(self.entries):
            for j, x in enumerate(r):
                if x.is_zero():
                    raise ValueError(f"braiding entry q[{i + 1},{j + 1}] is zero")
                if multiplicative_order(x) is None:
                    raise ValueError(f"braiding entry q[{i + 1},{j + 1}] = {x} is not a root of unity")

    def __getitem__(self, ij: tuple[int, int]) -> FieldElem:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, BraidingMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        rows = "; ".join(", ".join(str(x) for x in r) for r in self.entries)
        return f"BraidingMatrix(L={self.field.order}, [{rows}])"

    def minor(self, drop: int) -> BraidingMatrix:
        keep = [k for k in range(self.theta) if k != drop]
        return BraidingMatrix([[self.entries[a][b] for b in keep] for a in keep], self.field)

    def permuted(self, sigma: Sequence[int]) -> BraidingMatrix:
        """Matrix q' with q'[i][j] = q[sigma[i]][sigma[j]]."""
        return BraidingMatrix(
            [[self.entries[sigma[i]][sigma[j]] for j in range(self.theta)] for i in range(self.theta)],
            self.field,
        )

    def qtilde(self, i: int, j: int) -> FieldElem:
        return self.entries[i][j] * self.entries[j][i]


@dataclass(frozen=True)
class DynkinDiagram:
    vertices: tuple[FieldElem, ...]
    edges: Mapping[tuple[int, int], FieldElem]
    components: tuple[tuple[int, ...], ...]

    def component_of(self, i: int) -> int:
        return next(k for k, comp in enumerate(self.components) if i in comp)

    def connected(self, i: int, j: int) -> bool:
        return self.component_of(i) == self.component_of(j)


def diagram(q: BraidingMatrix) -> DynkinDiagram:
    """Vertex labels q_ii, edge labels q_ij q_ji (kept when != 1), components."""
    n = q.theta
    edges = {}
    for i, j in combinations(range(n), 2):
        t = q.qtilde(i, j)
        if not t.is_one():
            edges[(i, j)] = t
            edges[(j, i)] = t
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    comps = tuple(tuple(g) for _, g in sorted(groups.items()))
    return DynkinDiagram(tuple(q.entries[i][i] for i in range(n)), edges, comps)


def scalar_label(x: FieldElem) -> str:
    """`z^k` / `-z^k` label for a root of unity, power-basis text otherwise."""
    return format_scalar(x)


def format_diagram(q: BraidingMatrix) -> str:
    """Plain-text rendering: one line per vertex, one per edge, components."""
    d = diagram(q)
    lines = [f"vertex y{i + 1}: {scalar_label(v)}" for i, v in enumerate(d.vertices)]
    for (i, j), t in sorted(d.edges.items()):
        if i < j:
            lines.append(f"edge y{i + 1} -- y{j + 1}: {scalar_label(t)}")
    comps = " | ".join("{" + ",".join(f"y{i + 1}" for i in c) + "}" for c in d.components)
    lines.append(f"components: {comps}")
    return "\n".join(lines)


def chi_eval(q: BraidingMatrix, alpha: Sequence[int], j: int) -> FieldElem:
    """chi_alpha(g_j) = prod_i q_{ji}^{alpha_i}."""
    if len(alpha) != q.theta:
        raise ValueError("degree vector length does not match rank")
    val = q.field.one()
    row = q.entries[j]
    for i, a in enumerate(alpha):
        if a:
            val = val * row[i] ** a
    return val


def is_admissible(q: BraidingMatrix, alpha: Sequence[int]) -> bool:
    """True iff chi_alpha is trivial on every g_j (free realization: g_alpha != 1)."""
    if not any(alpha):
        raise ZeroDegree("admissibility is undefined for the zero degree")
    return all(chi_eval(q, alpha, j).is_one() for j in range(q.theta))


def linkable_pairs(q: BraidingMatrix) -> set[tuple[int, int]]:
    """Pairs i < j in different components with chi_i chi_j trivial."""
    d = diagram(q)
    out = set()
    for i, j in combinations(range(q.theta), 2):
        if d.connected(i, j):
            continue
        alpha = [0] * q.theta
        alpha[i] += 1
        alpha[j] += 1
        if is_admissible(q, alpha):
            out.add((i, j))
    return out


def bichar(q: BraidingMatrix, alpha: Sequence[int], beta: Sequence[int]) -> FieldElem:
    """prod_{i,j} q_ij^(alpha_i beta_j)."""
    val = q.field.one()
    for i, a in enumerate(alpha):
        if not a:
            continue
        for j, b in enumerate(beta):
            if b:
                val = val * q.entries[i][j] ** (a * b)
    return val


def cartan_roots_orders(q: BraidingMatrix, roots: Iterable[Sequence[int]] | None) -> dict[MultiDegree, int]:
    """Order of chi(beta, beta) for every declared root degree beta."""
    if roots is None:
        raise MissingRootData("presentation declares no root vectors")
    roots = [tuple(r) for r in roots]
    if not roots:
        raise MissingRootData("presentation declares no root vectors")
    out = {}
    for beta in roots:
        n = multiplicative_order(bichar(q, beta, beta))
        if n is None:
            raise ValueError(f"chi({beta},{beta}) is not a root of unity")
        out[beta] = n
    return out
