"""Diagram symmetries and isomorphisms of lifting data through their linking
parameters.

Linking parameters are dicts ``{(i, j): value}`` with 0-based ``i < j``.
A pair ``(sigma, s)`` acts by

    lambda'_{ij} = (s_i s_j)^-1 * lambda_{sigma^-1(i), sigma^-1(j)}

where ``sigma`` is stored as the image tuple (vertex i goes to sigma[i]) and
``s`` is the diagonal of the scaling matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

from .braiding import BraidingMatrix
from .errors import RankTooLarge, UnknownParameter, UnsupportedParameters
from .scalars import CycloField, FieldElem, embed, format_scalar, make_field, root

MAX_RANK = 8

Linking = Mapping[tuple[int, int], FieldElem]


@dataclass(frozen=True)
class Witness:
    sigma: tuple[int, ...]
    s: tuple[FieldElem, ...]

    @property
    def field(self) -> CycloField:
        return self.s[0].field

    def cycles(self) -> str:
        return cycle_notation(self.sigma)

    def to_json(self) -> dict:
        return {"sigma": self.cycles(), "field": self.field.order, "s": [format_scalar(x) for x in self.s]}


def cycle_notation(sigma: Sequence[int]) -> str:
    """1-based cycle notation; the identity prints as ``()``."""
    seen, out = set(), []
    for start in range(len(sigma)):
        if start in seen or sigma[start] == start:
            continue
        cyc, k = [], start
        while k not in seen:
            seen.add(k)
            cyc.append(k + 1)
            k = sigma[k]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def symmetries(q: BraidingMatrix) -> list[tuple[int, ...]]:
    """All sigma with q[i][j] == q[sigma i][sigma j]; identity first."""
    if q.theta > MAX_RANK:
        raise RankTooLarge(f"symmetry search is brute force and limited to rank {MAX_RANK}")
    return [s for s in permutations(range(q.theta)) if _maps(q, q, s)]


def _maps(q: BraidingMatrix, q2: BraidingMatrix, s: Sequence[int]) -> bool:
    n = q.theta
    return all(q2[s[i], s[j]] == q[i, j] for i in range(n) for j in range(n))


def pair_classes(q: BraidingMatrix) -> list[frozenset[int]]:
    """I(i): vertices j whose row and column agree with those of i."""
    n = q.theta
    out = []
    for i in range(n):
        out.append(frozenset(
            j for j in range(n)
            if all(q[k, j] == q[k, i] and q[j, k] == q[i, k] for k in range(n))))
    return out


# -- field plumbing ----------------------------------------------------------------


def _common_field(elems) -> CycloField:
    orders = {e.field.order for e in elems}
    return make_field(math.lcm(*orders)) if orders else make_field(1)


def _to(e: FieldElem, F: CycloField) -> FieldElem:
    return e if e.field is F else embed(e, F)


def _unit(F: CycloField, m: int) -> FieldElem:
    """A primitive m-th root of unity in F (m | F.order, or m = 2)."""
    if m <= 2:
        return F(1) if m == 1 else F(-1)
    return root(F, F.order // m)


def _squarefree(n: int) -> tuple[int, list[int]]:
    """n = m^2 * prod(primes)."""
    m, primes, p = 1, [], 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        m *= p ** (e // 2)
        if e % 2:
            primes.append(p)
        p += 1
    if n > 1:
        primes.append(n)
    return m, primes


def _sqrt_prime(p: int, F: CycloField) -> FieldElem:
    if p == 2:
        w = _unit(F, 8)
        return w + w.inv()
    zeta = _unit(F, p)
    g = F.zero()
    for a in range(1, p):
        g = g + (zeta**a if pow(a, (p - 1) // 2, p) == 1 else -(zeta**a))
    return g if p % 4 == 1 else g / _unit(F, 4)


def cyclotomic_sqrt(v: FieldElem) -> FieldElem | None:
    """A square root of ``v`` in some cyclotomic field, for v = rational x root
    of unity; None otherwise."""
    F = v.field
    if v.is_zero():
        return v
    W = F.roots_of_unity_order
    gen = root(F, 1) if W == F.order else -root(F, (F.order + 1) // 2)
    cur = F.one()
    for k in range(W):
        r = v / cur
        if r.is_rational():
            return _assemble_sqrt(Fraction(r.coords[0]), k, W, F)
        cur = cur * gen
    return None


def _assemble_sqrt(r: Fraction, k: int, W: int, F: CycloField) -> FieldElem:
    neg = r < 0
    r = abs(r)
    m, primes = _squarefree(r.numerator * r.denominator)
    need = [F.order, 2 * W]
    if neg:
        need.append(4)
    for p in primes:
        need.append(8 if p == 2 else 4 * p)
    T = make_field(math.lcm(*need))
    out = T(Fraction(m, r.denominator)) * _unit(T, 2 * W) ** k
    if neg:
        out = out * _unit(T, 4)
    for p in primes:
        out = out * _sqrt_prime(p, T)
    return out


# -- the action ------------------------------------------------------------------


def _norm(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


def act_linking(sigma: Sequence[int], s: Sequence[FieldElem], lam: Linking) -> dict[tuple[int, int], FieldElem]:
    """lambda'_{sigma(i) sigma(j)} = (s_{sigma i} s_{sigma j})^-1 lambda_{ij}."""
    F = _common_field([*s, *lam.values()])
    out = {}
    for (i, j), v in lam.items():
        a, b = sigma[i], sigma[j]
        w = _to(v, F) / (_to(s[a], F) * _to(s[b], F))
        if not w.is_zero():
            out[_norm(a, b)] = w
    return out


def compose(outer: Witness, inner: Witness) -> Witness:
    """Acting by ``inner`` then ``outer``."""
    n = len(outer.sigma)
    F = _common_field([*outer.s, *inner.s])
    inv = [0] * n
    for i, k in enumerate(outer.sigma):
        inv[k] = i
    sigma = tuple(outer.sigma[inner.sigma[i]] for i in range(n))
    s = tuple(_to(outer.s[i], F) * _to(inner.s[inv[i]], F) for i in range(n))
    return Witness(sigma, s)


def inverse(w: Witness) -> Witness:
    n = len(w.sigma)
    inv = [0] * n
    for i, k in enumerate(w.sigma):
        inv[k] = i
    return Witness(tuple(inv), tuple(w.s[w.sigma[i]].inv() for i in range(n)))


def identity(theta: int, F: CycloField) -> Witness:
    return Witness(tuple(range(theta)), tuple(F.one() for _ in range(theta)))


# -- deciding isomorphism ------------------------------------------------------------


class _NeedsRoot(Exception):
    pass


def _solve_scaling(theta: int, eqs: dict[tuple[int, int], FieldElem], F: CycloField) -> tuple[FieldElem, ...] | None:
    """Solve s_a s_b = c_ab; None if inconsistent.  Each connected piece of the
    equation graph gets s_root = 1 unless an odd cycle pins s_root^2."""
    adj: dict[int, list[tuple[int, FieldElem]]] = {}
    for (a, b), c in eqs.items():
        adj.setdefault(a, []).append((b, c))
        adj.setdefault(b, []).append((a, c))
    # s_v = coef_v * x^sign_v, x the unknown value at the piece's root
    coef: dict[int, FieldElem] = {}
    sign: dict[int, int] = {}
    xval: dict[int, FieldElem] = {}
    rootof: dict[int, int] = {}
    for start in sorted(adj, reverse=True):
        if start in coef:
            continue
        coef[start], sign[start], rootof[start] = F.one(), 1, start
        stack, x2 = [start], None
        order = [start]
        while stack:
            u = stack.pop()
            for v, c in adj[u]:
                if v not in coef:
                    coef[v], sign[v], rootof[v] = c / coef[u], -sign[u], start
                    stack.append(v)
                    order.append(v)
                elif sign[u] != sign[v]:
                    if coef[u] * coef[v] != c:
                        return None
                else:
                    # coef_u coef_v x^(2 sign) = c
                    val = c / (coef[u] * coef[v])
                    val = val if sign[u] == 1 else val.inv()
                    if x2 is None:
                        x2 = val
                    elif x2 != val:
                        return None
        if x2 is None:
            xval[start] = F.one()
        else:
            r = cyclotomic_sqrt(x2)
            if r is None:
                raise _NeedsRoot(str(x2))
            xval[start] = r
    T = _common_field(xval.values()) if xval else F
    T = make_field(math.lcm(T.order, F.order))
    s = []
    for v in range(theta):
        if v not in coef:
            s.append(T.one())
            continue
        x = _to(xval[rootof[v]], T)
        s.append(_to(coef[v], T) * (x if sign[v] == 1 else x.inv()))
    return tuple(s)


def _lift_matrix(q: BraidingMatrix, F: CycloField) -> BraidingMatrix:
    if q.field is F:
        return q
    return BraidingMatrix([[embed(x, F) for x in row] for row in q.entries], F)


def isom_linking_params(q: BraidingMatrix, lam: Linking, q2: BraidingMatrix, lam2: Linking) -> Witness | None:
    """A witness (sigma, s) with act_linking(sigma, s, lam) == lam2 and
    q2[sigma i][sigma j] == q[i][j], or None."""
    if q.theta != q2.theta:
        return None
    if q.theta > MAX_RANK:
        raise RankTooLarge(f"isomorphism search is brute force and limited to rank {MAX_RANK}")
    n = q.theta
    F = _common_field([q[0, 0], q2[0, 0], *lam.values(), *lam2.values()])
    L1 = {_norm(*k): _to(v, F) for k, v in lam.items() if not v.is_zero()}
    L2 = {_norm(*k): _to(v, F) for k, v in lam2.items() if not v.is_zero()}
    if len(L1) != len(L2):
        return None
    q, q2 = _lift_matrix(q, F), _lift_matrix(q2, F)
    missing_root = None
    for sigma in permutations(range(n)):
        if not _maps(q, q2, sigma):
            continue
        image = {_norm(sigma[i], sigma[j]): v for (i, j), v in L1.items()}
        if image.keys() != L2.keys():
            continue
        eqs = {k: image[k] / L2[k] for k in image}
        try:
            s = _solve_scaling(n, eqs, F)
        except _NeedsRoot as e:
            missing_root = str(e)
            continue
        if s is not None:
            return Witness(tuple(sigma), s)
    if missing_root is not None:
        raise UnsupportedParameters(
            f"a witness needs the square root of {missing_root}, which is not in a cyclotomic field here")
    return None


def linking_params(datum) -> tuple[BraidingMatrix, dict[tuple[int, int], FieldElem]]:
    """Matrix and linking parameters of a lifting datum (or a (presentation, lam)
    pair).  Values may live in a larger cyclotomic field than the matrix."""
    from .deform import component_pairs

    p, lam = (datum.presentation, datum.lam) if hasattr(datum, "presentation") else datum
    pairs = component_pairs(p)
    deformable = set(p.deformable_names)
    out = {}
    for name, v in lam.items():
        if name not in deformable:
            raise UnknownParameter(name)
        v = v if isinstance(v, FieldElem) else p.field(v)
        if v.is_zero():
            continue
        if name not in pairs:
            raise UnsupportedParameters(f"{p.name}: parameter {name} is not a linking parameter")
        out[pairs[name]] = v
    return p.matrix, out


def isom_linking(d, d2) -> Witness | None:
    """Decide whether two lifting data with linking-only parameters are isomorphic."""
    q, lam = linking_params(d)
    q2, lam2 = linking_params(d2)
    return isom_linking_params(q, lam, q2, lam2)


__all__ = [
    "Witness",
    "act_linking",
    "compose",
    "cycle_notation",
    "cyclotomic_sqrt",
    "identity",
    "inverse",
    "isom_linking",
    "isom_linking_params",
    "linking_params",
    "pair_classes",
    "symmetries",
]
