"""Noncommutative Groebner bases by overlap completion (Bergman's diamond lemma).

Rules rewrite a monic leading word to a combination of smaller words in
deglex.  Completion processes overlap ambiguities in increasing length
(FIFO within a length) up to a degree bound ``D``; overlaps longer than ``D``
are left unresolved and the system is then only ``truncated``.  A nonzero
constant in the ideal stops the run at once with a replayable derivation.
"""

from __future__ import annotations

import hashlib
import heapq
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BudgetExceeded, CorruptTrace
from .freealg import Poly, Word, format_poly, format_word, order_rank
from .scalars import CycloField, FieldElem

COMPLETE = "complete"
TRUNCATED = "truncated"
CONTAINS_ONE = "contains_one"

Terms = dict  # Word -> FieldElem, no zero values


def default_degree_bound(max_relation_degree: int) -> int:
    return max(16, 2 * max_relation_degree + 4)


@dataclass
class ReductionRule:
    lead: Word
    tail: Terms
    ident: int

    def poly_terms(self, one: FieldElem) -> Terms:
        out = {w: -c for w, c in self.tail.items()}
        out[self.lead] = one
        return out


@dataclass
class TraceRecord:
    """How one intermediate polynomial was produced.

    ``kind`` is ``input`` (generator ``sources[0]``), ``overlap`` (rules
    ``sources[0]``, ``sources[1]`` overlapping in ``overlap`` letters) or
    ``requeue`` (rule ``sources[0]`` whose lead became reducible).  The
    start polynomial is reduced by ``steps`` = (rule, left, right, coeff)
    and then divided by ``scale``; the result has leading word ``lead``.
    """

    ident: int
    kind: str
    sources: tuple[int, ...]
    overlap: int
    steps: list
    lead: Word
    scale: FieldElem


@dataclass
class Trace:
    field: CycloField
    theta: int
    generators: list[Terms]
    records: list[TraceRecord]

    def digest(self) -> str:
        h = hashlib.sha256()
        for r in self.records:
            h.update(f"{r.ident}:{r.kind}:{r.sources}:{r.overlap}:{len(r.steps)}:{r.lead}:{r.scale}\n".encode())
        return h.hexdigest()[:16]


class ReductionSystem:
    """A set of rewriting rules lead -> tail over one cyclotomic field."""

    def __init__(self, field: CycloField, theta: int, order: Sequence[int] | None = None):
        self.field = field
        self.theta = theta
        self.order = tuple(order) if order is not None else None
        rank = order_rank(order, theta)
        self._rank = rank
        if rank is None:
            self._heapkey = lambda w: (-len(w), tuple(-a for a in w))
            self._key = lambda w: (len(w), w)
        else:
            self._heapkey = lambda w: (-len(w), tuple(-rank[a] for a in w))
            self._key = lambda w: (len(w), tuple(rank[a] for a in w))
        self.by_lead: dict[Word, ReductionRule] = {}
        self._lengths: list[int] = []
        self.status = COMPLETE
        self.degree_bound: int | None = None
        self.trace: Trace | None = None
        self.skipped_overlaps = 0
        self.vanishing_certificate: int | None = None
        self.resolved_beyond_bound = 0
        self.steps = 0

    # -- bookkeeping --------------------------------------------------------
    @property
    def rules(self) -> list[ReductionRule]:
        return sorted(self.by_lead.values(), key=lambda r: self._key(r.lead))

    def stats(self) -> dict[int, int]:
        return dict(sorted(Counter(len(r.lead) for r in self.by_lead.values()).items()))

    def _refresh_lengths(self) -> None:
        self._lengths = sorted({len(w) for w in self.by_lead})

    def leading(self, terms: Terms) -> Word:
        return max(terms, key=self._key)

    # -- reduction ----------------------------------------------------------
    def find_redex(self, w: Word) -> tuple[ReductionRule, int] | None:
        """Leftmost, then shortest, occurrence of a rule lead inside ``w``."""
        by_lead = self.by_lead
        n = len(w)
        for pos in range(n):
            for ln in self._lengths:
                end = pos + ln
                if end > n:
                    break
                rule = by_lead.get(w[pos:end])
                if rule is not None:
                    return rule, pos
        return None

    def reduce_terms(self, terms: Terms, steps: list | None = None, budget: int | None = None) -> Terms:
        pending = dict(terms)
        hk = self._heapkey
        heap = [(hk(w), w) for w in pending]
        heapq.heapify(heap)
        result: Terms = {}
        count = 0
        while heap:
            _, w = heapq.heappop(heap)
            c = pending.pop(w, None)
            if c is None:
                continue
            hit = self.find_redex(w)
            if hit is None:
                result[w] = c
                continue
            rule, pos = hit
            count += 1
            if budget is not None and self.steps + count > budget:
                raise BudgetExceeded(f"reduction step limit {budget} exceeded")
            a, b = w[:pos], w[pos + len(rule.lead):]
            if steps is not None:
                steps.append((rule.ident, a, b, c))
            for tw, tc in rule.tail.items():
                nw = a + tw + b
                v = pending.get(nw)
                if v is None:
                    pending[nw] = c * tc
                    heapq.heappush(heap, (hk(nw), nw))
                else:
                    v = v + c * tc
                    if v.is_zero():
                        del pending[nw]
                    else:
                        pending[nw] = v
        self.steps += count
        return result

    def normal_form(self, p: Poly) -> Poly:
        return Poly._wrap(self.field, self.theta, self.reduce_terms(p.terms))

    def is_normal(self, w: Word) -> bool:
        return self.find_redex(w) is None

    # -- text dump ----------------------------------------------------------
    def dump(self) -> str:
        """One rule per line, ``LEAD -> tail``."""
        lines = []
        for r in self.rules:
            tail = Poly._wrap(self.field, self.theta, dict(r.tail))
            lines.append(f"{format_word(r.lead)} -> {format_poly(tail, self.order)}")
        return "\n".join(lines)


def _shift(terms: Terms, left: Word, right: Word) -> Terms:
    return {left + w + right: c for w, c in terms.items()}


def _axpy(acc: Terms, terms: Terms, scale: FieldElem | None = None) -> None:
    for w, c in terms.items():
        if scale is not None:
            c = c * scale
        v = acc.get(w)
        if v is None:
            acc[w] = c
        else:
            v = v + c
            if v.is_zero():
                del acc[w]
            else:
                acc[w] = v


def _length_homogeneous(terms: Terms) -> bool:
    return len({len(w) for w in terms}) <= 1


def _overlaps(u: Word, v: Word) -> Iterable[int]:
    """Lengths k of proper overlaps: suffix of u of length k == prefix of v."""
    top = min(len(u), len(v))
    for k in range(1, top):
        if u[len(u) - k:] == v[:k]:
            yield k


def complete(
    generators: Sequence[Poly],
    D: int | None = None,
    order: Sequence[int] | None = None,
    max_steps: int | None = 5_000_000,
    record_trace: bool = True,
) -> ReductionSystem:
    """Overlap completion of ``generators`` up to overlap length ``D``."""
    gens = [g for g in generators if not g.is_zero()]
    if not generators:
        raise ValueError("need at least one generator (its field and rank fix the algebra)")
    field, theta = generators[0].field, generators[0].theta
    if D is None:
        D = default_degree_bound(max((g.total_degree() for g in gens), default=0))
    system = ReductionSystem(field, theta, order)
    system.degree_bound = D
    one = field.one()
    trace = Trace(field, theta, [dict(g.terms) for g in gens], []) if record_trace else None
    system.trace = trace
    dead: set[int] = set()
    alive: dict[int, ReductionRule] = {}
    next_id = 0
    overlap_heap: list = []
    seq = 0
    skipped: list = []

    def push_overlaps(rule: ReductionRule) -> None:
        nonlocal seq
        for other in list(alive.values()):
            pairs = [(rule, other)] if other is rule else [(rule, other), (other, rule)]
            for a, b in pairs:
                for k in _overlaps(a.lead, b.lead):
                    length = len(a.lead) + len(b.lead) - k
                    seq += 1
                    heapq.heappush(overlap_heap, (length, seq, a.ident, b.ident, k))

    def add(terms: Terms, kind: str, sources: tuple, k: int) -> bool:
        """Reduce ``terms``; install as a rule if nonzero.  True means 1 in ideal."""
        nonlocal next_id
        steps = [] if trace is not None else None
        red = system.reduce_terms(terms, steps, max_steps)
        if not red:
            return False
        lead = system.leading(red)
        lc = red[lead]
        ident = next_id
        next_id += 1
        if trace is not None:
            trace.records.append(TraceRecord(ident, kind, sources, k, steps, lead, lc))
        if not lead:
            return True
        inv = lc.inv()
        tail = {w: -(c * inv) for w, c in red.items() if w != lead}
        rule = ReductionRule(lead, tail, ident)
        # evict rules whose lead contains the new lead
        evicted = []
        for old in list(alive.values()):
            ol = old.lead
            n = len(lead)
            if len(ol) >= n and any(ol[i:i + n] == lead for i in range(len(ol) - n + 1)):
                evicted.append(old)
        for old in evicted:
            del alive[old.ident]
            del system.by_lead[old.lead]
            dead.add(old.ident)
        alive[ident] = rule
        system.by_lead[lead] = rule
        system._refresh_lengths()
        push_overlaps(rule)
        for old in evicted:
            if add(old.poly_terms(one), "requeue", (old.ident,), 0):
                return True
        return False

    def finish(status: str) -> ReductionSystem:
        system.status = status
        system.skipped_overlaps = len(skipped)
        if status != CONTAINS_ONE:
            # final tail interreduction, not part of any derivation
            for r in list(system.by_lead.values()):
                r.tail = system.reduce_terms(r.tail)
        if trace is not None and status != CONTAINS_ONE:
            system.trace = None
        return system

    for idx, g in enumerate(gens):
        if add(dict(g.terms), "input", (idx,), 0):
            return finish(CONTAINS_ONE)

    while overlap_heap:
        length, _, ia, ib, k = heapq.heappop(overlap_heap)
        if ia in dead or ib in dead:
            continue
        if length > D:
            skipped.append((ia, ib, k))
            continue
        a, b = alive[ia], alive[ib]
        u, v = a.lead, b.lead
        # w = u + v[k:];  a*v[k:] - u[:-k]*b  ==  u[:-k]*tail_b - tail_a*v[k:]
        s: Terms = _shift(b.tail, u[: len(u) - k], ())
        _axpy(s, _shift(a.tail, (), v[k:]), -one)
        if add(s, "overlap", (ia, ib), k):
            return finish(CONTAINS_ONE)

    skipped = [t for t in skipped if t[0] not in dead and t[1] not in dead]
    if skipped and all(_length_homogeneous(g.terms) for g in gens):
        # homogeneous S-polynomials of a length with no normal words reduce to 0
        lengths = {len(alive[a].lead) + len(alive[b].lead) - k for a, b, k in skipped}
        counts = NormalWordAutomaton(system.by_lead, theta).counts(max(lengths))
        if all(m >= len(counts) or counts[m] == 0 for m in lengths):
            system.vanishing_certificate = min(lengths)
            skipped = []
    if skipped:
        # no rule may be added past D, but overlaps that already resolve are harmless
        pending = []
        for ia, ib, k in skipped:
            a, b = alive[ia], alive[ib]
            s = _shift(b.tail, a.lead[: len(a.lead) - k], ())
            _axpy(s, _shift(a.tail, (), b.lead[k:]), -one)
            if system.reduce_terms(s, None, max_steps):
                pending.append((ia, ib, k))
        system.resolved_beyond_bound = len(skipped) - len(pending)
        skipped = pending
    return finish(TRUNCATED if skipped else COMPLETE)


def recheck_overlaps(system: ReductionSystem, bound: int | None = None) -> list[tuple[Word, Word, int, Poly]]:
    """Independently re-resolve every overlap of the final system.

    Returns the overlaps (of length <= ``bound``, default: all of them) whose
    S-polynomial does not reduce to zero; an empty list certifies confluence.
    """
    bad = []
    one = system.field.one()
    rules = system.rules
    for a in rules:
        for b in rules:
            for k in _overlaps(a.lead, b.lead):
                if bound is not None and len(a.lead) + len(b.lead) - k > bound:
                    continue
                u, v = a.lead, b.lead
                s: Terms = _shift(b.tail, u[: len(u) - k], ())
                _axpy(s, _shift(a.tail, (), v[k:]), -one)
                red = system.reduce_terms(s)
                if red:
                    bad.append((u, v, k, Poly._wrap(system.field, system.theta, red)))
    # inclusion ambiguities must not exist in an interreduced system
    leads = list(system.by_lead)
    for u in leads:
        for v in leads:
            if u != v and len(v) <= len(u) and any(u[i:i + len(v)] == v for i in range(len(u) - len(v) + 1)):
                bad.append((u, v, -1, Poly._wrap(system.field, system.theta, {})))
    return bad


def is_zero_algebra(system: ReductionSystem) -> tuple[bool, Trace | None]:
    return system.status == CONTAINS_ONE, system.trace


def trace_replay(trace: Trace) -> FieldElem:
    """Re-run a ContainsOne derivation from the original generators.

    Returns the nonzero constant reached; raises CorruptTrace when any
    recorded step fails to reproduce.
    """
    if not trace.records:
        raise CorruptTrace("empty trace")
    field = trace.field
    one = field.one()
    polys: dict[int, Terms] = {}
    leads: dict[int, Word] = {}
    for rec in trace.records:
        if rec.kind == "input":
            (g,) = rec.sources
            if not 0 <= g < len(trace.generators):
                raise CorruptTrace(f"record {rec.ident}: unknown generator {g}")
            cur = dict(trace.generators[g])
        elif rec.kind == "requeue":
            (src,) = rec.sources
            if src not in polys:
                raise CorruptTrace(f"record {rec.ident}: unknown rule {src}")
            cur = dict(polys[src])
        elif rec.kind == "overlap":
            ia, ib = rec.sources
            if ia not in polys or ib not in polys:
                raise CorruptTrace(f"record {rec.ident}: unknown rule in overlap")
            u, v, k = leads[ia], leads[ib], rec.overlap
            if not 0 < k < min(len(u), len(v)) or u[len(u) - k:] != v[:k]:
                raise CorruptTrace(f"record {rec.ident}: leads do not overlap")
            cur = _shift(polys[ia], (), v[k:])
            _axpy(cur, _shift(polys[ib], u[: len(u) - k], ()), -one)
        else:
            raise CorruptTrace(f"record {rec.ident}: unknown kind {rec.kind!r}")
        for rid, left, right, c in rec.steps:
            if rid not in polys:
                raise CorruptTrace(f"record {rec.ident}: step uses unknown rule {rid}")
            _axpy(cur, _shift(polys[rid], left, right), -c)
        if rec.lead not in cur or cur[rec.lead] != rec.scale:
            raise CorruptTrace(f"record {rec.ident}: leading term does not reproduce")
        if rec.scale.is_zero():
            raise CorruptTrace(f"record {rec.ident}: zero scale")
        inv = rec.scale.inv()
        cur = {w: c * inv for w, c in cur.items()}
        polys[rec.ident] = cur
        leads[rec.ident] = rec.lead
    last = trace.records[-1]
    final = polys[last.ident]
    if last.lead != () or any(w for w in final):
        raise CorruptTrace("trace does not end in a constant")
    # undo the normalization: the reduced polynomial was scale * 1
    return last.scale


# -- dimension / Hilbert data ---------------------------------------------


@dataclass
class GBReport:
    status: str  # zero | finite | infinite | inconclusive
    dim: int | None = None
    counts: list[int] = field(default_factory=list)
    elapsed: float = 0.0
    rule_count: int = 0
    degree_bound: int | None = None
    trace: Trace | None = None

    @property
    def nonzero(self) -> bool:
        return self.status in ("finite", "infinite")


class NormalWordAutomaton:
    """Aho-Corasick automaton over the rule leads; accepting paths = normal words."""

    def __init__(self, leads: Iterable[Word], theta: int):
        self.theta = theta
        trie: list[dict[int, int]] = [{}]
        terminal = [False]
        for w in leads:
            node = 0
            for a in w:
                nxt = trie[node].get(a)
                if nxt is None:
                    trie.append({})
                    terminal.append(False)
                    nxt = len(trie) - 1
                    trie[node][a] = nxt
                node = nxt
            terminal[node] = True
        fail = [0] * len(trie)
        delta = [[0] * theta for _ in trie]
        bad = list(terminal)
        queue = []
        for a in range(theta):
            nxt = trie[0].get(a)
            if nxt is None:
                delta[0][a] = 0
            else:
                delta[0][a] = nxt
                fail[nxt] = 0
                queue.append(nxt)
        head = 0
        while head < len(queue):
            s = queue[head]
            head += 1
            bad[s] = bad[s] or bad[fail[s]]
            for a in range(theta):
                nxt = trie[s].get(a)
                if nxt is None:
                    delta[s][a] = delta[fail[s]][a]
                else:
                    fail[nxt] = delta[fail[s]][a]
                    delta[s][a] = nxt
                    queue.append(nxt)
        self.delta = delta
        self.bad = bad
        # good states reachable from the root
        seen = {0}
        stack = [0]
        while stack:
            s = stack.pop()
            for t in delta[s]:
                if not bad[t] and t not in seen:
                    seen.add(t)
                    stack.append(t)
        self.states = seen

    def is_finite(self) -> bool:
        color = {}
        for start in self.states:
            if start in color:
                continue
            stack = [(start, iter(self.delta[start]))]
            color[start] = 1
            while stack:
                s, it = stack[-1]
                for t in it:
                    if self.bad[t]:
                        continue
                    c = color.get(t)
                    if c == 1:
                        return False
                    if c is None:
                        color[t] = 1
                        stack.append((t, iter(self.delta[t])))
                        break
                else:
                    color[s] = 2
                    stack.pop()
        return True

    def counts(self, upto: int) -> list[int]:
        cur = {0: 1}
        out = [1]
        for _ in range(upto):
            nxt: dict[int, int] = {}
            for s, n in cur.items():
                for t in self.delta[s]:
                    if not self.bad[t]:
                        nxt[t] = nxt.get(t, 0) + n
            cur = nxt
            out.append(sum(cur.values()))
            if not cur:
                break
        return out


def normal_word_counts(system: ReductionSystem, upto: int) -> list[int]:
    return NormalWordAutomaton(system.by_lead, system.theta).counts(upto)


def dimension(system: ReductionSystem, D: int | None = None) -> GBReport:
    """Dimension / Hilbert data of the quotient presented by ``system``."""
    D = D if D is not None else (system.degree_bound or 16)
    rc = len(system.by_lead)
    if system.status == CONTAINS_ONE:
        return GBReport("zero", 0, [], rule_count=rc, degree_bound=system.degree_bound, trace=system.trace)
    if system.status != COMPLETE:
        return GBReport("inconclusive", None, normal_word_counts(system, D), rule_count=rc,
                        degree_bound=system.degree_bound)
    auto = NormalWordAutomaton(system.by_lead, system.theta)
    if auto.is_finite():
        counts = auto.counts(len(auto.states) + 1)
        while counts and counts[-1] == 0:
            counts.pop()
        return GBReport("finite", sum(counts), counts, rule_count=rc, degree_bound=system.degree_bound)
    return GBReport("infinite", None, auto.counts(D), rule_count=rc, degree_bound=system.degree_bound)


def normal_words(system: ReductionSystem, upto: int) -> list[Word]:
    """All normal words of length <= upto (brute force, for cross-checks)."""
    out = [()]
    layer = [()]
    for _ in range(upto):
        nxt = []
        for w in layer:
            for a in range(system.theta):
                v = w + (a,)
                # only the suffixes ending at the new letter can create a redex
                if not any(v[len(v) - n:] in system.by_lead for n in system._lengths if n <= len(v)):
                    nxt.append(v)
        out.extend(nxt)
        layer = nxt
        if not layer:
            break
    return out


def run(generators: Sequence[Poly], D: int | None = None, order: Sequence[int] | None = None,
        max_steps: int | None = 5_000_000) -> tuple[ReductionSystem, GBReport]:
    """complete + dimension, with wall-clock time recorded."""
    t0 = time.perf_counter()
    system = complete(generators, D, order, max_steps=max_steps)
    report = dimension(system, system.degree_bound)
    report.elapsed = time.perf_counter() - t0
    return system, report


def random_poly(system: ReductionSystem, rng, max_len: int = 4, terms: int = 3) -> Poly:
    """Random combination of short words with small rational coefficients."""
    out = {}
    for _ in range(terms):
        w = tuple(rng.randrange(system.theta) for _ in range(rng.randint(0, max_len)))
        out[w] = system.field(rng.randint(-3, 3))
    return Poly(system.field, system.theta, out)


def confluence_check(system: ReductionSystem, rng, samples: int = 1000, max_len: int = 4) -> list[tuple[Poly, Poly]]:
    """Pairs (a, b) where NF fails to be additive or NF(ab) != NF(NF(a) NF(b)).

    An empty list is expected for a complete system; words stay short so the
    products remain inside the completed range.
    """
    bad = []
    nf = system.normal_form
    for _ in range(samples):
        a, b = random_poly(system, rng, max_len), random_poly(system, rng, max_len)
        na, nb = nf(a), nf(b)
        if nf(a + b) != na + nb or nf(a * b) != nf(na * nb):
            bad.append((a, b))
    return bad
