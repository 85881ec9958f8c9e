"""Acceptance criteria, each run at its stated scale and time limit.

Every test prints one PASS/FAIL line; the lines are repeated in a summary
section at the end of the pytest run.
"""

import itertools
import json
import random
import subprocess
import sys
import warnings

from nichols_lift.braiding import BraidingMatrix, is_admissible
from nichols_lift.deform import (
    LiftingDatum,
    Realization,
    admissible_set,
    assemble,
    build_ideal,
    linking_name,
    verify,
    verify_lifting,
)
from nichols_lift.freealg import Poly
from nichols_lift.groebner import (
    COMPLETE,
    complete,
    confluence_check,
    dimension,
    normal_words,
    recheck_overlaps,
    trace_replay,
)
from nichols_lift.isom import act_linking, compose, identity, inverse, isom_linking_params
from nichols_lift.presdsl import catalog, catalog_names, catalog_source, format_presentation, parse
from nichols_lift.scalars import make_field, multiplicative_order, root

from conftest import acceptance, rand_elem, rand_matrix
from test_isom import _embed_all, random_linking, random_witness
from test_presdsl import _mutate

ENTRIES = catalog_names(aliases=False)


def test_01_field_kernel():
    with acceptance(1, "field axioms and multiplicative order, L = 1..24", 10):
        for L in range(1, 25):
            F = make_field(L)
            rng = random.Random(L)
            zero, one = F.zero(), F.one()
            for _ in range(1000):
                a, b, c = (rand_elem(F, rng) for _ in range(3))
                assert a + b == b + a and a * b == b * a
                assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c
                assert a + zero == a and a * one == a and a + (-a) == zero
                if not a.is_zero():
                    assert a * a.inv() == one
            W = F.roots_of_unity_order
            for k in range(W):
                for e in (root(F, k), -root(F, k)):
                    x, brute = e, 1
                    while not x.is_one():
                        x, brute = x * e, brute + 1
                    assert multiplicative_order(e) == brute <= W
            assert multiplicative_order(F(2)) is None


def test_02_expansion_oracle():
    with acceptance(2, "x112 expansion on 20 random matrices, catalog homogeneity", 5):
        rng = random.Random(2)
        text = "presentation t\nfield 1\ntheta 2\nmatrix [1, 1; 1, 1]\nrel r s0 ad(1,1,2)\n"
        rel = parse(text).relations[0]
        from nichols_lift.presdsl import expand_relation
        for _ in range(20):
            F = make_field(rng.choice([3, 4, 5, 6, 7, 8, 12]))
            q = rand_matrix(F, 2, rng)
            q11, q12 = q[0, 0], q[0, 1]

            def w(*letters, c=F.one()):
                return Poly.word(F, 2, letters, c)

            # hand derivation: x1^2 x2 - q12 (1 + q11) x1 x2 x1 + q11 q12^2 x2 x1^2
            expected = w(0, 0, 1) - w(0, 1, 0, c=q12 * (1 + q11)) + w(1, 0, 0, c=q11 * q12 * q12)
            assert expand_relation(rel, q)[0] == expected
        for name in ENTRIES:
            p = catalog(name)
            for r in p.relations:
                assert p.lhs(r).degree() is not None, (name, r.name)


def test_03_gb_soundness():
    with acceptance(3, "catalog completes at D=16, overlaps recheck, 1000 confluence pairs each", 120):
        for name in ENTRIES:
            p = catalog(name)
            s = complete(build_ideal(p), 16, p.order)
            assert s.status == COMPLETE, name
            assert recheck_overlaps(s) == [], name
            assert confluence_check(s, random.Random(name), samples=1000) == [], name


def test_04_pbw_dimensions():
    with acceptance(4, "PBW dimensions: A1 N=2..7, A2 N=3, super A2 vs enumeration", 60):
        for N in range(2, 8):
            assert verify(catalog(f"cartan-A1-N{N}"), {}, 16).dim == N
        assert verify(catalog("cartan-A2-N3"), {}, 16).dim == 27
        p = catalog("super-A2-minus")
        q = p.matrix
        assert q[0, 0] == -1 and q[1, 1] == -1 and multiplicative_order(q.qtilde(0, 1)) == 3
        s = complete(build_ideal(p), 16, p.order)
        rep = dimension(s)
        assert rep.status == "finite"
        words = normal_words(s, 8)
        assert max(len(x) for x in words) < 8
        assert rep.dim == len(words)


FLAT_ENTRIES = ["cartan-A1", "cartan-A2-N3", "linking-A1xA1", "cartan-B2-N5", "super-A2-minus"]


def _admissible_subsets(p):
    adm = admissible_set(p).names
    names = [n for n in p.deformable_names if n in adm]
    bad = p.excluded_pairs()
    for k in range(len(names) + 1):
        for s in itertools.combinations(names, k):
            if not any(frozenset(pr) in bad for pr in itertools.combinations(s, 2)):
                yield s


def test_05_admissible_deformations_are_flat():
    with acceptance(5, "every admissible 0/1 sample is nonzero and flat at D=20", 600):
        q = catalog("cartan-B2-N5").matrix
        z = root(q.field, 1)
        assert q == BraidingMatrix([[z ** 2, z], [z ** 2, z]], q.field)
        total = 0
        for name in FLAT_ENTRIES:
            p = catalog(name)
            base = verify(p, {}, 20)
            for s in _admissible_subsets(p):
                r = verify(p, {n: 1 for n in s}, 20)
                assert r.nonzero and r.flat, (name, s, r.status)
                if base.status == "finite":
                    assert r.dim == base.dim
                else:
                    assert r.gb.counts[:21] == base.gb.counts[:21]
                total += 1
        assert total >= 40


ZERO_CASES = [
    ("cartan-A2-N5", {"r112": 1}),
    ("cartan-A2-N5", {"r221": 1}),
    ("super-A2-cartan", {"r112": 1}),
    ("super-A2-minus", {"p12": 1}),
    ("super-A3-2", {"r112": 1}),
]


def test_06_inadmissible_deformations_vanish():
    with acceptance(6, "inadmissible assignments give zero with a replayable trace", 60):
        for name, lam in ZERO_CASES:
            p = catalog(name)
            assert not set(lam) <= admissible_set(p).names
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                s = complete(build_ideal(p, lam), 16, p.order)
            assert dimension(s).status == "zero", (name, lam)
            c = trace_replay(s.trace)
            assert c.is_rational() is not None and not c.is_zero()


def test_07_non_connected_assembly():
    with acceptance(7, "assembly: A1 x A1 linked and unlinked, A2 block plus A1 block", 60):
        a1 = catalog("cartan-A1-N2")
        p = assemble([a1, a1], links={(0, 1): 1})
        name = linking_name(0, 1)
        assert verify(p, {name: 1}, 16).dim == 4
        assert verify(p, {}, 16).dim == 4 == verify(a1, {}, 16).dim ** 2
        a2 = catalog("cartan-A2-N2")
        p3 = assemble([a2, a1], links={(1, 2): 1}, cross={(0, 2): -1})
        block = verify(a2, {}, 16).dim
        r = verify(p3, {linking_name(1, 2): 1}, 16)
        assert r.status == "finite" and r.dim == block * 2


def test_08_liftings():
    with acceptance(8, "liftings: Taft 8, Sweedler 4, linked pair 16", 60):
        a1 = catalog("cartan-A1-N2")
        assert verify_lifting(LiftingDatum(a1, {"p1": 1}, Realization((4,)))).dim == 8
        assert admissible_set(a1, Realization((2,))).names == frozenset()
        assert verify_lifting(LiftingDatum(a1, {}, Realization((2,)))).dim == 4
        p = catalog("linking-A1xA1")
        d = LiftingDatum(p, {"l12": 1}, Realization((2, 2)))
        e = verify(p, {"l12": 1}, 16).dim
        u = verify_lifting(d).dim
        assert u == 16 == e * d.realization.order


def test_09_admissibility_oracle():
    with acceptance(9, "is_admissible agrees with brute-force character evaluation", 5):
        checked = 0
        for name in ENTRIES:
            p = catalog(name)
            q = p.matrix
            for r in p.relations:
                a = p.degree(r)
                brute = True
                for j in range(p.theta):
                    v = q.field.one()
                    for i in range(p.theta):
                        for _ in range(a[i]):
                            v = v * q[j, i]
                    brute = brute and v.is_one()
                assert is_admissible(q, a) == brute, (name, r.name)
                checked += 1
        assert checked > 80


def test_10_isomorphism_action():
    with acceptance(10, "act_linking / isom_linking properties on 1000 random data", 10):
        rng = random.Random(10)
        F = make_field(12)
        for k in range(1000):
            theta = 2 + k % 3
            q, lam = random_linking(theta, rng)
            a, b = random_witness(theta, rng), random_witness(theta, rng)
            ab = compose(a, b)
            assert act_linking(a.sigma, a.s, act_linking(b.sigma, b.s, lam)) == act_linking(ab.sigma, ab.s, lam)
            e = identity(theta, F)
            assert act_linking(e.sigma, e.s, lam) == lam
            ia = inverse(a)
            moved = act_linking(a.sigma, a.s, lam)
            assert act_linking(ia.sigma, ia.s, moved) == lam
            for src, dst in ((lam, moved), (moved, lam)):
                w = isom_linking_params(q, src, q, dst)
                assert w is not None and act_linking(w.sigma, w.s, src) == _embed_all(dst, w.field)
                image = {frozenset((w.sigma[i], w.sigma[j])) for i, j in src}
                assert image == {frozenset(x) for x in dst}
            if moved:
                moved.pop(next(iter(moved)))
                assert isom_linking_params(q, lam, q, moved) is None


def test_11_parser():
    with acceptance(11, "parse(print(p)) = p on the catalog, 1000 fuzzed inputs rejected", 10):
        from nichols_lift.errors import DSLError
        for name in ENTRIES:
            p = catalog(name)
            assert parse(format_presentation(p)) == p
        rng = random.Random(11)
        sources = [catalog_source(n) for n in ENTRIES]
        for _ in range(1000):
            bad = _mutate(rng.choice(sources), rng)
            try:
                parse(bad)
            except DSLError as e:
                assert e.line >= 1 and e.col >= 1
            else:
                raise AssertionError("accepted:\n" + bad)


def test_12_determinism():
    with acceptance(12, "two verify runs on cartan-B2-N5 give byte-identical JSON", 60):
        argv = [sys.executable, "-m", "nichols_lift", "verify", "cartan-B2-N5", "--json",
                "--lam", "r112=1", "--check", "200", "--seed", "12"]
        a = subprocess.run(argv, capture_output=True)
        b = subprocess.run(argv, capture_output=True)
        assert a.returncode == 0 and b.returncode == 0
        assert a.stdout == b.stdout
        assert json.loads(a.stdout)["entry"] == "cartan-B2-N5"
