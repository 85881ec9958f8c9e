import random

import pytest
from hypothesis import given, strategies as st

from nichols_lift.braiding import is_admissible
from nichols_lift.errors import (
    DSLError,
    DuplicateRelationName,
    NonHomogeneousBracket,
    PresentationSyntaxError,
    UnknownCatalogEntry,
    UnknownGenerator,
)
from nichols_lift.freealg import Poly, braided_commutator
from nichols_lift.presdsl import (
    Chain,
    IteratedAd,
    Lam,
    catalog,
    catalog_names,
    catalog_source,
    expand_relation,
    format_presentation,
    parse,
)
from nichols_lift.scalars import root

HEADER = "presentation t\nfield 6\ntheta 2\nmatrix [z, z^2; z^4, -1]\n"


def rel_of(line, header=HEADER):
    return parse(header + line + "\n").relations[-1]


def test_relation_line_examples():
    r = rel_of("rel r112 s0 ad(1,1,2) deform")
    assert r.lhs == IteratedAd((1, 1, 2)) and r.rhs == Lam("r112") and r.stratum == 0
    r = rel_of("rel r112 s0 ad(1,1,2) deform\nrel p1 s1 y1^3 deform")
    assert r.stratum == 1 and r.deformable
    g2 = catalog("standard-G2-a").relation("l3")
    assert g2.deformable and g2.tail is not None
    p = catalog("standard-G2-a")
    lhs, rhs = expand_relation(g2, p.matrix)
    F = p.field
    z = root(F, 1)
    y2 = Poly.gen(F, 2, 1)
    y12 = braided_commutator(Poly.gen(F, 2, 0), y2, p.matrix)
    assert rhs({"l2": 1, "l3": 5}) == Poly.const(F, 2, 5) + (y2 * y12).scale(2 * (1 + z) ** 2)
    assert rhs({}).is_zero()


def test_catalog_examples():
    p = catalog("cartan-A2-N3")
    assert {r.name for r in p.relations if r.stratum == 0} == {"r112", "r221"}
    assert {r.name for r in p.relations if r.stratum == 1} == {"p1", "p2", "p12"}
    m = catalog("super-A2-minus")
    assert m.matrix[0, 0] == -1 and m.matrix[1, 1] == -1
    F = m.field
    assert m.lhs("mu1") == Poly.word(F, 2, (0, 0)) and m.lhs("mu2") == Poly.word(F, 2, (1, 1))
    with pytest.raises(UnknownCatalogEntry):
        catalog("nonexistent")
    with pytest.raises(UnknownCatalogEntry):
        catalog("../pyproject")


def test_bundled_minimum_present():
    names = set(catalog_names())
    need = {"cartan-A1", "cartan-A2-N2", "cartan-A2-N3", "cartan-A2-N5", "cartan-B2-N5",
            "cartan-B3-N3", "cartan-G2", "standard-B2", "linking-A1xA1"}
    assert need <= names
    assert len([n for n in names if n.startswith("standard-G2")]) == 3
    assert len([n for n in names if n.startswith("super-A2")]) == 3
    assert len([n for n in names if n.startswith("super-A3")]) == 4
    assert any(n.startswith("brj23") for n in names) and any(n.startswith("ufo7") for n in names)


def test_expand_examples():
    p = parse(HEADER + "rel a s0 ad(1,2)\nrel b s0 ad(1,1,2)\nrel c s0 chain(1,1)\n")
    F, q = p.field, p.matrix
    x1, x2 = Poly.gen(F, 2, 0), Poly.gen(F, 2, 1)
    x12 = x1 * x2 - (x2 * x1).scale(q[0, 1])
    assert p.lhs("a") == x12
    assert p.lhs("b") == braided_commutator(x1, x12, q)
    assert p.relation("c").lhs == Chain(1, 1)
    assert p.lhs("c") == x1


def test_empty_presentation_prints_header_only():
    p = parse(HEADER)
    text = format_presentation(p)
    assert "rel " not in text and text.startswith("presentation t")
    assert parse(text) == p


@pytest.mark.parametrize("name", catalog_names(aliases=False))
def test_round_trip(name):
    p = catalog(name)
    assert parse(format_presentation(p)) == p


@pytest.mark.parametrize("name", catalog_names(aliases=False))
def test_catalog_relations_homogeneous(name):
    p = catalog(name)
    for r in p.relations:
        assert p.lhs(r).degree() is not None, r.name


@pytest.mark.parametrize("name", catalog_names(aliases=False))
def test_deformable_relations_admissible_or_annotated(name):
    p = catalog(name)
    excluded = {n for pair in p.exclusions for n in pair}
    for n in p.deformable_names:
        deg = p.degree(n)
        ok = is_admissible(p.matrix, deg)
        assert ok or n in excluded or p.flagged(n), f"{name}:{n}"


def test_error_positions():
    with pytest.raises(UnknownGenerator) as e:
        parse(HEADER + "rel a s0 y3^2\n")
    assert (e.value.line, e.value.col) == (5, 10)
    with pytest.raises(NonHomogeneousBracket) as e:
        parse(HEADER + "rel a s0 [y1 + y2, y1]c\n")
    assert e.value.line == 5 and e.value.col > 1
    with pytest.raises(DuplicateRelationName) as e:
        parse(HEADER + "rel a s0 y1^2\nrel a s0 y2^2\n")
    assert e.value.line == 6
    with pytest.raises(PresentationSyntaxError) as e:
        parse(HEADER + "rel a s0 ad(1,2\n")
    assert e.value.line == 5
    with pytest.raises(PresentationSyntaxError) as e:
        parse(HEADER + "rel a s0 y1^2\nrel b s2 y2^2\n")
    assert (e.value.line, e.value.col) == (6, 5)


# -- fuzzing ---------------------------------------------------------------------
# Each mutation is guaranteed to make the text invalid; the parser must say
# where, and must not fail in any other way.


def _rel_lines(lines):
    return [k for k, s in enumerate(lines) if s.startswith("rel ")]


def _mutate(text, rng):
    lines = text.splitlines()
    rels = _rel_lines(lines)
    k = rng.choice(rels)
    line = lines[k]
    kind = rng.randrange(10)
    if kind == 0:
        lines[k] = line.replace("rel ", "rell ", 1)
    elif kind == 1:
        parts = line.split(" ")
        parts[2] = "s" + rng.choice(["x", "-1", "", "1.5"])
        lines[k] = " ".join(parts)
    elif kind == 2:
        lines[k] = line + " " + rng.choice(["@", "$", "deform deform", ")", "tail", "]"])
    elif kind == 3:
        parts = line.split(" ")
        parts[3] = parts[3] + rng.choice(["*y99", "+(", "^", "*", "/0"])
        lines[k] = " ".join(parts)
    elif kind == 4:
        lines.append(lines[k])
    elif kind == 5:
        parts = line.split(" ")
        parts[3] = f"[{parts[3]} + y1*y1*y1*y1*y1*y1*y1*y1*y1*y1*y1, y1]c"
        lines[k] = " ".join(parts)
    elif kind == 6:
        i = line.find("(")
        lines[k] = (line[:i] + line[i + 1:]) if i >= 0 else line + " ("
    elif kind == 7:
        parts = line.split(" ")
        parts[2] = "q" + parts[2][1:]
        lines[k] = " ".join(parts)
    elif kind == 8:
        m = next(j for j, s in enumerate(lines) if s.startswith("matrix"))
        lines[m] = lines[m].replace(";", ",", 1) if ";" in lines[m] else lines[m] + " ;"
    else:
        parts = line.split(" ")
        parts[3] = parts[3] + "*lam(" + parts[1] + ")"
        lines[k] = " ".join(parts)
    return "\n".join(lines) + "\n"


def test_fuzzed_near_misses_rejected_with_positions():
    rng = random.Random(7)
    sources = [catalog_source(n) for n in catalog_names(aliases=False)]
    for _ in range(1000):
        bad = _mutate(rng.choice(sources), rng)
        with pytest.raises(DSLError) as e:
            parse(bad)
        assert e.value.line >= 1 and e.value.col >= 1, (str(e.value), bad)


@given(st.integers(0, 2 ** 31))
def test_random_byte_edits_never_crash(seed):
    rng = random.Random(seed)
    src = catalog_source(rng.choice(catalog_names(aliases=False)))
    chars = list(src)
    for _ in range(rng.randint(1, 3)):
        pos = rng.randrange(len(chars))
        op = rng.randrange(3)
        if op == 0:
            del chars[pos]
        elif op == 1:
            chars.insert(pos, rng.choice("()[],;+-*/^0123456789yzc# \nxq"))
        else:
            chars[pos] = rng.choice("()[],;+-*/^yz9")
    try:
        parse("".join(chars))
    except DSLError as e:
        assert e.line >= 1
