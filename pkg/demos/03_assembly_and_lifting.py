"""Glue components with a linking relation, then lift over a group algebra.

Two A1 blocks at -1 joined by x1 x2 + x2 x1 = lambda (1 - g1 g2): the
algebra keeps dimension 4, and the lifting over Z/2 x Z/2 has dimension
4 * 4 = 16.  Over Z/4, the Taft algebra appears with dimension 8.
"""

from nichols_lift.deform import (
    LiftingDatum,
    Realization,
    assemble,
    lifting_presentation,
    linking_name,
    verify,
    verify_lifting,
)
from nichols_lift.presdsl import catalog, format_presentation

a1 = catalog("cartan-A1-N2")
pair = assemble([a1, a1], links={(0, 1): 1})
link = linking_name(0, 1)
print(format_presentation(pair))
print("dim with link off:", verify(pair, {}, 16).dim)
print("dim with link on: ", verify(pair, {link: 1}, 16).dim)

d = LiftingDatum(catalog("linking-A1xA1"), {"l12": 1}, Realization((2, 2)))
print()
print(format_presentation(lifting_presentation(d)))
print("lifting dim:", verify_lifting(d).dim)

taft = LiftingDatum(a1, {"p1": 1}, Realization((4,)))
print("Taft-type lifting over Z/4:", verify_lifting(taft).dim)
