"""Decide when two linking data give isomorphic algebras.

Rescaling generators and permuting vertices acts on the linking scalars.
Any two nonzero values on the same pattern of links are equivalent; a
datum with a link switched off is not.
"""

from nichols_lift.isom import isom_linking
from nichols_lift.presdsl import catalog
from nichols_lift.scalars import make_field, root

p = catalog("linking-A1xA1")
F = make_field(6)
for other in ({"l12": 1}, {"l12": -1}, {"l12": root(F, 2)}, {}):
    w = isom_linking((p, {"l12": 1}), (p, other))
    shown = ", ".join(f"{k} = {v}" for k, v in other.items()) or "no link"
    print(f"l12 = 1 vs {shown:12} ->", "not isomorphic" if w is None else f"witness {w.to_json()}")
