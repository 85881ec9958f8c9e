"""Deform the A2 relations at a cube root of unity and watch the dimension stay put.

The algebra on two generators with the quantum Serre relations and the
cube relations has dimension 27.  Replacing each relation r by r - lambda_r
keeps the dimension whenever lambda is supported on admissible relations.
"""

from nichols_lift.deform import admissible_set, verify
from nichols_lift.presdsl import catalog, format_presentation

p = catalog("cartan-A2-N3")
print(format_presentation(p))

adm = admissible_set(p)
for name, (ok, why) in sorted(adm.verdicts.items()):
    print(f"{name:5} {'admissible' if ok else 'blocked':10} {why}")

print()
for lam in ({}, {"r112": 1}, {"p1": 1, "p2": -1}, {n: 1 for n in adm.names}):
    r = verify(p, lam, 16)
    print(f"lambda = {lam!s:45} status {r.status:8} dim {r.dim}  flat {r.flat}")
