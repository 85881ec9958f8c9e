"""An inadmissible deformation collapses the algebra, and the trace proves it.

With q of order 5 and the skew matrix ((z, z^3), (z^3, z)), the Serre
relation y112 has a nontrivial character, so deforming it forces 1 into
the ideal.  The recorded derivation replays to a nonzero constant.
"""

import warnings

from nichols_lift.deform import build_ideal
from nichols_lift.groebner import complete, dimension, trace_replay
from nichols_lift.presdsl import catalog

p = catalog("cartan-A2-N5")
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    gens = build_ideal(p, {"r112": 1})
for w in caught:
    print("warning:", w.message)

s = complete(gens, 16, p.order)
print("status:", dimension(s).status)
print("derivation steps:", len(s.trace.records))
print("replayed constant:", trace_replay(s.trace))
